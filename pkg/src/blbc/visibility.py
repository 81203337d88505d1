"""Point sets, line incidence structure, and the visibility graph.

Two points of a set are mutually visible when no third point of the set
lies strictly inside the segment between them.  Any blocker is collinear
with the pair, so visibility is decided entirely by the arrangement of
lines spanned by the set; `LineIncidenceMap` records that arrangement and
the graph builder reads visible pairs off it as consecutive points along
each line.  A direct per-pair reference implementation is kept alongside
as the oracle.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .clique import find_max_clique
from .errors import DuplicatePointError, ImpossibleStateError, InputError
from .geometry import (
    CanonicalLine,
    Point,
    _homogeneous,
    _line_eval_hom,
    _line_from_hom,
    line_through,
    on_open_segment,
)


class PointSet:
    """Immutable, 1-indexed collection of pairwise distinct exact points."""

    __slots__ = ("_points", "_hom")

    def __init__(self, points: Iterable[Sequence]):
        pts: list[Point] = []
        seen: dict[Point, int] = {}
        for pos, raw in enumerate(points, start=1):
            p = _coerce_point(raw, pos)
            first = seen.get(p)
            if first is not None:
                raise DuplicatePointError(
                    f"points {first} and {pos} are both {p}"
                )
            seen[p] = pos
            pts.append(p)
        self._points = tuple(pts)
        self._hom: list[tuple[int, int, int]] | None = None

    @property
    def n(self) -> int:
        return len(self._points)

    @property
    def points(self) -> tuple[Point, ...]:
        return self._points

    def point(self, i: int) -> Point:
        """Point at 1-based index i."""
        if not 1 <= i <= len(self._points):
            raise InputError(f"point index {i} outside 1..{len(self._points)}")
        return self._points[i - 1]

    def homogeneous(self) -> list[tuple[int, int, int]]:
        """Cached integer triples (X, Y, W), W > 0, for exact predicates."""
        if self._hom is None:
            self._hom = [_homogeneous(p) for p in self._points]
        return self._hom

    def __len__(self) -> int:
        return len(self._points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self._points)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PointSet):
            return NotImplemented
        return self._points == other._points

    def __repr__(self) -> str:
        return f"PointSet({len(self._points)} points)"


def _coerce_point(raw: Sequence, pos: int) -> Point:
    try:
        x, y = raw
    except (TypeError, ValueError) as exc:
        raise InputError(f"point {pos} is not an (x, y) pair: {raw!r}") from exc
    for coord in (x, y):
        if isinstance(coord, bool) or not isinstance(coord, (int, Fraction)):
            raise InputError(
                f"point {pos} has a non-rational coordinate {coord!r}; "
                "coordinates must be int or Fraction to stay exact"
            )
    return Point(Fraction(x), Fraction(y))


class LineIncidenceMap:
    """Every line spanned by a point set, with the indices it carries.

    Each entry maps a canonical line to the ascending list of 1-based
    indices of all points on it (always >= 2).  Every unordered pair of
    distinct indices therefore appears in exactly one entry's list.
    """

    __slots__ = ("_entries",)

    def __init__(self) -> None:
        self._entries: dict[CanonicalLine, list[int]] = {}

    @classmethod
    def from_point_set(cls, ps: PointSet | Sequence[Point]) -> LineIncidenceMap:
        """Build the full map over all pairs of the set."""
        if isinstance(ps, PointSet):
            hom = ps.homogeneous()
        else:
            hom = [_homogeneous(Point(*p)) for p in ps]
        lmap = cls()
        entries = lmap._entries
        for j in range(1, len(hom)):
            hj = hom[j]
            for i in range(j):
                line = _line_from_hom(hom[i], hj)
                lst = entries.get(line)
                if lst is None:
                    entries[line] = [i + 1, j + 1]
                elif lst[-1] != j + 1:
                    lst.append(j + 1)
        return lmap

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, line: CanonicalLine) -> bool:
        return line in self._entries

    def get(self, line: CanonicalLine) -> tuple[int, ...] | None:
        lst = self._entries.get(line)
        return None if lst is None else tuple(lst)

    def entries(self) -> Iterator[tuple[CanonicalLine, tuple[int, ...]]]:
        """All (line, ascending indices) entries, in deterministic order."""
        for line, lst in self._entries.items():
            yield line, tuple(lst)

    def multi_entries(self) -> Iterator[tuple[CanonicalLine, tuple[int, ...]]]:
        """Entries whose line carries three or more points."""
        for line, lst in self._entries.items():
            if len(lst) >= 3:
                yield line, tuple(lst)

    def two_point_pairs(self) -> set[tuple[int, int]]:
        """Index pairs whose spanning line carries no third point."""
        return {
            (lst[0], lst[1]) for lst in self._entries.values() if len(lst) == 2
        }

    def max_entry(self) -> tuple[CanonicalLine, tuple[int, ...]] | None:
        """A most-populated entry; ties resolved to the smallest index list."""
        best: tuple[CanonicalLine, list[int]] | None = None
        for line, lst in self._entries.items():
            if best is None or (-len(lst), lst) < (-len(best[1]), best[1]):
                best = (line, lst)
        if best is None:
            return None
        return best[0], tuple(best[1])

    def pair_count(self) -> int:
        """Sum of pairs over entries; equals C(n, 2) on a full map."""
        return sum(m * (m - 1) // 2 for m in map(len, self._entries.values()))


def _sorted_along_line(
    indices: Iterable[int], points: Sequence[Point], line: CanonicalLine
) -> list[int]:
    """Indices ordered by position along the line (1-based indices)."""
    if line.b == 0:
        return sorted(indices, key=lambda i: points[i - 1].y)
    return sorted(indices, key=lambda i: points[i - 1].x)


class VisibilityGraph:
    """Undirected graph of mutually visible index pairs of a point set."""

    __slots__ = ("n", "edges", "_edge_set", "_adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        self.n = n
        normalized = {(i, j) if i < j else (j, i) for i, j in edges}
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(normalized))
        self._edge_set = normalized
        adj: dict[int, set[int]] = {v: set() for v in range(1, n + 1)}
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        self._adj = adj

    def has_edge(self, i: int, j: int) -> bool:
        return ((i, j) if i < j else (j, i)) in self._edge_set

    def neighbors(self, i: int) -> frozenset[int]:
        return frozenset(self._adj[i])

    def degree(self, i: int) -> int:
        return len(self._adj[i])

    def adjacency(self) -> dict[int, set[int]]:
        """Copy of the adjacency structure keyed by 1-based vertex."""
        return {v: set(nbrs) for v, nbrs in self._adj.items()}

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def to_edge_list(self) -> list[list[int]]:
        """Sorted JSON-ready edge list of index pairs."""
        return [[i, j] for i, j in self.edges]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VisibilityGraph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __repr__(self) -> str:
        return f"VisibilityGraph(n={self.n}, edges={len(self.edges)})"


def is_visible(i: int, j: int, ps: PointSet) -> bool:
    """True iff no point of ps lies strictly inside segment (p_i, p_j).

    This is the defining per-pair test; the graph builders must agree with
    it edge for edge.
    """
    if i == j:
        raise InputError(f"visibility needs two distinct indices, got {i} twice")
    a = ps.point(i)
    b = ps.point(j)
    for r, p in enumerate(ps.points, start=1):
        if r == i or r == j:
            continue
        if on_open_segment(p, a, b):
            return False
    return True


def build_visibility_graph_naive(ps: PointSet) -> VisibilityGraph:
    """Reference builder: test every pair directly (cubic, oracle only)."""
    edges = [
        (i, j)
        for i in range(1, ps.n + 1)
        for j in range(i + 1, ps.n + 1)
        if is_visible(i, j, ps)
    ]
    return VisibilityGraph(ps.n, edges)


def build_visibility_graph(ps: PointSet) -> VisibilityGraph:
    """Visibility graph via line incidence: a pair is visible exactly when
    it is consecutive along the (unique) line through it."""
    lmap = LineIncidenceMap.from_point_set(ps)
    edges: list[tuple[int, int]] = []
    for line, lst in lmap._entries.items():
        if len(lst) == 2:
            edges.append((lst[0], lst[1]))
        else:
            ordered = _sorted_along_line(lst, ps.points, line)
            for u, v in zip(ordered, ordered[1:]):
                edges.append((u, v) if u < v else (v, u))
    return VisibilityGraph(ps.n, edges)


def max_collinear(ps: PointSet) -> tuple[int, list[int]]:
    """Size and ascending witness of a largest collinear subset."""
    if ps.n < 2:
        raise InputError(f"max_collinear needs at least 2 points, got {ps.n}")
    lmap = LineIncidenceMap.from_point_set(ps)
    entry = lmap.max_entry()
    if entry is None:  # unreachable with n >= 2
        raise ImpossibleStateError("no lines in a set of >= 2 points")
    _, idxs = entry
    return len(idxs), list(idxs)


def max_visible_clique(ps: PointSet, cap: int | None = None) -> tuple[int, list[int]]:
    """Size and ascending witness of a largest pairwise-visible subset.

    With ``cap`` the search stops at the first clique of that size, so the
    result is min(true maximum, cap) with a witness of exactly that size.
    """
    if ps.n < 1:
        raise InputError("max_visible_clique needs a non-empty point set")
    graph = build_visibility_graph(ps)
    witness = find_max_clique(range(1, ps.n + 1), graph.adjacency(), cap=cap)
    return len(witness), witness


class BlbcOutcome(enum.Enum):
    """Which of the two structures reached its threshold."""

    COLLINEAR_FOUND = "CollinearFound"
    CLIQUE_FOUND = "CliqueFound"
    BOTH_FOUND = "BothFound"
    NEITHER_FOUND = "NeitherFound"


@dataclass(frozen=True)
class BlbcVerdict:
    """Outcome of one big-line-big-clique check: does the set contain l
    collinear points, or k pairwise visible points?

    ``collinear_size`` is the exact maximum.  ``clique_size`` is exact when
    below ``k``; once a clique of size ``k`` exists the search stops there,
    so the reported size is min(true maximum, k).  Witnesses are included
    only for structures that reached their threshold.
    """

    k: int
    l: int
    outcome: BlbcOutcome
    collinear_size: int
    clique_size: int
    collinear_witness: list[int] | None
    clique_witness: list[int] | None

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "l": self.l,
            "outcome": self.outcome.value,
            "collinear_size": self.collinear_size,
            "clique_size": self.clique_size,
            "collinear_witness": self.collinear_witness,
            "clique_witness": self.clique_witness,
        }


def check_blbc_instance(ps: PointSet, k: int, l: int) -> BlbcVerdict:
    """Decide whether ps contains l collinear points or k pairwise visible
    points, with verified witnesses."""
    if k < 2 or l < 2:
        raise InputError(f"thresholds must be >= 2, got k={k}, l={l}")
    if ps.n < 1:
        raise InputError("check_blbc_instance needs a non-empty point set")
    if ps.n >= 2:
        col_size, col_wit = max_collinear(ps)
    else:
        col_size, col_wit = 1, [1]
    cl_size, cl_wit = max_visible_clique(ps, cap=k)

    big_line = col_size >= l
    big_clique = cl_size >= k
    if big_line and big_clique:
        outcome = BlbcOutcome.BOTH_FOUND
    elif big_line:
        outcome = BlbcOutcome.COLLINEAR_FOUND
    elif big_clique:
        outcome = BlbcOutcome.CLIQUE_FOUND
    else:
        outcome = BlbcOutcome.NEITHER_FOUND

    if big_line:
        _assert_collinear(ps, col_wit)
    if big_clique:
        _assert_pairwise_visible(ps, cl_wit)
    return BlbcVerdict(
        k=k,
        l=l,
        outcome=outcome,
        collinear_size=col_size,
        clique_size=cl_size,
        collinear_witness=col_wit if big_line else None,
        clique_witness=cl_wit if big_clique else None,
    )


def _assert_collinear(ps: PointSet, witness: list[int]) -> None:
    line = line_through(ps.point(witness[0]), ps.point(witness[1]))
    for i in witness[2:]:
        if not line.contains(ps.point(i)):
            raise ImpossibleStateError(f"collinear witness {witness} is not collinear")


def _assert_pairwise_visible(ps: PointSet, witness: list[int]) -> None:
    for a in range(len(witness)):
        for b in range(a + 1, len(witness)):
            if not is_visible(witness[a], witness[b], ps):
                raise ImpossibleStateError(
                    f"clique witness {witness} has an invisible pair "
                    f"({witness[a]}, {witness[b]})"
                )


def blocking_parameters(ps: PointSet, i: int, j: int) -> set[Fraction]:
    """Parameters t in (0, 1) where a point placed at a + t*(b - a) on
    segment (p_i, p_j) would be collinear with some other pair of ps.

    Each stored line disjoint from the segment's endpoints crosses the
    segment's interior in at most one point; the returned set collects the
    distinct crossing parameters.  When the pair's own line carries no
    third point, placing a new point at any t outside this set creates
    exactly one collinear triple: {p_i, new, p_j}.
    """
    if i == j:
        raise InputError(f"need two distinct indices, got {i} twice")
    ps.point(i)
    ps.point(j)
    hom = ps.homogeneous()
    a_h = hom[i - 1]
    b_h = hom[j - 1]
    base = _line_from_hom(a_h, b_h)
    out: set[Fraction] = set()
    for line in LineIncidenceMap.from_point_set(ps)._entries:
        if line == base:
            continue
        fa = _line_eval_hom(line, a_h)
        if fa == 0:
            continue  # meets the segment's line at endpoint i only
        fb = _line_eval_hom(line, b_h)
        if fb == 0:
            continue
        if (fa > 0) == (fb > 0):
            continue
        out.add(Fraction(fa * b_h[2], fa * b_h[2] - fb * a_h[2]))
    return out
