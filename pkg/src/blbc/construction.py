"""Incremental construction of point sets with no 4 collinear points in
which every mutually-visible pair eventually gains a blocker.

Starting from a non-collinear seed triple, each step picks the pending
pair (i, j) whose spanning line carries no third point, minimising j and
then i, and inserts a new point strictly between p_i and p_j.  The
parameter t for the new point is the first value in Farey order (1/2,
1/3, 2/3, 1/4, 3/4, ...) that avoids every line spanned by the other
points, so the new point is collinear with exactly the pair it blocks.
The number of excluded parameters is at most C(n-3, 2) when inserting
point n, so a fresh parameter always exists.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import (
    ImpossibleStateError,
    InputError,
    ParameterRangeError,
    PendingPairError,
    PlacementError,
    SeedError,
)
from .geometry import (
    Orientation,
    Point,
    _homogeneous,
    _line_eval_hom,
    _line_from_hom,
    orientation,
    segment_param_point,
)
from .visibility import LineIncidenceMap, PointSet, _coerce_point


class OrdinaryPair(NamedTuple):
    """Index pair (i < j) whose spanning line carries no third point."""

    i: int
    j: int

    @property
    def key(self) -> tuple[int, int]:
        """Selection order key: minimise j first, then i."""
        return (self.j, self.i)


class SeedTriple(NamedTuple):
    """Three pairwise distinct, non-collinear starting points."""

    first: Point
    second: Point
    third: Point


DEFAULT_SEED = SeedTriple(
    Point(Fraction(0), Fraction(0)),
    Point(Fraction(1), Fraction(0)),
    Point(Fraction(0), Fraction(1)),
)


@dataclass(frozen=True)
class InsertionRecord:
    """One construction step: point ``n`` placed on pair ``pair`` at
    parameter ``chosen_t`` after ruling out ``excluded_count`` parameters."""

    n: int
    pair: OrdinaryPair
    excluded_count: int
    chosen_t: Fraction
    point: Point


class ConstructionState:
    """Mutable construction state.

    ``points`` is 1-indexed via :meth:`point`; ``lines`` maps every spanned
    line to the indices on it; ``pending`` holds exactly the pairs whose
    line carries two points; ``trace`` records every insertion so far.
    """

    __slots__ = ("points", "lines", "pending", "trace", "_hom", "_heap")

    def __init__(
        self,
        points: list[Point],
        lines: LineIncidenceMap,
        pending: set[OrdinaryPair],
        trace: list[InsertionRecord],
        hom: list[tuple[int, int, int]],
    ):
        self.points = points
        self.lines = lines
        self.pending = pending
        self.trace = trace
        self._hom = hom
        self._heap: list[tuple[int, int]] = [p.key for p in pending]
        heapq.heapify(self._heap)

    @property
    def n(self) -> int:
        return len(self.points)

    def point(self, i: int) -> Point:
        if not 1 <= i <= len(self.points):
            raise InputError(f"point index {i} outside 1..{len(self.points)}")
        return self.points[i - 1]

    def point_set(self) -> PointSet:
        """Current points as an immutable set (validates distinctness)."""
        return PointSet(self.points)

    def __repr__(self) -> str:
        return f"ConstructionState(n={len(self.points)}, pending={len(self.pending)})"


def init_state(seed: Sequence[Sequence] = DEFAULT_SEED) -> ConstructionState:
    """Fresh state over a seed triple; its three pairs are all pending."""
    pts = [_coerce_point(raw, pos) for pos, raw in enumerate(seed, start=1)]
    if len(pts) != 3:
        raise SeedError(f"seed must contain exactly 3 points, got {len(pts)}")
    for a in range(3):
        for b in range(a + 1, 3):
            if pts[a] == pts[b]:
                raise SeedError(f"seed points {a + 1} and {b + 1} are both {pts[a]}")
    if orientation(*pts) is Orientation.COLLINEAR:
        raise SeedError(f"seed points are collinear: {pts[0]}, {pts[1]}, {pts[2]}")
    hom = [_homogeneous(p) for p in pts]
    lines = LineIncidenceMap()
    pending: set[OrdinaryPair] = set()
    for a, b in ((0, 1), (0, 2), (1, 2)):
        lines._entries[_line_from_hom(hom[a], hom[b])] = [a + 1, b + 1]
        pending.add(OrdinaryPair(a + 1, b + 1))
    return ConstructionState(pts, lines, pending, [], hom)


def state_from_points(points: Iterable[Sequence]) -> ConstructionState:
    """Adopt an existing configuration (distinct, no 4 collinear) so that
    insertion and analysis operate on it; its trace starts empty."""
    ps = PointSet(points)
    if ps.n < 3:
        raise InputError(f"a construction state needs >= 3 points, got {ps.n}")
    lines = LineIncidenceMap.from_point_set(ps)
    pending: set[OrdinaryPair] = set()
    for line, lst in lines._entries.items():
        if len(lst) > 3:
            raise InputError(
                f"{len(lst)} collinear points (indices {lst}) on line "
                f"{tuple(line)}; at most 3 are allowed"
            )
        if len(lst) == 2:
            pending.add(OrdinaryPair(lst[0], lst[1]))
    return ConstructionState(
        list(ps.points), lines, pending, [], list(ps.homogeneous())
    )


def select_ordinary_pair(state: ConstructionState) -> OrdinaryPair:
    """The pending pair minimising j, then i.  Does not modify the state."""
    if not state.pending:
        raise ImpossibleStateError("no pending pair to select")
    heap = state._heap
    while heap:
        j, i = heap[0]
        pair = OrdinaryPair(i, j)
        if pair in state.pending:
            entry = state.lines._entries.get(
                _line_from_hom(state._hom[i - 1], state._hom[j - 1])
            )
            if entry is None or len(entry) != 2:
                raise ImpossibleStateError(
                    f"pending pair {tuple(pair)} lies on a line with "
                    f"{0 if entry is None else len(entry)} recorded points"
                )
            return pair
        heapq.heappop(heap)  # stale entry for a pair no longer pending
    raise ImpossibleStateError("pending set and selection heap disagree")


def _as_pending_pair(state: ConstructionState, pair: Sequence[int]) -> OrdinaryPair:
    try:
        i, j = pair
    except (TypeError, ValueError) as exc:
        raise InputError(f"pair must be two indices, got {pair!r}") from exc
    candidate = OrdinaryPair(int(i), int(j))
    if candidate not in state.pending:
        raise PendingPairError(f"pair {tuple(candidate)} is not pending")
    return candidate


def excluded_parameters(state: ConstructionState, pair: Sequence[int]) -> set[Fraction]:
    """Parameters t in (0, 1) ruled out for inserting on ``pair``: values
    where the new point would land on a line spanned by other points.

    Only lines disjoint from the pair can cross the open segment; a line
    through an endpoint meets the segment's line at that endpoint alone.
    Both facts are asserted against the incidence map, not assumed.
    """
    pair = _as_pending_pair(state, pair)
    i, j = pair
    a_h = state._hom[i - 1]
    b_h = state._hom[j - 1]
    base = _line_from_hom(a_h, b_h)
    wa = a_h[2]
    wb = b_h[2]
    out: set[Fraction] = set()
    for line, members in state.lines._entries.items():
        if line == base:
            continue
        fa = _line_eval_hom(line, a_h)
        if fa == 0:
            if i not in members:
                raise ImpossibleStateError(
                    f"point {i} lies on line {tuple(line)} which does not list it"
                )
            continue  # crosses the segment's line at endpoint i only
        fb = _line_eval_hom(line, b_h)
        if fb == 0:
            if j not in members:
                raise ImpossibleStateError(
                    f"point {j} lies on line {tuple(line)} which does not list it"
                )
            continue
        if i in members or j in members:
            raise ImpossibleStateError(
                f"line {tuple(line)} lists an endpoint of {tuple(pair)} "
                "but passes through neither"
            )
        if (fa > 0) != (fb > 0):
            # strict interior crossing of a disjoint line
            out.add(Fraction(fa * wb, fa * wb - fb * wa))
    return out


def farey_order() -> Iterator[Fraction]:
    """Reduced fractions in (0, 1): 1/2, 1/3, 2/3, 1/4, 3/4, 1/5, 2/5, ..."""
    for q in itertools.count(2):
        for p in range(1, q):
            if gcd(p, q) == 1:
                yield Fraction(p, q)


def choose_parameter(excluded: Iterable[Fraction]) -> Fraction:
    """First parameter in Farey order not present in ``excluded``."""
    banned = set(excluded)
    for t in farey_order():
        if t not in banned:
            return t
    raise ImpossibleStateError("unreachable: Farey order is infinite")


def insert_point(
    state: ConstructionState,
    pair: Sequence[int],
    t: Fraction,
    *,
    _excluded: set[Fraction] | None = None,
) -> ConstructionState:
    """Insert a new point at parameter ``t`` on the pending ``pair``.

    The new point becomes collinear with exactly {p_i, p_j}; the pair
    leaves the pending set and every pair (m, new) for m outside the pair
    becomes pending.  Mutates and returns ``state``; the step's record is
    ``state.trace[-1]``.  ``_excluded`` lets a caller that already
    computed the exclusion set skip recomputing it.
    """
    pair = _as_pending_pair(state, pair)
    i, j = pair
    if not isinstance(t, Fraction):
        raise InputError(f"parameter must be a Fraction, got {t!r}")
    if not 0 < t < 1:
        raise ParameterRangeError(f"parameter {t} is outside the open interval (0, 1)")
    excluded = excluded_parameters(state, pair) if _excluded is None else _excluded
    if t in excluded:
        raise PlacementError(
            f"parameter {t} on pair {tuple(pair)} hits a line spanned by "
            "other points, which would create a second collinear triple"
        )

    new_point = segment_param_point(state.point(i), state.point(j), t)
    n = len(state.points) + 1
    new_hom = _homogeneous(new_point)
    entries = state.lines._entries

    base = _line_from_hom(state._hom[i - 1], state._hom[j - 1])
    base_entry = entries.get(base)
    if base_entry is None or base_entry != [i, j]:
        raise ImpossibleStateError(
            f"pending pair {tuple(pair)} expected a two-point line, found {base_entry}"
        )

    bound = comb(n - 3, 2)
    if len(excluded) > bound:
        raise ImpossibleStateError(
            f"{len(excluded)} excluded parameters exceed the bound {bound} "
            f"when inserting point {n}"
        )

    state.points.append(new_point)
    state._hom.append(new_hom)
    base_entry.append(n)
    state.pending.discard(pair)
    for m in range(1, n):
        if m == i or m == j:
            continue
        line = _line_from_hom(state._hom[m - 1], new_hom)
        if line in entries:
            raise ImpossibleStateError(
                f"new point {n} lies on existing line {tuple(line)}; "
                f"parameter {t} should have been excluded"
            )
        entries[line] = [m, n]
        new_pair = OrdinaryPair(m, n)
        state.pending.add(new_pair)
        heapq.heappush(state._heap, new_pair.key)

    record = InsertionRecord(
        n=n, pair=pair, excluded_count=len(excluded), chosen_t=t, point=new_point
    )
    state.trace.append(record)
    return state


def generate_states(
    seed: Sequence[Sequence] = DEFAULT_SEED, count: int = 3
) -> Iterator[ConstructionState]:
    """Yield the live state at every size from 3 (the seed) up to ``count``.

    The same state object is yielded each time and mutates as iteration
    advances; snapshot anything that must outlive the next step.
    """
    if count < 3:
        raise InputError(f"count must be >= 3, got {count}")
    state = init_state(seed)
    yield state
    while len(state.points) < count:
        pair = select_ordinary_pair(state)
        excluded = excluded_parameters(state, pair)
        t = choose_parameter(excluded)
        insert_point(state, pair, t, _excluded=excluded)
        yield state


def generate(
    seed: Sequence[Sequence] = DEFAULT_SEED, count: int = 3
) -> ConstructionState:
    """Run the construction from ``seed`` until ``count`` points exist."""
    state = None
    for state in generate_states(seed, count):
        pass
    assert state is not None
    return state
