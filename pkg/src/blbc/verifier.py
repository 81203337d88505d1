"""Re-verification of construction invariants from raw points and traces.

Every check here recomputes geometry from scratch (independent of the
bookkeeping the construction keeps) and returns a `VerificationReport`
with a machine-readable counterexample on failure:

- ``no4collinear``: no k points of the set share a line.
- ``uniquetriple``: each trace point is collinear with exactly its
  recorded pair, strictly between the two.
- ``visiblepairlemma``: a visible pair whose line carries a third point
  has exactly one such point, it has a smaller index than the pair's
  larger index k, and point k lies strictly between the other two.
- ``trianglepending``: every triangle of the visibility graph keeps at
  least one edge in the pending set.
- ``exclusionbound``: each record's excluded count is within C(n-3, 2).
- ``ordinaryoracle``: a selector's pick equals the exhaustive minimum
  (smallest j, then i) over pairs with no collinear third point.

`verify_construction_run` applies the first five checks to every prefix
of a run while growing one shared incidence structure, so sweeping all
prefixes costs little more than verifying the final set once.  Its
reports are identical to calling the per-prefix functions directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, gcd
from typing import Iterable, Iterator, Sequence

from .construction import ConstructionState, InsertionRecord, OrdinaryPair
from .errors import ConsistencyError, ImpossibleStateError, InputError
from .geometry import (
    CanonicalLine,
    Point,
    _homogeneous,
    _line_from_hom,
    _orient_hom,
    on_open_segment,
)
from .visibility import LineIncidenceMap, PointSet, _sorted_along_line

CHECK_ORDER = (
    "no4collinear",
    "uniquetriple",
    "visiblepairlemma",
    "trianglepending",
    "exclusionbound",
)


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one check: pass/fail, counterexample, and work counts."""

    check: str
    passed: bool
    counterexample: dict | None
    stats: dict

    def to_json_dict(self) -> dict:
        doc: dict = {"check": self.check, "passed": self.passed}
        if self.counterexample is not None:
            doc["counterexample"] = self.counterexample
        doc["stats"] = self.stats
        return doc


# ---------------------------------------------------------------------------
# shared single-structure helpers (used by both pure checks and the sweep)


def _line_json(line: CanonicalLine) -> dict:
    return {"a": line.a, "b": line.b, "c": line.c}


def _lemma_line_failures(
    line: CanonicalLine, members: Sequence[int], points: Sequence[Point]
) -> list[dict]:
    """Failures of the visible-pair conditions on one line with >= 3 points.

    The visible pairs of the line are the consecutive ones along it.  For
    each such pair (i, k) with i < k the line must carry exactly one other
    point i', with i' < k and point k strictly between points i and i'.
    """
    ordered = _sorted_along_line(members, points, line)
    failures: list[dict] = []
    for u, v in zip(ordered, ordered[1:]):
        i, k = (u, v) if u < v else (v, u)
        if len(members) > 3:
            failures.append(
                {
                    "pair": [i, k],
                    "line_points": sorted(members),
                    "reason": "four_collinear",
                }
            )
            continue
        third = next(m for m in members if m != u and m != v)
        if not third < k:
            failures.append(
                {
                    "pair": [i, k],
                    "line_points": sorted(members),
                    "reason": "third_not_earlier",
                }
            )
            continue
        if not on_open_segment(points[k - 1], points[i - 1], points[third - 1]):
            failures.append(
                {
                    "pair": [i, k],
                    "line_points": sorted(members),
                    "reason": "not_between",
                }
            )
    return failures


def _h_triangle_violations(h_edges: Iterable[tuple[int, int]]) -> list[tuple[int, int, int]]:
    """Triangles formed entirely of the given edges, ascending triples.

    Edges must be normalised (i < j).  A triangle of the visibility graph
    violates the pending invariant exactly when all three of its edges lie
    outside the pending set, i.e. when it appears in this subgraph.
    """
    edges = sorted(set(h_edges))
    adj: dict[int, set[int]] = {}
    for i, j in edges:
        adj.setdefault(i, set()).add(j)
        adj.setdefault(j, set()).add(i)
    violations: list[tuple[int, int, int]] = []
    for i, j in edges:
        for k in sorted(adj[i] & adj[j]):
            if k > j:
                violations.append((i, j, k))
    return violations


def _record_failure(
    rec: InsertionRecord,
    hom: Sequence[tuple[int, int, int]],
    points: Sequence[Point],
) -> dict | None:
    """Re-check one insertion record against the first rec.n points.

    Groups the earlier points by exact direction from the new point; the
    collinear pairs through the new point are the pairs within a group.
    Returns a counterexample dict, or None when the record holds.
    """
    m = rec.n
    hx, hy, hw = hom[m - 1]
    buckets: dict[tuple[int, int], list[int]] = {}
    for r in range(1, m):
        rx, ry, rw = hom[r - 1]
        dx = rx * hw - hx * rw
        dy = ry * hw - hy * rw
        if dx == 0 and dy == 0:
            raise ConsistencyError(f"points {r} and {m} coincide")
        g = gcd(dx, dy)
        dx //= g
        dy //= g
        if dx < 0 or (dx == 0 and dy < 0):
            dx, dy = -dx, -dy
        buckets.setdefault((dx, dy), []).append(r)
    collinear_pairs: list[list[int]] = []
    for group in buckets.values():
        for a in range(len(group)):
            for b in range(a + 1, len(group)):
                collinear_pairs.append([group[a], group[b]])
    collinear_pairs.sort()
    pair_matches = collinear_pairs == [[rec.pair.i, rec.pair.j]]
    between = on_open_segment(
        points[m - 1], points[rec.pair.i - 1], points[rec.pair.j - 1]
    )
    if pair_matches and between:
        return None
    return {
        "n": m,
        "expected_pair": [rec.pair.i, rec.pair.j],
        "collinear_pairs": collinear_pairs,
        "on_segment": between,
    }


def _check_trace_against_points(ps: PointSet, trace: Sequence[InsertionRecord]) -> None:
    """Raise ConsistencyError unless trace and ps describe one run."""
    if ps.n != len(trace) + 3:
        raise ConsistencyError(
            f"{ps.n} points do not match {len(trace)} insertion records "
            f"(expected {ps.n - 3 if ps.n >= 3 else 0})"
        )
    for idx, rec in enumerate(trace):
        expected_n = idx + 4
        if rec.n != expected_n:
            raise ConsistencyError(
                f"record {idx} inserts point {rec.n}, expected {expected_n}"
            )
        i, j = rec.pair
        if not (1 <= i < j < rec.n):
            raise ConsistencyError(
                f"record for point {rec.n} names invalid pair ({i}, {j})"
            )
        if rec.point != ps.point(rec.n):
            raise ConsistencyError(
                f"record for point {rec.n} carries {rec.point}, "
                f"but the set has {ps.point(rec.n)}"
            )


def _normalize_pending(pending: Iterable[Sequence[int]], n: int) -> set[tuple[int, int]]:
    out: set[tuple[int, int]] = set()
    for raw in pending:
        try:
            i, j = raw
        except (TypeError, ValueError) as exc:
            raise InputError(f"pending entry {raw!r} is not an index pair") from exc
        if not (1 <= i < j <= n):
            raise InputError(f"pending pair ({i}, {j}) outside 1 <= i < j <= {n}")
        out.add((i, j))
    return out


# ---------------------------------------------------------------------------
# pure per-call checks


def verify_no_k_collinear(ps: PointSet, k: int = 4) -> VerificationReport:
    """No k points of ps on one line; vacuously true below k points."""
    if k < 3:
        raise InputError(f"collinearity threshold must be >= 3, got {k}")
    name = f"no{k}collinear"
    if ps.n < 2:
        return VerificationReport(
            name, True, None, {"points": ps.n, "lines": 0, "max_collinear": ps.n}
        )
    lmap = LineIncidenceMap.from_point_set(ps)
    counterexample = None
    max_size = 2
    worst: tuple[list[int], CanonicalLine] | None = None
    for line, lst in lmap._entries.items():
        if len(lst) > max_size:
            max_size = len(lst)
        if len(lst) >= k and (worst is None or lst < worst[0]):
            worst = (lst, line)
    if worst is not None:
        counterexample = {"indices": list(worst[0]), "line": _line_json(worst[1])}
    return VerificationReport(
        name,
        worst is None,
        counterexample,
        {"points": ps.n, "lines": len(lmap), "max_collinear": max_size},
    )


def verify_unique_triple_at_insertion(
    trace: Sequence[InsertionRecord], ps: PointSet
) -> VerificationReport:
    """Each inserted point is collinear with exactly its recorded pair and
    lies strictly between the two."""
    _check_trace_against_points(ps, trace)
    hom = ps.homogeneous()
    counterexample = None
    for rec in trace:
        failure = _record_failure(rec, hom, ps.points)
        if failure is not None:
            counterexample = failure
            break
    return VerificationReport(
        "uniquetriple",
        counterexample is None,
        counterexample,
        {"records": len(trace), "points": ps.n},
    )


def verify_visible_pair_lemma(ps: PointSet) -> VerificationReport:
    """Visible pairs on lines with a third point satisfy the blocker shape:
    one extra point, of smaller index than the pair's larger index k, with
    point k strictly between the pair's other point and that extra point."""
    lmap = LineIncidenceMap.from_point_set(ps) if ps.n >= 2 else LineIncidenceMap()
    qualifying = 0
    failures: list[dict] = []
    for line, lst in lmap._entries.items():
        if len(lst) < 3:
            continue
        qualifying += len(lst) - 1
        failures.extend(_lemma_line_failures(line, lst, ps.points))
    counterexample = min(failures, key=lambda f: f["pair"]) if failures else None
    return VerificationReport(
        "visiblepairlemma",
        not failures,
        counterexample,
        {"points": ps.n, "qualifying_pairs": qualifying},
    )


def verify_triangle_pending(
    ps: PointSet, pending: Iterable[Sequence[int]]
) -> VerificationReport:
    """Every triangle of the visibility graph keeps at least one edge in
    ``pending``; equivalently, the subgraph of visible non-pending edges
    is triangle-free."""
    pending_set = _normalize_pending(pending, ps.n)
    edges: list[tuple[int, int]] = []
    if ps.n >= 2:
        lmap = LineIncidenceMap.from_point_set(ps)
        for line, lst in lmap._entries.items():
            if len(lst) == 2:
                edges.append((lst[0], lst[1]))
            else:
                ordered = _sorted_along_line(lst, ps.points, line)
                for u, v in zip(ordered, ordered[1:]):
                    edges.append((u, v) if u < v else (v, u))
    h_edges = [e for e in edges if e not in pending_set]
    violations = _h_triangle_violations(h_edges)
    counterexample = {"triangle": list(violations[0])} if violations else None
    return VerificationReport(
        "trianglepending",
        not violations,
        counterexample,
        {
            "points": ps.n,
            "visible_edges": len(edges),
            "candidate_edges": len(h_edges),
            "violations": len(violations),
        },
    )


def verify_exclusion_bound(trace: Sequence[InsertionRecord]) -> VerificationReport:
    """Each record's excluded_count lies within 0..C(n-3, 2)."""
    counterexample = None
    for rec in trace:
        bound = comb(rec.n - 3, 2)
        if not 0 <= rec.excluded_count <= bound:
            counterexample = {
                "n": rec.n,
                "excluded_count": rec.excluded_count,
                "bound": bound,
            }
            break
    return VerificationReport(
        "exclusionbound",
        counterexample is None,
        counterexample,
        {"records": len(trace)},
    )


def _ordinary_pairs_exhaustive(ps: PointSet) -> list[OrdinaryPair]:
    """All pairs with no third collinear point, by brute-force orientation."""
    hom = ps.homogeneous()
    n = ps.n
    out: list[OrdinaryPair] = []
    for j in range(2, n + 1):
        for i in range(1, j):
            ordinary = True
            for r in range(1, n + 1):
                if r == i or r == j:
                    continue
                if _orient_hom(hom[i - 1], hom[j - 1], hom[r - 1]) == 0:
                    ordinary = False
                    break
            if ordinary:
                out.append(OrdinaryPair(i, j))
    return out


def verify_ordinary_oracle(
    ps: PointSet, selected: Sequence[int] | None
) -> VerificationReport:
    """``selected`` equals the exhaustive minimum (smallest j, then i) over
    pairs with no collinear third point; fails when no such pair exists."""
    if ps.n < 2:
        raise InputError(f"ordinary-pair check needs >= 2 points, got {ps.n}")
    sel: OrdinaryPair | None = None
    if selected is not None:
        try:
            si, sj = selected
        except (TypeError, ValueError) as exc:
            raise InputError(f"selected pair {selected!r} is not an index pair") from exc
        if not (1 <= si < sj <= ps.n):
            raise InputError(f"selected pair ({si}, {sj}) outside 1 <= i < j <= {ps.n}")
        sel = OrdinaryPair(si, sj)
    ordinary = _ordinary_pairs_exhaustive(ps)
    expected = min(ordinary, key=lambda p: p.key) if ordinary else None
    passed = expected is not None and sel == expected
    counterexample = None
    if not passed:
        counterexample = {
            "selected": list(sel) if sel is not None else None,
            "expected": list(expected) if expected is not None else None,
        }
    return VerificationReport(
        "ordinaryoracle",
        passed,
        counterexample,
        {"points": ps.n, "ordinary_pairs": len(ordinary)},
    )


def verify_trace_selections(
    ps: PointSet, trace: Sequence[InsertionRecord]
) -> VerificationReport:
    """Every recorded pair equals the exhaustive ordinary-pair minimum for
    its prefix.  One aggregated report over the whole trace."""
    _check_trace_against_points(ps, trace)
    counterexample = None
    for rec in trace:
        prefix = PointSet(ps.points[: rec.n - 1])
        step = verify_ordinary_oracle(prefix, rec.pair)
        if not step.passed:
            counterexample = dict(step.counterexample or {})
            counterexample["n"] = rec.n
            break
    return VerificationReport(
        "ordinaryoracle",
        counterexample is None,
        counterexample,
        {"steps": len(trace), "points": ps.n},
    )


# ---------------------------------------------------------------------------
# incremental sweep over every prefix of a construction run


class _SweepMap:
    """Verifier-side incidence structure grown point by point from raw
    coordinates; the construction's own bookkeeping is never consulted."""

    def __init__(self) -> None:
        self.entries: dict[CanonicalLine, list[int]] = {}
        self.hom: list[tuple[int, int, int]] = []
        self.points: list[Point] = []
        self.visible_edges = 0
        self.two_point_pairs: set[tuple[int, int]] = set()
        self.multi: dict[CanonicalLine, list[int]] = {}  # sorted along line
        self.lemma_failures: dict[CanonicalLine, list[dict]] = {}
        self.max_line: int = 0

    def add_point(self, p: Point) -> None:
        self.points.append(p)
        hp = _homogeneous(p)
        self.hom.append(hp)
        n = len(self.points)
        changed: list[CanonicalLine] = []
        for m in range(1, n):
            line = _line_from_hom(self.hom[m - 1], hp)
            lst = self.entries.get(line)
            if lst is None:
                self.entries[line] = [m, n]
                self.two_point_pairs.add((m, n))
                self.visible_edges += 1
                if self.max_line < 2:
                    self.max_line = 2
            elif lst[-1] != n:
                lst.append(n)
                self.visible_edges += 1
                if len(lst) == 3:
                    self.two_point_pairs.discard((lst[0], lst[1]))
                if len(lst) > self.max_line:
                    self.max_line = len(lst)
                changed.append(line)
        for line in changed:
            lst = self.entries[line]
            self.multi[line] = _sorted_along_line(lst, self.points, line)
            fails = _lemma_line_failures(line, lst, self.points)
            if fails:
                self.lemma_failures[line] = fails
            else:
                self.lemma_failures.pop(line, None)


def verify_construction_run(
    states: Iterable[ConstructionState],
    k: int = 4,
    checks: Sequence[str] | None = None,
) -> tuple[list[tuple[int, list[VerificationReport]]], ConstructionState]:
    """Run the prefix checks on every yielded state of a construction run.

    ``states`` is consumed once (pass ``generate_states(...)`` directly).
    Returns the per-prefix reports plus the final state.  Reports are
    identical to calling the corresponding pure check on each prefix.
    Raises ConsistencyError if the yielded states do not grow one point at
    a time from a seed triple, or if a state's pending set diverges from
    the two-point lines of its own points.
    """
    if k < 3:
        raise InputError(f"collinearity threshold must be >= 3, got {k}")
    selected = list(CHECK_ORDER) if checks is None else list(checks)
    unknown = [c for c in selected if c not in CHECK_ORDER]
    if unknown:
        raise InputError(f"unknown checks: {unknown}; known: {list(CHECK_ORDER)}")
    name_no_k = f"no{k}collinear"

    sweep = _SweepMap()
    record_failures: list[dict] = []
    bound_failures: list[dict] = []
    results: list[tuple[int, list[VerificationReport]]] = []
    state: ConstructionState | None = None
    expected_n = 3

    for state in states:
        n = len(state.points)
        if n != expected_n:
            raise ConsistencyError(
                f"states must grow one point at a time from 3; got {n}, "
                f"expected {expected_n}"
            )
        expected_n += 1
        if n == 3:
            if len(state.trace) != 0:
                raise ConsistencyError("seed state carries insertion records")
            for p in state.points:
                sweep.add_point(p)
        else:
            if len(state.trace) != n - 3:
                raise ConsistencyError(
                    f"state with {n} points carries {len(state.trace)} records"
                )
            rec = state.trace[-1]
            if rec.n != n or state.points[-1] != rec.point:
                raise ConsistencyError(
                    f"last record ({rec.n}) does not describe the newest point ({n})"
                )
            if not (1 <= rec.pair.i < rec.pair.j < rec.n):
                raise ConsistencyError(
                    f"record for point {rec.n} names invalid pair {tuple(rec.pair)}"
                )
            sweep.add_point(state.points[-1])
            failure = _record_failure(rec, sweep.hom, sweep.points)
            if failure is not None:
                record_failures.append(failure)
            bound = comb(rec.n - 3, 2)
            if not 0 <= rec.excluded_count <= bound:
                bound_failures.append(
                    {"n": rec.n, "excluded_count": rec.excluded_count, "bound": bound}
                )

        if state.pending != sweep.two_point_pairs:
            extra = sorted(tuple(p) for p in state.pending - sweep.two_point_pairs)
            missing = sorted(sweep.two_point_pairs - state.pending)
            raise ConsistencyError(
                f"pending set diverges from two-point lines at {n} points: "
                f"extra {extra[:5]}, missing {missing[:5]}"
            )

        reports = []
        for check in selected:
            reports.append(_sweep_report(check, name_no_k, k, sweep, state,
                                          record_failures, bound_failures))
        results.append((n, reports))

    if state is None:
        raise InputError("no states to verify")
    return results, state


def _sweep_report(
    check: str,
    name_no_k: str,
    k: int,
    sweep: _SweepMap,
    state: ConstructionState,
    record_failures: list[dict],
    bound_failures: list[dict],
) -> VerificationReport:
    n = len(sweep.points)
    if check == "no4collinear":
        worst: tuple[list[int], CanonicalLine] | None = None
        if sweep.max_line >= k:
            for line, lst in sweep.entries.items():
                if len(lst) >= k and (worst is None or lst < worst[0]):
                    worst = (lst, line)
        counterexample = (
            {"indices": list(worst[0]), "line": _line_json(worst[1])}
            if worst is not None
            else None
        )
        return VerificationReport(
            name_no_k,
            worst is None,
            counterexample,
            {"points": n, "lines": len(sweep.entries), "max_collinear": sweep.max_line},
        )
    if check == "uniquetriple":
        counterexample = record_failures[0] if record_failures else None
        return VerificationReport(
            "uniquetriple",
            not record_failures,
            counterexample,
            {"records": len(state.trace), "points": n},
        )
    if check == "visiblepairlemma":
        qualifying = sum(len(lst) - 1 for lst in sweep.multi.values())
        failures = [f for fails in sweep.lemma_failures.values() for f in fails]
        counterexample = min(failures, key=lambda f: f["pair"]) if failures else None
        return VerificationReport(
            "visiblepairlemma",
            not failures,
            counterexample,
            {"points": n, "qualifying_pairs": qualifying},
        )
    if check == "trianglepending":
        h_edges = []
        for lst in sweep.multi.values():
            for u, v in zip(lst, lst[1:]):
                h_edges.append((u, v) if u < v else (v, u))
        violations = _h_triangle_violations(h_edges)
        counterexample = {"triangle": list(violations[0])} if violations else None
        return VerificationReport(
            "trianglepending",
            not violations,
            counterexample,
            {
                "points": n,
                "visible_edges": sweep.visible_edges,
                "candidate_edges": len(h_edges),
                "violations": len(violations),
            },
        )
    if check == "exclusionbound":
        counterexample = bound_failures[0] if bound_failures else None
        return VerificationReport(
            "exclusionbound",
            not bound_failures,
            counterexample,
            {"records": len(state.trace)},
        )
    raise ImpossibleStateError(f"unhandled check {check!r}")
