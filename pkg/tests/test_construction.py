import itertools
from fractions import Fraction
from math import comb

import pytest

from blbc.construction import (
    DEFAULT_SEED,
    ConstructionState,
    InsertionRecord,
    OrdinaryPair,
    SeedTriple,
    choose_parameter,
    excluded_parameters,
    farey_order,
    generate,
    generate_states,
    init_state,
    insert_point,
    select_ordinary_pair,
    state_from_points,
)
from blbc.errors import (
    ImpossibleStateError,
    InputError,
    ParameterRangeError,
    PendingPairError,
    PlacementError,
    SeedError,
)
from blbc.geometry import Point, on_open_segment
from blbc.visibility import LineIncidenceMap, is_visible

F = Fraction

GOLDEN_RECORDS = [
    (4, (1, 2), 0, F(1, 2), (F(1, 2), F(0))),
    (5, (1, 3), 0, F(1, 2), (F(0), F(1, 2))),
    (6, (2, 3), 0, F(1, 2), (F(1, 2), F(1, 2))),
    (7, (3, 4), 2, F(1, 3), (F(1, 6), F(2, 3))),
    (8, (2, 5), 3, F(1, 3), (F(2, 3), F(1, 6))),
]


def as_tuples(trace):
    return [
        (r.n, tuple(r.pair), r.excluded_count, r.chosen_t, tuple(r.point))
        for r in trace
    ]


# seeding


def test_default_seed():
    assert DEFAULT_SEED == SeedTriple(
        Point(F(0), F(0)), Point(F(1), F(0)), Point(F(0), F(1))
    )


def test_init_state():
    state = init_state()
    assert state.n == 3
    assert state.trace == []
    assert state.pending == {
        OrdinaryPair(1, 2),
        OrdinaryPair(1, 3),
        OrdinaryPair(2, 3),
    }
    assert state.point(1) == Point(F(0), F(0))
    assert state.point_set().n == 3


def test_init_state_rejects_bad_seeds():
    with pytest.raises(SeedError):
        init_state([(0, 0), (1, 0)])
    with pytest.raises(SeedError):
        init_state([(0, 0), (1, 0), (1, 0), (0, 1)])
    with pytest.raises(SeedError):
        init_state([(0, 0), (1, 0), (1, 0)])
    with pytest.raises(SeedError):
        init_state([(0, 0), (1, 1), (2, 2)])


def test_state_from_points_pending_matches_two_point_lines():
    pts = [(0, 0), (4, 0), (0, 4), (1, 1)]
    state = state_from_points(pts)
    assert state.n == 4
    assert state.trace == []
    lmap = LineIncidenceMap.from_point_set(state.point_set())
    assert {tuple(p) for p in state.pending} == lmap.two_point_pairs()


def test_state_from_points_rejects_four_collinear():
    with pytest.raises(InputError):
        state_from_points([(0, 0), (1, 0), (2, 0), (3, 0), (0, 1)])


def test_state_from_points_allows_three_collinear():
    state = state_from_points([(0, 0), (1, 0), (2, 0)])
    assert state.pending == set()
    with pytest.raises(ImpossibleStateError):
        select_ordinary_pair(state)


def test_state_from_points_needs_three():
    with pytest.raises(InputError):
        state_from_points([(0, 0), (1, 0)])


# selection


def test_selection_order_prefers_small_j_then_i():
    assert OrdinaryPair(2, 5).key == (5, 2)
    pairs = [OrdinaryPair(1, 4), OrdinaryPair(3, 4), OrdinaryPair(1, 2)]
    assert min(pairs, key=lambda p: p.key) == OrdinaryPair(1, 2)


def test_select_on_fresh_state():
    assert select_ordinary_pair(init_state()) == OrdinaryPair(1, 2)


def test_select_is_a_peek():
    state = init_state()
    before = set(state.pending)
    assert select_ordinary_pair(state) == select_ordinary_pair(state)
    assert state.pending == before


def test_select_sequence_follows_golden_trace():
    state = init_state()
    for n, pair, _, t, _ in GOLDEN_RECORDS:
        assert tuple(select_ordinary_pair(state)) == pair, n
        insert_point(state, pair, t)


def test_select_after_three_insertions():
    state = generate(DEFAULT_SEED, 6)
    assert select_ordinary_pair(state) == OrdinaryPair(3, 4)


def test_select_matches_direct_minimum_at_every_step():
    for state in generate_states(DEFAULT_SEED, 25):
        expected = min(state.pending, key=lambda p: p.key)
        assert select_ordinary_pair(state) == expected


# excluded parameters and choice


def test_excluded_parameters_empty_with_no_crossing_lines():
    state = init_state()
    assert excluded_parameters(state, (1, 2)) == set()


def test_excluded_parameters_crossing_example():
    state = state_from_points([(0, 0), (4, 0), (0, 4), (1, 1)])
    assert excluded_parameters(state, (1, 2)) == {F(1, 3)}


def test_excluded_parameters_requires_pending_pair():
    state = init_state()
    with pytest.raises(PendingPairError):
        excluded_parameters(state, (1, 4))
    with pytest.raises(PendingPairError):
        excluded_parameters(state, (2, 1))


def test_excluded_counts_along_golden_run():
    state = init_state()
    for n, pair, count, t, _ in GOLDEN_RECORDS:
        assert len(excluded_parameters(state, pair)) == count, n
        insert_point(state, pair, t)


def test_farey_order_prefix():
    got = list(itertools.islice(farey_order(), 11))
    assert got == [
        F(1, 2), F(1, 3), F(2, 3), F(1, 4), F(3, 4),
        F(1, 5), F(2, 5), F(3, 5), F(4, 5), F(1, 6), F(5, 6),
    ]


def test_farey_order_values_are_reduced_and_in_range():
    for t in itertools.islice(farey_order(), 200):
        assert 0 < t < 1


def test_choose_parameter():
    assert choose_parameter(set()) == F(1, 2)
    assert choose_parameter({F(1, 2)}) == F(1, 3)
    assert choose_parameter({F(1, 2), F(1, 3), F(2, 3)}) == F(1, 4)


def test_choose_parameter_never_returns_excluded():
    excluded = {F(p, q) for q in range(2, 9) for p in range(1, q)}
    t = choose_parameter(excluded)
    assert t not in excluded
    assert 0 < t < 1


# insertion


def test_insert_point_returns_same_state_and_records_step():
    state = init_state()
    out = insert_point(state, (1, 2), F(1, 2))
    assert out is state
    assert state.n == 4
    rec = state.trace[-1]
    assert rec == InsertionRecord(
        n=4,
        pair=OrdinaryPair(1, 2),
        excluded_count=0,
        chosen_t=F(1, 2),
        point=Point(F(1, 2), F(0)),
    )
    assert OrdinaryPair(1, 2) not in state.pending
    assert {p for p in state.pending if p.j == 4} == {
        OrdinaryPair(3, 4)
    }


def test_insert_point_validates_parameter():
    state = init_state()
    with pytest.raises(InputError):
        insert_point(state, (1, 2), 0.5)
    with pytest.raises(ParameterRangeError):
        insert_point(state, (1, 2), F(0))
    with pytest.raises(ParameterRangeError):
        insert_point(state, (1, 2), F(1))
    with pytest.raises(ParameterRangeError):
        insert_point(state, (1, 2), F(3, 2))
    assert state.n == 3 and state.trace == []


def test_insert_point_rejects_non_pending_pair():
    state = init_state()
    with pytest.raises(PendingPairError):
        insert_point(state, (1, 4), F(1, 2))
    insert_point(state, (1, 2), F(1, 2))
    with pytest.raises(PendingPairError):
        insert_point(state, (1, 2), F(1, 3))


def test_insert_point_rejects_excluded_parameter():
    state = state_from_points([(0, 0), (4, 0), (0, 4), (1, 1)])
    with pytest.raises(PlacementError):
        insert_point(state, (1, 2), F(1, 3))
    # an unblocked value on the same pair works
    insert_point(state, (1, 2), F(1, 2))
    assert state.n == 5


def test_insert_point_excluded_kwarg_matches_recomputation():
    manual = init_state()
    auto = init_state()
    for _ in range(12):
        pair = select_ordinary_pair(manual)
        excl = excluded_parameters(manual, pair)
        t = choose_parameter(excl)
        insert_point(manual, pair, t, _excluded=excl)
        insert_point(auto, select_ordinary_pair(auto), t)
    assert as_tuples(manual.trace) == as_tuples(auto.trace)


# full runs


def test_generate_golden_trace():
    state = generate(DEFAULT_SEED, 8)
    assert as_tuples(state.trace) == GOLDEN_RECORDS
    assert state.n == 8


def test_generate_is_deterministic():
    first = generate(DEFAULT_SEED, 30)
    second = generate(DEFAULT_SEED, 30)
    assert first.points == second.points
    assert as_tuples(first.trace) == as_tuples(second.trace)


def test_generate_states_yields_live_state_per_size():
    sizes = []
    objs = set()
    for state in generate_states(DEFAULT_SEED, 9):
        sizes.append(state.n)
        objs.add(id(state))
    assert sizes == list(range(3, 10))
    assert len(objs) == 1


def test_generate_count_validation():
    with pytest.raises(InputError):
        generate(DEFAULT_SEED, 2)
    assert generate(DEFAULT_SEED, 3).n == 3


def test_generate_from_custom_seed():
    state = generate([(0, 0), (2, 0), (1, 3)], 12)
    assert state.n == 12
    lmap = LineIncidenceMap.from_point_set(state.point_set())
    assert max(len(lst) for _, lst in lmap.entries()) == 3
    assert {tuple(p) for p in state.pending} == lmap.two_point_pairs()


def test_construction_invariants_hold_along_run():
    for state in generate_states(DEFAULT_SEED, 20):
        lmap = LineIncidenceMap.from_point_set(state.point_set())
        assert {tuple(p) for p in state.pending} == lmap.two_point_pairs()
        assert dict(state.lines._entries) == dict(lmap._entries)
        assert all(len(lst) <= 3 for _, lst in lmap.entries())


def test_records_describe_blocked_midpoints():
    state = generate(DEFAULT_SEED, 20)
    ps = state.point_set()
    for rec in state.trace:
        i, j = rec.pair
        assert on_open_segment(ps.point(rec.n), ps.point(i), ps.point(j))
        # once blocked, the pair stays invisible in every later prefix
        assert not is_visible(i, j, ps)
        assert rec.excluded_count <= comb(rec.n - 3, 2)
        assert rec.n == ps.points.index(rec.point) + 1


def test_selected_keys_strictly_increase():
    state = generate(DEFAULT_SEED, 40)
    keys = [rec.pair.key for rec in state.trace]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys)


def test_no_selectable_pair_left_behind():
    # every pair ordered before the last selected one was either consumed
    # by selection or sits on a line that carries three points
    state = generate(DEFAULT_SEED, 40)
    last_key = state.trace[-1].pair.key
    selected = {rec.pair for rec in state.trace}
    on_full_line = {
        (lst[a], lst[b])
        for _, lst in state.lines.entries()
        if len(lst) == 3
        for a in range(3)
        for b in range(a + 1, 3)
    }
    for j in range(2, state.n + 1):
        for i in range(1, j):
            pair = OrdinaryPair(i, j)
            if pair.key >= last_key:
                continue
            assert pair in selected or tuple(pair) in on_full_line, pair
