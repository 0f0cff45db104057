import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from c5frac.blowup import shared_table
from c5frac.constants import DEFAULT
from c5frac.funky import _exact_partition, numfunky_rhs, partition_score
from c5frac.graphs import ColoredGraph, count_induced_c5
from c5frac.program_p import (
    LISTED_SURVIVORS,
    FunkyConfig,
    InfeasibleTuple,
    ScanReport,
    best_intra_with_optimal_frame,
    candidate_tuples,
    compare_with_listed,
    enumerate_placements,
    evaluate_p,
    exact_best_intra,
    exact_best_intra_bruteforce,
    expand_to_x,
    frame_is_optimal,
    max_funky_edges,
    objective_p,
    objective_p_float,
    pair_sum,
    placement_key,
    potential_c5_count,
    potential_c5_count_bruteforce,
    raw_placements,
    scan_medium,
    verify_survivors,
    x_orbit_key,
)


def test_n9_survivor():
    out = evaluate_p(9, (3, 3, 1, 1, 1))
    assert out.feasible and out.negative


def test_exact_and_float_agree():
    for n, y in [(9, (3, 3, 1, 1, 1)), (15, (3, 3, 3, 3, 3)), (40, (9, 8, 8, 8, 7)), (500, (101, 100, 100, 100, 99))]:
        exact = objective_p(n, y)
        approx = objective_p_float(n, y)
        if exact is None:
            assert approx is None
        else:
            assert abs(float(exact) - approx) <= 1e-9 * max(1.0, abs(approx))


def test_infeasible_tuple():
    with pytest.raises(InfeasibleTuple):
        objective_p(20, (16, 1, 1, 1, 1))
    assert not evaluate_p(20, (16, 1, 1, 1, 1)).feasible


def test_outcome_validation():
    with pytest.raises(ValueError):
        evaluate_p(9, (1, 3, 3, 1, 1))


def test_candidates_are_the_feasible_compositions():
    n = 14
    rhs = numfunky_rhs(shared_table(n).cstar(n))
    got = set(candidate_tuples(n, rhs))
    want = set()
    for a in range(1, n):
        for b in range(1, a + 1):
            for c in range(1, b + 1):
                for d in range(1, c + 1):
                    e = n - a - b - c - d
                    if 1 <= e <= d and pair_sum((a, b, c, d, e)) >= rhs:
                        want.add((a, b, c, d, e))
    assert got == want


def test_scan_small_range():
    report = scan_medium(9, 12)
    assert (3, 3, 1, 1, 1) in report.y_tuples
    assert all(o.negative and 9 <= o.n <= 12 for o in report.survivors)
    assert report.exact_evaluations <= report.tuples_evaluated
    merged = scan_medium(9, 10).merge(scan_medium(11, 12))
    assert merged.y_tuples == report.y_tuples
    with pytest.raises(ValueError):
        scan_medium(9, 10).merge(scan_medium(12, 12))
    with pytest.raises(ValueError):
        scan_medium(5, 10)


def test_scan_matches_direct_evaluation():
    report = scan_medium(9, 16)
    table = shared_table(16)
    direct = set()
    for n in range(9, 17):
        rhs = numfunky_rhs(table.cstar(n))
        for y in candidate_tuples(n, rhs):
            if evaluate_p(n, y, table).negative:
                direct.add((n, y))
    assert {(o.n, o.y_counts) for o in report.survivors} == direct


def test_expansion():
    xs = expand_to_x((3, 3, 1, 1, 1))
    assert (1, 1, 1, 3, 3) in xs and (1, 1, 3, 1, 3) in xs
    assert len(xs) == 2
    assert x_orbit_key((1, 3, 1, 1, 3)) == x_orbit_key((1, 1, 3, 1, 3))
    assert len(expand_to_x((1, 2, 3, 4, 5))) == 12
    assert len(expand_to_x((1, 2, 3, 4, 5), color_swap=True)) == 6


def test_listed_survivors_are_distinct_orbits():
    keys = {x_orbit_key(x) for x in LISTED_SURVIVORS}
    assert len(keys) == len(LISTED_SURVIVORS) == 23
    assert max(sum(x) for x in LISTED_SURVIVORS) == 22


def test_compare_with_listed_flags_differences():
    report = ScanReport(9, 9, survivors=[evaluate_p(9, (3, 3, 1, 1, 1))])
    out = compare_with_listed(report)
    assert not out["verdict"]
    assert out["x_orbits_found"] == 2 and out["extra_in_scan"] == []


def test_max_funky_edges():
    for x in LISTED_SURVIVORS:
        k, feasible = max_funky_edges(x)
        assert feasible and 0 <= k <= 6
    assert max_funky_edges((1, 1, 1, 3, 3)) == (4, True)


def test_config_validation():
    with pytest.raises(ValueError):
        FunkyConfig((1, 1, 1, 1, 1), (((0, 0), (0, 0)),))
    with pytest.raises(ValueError):
        FunkyConfig((1, 1, 1, 1, 1), (((0, 1), (0, 1)),))
    with pytest.raises(ValueError):
        FunkyConfig((1, 1, 1, 1, 1), (((0, 1), (0, 0)), ((1, 0), (0, 0))))


def test_config_graph():
    cfg = FunkyConfig((2, 1, 2, 1, 1))
    assert count_induced_c5(cfg.graph()) == 4
    cfg = FunkyConfig((1, 1, 1, 1, 1), (((0, 1), (0, 0)),))
    assert count_induced_c5(cfg.graph()) == 0
    with pytest.raises(ValueError):
        cfg.graph([(0, 1)])


@pytest.mark.parametrize("x,k", [((1, 1, 1, 1, 2), 2), ((1, 2, 1, 1, 2), 2), ((2, 2, 1, 1, 1), 3), ((1, 1, 1, 1, 1), 3)])
def test_placements_cover_every_orbit(x, k):
    enumerated = {}
    for cfg in enumerate_placements(x, k):
        edges = frozenset(frozenset(((i, a), (j, b))) for (i, j), (a, b) in cfg.placed_edges)
        key = placement_key(x, edges)
        assert key not in enumerated
        enumerated[key] = cfg
    raw = {placement_key(x, e) for m in range(k + 1) for e in raw_placements(x, m)}
    assert raw == set(enumerated)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=5, max_size=5), st.integers(0, 3), st.randoms())
def test_potential_matches_bruteforce(x, k, r):
    x = tuple(x)
    verts = [(i, a) for i in range(5) for a in range(x[i])]
    cross = [(u, w) for u, w in combinations(verts, 2) if u[0] != w[0]]
    chosen = r.sample(cross, min(k, len(cross)))
    cfg = FunkyConfig(x, tuple(((u[0], w[0]), (u[1], w[1])) for u, w in chosen))
    assert potential_c5_count(cfg, shared_table(20)) == potential_c5_count_bruteforce(cfg, shared_table(20))


def test_potential_bounds_exact():
    for cfg in enumerate_placements((1, 1, 2, 1, 2), 2):
        assert exact_best_intra(cfg) <= potential_c5_count(cfg)


def test_escalation_filter():
    # a placement that only ties the balanced count when its frame is not optimal
    cfg = FunkyConfig((1, 1, 2, 2, 3), (((1, 4), (0, 0)), ((3, 4), (0, 0)), ((3, 4), (1, 0))))
    assert exact_best_intra(cfg) == 16
    assert best_intra_with_optimal_frame(cfg, 16) is None
    g = FunkyConfig((2, 2, 2, 2, 1)).graph()
    assert frame_is_optimal(g, FunkyConfig((2, 2, 2, 2, 1)).part_of())


def test_verify_survivors_small():
    r = verify_survivors([(1, 1, 1, 3, 3)])
    assert r.verdict
    entry = r.tuples_checked[0]
    assert entry["balanced_count"] == 16 and entry["k_max"] == 4
    assert entry["configurations"] == r.configurations > 0
    assert all(e["exact"] < 16 for e in r.escalated)


def test_intra_budget_is_enforced():
    cfg = FunkyConfig((5, 5, 5, 5, 5), (((0, 1), (0, 0)),))
    with pytest.raises(ValueError):
        exact_best_intra_bruteforce(cfg)


def test_intra_search_matches_bruteforce():
    r = random.Random(5)
    for x in [(1, 1, 2, 1, 2), (1, 2, 2, 1, 3), (2, 2, 1, 2, 2), (1, 1, 1, 3, 3)]:
        configs = list(enumerate_placements(x, 3))
        for cfg in r.sample(configs, min(15, len(configs))):
            best = exact_best_intra_bruteforce(cfg)
            assert exact_best_intra(cfg) == best
            assert best_intra_with_optimal_frame(cfg, best + 1) is None


def test_intra_search_handles_large_parts():
    # 21 intra pairs, past the brute-force budget
    cfg = FunkyConfig((3, 3, 3, 4, 4), (((0, 1), (0, 0)),))
    assert exact_best_intra(cfg) <= potential_c5_count(cfg)


def test_frame_is_optimal_matches_definition():
    r = random.Random(3)
    for _ in range(200):
        x = tuple(r.randint(1, 2) for _ in range(5))
        cfg = FunkyConfig(x)
        g = cfg.graph()
        rows = list(g.adj)
        for _ in range(r.randint(0, 6)):
            u, v = r.sample(range(g.n), 2)
            rows[u] ^= 1 << v
            rows[v] ^= 1 << u
        g = ColoredGraph(g.n, tuple(rows))
        part = cfg.part_of()
        best = _exact_partition(g)
        assert frame_is_optimal(g, part) == (partition_score(g, part) >= partition_score(g, best))
