from fractions import Fraction
from math import comb

import pytest

from c5frac.blowup import c_star_of
from c5frac.canon import enumerate_graphs
from c5frac.constants import DEFAULT, Constants
from c5frac.flagcheck import (
    CBB_OF_LIMIT,
    LimitSampler,
    cbb_of_limit,
    c5_of_limit,
    depth_blowup,
    empirical_lemma1,
    gate,
    limit_margin,
    sample_limit_densities,
    verify_rational_constants,
)
from c5frac.graphs import ColoredGraph, count_cbb, count_induced_c5, cycle_graph, is_blowup_of_c5, make_graph


def _gated(n_max=7):
    out = []
    for n in range(1, n_max + 1):
        for g in enumerate_graphs(n):
            try:
                gate(g)
            except ValueError:
                continue
            out.append(g)
    return out


def test_rational_constants_chain():
    report = verify_rational_constants(DEFAULT)
    assert report["verdict"], report["checks"]
    assert Fraction(report["difference"]) > 0


def test_rational_constants_detect_wrong_side():
    bad = Constants(A_rational=DEFAULT.A + Fraction(1, 10**20))
    assert not verify_rational_constants(bad)["verdict"]


def test_gate_rejects_sparse_graphs():
    with pytest.raises(ValueError):
        gate(make_graph(6, []))
    assert gate(cycle_graph(5)) > DEFAULT.c5_threshold


def test_limit_of_c5_is_the_iterated_blowup():
    g = cycle_graph(5)
    single = ColoredGraph(1, (0,))
    assert cbb_of_limit(single) == CBB_OF_LIMIT
    assert cbb_of_limit(g) == CBB_OF_LIMIT
    assert c5_of_limit(g) == c5_of_limit(single)


def test_limit_margins_nonnegative_on_small_gated_graphs():
    gated = _gated(7)
    assert len(gated) == 4
    for g in gated:
        assert limit_margin(g) >= 0


def test_limit_density_matches_sampling():
    # C5 with one vertex doubled: exact limit densities against Monte Carlo
    g = make_graph(6, [(0, 2), (0, 3), (1, 3), (1, 4), (2, 4), (5, 2), (5, 3)])
    p5, s5, p7, s7 = sample_limit_densities(g, 6000, seed=3)
    assert abs(p5 - float(c5_of_limit(g))) < 5 * s5 + 1e-3
    assert abs(p7 - float(cbb_of_limit(g))) < 5 * s7 + 1e-3


def test_sampler_pairs_follow_pattern():
    s = LimitSampler(cycle_graph(5), levels=3)
    p, q = (0, (1, 0, 0)), (0, (3, 4, 4))
    assert s.red(p, q) == ((1 - 3) % 5 in (2, 3))
    assert not s.red(p, p)


def test_depth_blowup_structure():
    h = depth_blowup(cycle_graph(5), 1)
    assert h.n == 25
    assert is_blowup_of_c5(h) is not None
    assert count_induced_c5(h) == 5**5 + 5 * 1


def test_finite_depth_margin_is_exact_when_small():
    g = cycle_graph(5)
    r = empirical_lemma1(g, 1)
    h = depth_blowup(g, 1)
    c5 = Fraction(count_induced_c5(h), comb(h.n, 5))
    assert r.mode == "exact"
    assert r.exact == Fraction(count_cbb(h), comb(h.n, 7)) - (-DEFAULT.A + DEFAULT.B * c5)


def test_finite_depth_density_above_limit():
    # finite blow-ups overshoot the limit C5 density, which is why the
    # inequality is stated for G* and finite margins can be negative
    r = empirical_lemma1(cycle_graph(5), 1)
    assert r.c5 > float(c5_of_limit(cycle_graph(5)))


def test_c_star_formula_consistent():
    g = cycle_graph(5)
    assert c5_of_limit(g) == c_star_of(Fraction(1), 5)
