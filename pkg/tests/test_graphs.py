import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from c5frac.graphs import (
    C5,
    ColoredGraph,
    c5_blowup,
    cbb_family,
    complement,
    count_cbb,
    count_cbb_bruteforce,
    count_induced_c5,
    count_induced_c5_bruteforce,
    count_induced_c5_through,
    count_single_doubled,
    cycle_graph,
    is_blowup_of_c5,
    is_induced_c5,
    iter_induced_c5,
    make_graph,
    mobius_ladder,
    random_graph,
)


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return make_graph(n, [p for p, b in zip(pairs, bits) if b])


def test_c5_counts_itself():
    assert count_induced_c5(C5) == 1
    assert count_induced_c5(complement(C5)) == 1


def test_mobius_ladder_has_eight():
    g = mobius_ladder()
    assert g.n == 8
    assert count_induced_c5(g) == 8
    assert count_induced_c5(complement(g)) == 8
    assert is_blowup_of_c5(g) is None


def test_monochromatic_has_none():
    assert count_induced_c5(make_graph(8, [])) == 0
    assert count_induced_c5(complement(make_graph(8, []))) == 0


@pytest.mark.parametrize("sizes,expected", [((1, 1, 1, 1, 1), 1), ((2, 1, 1, 1, 1), 2), ((2, 2, 1, 1, 1), 4), ((2, 2, 2, 1, 1), 8)])
def test_blowup_counts(sizes, expected):
    assert count_induced_c5(c5_blowup(sizes)) == expected


@settings(max_examples=150, deadline=None)
@given(graphs())
def test_count_matches_bruteforce(g):
    assert count_induced_c5(g) == count_induced_c5_bruteforce(g)


@settings(max_examples=100, deadline=None)
@given(graphs(), st.randoms())
def test_count_invariant_under_relabel_and_complement(g, r):
    perm = list(range(g.n))
    r.shuffle(perm)
    assert count_induced_c5(g.relabel(perm)) == count_induced_c5(g)
    assert count_induced_c5(complement(g)) == count_induced_c5(g)


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_iterated_cycles_are_induced(g):
    found = list(iter_induced_c5(g))
    assert len(found) == count_induced_c5(g)
    assert len({frozenset(c) for c in found}) == len(found)
    assert all(is_induced_c5(g, c) for c in found)


def test_count_through_set(rng):
    for _ in range(20):
        g = random_graph(9, rng=rng)
        X = rng.sample(range(9), 2)
        expected = sum(1 for s in combinations(range(9), 5) if set(X) <= set(s) and is_induced_c5(g, s))
        assert count_induced_c5_through(g, X) == expected


def test_make_graph_rejects_bad_input():
    with pytest.raises(ValueError):
        make_graph(3, [(0, 3)])
    with pytest.raises(ValueError):
        make_graph(3, [(1, 1)])
    with pytest.raises(ValueError):
        make_graph(3, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        ColoredGraph(2, (2, 0))


def test_blowup_recognition(rng):
    g = c5_blowup((3, 1, 2, 2, 1))
    parts = is_blowup_of_c5(g)
    assert parts is not None and sorted(len(p) for p in parts) == [1, 1, 2, 2, 3]
    perm = list(range(g.n))
    rng.shuffle(perm)
    assert is_blowup_of_c5(g.relabel(perm)) is not None
    assert is_blowup_of_c5(cycle_graph(6)) is None


def test_cbb_family():
    family = cbb_family()
    assert len(family) == 6
    assert all(g.n == 7 and count_cbb(g) == 1 for g in family)


def test_cbb_count_matches_bruteforce(rng):
    for n in (7, 8, 9):
        for _ in range(4):
            g = random_graph(n, rng=rng)
            assert count_cbb(g) == count_cbb_bruteforce(g)
    g = c5_blowup((2, 2, 2, 1, 1))
    assert count_cbb(g) == count_cbb_bruteforce(g) > 0


def test_single_doubled():
    assert count_single_doubled(c5_blowup((2, 1, 1, 1, 1))) == 1
    assert count_single_doubled(C5) == 0
    # each of the two doubled parts can be the one kept at size 2
    assert count_single_doubled(c5_blowup((2, 2, 1, 1, 1))) == 4
