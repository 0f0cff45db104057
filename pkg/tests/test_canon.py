import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from c5frac.canon import (
    CanonicalKey,
    canonical_bits,
    canonical_form,
    enumerate_graphs,
    from_canonical,
    from_graph6,
    read_graph6,
    to_graph6,
    write_graph6,
)
from c5frac.graphs import C5, complement, make_graph, mobius_ladder, random_graph

from .test_graphs import graphs

# number of graphs on n unlabeled vertices
CLASS_COUNTS = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044}


@pytest.mark.parametrize("n", sorted(CLASS_COUNTS))
def test_class_counts(n):
    assert sum(1 for _ in enumerate_graphs(n)) == CLASS_COUNTS[n]


@settings(max_examples=150, deadline=None)
@given(graphs(), st.randoms())
def test_key_is_invariant(g, r):
    perm = list(range(g.n))
    r.shuffle(perm)
    assert canonical_form(g.relabel(perm)) == canonical_form(g)


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=7), graphs(max_n=7))
def test_key_separates_classes(g, h):
    if g.n != h.n:
        return
    same = nx.is_isomorphic(_nx(g), _nx(h))
    assert (canonical_form(g) == canonical_form(h)) == same


def _nx(g):
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.red_pairs())
    return G


@settings(max_examples=100, deadline=None)
@given(graphs())
def test_key_reconstructs(g):
    h = from_canonical(canonical_form(g))
    assert canonical_form(h) == canonical_form(g)


def test_swap_closed_key():
    g = mobius_ladder()
    assert canonical_form(g, swap_closed=True) == canonical_form(complement(g), swap_closed=True)
    assert canonical_form(g) != canonical_form(complement(g))
    assert canonical_form(C5) == canonical_form(complement(C5))


def test_colored_bits_respect_colors():
    g = make_graph(4, [(0, 1)])
    assert canonical_bits(g, [0, 0, 1, 1]) != canonical_bits(g, [0, 1, 0, 1])
    assert canonical_bits(g, [0, 0, 1, 1]) == canonical_bits(g.relabel([1, 0, 3, 2]), [0, 0, 1, 1])


def test_hex_roundtrip():
    key = canonical_form(mobius_ladder(), swap_closed=True)
    assert CanonicalKey.from_hex(key.hex()) == key


def test_graph6_roundtrip(rng):
    for n in range(1, 12):
        g = random_graph(n, rng=rng)
        assert from_graph6(to_graph6(g)) == g
    gs = [random_graph(6, rng=rng) for _ in range(5)]
    assert read_graph6(write_graph6(gs).splitlines()) == gs


def test_graph6_matches_networkx(rng):
    g = random_graph(9, rng=rng)
    text = nx.to_graph6_bytes(_nx(g), header=False).decode().strip()
    assert to_graph6(g) == text


def test_graph6_rejects_garbage():
    with pytest.raises(Exception):
        from_graph6("~~~~")
