"""Canonical forms for small colorings and isomorphism-free enumeration.

The canonical key is the smallest adjacency bitstring over the leaves of an
individualization/refinement search tree.  Refinement is equivariant, so the
set of leaves -- and hence the minimum -- is a graph invariant, and a leaf
ordering reconstructs the graph, so equal keys mean isomorphic graphs.
Twin vertices in the branching cell give identical subtrees and only one of
them is explored.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import networkx as nx

from .graphs import ColoredGraph, complement

MAX_CANON_N = 9


@dataclass(frozen=True, order=True)
class CanonicalKey:
    n: int
    bits: int
    swap_closed: bool = False

    def hex(self) -> str:
        return f"{self.n:x}:{self.bits:x}{':s' if self.swap_closed else ''}"

    @classmethod
    def from_hex(cls, text: str) -> "CanonicalKey":
        parts = text.split(":")
        return cls(int(parts[0], 16), int(parts[1], 16), len(parts) > 2 and parts[2] == "s")


def _refine(adj: Sequence[int], cells: list[list[int]]) -> list[list[int]]:
    while True:
        masks = [sum(1 << v for v in c) for c in cells]
        new: list[list[int]] = []
        changed = False
        for c in cells:
            if len(c) == 1:
                new.append(c)
                continue
            sig = {v: tuple((adj[v] & m).bit_count() for m in masks) for v in c}
            keys = sorted(set(sig.values()))
            if len(keys) == 1:
                new.append(c)
                continue
            changed = True
            for k in keys:
                new.append([v for v in c if sig[v] == k])
        cells = new
        if not changed:
            return cells


def _certificate(adj: Sequence[int], order: Sequence[int]) -> int:
    n = len(order)
    bits = 0
    for i in range(n):
        row = adj[order[i]]
        for j in range(i + 1, n):
            bits = (bits << 1) | (row >> order[j] & 1)
    return bits


def _search(adj: Sequence[int], cells: list[list[int]]) -> int:
    cells = _refine(adj, cells)
    target = None
    for idx, c in enumerate(cells):
        if len(c) > 1 and (target is None or len(c) < len(cells[target])):
            target = idx
    if target is None:
        return _certificate(adj, [c[0] for c in cells])
    cell = cells[target]
    best = None
    tried: list[int] = []
    for v in cell:
        if any((adj[v] & ~(1 << u)) == (adj[u] & ~(1 << v)) for u in tried):
            continue
        tried.append(v)
        child = cells[:target] + [[v], [w for w in cell if w != v]] + cells[target + 1:]
        cert = _search(adj, child)
        if best is None or cert < best:
            best = cert
    return best


def canonical_bits(g: ColoredGraph, colors: Sequence[int] | None = None) -> int:
    """Canonical certificate; ``colors`` optionally fixes an invariant vertex coloring."""
    if colors is None:
        cells = [list(range(g.n))]
    else:
        cells = [[v for v in range(g.n) if colors[v] == c] for c in sorted(set(colors))]
    return _search(g.adj, cells)


def canonical_form(g: ColoredGraph, swap_closed: bool = False) -> CanonicalKey:
    """Isomorphism-invariant key; with ``swap_closed`` also invariant under color swap."""
    if g.n > MAX_CANON_N:
        raise ValueError(f"canonical_form supports n <= {MAX_CANON_N}, got {g.n}")
    bits = canonical_bits(g)
    if swap_closed:
        bits = min(bits, canonical_bits(complement(g)))
    return CanonicalKey(g.n, bits, swap_closed)


def from_canonical(key: CanonicalKey) -> ColoredGraph:
    n = key.n
    rows = [0] * n
    pos = n * (n - 1) // 2 - 1
    for i in range(n):
        for j in range(i + 1, n):
            if key.bits >> pos & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            pos -= 1
    return ColoredGraph(n, tuple(rows))


def enumerate_graphs(n: int) -> Iterator[ColoredGraph]:
    """One representative per isomorphism class of 2-colorings of K_n.

    Classes on n vertices are grown from the classes on n-1 vertices by adding
    a vertex with every possible red neighbourhood and deduplicating by key.
    """
    if not 1 <= n <= MAX_CANON_N:
        raise ValueError(f"enumerate_graphs supports 1 <= n <= {MAX_CANON_N}")
    for key in _class_keys(n):
        yield from_canonical(key)


_CLASS_CACHE: dict[int, list[CanonicalKey]] = {}


def _class_keys(n: int) -> list[CanonicalKey]:
    if n in _CLASS_CACHE:
        return _CLASS_CACHE[n]
    if n == 1:
        keys = [CanonicalKey(1, 0)]
    else:
        seen: set[CanonicalKey] = set()
        for parent_key in _class_keys(n - 1):
            parent = from_canonical(parent_key)
            for nbhd in range(1 << (n - 1)):
                rows = [row | ((nbhd >> v & 1) << (n - 1)) for v, row in enumerate(parent.adj)]
                rows.append(nbhd)
                seen.add(canonical_form(ColoredGraph(n, tuple(rows))))
        keys = sorted(seen)
    _CLASS_CACHE[n] = keys
    return keys


# ---------------------------------------------------------------------------
# graph6 (red relation = edge set)


def to_graph6(g: ColoredGraph) -> str:
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.red_pairs())
    return nx.to_graph6_bytes(G, header=False).decode().strip()


def from_graph6(line: str) -> ColoredGraph:
    G = nx.from_graph6_bytes(line.strip().encode())
    n = G.number_of_nodes()
    rows = [0] * n
    for u, v in G.edges():
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return ColoredGraph(n, tuple(rows))


def read_graph6(lines: Iterable[str]) -> list[ColoredGraph]:
    out = []
    for line in lines:
        line = line.strip()
        if not line or line.startswith(">>"):
            continue
        out.append(from_graph6(line))
    return out


def write_graph6(graphs: Iterable[ColoredGraph]) -> str:
    return "".join(to_graph6(g) + "\n" for g in graphs)
