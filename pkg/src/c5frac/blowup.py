"""Iterated balanced blow-ups of C5 and their exact cycle counts."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from pathlib import Path
from typing import Sequence

from .graphs import ColoredGraph, make_graph

TABLE_SCHEMA = "c5frac-cycle-table-v1"


@dataclass(frozen=True)
class BlowupTree:
    size: int
    children: tuple["BlowupTree", ...] = ()

    def __post_init__(self):
        if self.children:
            sizes = [c.size for c in self.children]
            if len(sizes) != 5 or sum(sizes) != self.size or max(sizes) - min(sizes) > 1:
                raise ValueError(f"invalid children sizes {sizes} for size {self.size}")
        elif self.size > 4:
            raise ValueError("leaves must have at most 4 vertices")


def balanced_tree(n: int) -> BlowupTree:
    """Iterated balanced blow-up on n vertices; the first n mod 5 parts get the extra vertex."""
    if n < 5:
        return BlowupTree(n)
    k, a = divmod(n, 5)
    return BlowupTree(n, tuple(balanced_tree(k + 1 if i < a else k) for i in range(5)))


def materialize(tree: BlowupTree) -> ColoredGraph:
    """Concrete coloring.  Parts i, j are red when |i-j| is 2 or 3; leaf interiors are blue."""
    pairs: list[tuple[int, int]] = []
    _emit(tree, 0, pairs)
    return make_graph(max(tree.size, 1), pairs)


def _emit(tree: BlowupTree, offset: int, pairs: list) -> None:
    if not tree.children:
        return
    starts = []
    pos = offset
    for child in tree.children:
        starts.append(pos)
        _emit(child, pos, pairs)
        pos += child.size
    for i in range(5):
        for j in range(i + 1, 5):
            if j - i in (2, 3):
                si, sj = tree.children[i].size, tree.children[j].size
                pairs.extend((starts[i] + a, starts[j] + b) for a in range(si) for b in range(sj))


def partition_blowup(sizes: Sequence[int]) -> ColoredGraph:
    """C5-pattern blow-up with parts of the given sizes, each part an iterated balanced blow-up."""
    return materialize(_tree_with_parts(sizes))


def _tree_with_parts(sizes: Sequence[int]) -> BlowupTree:
    # bypasses the balance check on the top level only
    tree = object.__new__(BlowupTree)
    object.__setattr__(tree, "size", sum(sizes))
    object.__setattr__(tree, "children", tuple(balanced_tree(s) for s in sizes))
    return tree


# ---------------------------------------------------------------------------
# exact recurrences


def c_star_of(density: Fraction, n: int) -> Fraction:
    """C5 density of the limit blow-up G* of an n-vertex graph with C5 density ``density``."""
    density = Fraction(density)
    return (n + 26 * n * (n - 1) * (n - 2) * (n - 3) * (n - 4) * density) / (26 * Fraction(n) ** 5)


@dataclass(frozen=True)
class CycleTable:
    """Cycle counts of iterated balanced blow-ups for 0 <= n <= n_max.

    ``counts[n]`` is the number of induced C5s; ``density(n)`` and ``cstar(n)``
    are exact rationals.  Densities below 5 vertices are 0 by convention.
    """

    counts: tuple[int, ...]
    _cstar: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def n_max(self) -> int:
        return len(self.counts) - 1

    def count(self, n: int) -> int:
        return self.counts[n]

    def density(self, n: int) -> Fraction:
        if n < 5:
            return Fraction(0)
        return Fraction(self.counts[n], comb(n, 5))

    def cstar(self, n: int) -> Fraction:
        """C(n*): density of the limit object over the n-vertex blow-up."""
        if n not in self._cstar:
            self._cstar[n] = Fraction(n + 26 * 120 * self.counts[n], 26 * n**5)
        return self._cstar[n]

    def to_csv(self, path: str | Path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["n", "count", "density_num", "density_den", "cstar_num", "cstar_den"])
            for n in range(1, self.n_max + 1):
                d, c = self.density(n), self.cstar(n)
                w.writerow([n, self.counts[n], d.numerator, d.denominator, c.numerator, c.denominator])

    @classmethod
    def from_csv(cls, path: str | Path) -> "CycleTable":
        counts = [0]
        with open(path, newline="") as fh:
            for i, row in enumerate(csv.DictReader(fh), start=1):
                if int(row["n"]) != i:
                    raise ValueError(f"row {i} has n={row['n']}")
                counts.append(int(row["count"]))
        return cls(tuple(counts))


def blowup_count(n: int, counts: Sequence[int]) -> int:
    """Right-hand side of the recurrence, using ``counts`` for the smaller parts."""
    if n < 5:
        return 0
    k, a = divmod(n, 5)
    return k ** (5 - a) * (k + 1) ** a + (5 - a) * counts[k] + a * counts[k + 1]


def cycle_table(n_max: int) -> CycleTable:
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    counts = [0] * (n_max + 1)
    for n in range(5, n_max + 1):
        counts[n] = blowup_count(n, counts)
    return CycleTable(tuple(counts))


_TABLES: dict[int, CycleTable] = {}


def shared_table(n_max: int) -> CycleTable:
    """Process-wide table covering at least ``n_max``."""
    for size, t in _TABLES.items():
        if size >= n_max:
            return t
    t = cycle_table(n_max)
    _TABLES[n_max] = t
    return t


def partition_cycle_count(sizes: Sequence[int], table: CycleTable) -> int:
    """C5 count of a C5-pattern blow-up with the given parts, each an optimal iterated blow-up."""
    if len(sizes) != 5 or any(s < 0 for s in sizes):
        raise ValueError("need five nonnegative sizes")
    prod = 1
    for s in sizes:
        prod *= s
    return prod + sum(table.count(s) for s in sizes)


def g1_cycle_density(fractions: Sequence[Fraction], n: int, table: CycleTable) -> Fraction:
    """Density of C5 after recoloring every funky edge and rebalancing part interiors."""
    sizes = []
    for x in fractions:
        s = Fraction(x) * n
        if s.denominator != 1:
            raise ValueError(f"part fraction {x} does not give an integral size at n={n}")
        if s <= 0:
            raise ValueError("parts must be non-empty")
        sizes.append(int(s))
    if sum(sizes) != n:
        raise ValueError("part sizes must sum to n")
    falling = n * (n - 1) * (n - 2) * (n - 3) * (n - 4)
    prod = 1
    for s in sizes:
        prod *= s
    inner = sum(s * (s - 1) * (s - 2) * (s - 3) * (s - 4) * table.density(s) for s in sizes)
    return (120 * prod + inner) / falling


# ---------------------------------------------------------------------------
# small hosts


@dataclass
class ClassificationReport:
    n: int
    classes: int
    max_count: int
    extremal: list = field(default_factory=list)
    verdict: bool = False

    def to_dict(self) -> dict:
        return {"n": self.n, "classes": self.classes, "max_count": self.max_count, "extremal": self.extremal, "verdict": self.verdict}


def classify_small(n: int) -> ClassificationReport:
    """Maximum induced-C5 count over all colorings of K_n, with the extremal classes described.

    The verdict holds when every extremal class is a balanced blow-up of C5,
    the Moebius ladder or its complement.
    """
    from .canon import canonical_form, enumerate_graphs, to_graph6
    from .graphs import complement, count_induced_c5, is_blowup_of_c5, mobius_ladder

    best, hosts, classes = -1, [], 0
    for g in enumerate_graphs(n):
        classes += 1
        c = count_induced_c5(g)
        if c > best:
            best, hosts = c, [g]
        elif c == best:
            hosts.append(g)
    special = {}
    if n == 8:
        ladder = mobius_ladder()
        special = {canonical_form(ladder): "mobius_ladder", canonical_form(complement(ladder)): "mobius_ladder_complement"}
    report = ClassificationReport(n, classes, best)
    ok = True
    for g in hosts:
        parts = is_blowup_of_c5(g)
        sizes = sorted((len(p) for p in parts), reverse=True) if parts else None
        balanced = sizes is not None and sizes[0] - sizes[-1] <= 1
        kind = "balanced_blowup" if balanced else special.get(canonical_form(g), "other")
        ok = ok and kind != "other"
        report.extremal.append({"graph6": to_graph6(g), "kind": kind, "part_sizes": sizes})
    report.verdict = ok and (not special or set(special.values()) <= {e["kind"] for e in report.extremal})
    return report
