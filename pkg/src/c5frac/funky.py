"""Five-part frames, funky edges and the closed-form cycle bounds built on them.

A frame is an ordered partition X_0..X_4.  A pair between X_i and X_j is
expected to be blue when |i-j| is 1 or 4 and red when |i-j| is 2 or 3; a pair
with the other color is *funky*.  Pairs inside a part are never funky.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from numbers import Rational
from typing import Sequence

from .constants import DEFAULT, Constants
from .graphs import ColoredGraph, frame_position

# PATTERN_RED[i][j]: expected color between parts i and j
PATTERN_RED = tuple(tuple((j - i) % 5 in (2, 3) for j in range(5)) for i in range(5))


def is_funky(red: bool, i: int, j: int) -> bool:
    return i != j and red != PATTERN_RED[i][j]


@dataclass(frozen=True)
class Partition5:
    assignment: tuple[int, ...]

    def __post_init__(self):
        if any(p not in range(5) for p in self.assignment):
            raise ValueError("part indices must be 0..4")

    @property
    def n(self) -> int:
        return len(self.assignment)

    def parts(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(5)]
        for v, p in enumerate(self.assignment):
            out[p].append(v)
        return out

    def sizes(self) -> list[int]:
        return [len(p) for p in self.parts()]

    def fractions(self) -> list[Fraction]:
        return [Fraction(s, self.n) for s in self.sizes()]

    @classmethod
    def from_parts(cls, parts: Sequence[Sequence[int]]) -> "Partition5":
        if len(parts) != 5:
            raise ValueError("need five parts")
        n = sum(len(p) for p in parts)
        a = [-1] * n
        for i, part in enumerate(parts):
            for v in part:
                if not 0 <= v < n or a[v] != -1:
                    raise ValueError(f"vertex {v} missing, repeated or out of range")
                a[v] = i
        return cls(tuple(a))

    def to_json(self) -> str:
        return json.dumps(self.parts())

    @classmethod
    def from_json(cls, text: str) -> "Partition5":
        return cls.from_parts(json.loads(text))


@dataclass(frozen=True)
class FunkyReport:
    funky_edges: frozenset
    f: Fraction
    d: Fraction
    degree: tuple[int, ...]
    red_degree: tuple[int, ...]
    blue_degree: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.funky_edges)


def funky_report(g: ColoredGraph, p: Partition5) -> FunkyReport:
    if p.n != g.n:
        raise ValueError("partition does not cover the vertex set")
    if 0 in p.sizes():
        raise ValueError("frame has an empty part")
    a = p.assignment
    edges = []
    rdeg = [0] * g.n
    bdeg = [0] * g.n
    for u in range(g.n):
        for v in range(u + 1, g.n):
            red = g.red(u, v)
            if is_funky(red, a[u], a[v]):
                edges.append((u, v))
                for w in (u, v):
                    if red:
                        rdeg[w] += 1
                    else:
                        bdeg[w] += 1
    deg = [r + b for r, b in zip(rdeg, bdeg)]
    m = len(edges)
    f = Fraction(m, comb(g.n, 2))
    d = Fraction(sum(deg[x] + deg[y] - 2 for x, y in edges), m * g.n) if m else Fraction(0)
    return FunkyReport(frozenset(edges), f, d, tuple(deg), tuple(rdeg), tuple(bdeg))


def partition_score(g: ColoredGraph, assignment: Sequence[int]) -> int:
    """Number of cross pairs with the expected color."""
    score = 0
    for u in range(g.n):
        au = assignment[u]
        for v in range(u + 1, g.n):
            av = assignment[v]
            if au != av and g.red(u, v) == PATTERN_RED[au][av]:
                score += 1
    return score


def optimize_partition(g: ColoredGraph, exhaustive_max: int = 12, restarts: int = 50, seed: int = 0) -> Partition5:
    """Frame with non-empty parts maximizing the number of correctly colored cross pairs.

    Exact (branch and bound, lexicographically smallest optimum) for
    ``n <= exhaustive_max``; multi-restart single-vertex local search above.
    """
    if g.n < 5:
        raise ValueError("need at least 5 vertices")
    if g.n <= exhaustive_max:
        return Partition5(_exact_partition(g))
    return Partition5(_local_search(g, restarts, seed))


def _exact_partition(g: ColoredGraph, floor: int = -1) -> tuple[int, ...] | None:
    """Best frame scoring above ``floor``, or None if there is none."""
    n = g.n
    red = [[g.red(u, v) for v in range(n)] for u in range(n)]
    # gain[v][p]: correct pairs v would gain with already placed vertices
    gain = [[0] * 5 for _ in range(n)]
    a = [-1] * n
    counts = [0] * 5
    best_score = floor
    best: tuple[int, ...] | None = None

    def place(v: int, p: int, sign: int) -> None:
        for w in range(v + 1, n):
            rvw = red[v][w]
            row = gain[w]
            for q in range(5):
                if q != p and rvw == PATTERN_RED[p][q]:
                    row[q] += sign

    def dfs(v: int, score: int, seen_nonzero: bool) -> None:
        nonlocal best_score, best
        if v == n:
            if score > best_score:
                best_score, best = score, tuple(a)
            return
        rem = n - v
        if sum(1 for c in counts if c == 0) > rem:
            return
        bound = score + sum(max(gain[w]) for w in range(v, n)) + rem * (rem - 1) // 2
        if bound <= best_score:
            return
        if v == 0:
            choices = (0,)
        elif not seen_nonzero:
            choices = (0, 1, 2)
        else:
            choices = range(5)
        for p in choices:
            a[v] = p
            counts[p] += 1
            place(v, p, 1)
            dfs(v + 1, score + gain[v][p], seen_nonzero or p != 0)
            place(v, p, -1)
            counts[p] -= 1
            a[v] = -1

    dfs(0, 0, False)
    return best


def _local_search(g: ColoredGraph, restarts: int, seed: int) -> tuple[int, ...]:
    n = g.n
    rng = random.Random(seed)
    red = [[g.red(u, v) for v in range(n)] for u in range(n)]
    best_key = None
    for _ in range(restarts):
        a = list(range(5)) + [rng.randrange(5) for _ in range(n - 5)]
        rng.shuffle(a)
        counts = [a.count(p) for p in range(5)]
        improved = True
        while improved:
            improved = False
            for v in range(n):
                if counts[a[v]] == 1:
                    continue
                gains = [0] * 5
                for w in range(n):
                    if w != v:
                        for q in range(5):
                            if q != a[w] and red[v][w] == PATTERN_RED[q][a[w]]:
                                gains[q] += 1
                q = max(range(5), key=lambda q: (gains[q], -q))
                if gains[q] > gains[a[v]]:
                    counts[a[v]] -= 1
                    counts[q] += 1
                    a[v] = q
                    improved = True
        key = (-partition_score(g, a), _normalize(a))
        if best_key is None or key < best_key:
            best_key = key
    return best_key[1]


def _normalize(a: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically smallest image under rotations and reflections of the frame."""
    images = []
    for s in (1, -1):
        for r in range(5):
            images.append(tuple((s * p + r) % 5 for p in a))
    return min(images)


def partition_from_cycle(g: ColoredGraph, frame: Sequence[int]) -> Partition5:
    """Frame grown from an induced C5 listed in frame order (consecutive vertices blue).

    A vertex joins X_i when it can replace frame[i]; vertices fitting no
    position go to the currently smallest part.
    """
    parts: list[list[int]] = [[v] for v in frame]
    loose = []
    for u in range(g.n):
        if u in frame:
            continue
        pos = frame_position(g, frame, u)
        if pos is None:
            loose.append(u)
        else:
            parts[pos].append(u)
    for u in loose:
        i = min(range(5), key=lambda i: (len(parts[i]), i))
        parts[i].append(u)
    return Partition5.from_parts(parts)


# ---------------------------------------------------------------------------
# closed-form bounds


def lemma3_bound(case: int, n: int, r: int | None = None, b: int | None = None):
    """Upper bound on induced C5s through a fixed set of 1, 2 or 3 vertices."""
    if case == 1:
        if r is None or b is None or r + b != n - 1:
            raise ValueError("case 1 needs red and blue degrees with r + b = n - 1")
        return Fraction(r * r * b * b, 16)
    if case == 2:
        return Fraction(n - 2, 3) ** 3
    if case == 3:
        return Fraction(n - 3, 2) ** 2
    raise ValueError("case must be 1, 2 or 3")


def numfunky_rhs(cstar, constants: Constants = DEFAULT, check_regime: bool = True):
    """Lower bound on sum_{i<j} x_i x_j - f*binom(n,2)/n^2 guaranteed for some frame."""
    if check_regime and cstar <= constants.c5_threshold:
        raise ValueError(f"C(G*) = {cstar} is outside the regime C(G*) > {constants.c5_threshold}")
    if isinstance(cstar, Rational):
        cstar = Fraction(cstar)
        return 2 * (-constants.A + constants.B * cstar) / (21 * cstar)
    return 2 * (-float(constants.A) + float(constants.B) * cstar) / (21 * cstar)


def _num(*xs):
    if all(isinstance(x, Rational) for x in xs):
        return [Fraction(x) for x in xs]
    return [float(x) for x in xs]


def claim1_bound(n, f, d, y: Sequence):
    """Cycles containing two non-incident funky edges (upper bound)."""
    n, f, d, *y = _num(n, f, d, *y)
    F = f * n * (n - 1) / 2
    return F * (F - d * n - 1) * ((y[0] + y[1] + (y[2] + y[3] + y[4]) / 2) * n - 2) / 2


def claim2_bound(n, f, d, y1):
    """Cycles with a funky edge but no two non-incident ones (upper bound)."""
    n, f, d, y1 = _num(n, f, d, y1)
    F = f * n * (n - 1) / 2
    return Fraction(9, 32) * (d * n + 2) * F * y1 * y1 * n * n if isinstance(n, Fraction) else 9 / 32 * (d * n + 2) * F * y1 * y1 * n * n


def claim3_bound(n, f, d, y3, y4, y5):
    """Cycles gained by recoloring the funky edges (lower bound)."""
    n, f, d, y3, y4, y5 = _num(n, f, d, y3, y4, y5)
    F = f * n * (n - 1) / 2
    three_eighths = Fraction(3, 8) if isinstance(n, Fraction) else 0.375
    return F * n**3 * (y3 * y4 * y5 - three_eighths * d * y3 * y4 - f * y3 / 8)
