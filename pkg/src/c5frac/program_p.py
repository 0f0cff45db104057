"""Integer program (P) over part sizes and exhaustive checking of its survivors.

For a frame with part sizes ``s_1 >= ... >= s_5`` the objective is a lower
bound on how many more induced C5s the balanced iterated blow-up has than a
coloring with that frame.  Tuples where it is negative are expanded to cycle
orderings and every placement of few funky edges on them is checked directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import comb
from typing import Iterable, Iterator, Sequence

import numpy as np

from .blowup import CycleTable, shared_table
from .canon import canonical_bits
from .constants import DEFAULT, Constants
from .funky import PATTERN_RED, _exact_partition, numfunky_rhs, partition_score
from .graphs import FIVE_CYCLE_MASKS, ColoredGraph, count_induced_c5

N_LO, N_HI = 9, 1000
MAX_INTRA_EDGES = 20

_PAIRS = tuple(combinations(range(5), 2))

# size-preserving symmetries of the frame are drawn from i -> a*i + b (mod 5);
# a in {1, 4} are rotations and reflections, a in {2, 3} also swap the colors
_FRAME_MAPS = tuple((a, b) for a in (1, 4, 2, 3) for b in range(5))


class InfeasibleTuple(ValueError):
    """Part sizes violate the funky-edge bound even with no funky edges."""


@dataclass(frozen=True)
class POutcome:
    n: int
    y_counts: tuple[int, ...]
    objective: Fraction | None
    feasible: bool
    f: Fraction = Fraction(0)

    def __post_init__(self):
        y = self.y_counts
        if len(y) != 5 or sum(y) != self.n or min(y) < 1 or list(y) != sorted(y, reverse=True):
            raise ValueError(f"bad y counts {y} for n={self.n}")

    @property
    def negative(self) -> bool:
        return self.objective is not None and self.objective < 0

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "y_counts": list(self.y_counts),
            "objective": None if self.objective is None else str(self.objective),
            "feasible": self.feasible,
            "f": str(self.f),
        }


def _check_sizes(sizes: Sequence[int]) -> None:
    if len(sizes) != 5 or min(sizes) < 1:
        raise ValueError(f"need five positive part sizes, got {tuple(sizes)}")


def pair_sum(sizes: Sequence[int]) -> Fraction:
    n = sum(sizes)
    return Fraction(sum(a * b for a, b in combinations(sizes, 2)), n * n)


def evaluate_p(n: int, y_counts: Sequence[int], table: CycleTable | None = None, constants: Constants = DEFAULT) -> POutcome:
    """Exact value of (P) at the given sizes, with f and d at their worst case."""
    y_counts = tuple(y_counts)
    table = table or shared_table(n)
    rhs = numfunky_rhs(table.cstar(n), constants)
    slack = pair_sum(y_counts) - rhs
    if slack < 0:
        return POutcome(n, y_counts, None, False)
    f = slack
    if f == 0:
        return POutcome(n, y_counts, None, True, f)
    y = [Fraction(c, n) for c in y_counts]
    d = (f * n * (n - 1) - 2) / (2 * n)
    inner = (
        y[2] * y[3] * y[4]
        - Fraction(3, 8) * d * y[2] * y[3]
        - f * y[2] / 8
        - (f - (f + d) / n - Fraction(1, n * n)) * (y[0] + y[1] + (y[2] + y[3] + y[4]) / 2) / 4
        - Fraction(9, 32) * (d + Fraction(2, n)) * y[0] ** 2
    )
    prod = 1
    for c in y_counts:
        prod *= c
    here = prod + sum(table.count(c) for c in y_counts)
    obj = f * comb(n, 2) * n**3 * inner + table.count(n) - here
    return POutcome(n, y_counts, obj, True, f)


def objective_p(n: int, y_counts: Sequence[int], table: CycleTable | None = None, constants: Constants = DEFAULT) -> Fraction | None:
    """Objective value, or None when f = 0 closes the case.  Raises InfeasibleTuple."""
    out = evaluate_p(n, y_counts, table, constants)
    if not out.feasible:
        raise InfeasibleTuple(f"{tuple(y_counts)} violates the funky-edge bound at n={n}")
    return out.objective


def objective_p_float(n: int, y_counts: Sequence[int], table: CycleTable | None = None, constants: Constants = DEFAULT) -> float | None:
    """Same formula in floating point; used to cross-check the exact transcription."""
    table = table or shared_table(n)
    rhs = float(numfunky_rhs(float(table.cstar(n)), constants))
    y = [c / n for c in y_counts]
    f = sum(a * b for a, b in combinations(y, 2)) - rhs
    if f <= 0:
        return None
    d = (f * n * (n - 1) - 2) / (2 * n)
    inner = (
        y[2] * y[3] * y[4]
        - 0.375 * d * y[2] * y[3]
        - f * y[2] / 8
        - 0.25 * (f - (f + d) / n - 1 / n**2) * (y[0] + y[1] + 0.5 * (y[2] + y[3] + y[4]))
        - 9 / 32 * (d + 2 / n) * y[0] ** 2
    )
    prod = 1
    for c in y_counts:
        prod *= c
    return f * comb(n, 2) * n**3 * inner + table.count(n) - prod - sum(table.count(c) for c in y_counts)


def candidate_tuples(n: int, rhs: Fraction) -> Iterator[tuple[int, ...]]:
    """Descending 5-compositions of n whose sizes pass the funky-edge bound at f = 0."""
    # pair_sum >= rhs  <=>  sum of squares <= n^2 (1 - 2 rhs)
    q = n * n * (1 - 2 * rhs)
    limit = int(q)

    def rec(prefix: list[int], left: int, parts: int, sq: int, cap: int):
        if parts == 1:
            if 1 <= left <= cap and sq + left * left <= limit:
                yield tuple(prefix + [left])
            return
        lo = -(-left // parts)
        for s in range(min(cap, left - (parts - 1)), lo - 1, -1):
            rest = left - s
            # the remaining parts contribute at least an even split's squares
            k, a = divmod(rest, parts - 1)
            if sq + s * s + (parts - 1 - a) * k * k + a * (k + 1) ** 2 > limit:
                continue
            yield from rec(prefix + [s], rest, parts - 1, sq + s * s, s)

    yield from rec([], n, 5, 0, n)


@dataclass
class ScanReport:
    n_lo: int
    n_hi: int
    tuples_evaluated: int = 0
    exact_evaluations: int = 0
    survivors: list = field(default_factory=list)

    def merge(self, other: "ScanReport") -> "ScanReport":
        """Union of two reports on adjacent ranges."""
        if other.n_lo != self.n_hi + 1:
            raise ValueError("ranges must be adjacent")
        return ScanReport(
            self.n_lo,
            other.n_hi,
            self.tuples_evaluated + other.tuples_evaluated,
            self.exact_evaluations + other.exact_evaluations,
            self.survivors + other.survivors,
        )

    @property
    def y_tuples(self) -> list[tuple[int, ...]]:
        return sorted({o.y_counts for o in self.survivors})

    def to_dict(self) -> dict:
        return {
            "n_lo": self.n_lo,
            "n_hi": self.n_hi,
            "tuples_evaluated": self.tuples_evaluated,
            "exact_evaluations": self.exact_evaluations,
            "survivors": [o.to_dict() for o in self.survivors],
            "y_tuples": [list(y) for y in self.y_tuples],
            "x_tuples": [list(x) for x in survivor_x_tuples(self.survivors)],
        }


def _float_screen(n: int, ys: np.ndarray, table: CycleTable, rhs: float) -> tuple[np.ndarray, np.ndarray]:
    """Objective in floating point for many tuples at once, plus a bound on its magnitude."""
    y = ys / n
    pairs = (1 - (y * y).sum(axis=1)) / 2
    f = pairs - rhs
    d = (f * n * (n - 1) - 2) / (2 * n)
    y1, y2, y3, y4, y5 = y.T
    mix = y1 + y2 + (y3 + y4 + y5) / 2
    terms = np.stack(
        [
            y3 * y4 * y5,
            -0.375 * d * y3 * y4,
            -f * y3 / 8,
            -0.25 * (f - (f + d) / n - 1 / n**2) * mix,
            -9 / 32 * (d + 2 / n) * y1 * y1,
        ]
    )
    scale = f * comb(n, 2) * float(n) ** 3
    counts = np.array(table.counts, dtype=float)
    here = ys.astype(float).prod(axis=1) + counts[ys].sum(axis=1)
    obj = scale * terms.sum(axis=0) + float(table.count(n)) - here
    size = np.abs(scale) * np.abs(terms).sum(axis=0) + float(table.count(n)) + here
    return obj, size


def scan_medium(
    n_lo: int = N_LO,
    n_hi: int = N_HI,
    table: CycleTable | None = None,
    constants: Constants = DEFAULT,
    rel_tol: float = 1e-9,
) -> ScanReport:
    """All (n, y) in the range with a negative objective.

    Every feasible tuple is screened in floating point; a tuple is evaluated
    exactly unless its float value is positive by more than ``rel_tol`` times
    the magnitude of the summed terms, far above double rounding error.
    """
    if not N_LO <= n_lo <= n_hi <= N_HI:
        raise ValueError(f"range must lie within [{N_LO}, {N_HI}]")
    table = table or shared_table(n_hi)
    report = ScanReport(n_lo, n_hi)
    for n in range(n_lo, n_hi + 1):
        rhs = numfunky_rhs(table.cstar(n), constants)
        ys = np.array(list(candidate_tuples(n, rhs)), dtype=np.int64).reshape(-1, 5)
        report.tuples_evaluated += len(ys)
        if not len(ys):
            continue
        obj, size = _float_screen(n, ys, table, float(rhs))
        for idx in np.nonzero(obj <= rel_tol * size)[0]:
            report.exact_evaluations += 1
            out = evaluate_p(n, tuple(int(v) for v in ys[idx]), table, constants)
            if out.negative:
                report.survivors.append(out)
    return report


# ---------------------------------------------------------------------------
# cycle orderings


def x_orbit_key(x: Sequence[int], color_swap: bool = False) -> tuple[int, ...]:
    """Smallest image of a cycle ordering under the frame symmetries."""
    maps = _FRAME_MAPS if color_swap else _FRAME_MAPS[:10]
    return min(tuple(x[(a * i + b) % 5] for i in range(5)) for a, b in maps)


def expand_to_x(y: Sequence[int], color_swap: bool = False) -> list[tuple[int, ...]]:
    """All cycle orderings of the sizes, one representative per orbit.

    Orbits are taken under rotation and reflection of the frame, and also
    under the color swap when ``color_swap`` is set.
    """
    from itertools import permutations

    return sorted({x_orbit_key(p, color_swap) for p in permutations(y)})


def max_funky_edges(x: Sequence[int], constants: Constants = DEFAULT, table: CycleTable | None = None) -> tuple[int, bool]:
    """Largest funky-edge count allowed by the funky-edge bound, and whether x is feasible at all.

    With f = |E_f| / binom(n,2) the bound reads pair_sum - |E_f| / n^2 >= rhs.
    """
    _check_sizes(x)
    n = sum(x)
    table = table or shared_table(n)
    slack = pair_sum(x) - numfunky_rhs(table.cstar(n), constants)
    if slack < 0:
        return 0, False
    return int(slack * n * n), True


# ---------------------------------------------------------------------------
# funky placements


@dataclass(frozen=True)
class FunkyConfig:
    """Part sizes in cycle order plus funky edges ((i, j), (a, b)): vertex a of X_i to vertex b of X_j."""

    x_sizes: tuple[int, ...]
    placed_edges: tuple[tuple[tuple[int, int], tuple[int, int]], ...] = ()

    def __post_init__(self):
        _check_sizes(self.x_sizes)
        seen = set()
        for (i, j), (a, b) in self.placed_edges:
            if i == j or not (0 <= i < 5 and 0 <= j < 5):
                raise ValueError(f"funky edge must join two distinct parts, got {(i, j)}")
            if not (0 <= a < self.x_sizes[i] and 0 <= b < self.x_sizes[j]):
                raise ValueError(f"endpoint out of range in {((i, j), (a, b))}")
            key = frozenset(((i, a), (j, b)))
            if key in seen:
                raise ValueError("repeated funky edge")
            seen.add(key)

    @property
    def n(self) -> int:
        return sum(self.x_sizes)

    @property
    def k(self) -> int:
        return len(self.placed_edges)

    def offsets(self) -> list[int]:
        out, pos = [], 0
        for s in self.x_sizes:
            out.append(pos)
            pos += s
        return out

    def part_of(self) -> list[int]:
        return [i for i, s in enumerate(self.x_sizes) for _ in range(s)]

    def funky_pairs(self) -> set[tuple[int, int]]:
        off = self.offsets()
        return {tuple(sorted((off[i] + a, off[j] + b))) for (i, j), (a, b) in self.placed_edges}

    def graph(self, intra_red: Iterable[tuple[int, int]] = ()) -> ColoredGraph:
        """Full coloring: cross pairs from the pattern with funky pairs flipped, given red intra pairs."""
        part = self.part_of()
        funky = self.funky_pairs()
        rows = [0] * self.n
        for u in range(self.n):
            for v in range(u + 1, self.n):
                if part[u] != part[v] and PATTERN_RED[part[u]][part[v]] != ((u, v) in funky):
                    rows[u] |= 1 << v
                    rows[v] |= 1 << u
        for u, v in intra_red:
            if part[u] != part[v]:
                raise ValueError(f"{(u, v)} is not an intra-part pair")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return ColoredGraph(self.n, tuple(rows))

    def to_dict(self) -> dict:
        return {"x_sizes": list(self.x_sizes), "placed_edges": [[list(p), list(e)] for p, e in self.placed_edges]}


def _size_maps(x: Sequence[int]) -> list[tuple[int, int]]:
    return [(a, b) for a, b in _FRAME_MAPS if all(x[(a * i + b) % 5] == x[i] for i in range(5))]


def _config_key(edges: frozenset, maps: Sequence[tuple[int, int]]) -> tuple:
    """Invariant of the funky graph under within-part permutations and frame maps.

    A colored graph is determined up to isomorphism by the multiset of its
    components, so the key is the sorted list of component keys, minimized
    over the frame maps.
    """
    best = None
    for a, b in maps:
        moved = [frozenset(((a * i + b) % 5, t) for i, t in e) for e in edges]
        key = tuple(sorted(_component_key(c) for c in _components(moved)))
        if best is None or key < best:
            best = key
    return best if best is not None else ()


def _components(edges: Sequence[frozenset]) -> list[frozenset]:
    groups: list[tuple[set, set]] = []
    for e in edges:
        hit = [g for g in groups if g[0] & e]
        verts, es = set(e), {e}
        for g in hit:
            verts |= g[0]
            es |= g[1]
            groups.remove(g)
        groups.append((verts, es))
    return [frozenset(g[1]) for g in groups]


@lru_cache(maxsize=1 << 18)
def _component_key(edges: frozenset) -> tuple:
    support = sorted({v for e in edges for v in e})
    index = {v: t for t, v in enumerate(support)}
    rows = [0] * len(support)
    for e in edges:
        u, w = (index[v] for v in e)
        rows[u] |= 1 << w
        rows[w] |= 1 << u
    colors = [v[0] for v in support]
    return (tuple(sorted(colors)), canonical_bits(ColoredGraph(len(support), tuple(rows)), colors))


def _to_config(x: tuple[int, ...], edges: frozenset) -> FunkyConfig:
    placed = []
    for e in sorted(tuple(sorted(e)) for e in edges):
        (i, a), (j, b) = e
        placed.append(((i, j), (a, b)))
    return FunkyConfig(x, tuple(placed))


def enumerate_placements(x: Sequence[int], k_max: int) -> Iterator[FunkyConfig]:
    """One configuration per orbit of up to ``k_max`` funky edges with concrete endpoints.

    Orbits are taken under permutations inside each part and the frame maps
    (rotations, reflections, color swap) that preserve the part sizes.  Level
    k is grown from level k-1 by adding one edge whose endpoints are either
    already used or the next unused vertex of a part.
    """
    x = tuple(x)
    _check_sizes(x)
    if not 0 <= k_max <= 6:
        raise ValueError("k_max must be between 0 and 6")
    maps = _size_maps(x)
    level = {_config_key(frozenset(), maps): frozenset()}
    yield FunkyConfig(x)
    for _ in range(k_max):
        nxt: dict = {}
        for edges in level.values():
            used = [0] * 5
            for e in edges:
                for i, a in e:
                    used[i] = max(used[i], a + 1)
            ends = [(i, a) for i in range(5) for a in range(min(used[i] + 1, x[i]))]
            for u, w in combinations(ends, 2):
                if u[0] == w[0]:
                    continue
                e = frozenset((u, w))
                if e in edges:
                    continue
                new = edges | {e}
                key = _config_key(new, maps)
                if key not in nxt:
                    nxt[key] = new
        level = nxt
        for edges in level.values():
            yield _to_config(x, edges)


def raw_placements(x: Sequence[int], k: int) -> Iterator[frozenset]:
    """Every labelled set of k funky pairs (no symmetry reduction); for small checks."""
    x = tuple(x)
    verts = [(i, a) for i in range(5) for a in range(x[i])]
    cross = [frozenset((u, w)) for u, w in combinations(verts, 2) if u[0] != w[0]]
    for sub in combinations(cross, k):
        yield frozenset(sub)


def placement_key(x: Sequence[int], edges: frozenset) -> tuple:
    return _config_key(edges, _size_maps(tuple(x)))


# ---------------------------------------------------------------------------
# counting


_CAPABLE: dict[tuple, bool] = {}


def _capable(parts: tuple[int, ...], flipped: int) -> bool:
    """Can 5 vertices in these parts induce C5 for some intra colors?  ``flipped`` marks funky pairs."""
    key = (parts, flipped)
    hit = _CAPABLE.get(key)
    if hit is not None:
        return hit
    known = red = 0
    for t, (p, q) in enumerate(_PAIRS):
        if parts[p] != parts[q]:
            known |= 1 << t
            if PATTERN_RED[parts[p]][parts[q]] != bool(flipped >> t & 1):
                red |= 1 << t
    ok = any(((m ^ red) & known) == 0 for m in FIVE_CYCLE_MASKS)
    _CAPABLE[key] = ok
    return ok


def _inside_potential(s: int, table: CycleTable | None) -> int:
    # 5-sets inside one part; large parts use the blow-up count by induction
    if s < 5:
        return 0
    return table.count(s) if table is not None else comb(s, 5)


def potential_c5_count(config: FunkyConfig, table: CycleTable | None = None) -> int:
    """Number of 5-sets that induce C5 for some choice of intra-part colors.

    Sets inside a single part count ``table.count(size)`` per part when a table
    is given (``comb(size, 5)`` otherwise).  Every other set is checked against
    the fixed cross colors; sets without a funky pair are transversals, so only
    sets meeting a funky pair need individual attention.
    """
    x = config.x_sizes
    table = table if table is not None else shared_table(max(config.n, 5))
    base = 1
    for s in x:
        base *= s
    base += sum(_inside_potential(s, table) for s in x)
    if not config.placed_edges:
        return base
    verts = sorted({(i, a) for (i, j), (a, b) in config.placed_edges} | {(j, b) for (i, j), (a, b) in config.placed_edges})
    index = {v: k for k, v in enumerate(verts)}
    adj = [0] * len(verts)
    for (i, j), (a, b) in config.placed_edges:
        u, w = index[(i, a)], index[(j, b)]
        adj[u] |= 1 << w
        adj[w] |= 1 << u
    free = list(x)
    for i, _ in verts:
        free[i] -= 1
    free = tuple(free)
    delta = 0
    for t in range(2, 6):
        for T in combinations(range(len(verts)), t):
            flipped = 0
            for p in range(t):
                row = adj[T[p]]
                if row:
                    for q in range(p + 1, t):
                        if row >> T[q] & 1:
                            flipped |= _PAIR_BIT[p][q]
            if flipped:
                delta += _completion_delta(tuple(verts[k][0] for k in T), flipped, free)
    return base + delta


_PAIR_BIT = [[1 << _PAIRS.index((p, q)) if p < q else 0 for q in range(5)] for p in range(5)]


@lru_cache(maxsize=1 << 16)
def _completion_delta(parts: tuple[int, ...], flipped: int, free: tuple[int, ...]) -> int:
    """Change in capable 5-sets over all ways to complete the support vertices in ``parts`` by free vertices."""
    total = 0
    for mult in _multisets(5 - len(parts)):
        weight = 1
        for i in range(5):
            weight *= comb(free[i], mult[i])
        if weight == 0:
            continue
        full = parts + tuple(i for i in range(5) for _ in range(mult[i]))
        total += weight * (_capable(full, flipped) - (len(set(full)) == 5))
    return total


def _multisets(m: int) -> list[tuple[int, ...]]:
    return _MULTISETS[m]


_MULTISETS = {
    m: [c for c in product(range(m + 1), repeat=5) if sum(c) == m] for m in range(6)
}


def potential_c5_count_bruteforce(config: FunkyConfig, table: CycleTable | None = None) -> int:
    """Direct check of all 5-subsets; reference for :func:`potential_c5_count`."""
    part = config.part_of()
    funky = config.funky_pairs()
    table = table if table is not None else shared_table(max(config.n, 5))
    total = sum(_inside_potential(s, table) for s in config.x_sizes)
    for S in combinations(range(config.n), 5):
        parts = tuple(part[v] for v in S)
        if len(set(parts)) == 1:
            continue
        flipped = 0
        for t, (p, q) in enumerate(_PAIRS):
            if (S[p], S[q]) in funky:
                flipped |= 1 << t
        total += _capable(parts, flipped)
    return total


def intra_pairs(config: FunkyConfig) -> list[tuple[int, int]]:
    part = config.part_of()
    return [(u, v) for u, v in combinations(range(config.n), 2) if part[u] == part[v]]


def _intra_colorings(config: FunkyConfig, max_edges: int) -> Iterator[ColoredGraph]:
    pairs = intra_pairs(config)
    if len(pairs) > max_edges:
        raise ValueError(f"{len(pairs)} intra-part pairs exceed the brute-force budget of {max_edges}")
    base = config.graph()
    for mask in range(1 << len(pairs)):
        rows = list(base.adj)
        for t, (u, v) in enumerate(pairs):
            if mask >> t & 1:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
        yield ColoredGraph(base.n, tuple(rows))


def exact_best_intra_bruteforce(config: FunkyConfig, max_edges: int = MAX_INTRA_EDGES) -> int:
    """Largest induced-C5 count over all 2^m intra colorings; reference for :func:`exact_best_intra`."""
    return max(count_induced_c5(g) for g in _intra_colorings(config, max_edges))


def frame_is_optimal(g: ColoredGraph, assignment: Sequence[int]) -> bool:
    """No frame has more correctly colored cross pairs than the given one."""
    n = g.n
    red = [[g.red(u, v) for v in range(n)] for u in range(n)]
    # single-vertex moves first: cheap and usually decisive
    for v in range(n):
        p = assignment[v]
        if sum(1 for a in assignment if a == p) == 1:
            continue
        gain = [0] * 5
        for w in range(n):
            q = assignment[w]
            if w == v:
                continue
            for t in range(5):
                if t != q and red[v][w] == PATTERN_RED[t][q]:
                    gain[t] += 1
        if max(gain[t] for t in range(5) if t != p) > gain[p]:
            return False
    return _exact_partition(g, partition_score(g, assignment)) is None


class _IntraSearch:
    """Branch and bound over the colors of the intra-part pairs.

    A 5-set is alive while some completion of its open intra pairs makes it
    an induced C5.  The number of live sets bounds every completion, and once
    all pairs are colored it is the exact count.
    """

    def __init__(self, config: FunkyConfig):
        self.config = config
        self.base = config.graph()
        part = config.part_of()
        pairs = intra_pairs(config)
        pid = {p: t for t, p in enumerate(pairs)}
        occ: list[list] = [[] for _ in pairs]
        alive: list[int] = []
        kills: list[list] = []
        fixed = 0
        for S in combinations(range(config.n), 5):
            local, known, red = [], 0, 0
            for t, (a, b) in enumerate(_PAIRS):
                u, v = S[a], S[b]
                if part[u] == part[v]:
                    local.append((t, pid[(u, v)]))
                else:
                    known |= 1 << t
                    if self.base.red(u, v):
                        red |= 1 << t
            masks = [m for m in FIVE_CYCLE_MASKS if ((m ^ red) & known) == 0]
            if not local:
                fixed += bool(masks)
                continue
            if not masks:
                continue
            k = len(alive)
            alive.append((1 << len(masks)) - 1)
            row = []
            for j, (t, q) in enumerate(local):
                # patterns that die when pair q is colored blue (0) or red (1)
                dead = [0, 0]
                for i, m in enumerate(masks):
                    dead[1 - (m >> t & 1)] |= 1 << i
                row.append(dead)
                occ[q].append((k, j))
            kills.append(row)
        order = sorted(range(len(pairs)), key=lambda q: -len(occ[q]))
        self.pairs = [pairs[q] for q in order]
        self.occ = [occ[q] for q in order]
        self.alive = alive
        self.kills = kills
        self.fixed = fixed
        self.nodes = 0

    def _assign(self, t: int, color: int, trail: list) -> int:
        lost = 0
        alive, kills = self.alive, self.kills
        for k, j in self.occ[t]:
            cur = alive[k]
            if cur:
                new = cur & ~kills[k][j][color]
                if new != cur:
                    trail.append((k, cur))
                    alive[k] = new
                    lost += not new
        return lost

    def _undo(self, trail: list, mark: int) -> None:
        while len(trail) > mark:
            k, cur = trail.pop()
            self.alive[k] = cur

    def graph(self, colors: Sequence[int]) -> ColoredGraph:
        rows = list(self.base.adj)
        for (u, v), c in zip(self.pairs, colors):
            if c:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
        return ColoredGraph(self.base.n, tuple(rows))

    def run(self, floor: int, leaf=None) -> int | None:
        """Largest leaf count >= floor (raising floor as leaves are found), or None.

        With ``leaf``, every coloring reaching ``floor`` is passed to it and
        only leaves it accepts count; ``floor`` then stays fixed.
        """
        best = [None]
        trail: list = []
        colors = [0] * len(self.pairs)
        bound0 = self.fixed + sum(1 for a in self.alive if a)

        def rec(t: int, bound: int) -> None:
            self.nodes += 1
            need = floor if leaf is not None or best[0] is None else best[0] + 1
            if bound < need:
                return
            if t == len(self.pairs):
                if leaf is None or leaf(colors, bound):
                    best[0] = bound if best[0] is None else max(best[0], bound)
                return
            for color in (1, 0):
                mark = len(trail)
                lost = self._assign(t, color, trail)
                colors[t] = color
                rec(t + 1, bound - lost)
                self._undo(trail, mark)

        rec(0, bound0)
        return best[0]


def exact_best_intra(config: FunkyConfig) -> int:
    """Largest induced-C5 count over all colorings of the intra-part pairs."""
    return _IntraSearch(config).run(0)


def best_intra_with_optimal_frame(config: FunkyConfig, threshold: int) -> int | None:
    """Largest count >= threshold among intra colorings for which the config's frame is optimal, else None.

    The funky-edge argument only concerns frames that maximize the number of
    correctly colored cross pairs, so colorings where a better frame exists
    are not counterexamples.
    """
    search = _IntraSearch(config)
    part = config.part_of()
    return search.run(threshold, lambda colors, count: frame_is_optimal(search.graph(colors), part))


# ---------------------------------------------------------------------------
# survivor verification


@dataclass
class SurvivorReport:
    verdict: bool
    tuples_checked: list = field(default_factory=list)
    configurations: int = 0
    escalated: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "tuples_checked": self.tuples_checked,
            "configurations": self.configurations,
            "escalated": self.escalated,
            "witnesses": self.witnesses,
        }


def survivor_x_tuples(outcomes: Iterable[POutcome]) -> list[tuple[int, ...]]:
    return sorted({x for o in outcomes for x in expand_to_x(o.y_counts)})


# The published list of residual cycle orderings, all with n <= 22.
LISTED_SURVIVORS: tuple[tuple[int, ...], ...] = (
    (1, 1, 1, 3, 3), (1, 3, 1, 1, 3), (1, 1, 2, 2, 3), (1, 2, 3, 2, 1), (1, 2, 3, 1, 2), (1, 2, 2, 1, 3),
    (1, 2, 2, 2, 2), (2, 2, 2, 2, 3), (2, 2, 2, 2, 4), (2, 2, 2, 3, 3), (2, 3, 2, 2, 3), (1, 3, 3, 3, 3),
    (2, 2, 2, 3, 4), (2, 2, 3, 3, 3), (2, 3, 2, 3, 3), (2, 3, 3, 3, 3), (3, 3, 3, 3, 4), (3, 3, 3, 4, 4),
    (3, 4, 3, 3, 4), (3, 3, 4, 4, 4), (3, 4, 3, 4, 4), (4, 4, 4, 5, 5), (4, 5, 4, 4, 5),
)
LISTED_MAX_N = 22


def compare_with_listed(report: ScanReport) -> dict:
    """Orbit-level comparison of scan survivors with LISTED_SURVIVORS."""
    found = {x_orbit_key(x) for x in survivor_x_tuples(report.survivors)}
    listed = {x_orbit_key(x) for x in LISTED_SURVIVORS}
    max_n = max((o.n for o in report.survivors), default=None)
    large = sorted({o.n for o in report.survivors if o.n > LISTED_MAX_N})
    return {
        "verdict": found == listed and not large,
        "survivor_max_n": max_n,
        "survivor_n_above_listed": large,
        "x_orbits_found": len(found),
        "x_orbits_listed": len(listed),
        "missing_from_scan": sorted(listed - found),
        "extra_in_scan": sorted(found - listed),
    }


def verify_survivors(
    x_tuples: Iterable[Sequence[int]] | None = None,
    constants: Constants = DEFAULT,
) -> SurvivorReport:
    """Check every funky placement on every x-tuple against the balanced count.

    Placements with no funky edges are the plain blow-ups, which never beat
    the balanced count; they are not listed.  A placement whose potential
    count reaches the balanced count is escalated to the exact maximum over
    intra-part colorings.  It fails only if a coloring reaching the balanced
    count keeps the given frame optimal.
    """
    if x_tuples is None:
        x_tuples = LISTED_SURVIVORS
    report = SurvivorReport(True)
    for x in x_tuples:
        x = tuple(x)
        n = sum(x)
        table = shared_table(max(n, 5))
        target = table.count(n)
        k_max, feasible = max_funky_edges(x, constants, table)
        entry = {"x": list(x), "n": n, "balanced_count": target, "k_max": k_max, "feasible": feasible, "configurations": 0, "max_potential": None}
        report.tuples_checked.append(entry)
        if not feasible or k_max == 0:
            continue
        for cfg in enumerate_placements(x, min(k_max, 6)):
            if cfg.k == 0:
                continue
            entry["configurations"] += 1
            report.configurations += 1
            pot = potential_c5_count(cfg, table)
            if entry["max_potential"] is None or pot > entry["max_potential"]:
                entry["max_potential"] = pot
            if pot < target:
                continue
            exact = exact_best_intra(cfg)
            tied = best_intra_with_optimal_frame(cfg, target) if exact >= target else None
            report.escalated.append(
                {"config": cfg.to_dict(), "potential": pot, "exact": exact, "optimal_frame_reaching_target": tied, "balanced_count": target}
            )
            if tied is not None:
                report.verdict = False
                report.witnesses.append({"config": cfg.to_dict(), "potential": pot, "exact": tied})
        if k_max > 6:
            report.verdict = False
            report.witnesses.append({"x": list(x), "reason": f"{k_max} funky edges allowed, only 6 enumerated"})
    return report
