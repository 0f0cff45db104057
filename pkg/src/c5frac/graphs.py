"""Red/blue colorings of complete graphs and induced 5-cycle counting.

A :class:`ColoredGraph` stores the red relation as one bitmask per vertex;
every pair that is not red is blue.  An induced red C5 is the same thing as
an induced blue C5, so counts never depend on which color is called red.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from math import comb, sqrt
from typing import Iterable, Iterator, Sequence

# The 12 labelled 5-cycles on vertex set {0,..,4}, as 10-bit pair masks.
_PAIR_INDEX = {p: i for i, p in enumerate(combinations(range(5), 2))}


def _cycle_masks() -> tuple[int, ...]:
    from itertools import permutations

    masks = set()
    for perm in permutations(range(1, 5)):
        order = (0,) + perm
        m = 0
        for i in range(5):
            a, b = sorted((order[i], order[(i + 1) % 5]))
            m |= 1 << _PAIR_INDEX[(a, b)]
        masks.add(m)
    return tuple(sorted(masks))


FIVE_CYCLE_MASKS = _cycle_masks()


@dataclass(frozen=True)
class ColoredGraph:
    """Two-coloring of K_n; ``adj[v]`` is the bitmask of red neighbours of v."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1 or len(self.adj) != self.n:
            raise ValueError("adjacency length must equal n >= 1")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            if row & ~full:
                raise ValueError(f"vertex {v} has a neighbour out of range")
            r = row
            while r:
                low = r & -r
                w = low.bit_length() - 1
                if not self.adj[w] >> v & 1:
                    raise ValueError(f"red relation not symmetric on {v},{w}")
                r ^= low

    def red(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def red_pairs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in range(u + 1, self.n) if self.adj[u] >> v & 1]

    def red_degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def induced(self, vertices: Sequence[int]) -> "ColoredGraph":
        """Subgraph on ``vertices``, relabelled 0..k-1 in the given order."""
        pos = {v: i for i, v in enumerate(vertices)}
        rows = []
        for v in vertices:
            row = 0
            for w in vertices:
                if self.adj[v] >> w & 1:
                    row |= 1 << pos[w]
            rows.append(row)
        return ColoredGraph(len(vertices), tuple(rows))

    def relabel(self, perm: Sequence[int]) -> "ColoredGraph":
        """Graph in which old vertex v becomes ``perm[v]``."""
        rows = [0] * self.n
        for v in range(self.n):
            row = 0
            r = self.adj[v]
            while r:
                low = r & -r
                row |= 1 << perm[low.bit_length() - 1]
                r ^= low
            rows[perm[v]] = row
        return ColoredGraph(self.n, tuple(rows))


def make_graph(n: int, red_pairs: Iterable[tuple[int, int]]) -> ColoredGraph:
    """Build a coloring of K_n whose red pairs are exactly ``red_pairs``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    rows = [0] * n
    seen = set()
    for u, v in red_pairs:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"vertex out of range in pair ({u}, {v})")
        if u == v:
            raise ValueError(f"self-pair ({u}, {v})")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ValueError(f"duplicate pair {key}")
        seen.add(key)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return ColoredGraph(n, tuple(rows))


def complement(g: ColoredGraph) -> ColoredGraph:
    full = (1 << g.n) - 1
    return ColoredGraph(g.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.adj)))


def cycle_graph(n: int) -> ColoredGraph:
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)]) if n > 2 else make_graph(n, [(0, 1)] if n == 2 else [])


C5 = cycle_graph(5)


def mobius_ladder() -> ColoredGraph:
    """The 8-cycle together with its four long diagonals."""
    return make_graph(8, [(i, (i + 1) % 8) for i in range(8)] + [(i, i + 4) for i in range(4)])


def random_graph(n: int, p: float = 0.5, rng: random.Random | None = None) -> ColoredGraph:
    rng = rng or random.Random()
    return make_graph(n, [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p])


# ---------------------------------------------------------------------------
# induced C5 counting


def is_induced_c5(g: ColoredGraph, vertices: Sequence[int]) -> bool:
    """Five vertices induce a C5 iff each has exactly two red neighbours among them."""
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return all((g.adj[v] & mask).bit_count() == 2 for v in vertices)


def count_induced_c5_bruteforce(g: ColoredGraph) -> int:
    """Plain enumeration of all 5-subsets.  Reference oracle for the fast counter."""
    return sum(1 for s in combinations(range(g.n), 5) if is_induced_c5(g, s))


def iter_induced_c5(g: ColoredGraph) -> Iterator[tuple[int, int, int, int, int]]:
    """Yield each induced C5 once, as the cyclic order (a, b, c, d, e).

    ``a`` is the smallest vertex of the cycle and ``b < e`` are its two cycle
    neighbours, which fixes both rotation and reflection.
    """
    adj = g.adj
    n = g.n
    for a in range(n):
        above = ((1 << n) - 1) & ~((1 << (a + 1)) - 1)
        na = adj[a] & above
        far = above & ~adj[a]
        nbrs = _bits(na)
        for i, b in enumerate(nbrs):
            for e in nbrs[i + 1:]:
                if adj[b] >> e & 1:
                    continue
                cset = adj[b] & far & ~adj[e]
                dset = adj[e] & far & ~adj[b]
                c_bits = cset
                while c_bits:
                    low = c_bits & -c_bits
                    c = low.bit_length() - 1
                    d_bits = adj[c] & dset
                    while d_bits:
                        lowd = d_bits & -d_bits
                        yield (a, b, c, lowd.bit_length() - 1, e)
                        d_bits ^= lowd
                    c_bits ^= low


def count_induced_c5(g: ColoredGraph) -> int:
    """Number of 5-vertex subsets inducing a 5-cycle (in either color)."""
    adj = g.adj
    n = g.n
    total = 0
    for a in range(n):
        above = ((1 << n) - 1) & ~((1 << (a + 1)) - 1)
        far = above & ~adj[a]
        nbrs = _bits(adj[a] & above)
        for i, b in enumerate(nbrs):
            ab = adj[b]
            for e in nbrs[i + 1:]:
                if ab >> e & 1:
                    continue
                ae = adj[e]
                cset = ab & far & ~ae
                if not cset:
                    continue
                dset = ae & far & ~ab
                c_bits = cset
                while c_bits:
                    low = c_bits & -c_bits
                    total += (adj[low.bit_length() - 1] & dset).bit_count()
                    c_bits ^= low
    return total


def count_induced_c5_through(g: ColoredGraph, X: Iterable[int]) -> int:
    """Number of induced C5s whose vertex set contains ``X`` (1 <= |X| <= 3)."""
    X = sorted(set(X))
    if not 1 <= len(X) <= 3:
        raise ValueError("|X| must be 1, 2 or 3")
    if any(not 0 <= v < g.n for v in X):
        raise ValueError("X must be a subset of the vertex set")
    rest = [v for v in range(g.n) if v not in X]
    return sum(1 for s in combinations(rest, 5 - len(X)) if is_induced_c5(g, X + list(s)))


def estimate_c5_density(g: ColoredGraph, samples: int, rng: random.Random | None = None) -> tuple[float, float]:
    """Unbiased Monte Carlo estimate of the induced C5 density.

    Returns ``(estimate, standard_error)`` from ``samples`` uniform 5-subsets.
    """
    if g.n < 5:
        return 0.0, 0.0
    rng = rng or random.Random()
    hits = 0
    verts = range(g.n)
    for _ in range(samples):
        if is_induced_c5(g, rng.sample(verts, 5)):
            hits += 1
    p = hits / samples
    return p, sqrt(p * (1 - p) / samples)


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


# ---------------------------------------------------------------------------
# positions relative to a fixed induced C5


def frame_position(g: ColoredGraph, cycle: Sequence[int], u: int) -> int | None:
    """Position i such that ``u`` can replace ``cycle[i]`` keeping a C5 with the same pattern.

    ``u`` must agree with ``cycle[i]`` on all four other cycle vertices; the
    pair (u, cycle[i]) itself is unconstrained.  At most one position fits.
    """
    for i in range(5):
        ref = cycle[i]
        if all(g.red(u, cycle[j]) == g.red(ref, cycle[j]) for j in range(5) if j != i):
            return i
    return None


def is_blowup_of_c5(g: ColoredGraph) -> list[list[int]] | None:
    """Witness 5-partition with no wrongly colored cross pair, or None.

    Parts are listed in frame order: parts i and j are joined in blue when
    |i-j| is 1 or 4 and in red when it is 2 or 3.  Pairs inside a part are
    unconstrained.  Returns ``None`` if g is not a blow-up
    of C5 with five non-empty parts.
    """
    if g.n < 5:
        return None
    # Any valid partition has a transversal C5 through vertex 0.
    for cyc in iter_induced_c5(g):
        if 0 not in cyc:
            continue
        cyc = (cyc[0], cyc[2], cyc[4], cyc[1], cyc[3])
        parts: list[list[int]] = [[] for _ in range(5)]
        ok = True
        for u in range(g.n):
            if u in cyc:
                parts[cyc.index(u)].append(u)
                continue
            pos = frame_position(g, cyc, u)
            if pos is None:
                ok = False
                break
            parts[pos].append(u)
        if ok and _frame_is_clean(g, parts):
            start = next(i for i, p in enumerate(parts) if 0 in p)
            return [sorted(parts[(start + k) % 5]) for k in range(5)]
    return None


def _frame_is_clean(g: ColoredGraph, parts: Sequence[Sequence[int]]) -> bool:
    for i in range(5):
        for j in range(i + 1, 5):
            want_red = (j - i) in (2, 3)
            for u in parts[i]:
                for v in parts[j]:
                    if g.red(u, v) != want_red:
                        return False
    return True


# ---------------------------------------------------------------------------
# the family of 7-vertex balanced blow-ups


def c5_blowup(sizes: Sequence[int], inner: Sequence[ColoredGraph | None] | None = None) -> ColoredGraph:
    """Blow-up of C5 with the given part sizes in frame order.

    Parts i and j are joined in red when |i-j| is 2 or 3, in blue otherwise.

    ``inner[i]`` colors the inside of part i (all blue when None).
    """
    if len(sizes) != 5:
        raise ValueError("need five part sizes")
    offsets = [sum(sizes[:i]) for i in range(5)]
    pairs = []
    for i in range(5):
        for j in range(i + 1, 5):
            if (j - i) in (2, 3):
                pairs += [(offsets[i] + a, offsets[j] + b) for a in range(sizes[i]) for b in range(sizes[j])]
        if inner is not None and inner[i] is not None:
            if inner[i].n != sizes[i]:
                raise ValueError("inner graph size does not match part size")
            pairs += [(offsets[i] + a, offsets[i] + b) for a, b in inner[i].red_pairs()]
    return make_graph(sum(sizes), pairs)


def cbb_family() -> list[ColoredGraph]:
    """The six pairwise non-isomorphic balanced blow-ups of C5 on 7 vertices."""
    from .canon import canonical_form

    red2 = make_graph(2, [(0, 1)])
    blue2 = make_graph(2, [])
    found: dict = {}
    for doubled in ((0, 1), (0, 2)):
        for c0 in (blue2, red2):
            for c1 in (blue2, red2):
                sizes = [1] * 5
                inner: list[ColoredGraph | None] = [None] * 5
                sizes[doubled[0]] = sizes[doubled[1]] = 2
                inner[doubled[0]], inner[doubled[1]] = c0, c1
                g = c5_blowup(sizes, inner)
                found.setdefault(canonical_form(g), g)
    return [found[k] for k in sorted(found)]


def count_cbb(g: ColoredGraph) -> int:
    """Number of 7-subsets inducing a member of the balanced 7-vertex blow-up family.

    Each such 7-set contains exactly four induced C5s (its transversals), and
    from each of them the set is recovered as the C5 plus two vertices that
    fit two different positions and are joined by the pattern color.
    """
    if g.n < 7:
        return 0
    total = 0
    for cyc in iter_induced_c5(g):
        cset = set(cyc)
        fits = [(u, p) for u in range(g.n) if u not in cset for p in [frame_position(g, cyc, u)] if p is not None]
        for (u, pu), (w, pw) in combinations(fits, 2):
            if pu != pw and g.red(u, w) == ((pu - pw) % 5 in (1, 4)):
                total += 1
    assert total % 4 == 0
    return total // 4


def count_cbb_bruteforce(g: ColoredGraph) -> int:
    """7-subset enumeration with canonical-key comparison against the family."""
    from .canon import canonical_form

    keys = {canonical_form(h) for h in cbb_family()}
    return sum(1 for s in combinations(range(g.n), 7) if canonical_form(g.induced(s)) in keys)


def count_single_doubled(g: ColoredGraph) -> int:
    """Number of 6-subsets inducing a blow-up of C5 with part sizes (2,1,1,1,1)."""
    total = 0
    for cyc in iter_induced_c5(g):
        cset = set(cyc)
        total += sum(1 for u in range(g.n) if u not in cset and frame_position(g, cyc, u) is not None)
    assert total % 2 == 0
    return total // 2
