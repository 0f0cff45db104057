"""Bookkeeping and falsification tests around the C5 versus C•• inequality.

The inequality C••(G*) >= -A + B C(G*) for C(G*) > 0.03 comes from a flag
algebra certificate that is not reproduced here.  This module checks the
stated relation between its decimal and rational constants, and tests the
inequality on concrete graphs: on finite blow-ups by exact counting or
sampling, and on the limit object G* through an exact density formula.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb, sqrt

from .blowup import balanced_tree, c_star_of, materialize
from .canon import canonical_form
from .constants import DEFAULT, Constants
from .graphs import ColoredGraph, cbb_family, count_cbb, count_induced_c5, count_single_doubled

EXACT_MAX_N = 40
# C•• density of the iterated balanced blow-up limit of C5
CBB_OF_LIMIT = Fraction(5, 31)


def verify_rational_constants(constants: Constants = DEFAULT) -> dict:
    """The rational constants give a weaker bound than the decimals at the threshold, and sit on the safe side of each."""
    t = constants.c5_threshold
    rational = -constants.A_rational + t * constants.B_rational
    decimal = -constants.A + t * constants.B
    checks = {
        "threshold_value_rational_exceeds_decimal": rational > decimal,
        "A_rational_below_A": constants.A_rational < constants.A,
        "B_rational_above_B": constants.B_rational > constants.B,
    }
    return {
        "verdict": all(checks.values()),
        "checks": checks,
        "rational_value": str(rational),
        "decimal_value": str(decimal),
        "difference": str(rational - decimal),
    }


def lemma1_rhs(c5: Fraction | float, constants: Constants = DEFAULT):
    if isinstance(c5, float):
        return -float(constants.A) + float(constants.B) * c5
    return -constants.A + constants.B * Fraction(c5)


def gate(g: ColoredGraph, constants: Constants = DEFAULT) -> Fraction:
    """C(G*) for the limit blow-up over g; raises when it is not above the threshold."""
    density = Fraction(count_induced_c5(g), comb(g.n, 5)) if g.n >= 5 else Fraction(0)
    cstar = c_star_of(density, g.n)
    if cstar <= constants.c5_threshold:
        raise ValueError(f"C(G*) = {float(cstar):.6f} is not above {constants.c5_threshold}")
    return cstar


def depth_blowup(g: ColoredGraph, depth: int) -> ColoredGraph:
    """Every vertex of g replaced by the iterated balanced blow-up of C5 on 5^depth vertices."""
    inner = materialize(balanced_tree(5**depth))
    m = inner.n
    rows = []
    for v in range(g.n):
        for a in range(m):
            row = 0
            for w in range(g.n):
                if w == v:
                    row |= inner.adj[a] << (v * m)
                elif g.red(v, w):
                    row |= ((1 << m) - 1) << (w * m)
            rows.append(row)
    return ColoredGraph(g.n * m, tuple(rows))


@dataclass
class MarginReport:
    n: int
    depth: int | None
    mode: str
    c5: float
    cbb: float
    margin: float
    stderr: float = 0.0
    exact: Fraction | None = None
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "depth": self.depth,
            "mode": self.mode,
            "c5": self.c5,
            "cbb": self.cbb,
            "margin": self.margin,
            "stderr": self.stderr,
            "exact_margin": None if self.exact is None else str(self.exact),
            "note": self.note,
        }


def empirical_lemma1(
    g: ColoredGraph,
    depth: int,
    constants: Constants = DEFAULT,
    samples: int = 200_000,
    rng: random.Random | None = None,
) -> MarginReport:
    """C••-density minus the bound on a finite depth-level blow-up of g.

    Counted exactly up to 40 vertices and sampled above.  Finite depth only
    approximates G*, so the margin is a sanity value, not a proof.
    """
    gate(g, constants)
    h = depth_blowup(g, depth)
    note = "finite depth approximation of G*"
    if h.n <= EXACT_MAX_N:
        c5 = Fraction(count_induced_c5(h), comb(h.n, 5)) if h.n >= 5 else Fraction(0)
        cbb = Fraction(count_cbb(h), comb(h.n, 7)) if h.n >= 7 else Fraction(0)
        margin = cbb - lemma1_rhs(c5, constants)
        return MarginReport(h.n, depth, "exact", float(c5), float(cbb), float(margin), 0.0, margin, note)
    rng = rng or random.Random(0)
    keys = {canonical_form(m) for m in cbb_family()}
    hits5 = hits7 = 0
    for _ in range(samples):
        s = rng.sample(range(h.n), 7)
        sub = h.induced(s)
        hits7 += canonical_form(sub) in keys
        sub5 = sub.induced(range(5))
        hits5 += count_induced_c5(sub5)
    c5, cbb = hits5 / samples, hits7 / samples
    se = sqrt(cbb * (1 - cbb) / samples) + float(constants.B) * sqrt(c5 * (1 - c5) / samples)
    return MarginReport(h.n, depth, "sampled", c5, cbb, cbb - lemma1_rhs(c5, constants), se, None, note)


# ---------------------------------------------------------------------------
# the limit object


def cbb_of_limit(g: ColoredGraph) -> Fraction:
    """Exact C•• density of G*, the limit of iterated blow-ups over g.

    Seven random points of G* fall into the parts of g.  Only three patterns
    can induce a member of the family: seven distinct parts (a 7-set of g),
    one repeated part at a singleton position of a 6-set blow-up of C5, or
    two repeated parts on an induced C5.  All seven in one part repeats the
    question inside a copy of the C5 limit, whose density is 5/31.
    """
    n = g.n
    f7 = 5040
    total = f7 * count_cbb(g) + (f7 // 2) * 4 * count_single_doubled(g) + (f7 // 4) * 10 * count_induced_c5(g)
    return Fraction(total, n**7) + CBB_OF_LIMIT / n**6


def c5_of_limit(g: ColoredGraph) -> Fraction:
    density = Fraction(count_induced_c5(g), comb(g.n, 5)) if g.n >= 5 else Fraction(0)
    return c_star_of(density, g.n)


def limit_margin(g: ColoredGraph, constants: Constants = DEFAULT) -> Fraction:
    """C••(G*) - (-A + B C(G*)), exactly; the gate must pass."""
    gate(g, constants)
    return cbb_of_limit(g) - lemma1_rhs(c5_of_limit(g), constants)


class LimitSampler:
    """Random points of G*: a vertex of g followed by C5 positions at each blow-up level."""

    def __init__(self, g: ColoredGraph, levels: int = 40, rng: random.Random | None = None):
        self.g = g
        self.levels = levels
        self.rng = rng or random.Random(0)

    def point(self) -> tuple[int, tuple[int, ...]]:
        r = self.rng
        return r.randrange(self.g.n), tuple(r.randrange(5) for _ in range(self.levels))

    def red(self, p, q) -> bool:
        if p[0] != q[0]:
            return self.g.red(p[0], q[0])
        for a, b in zip(p[1], q[1]):
            if a != b:
                return (a - b) % 5 in (2, 3)
        return False

    def sample_graph(self, k: int) -> ColoredGraph:
        pts = [self.point() for _ in range(k)]
        rows = [0] * k
        for i in range(k):
            for j in range(i + 1, k):
                if self.red(pts[i], pts[j]):
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
        return ColoredGraph(k, tuple(rows))


def sample_limit_densities(g: ColoredGraph, samples: int, seed: int = 0) -> tuple[float, float, float, float]:
    """Monte Carlo (C5, C••) densities of G* with standard errors."""
    sampler = LimitSampler(g, rng=random.Random(seed))
    keys = {canonical_form(m) for m in cbb_family()}
    hits5 = hits7 = 0
    for _ in range(samples):
        h = sampler.sample_graph(7)
        hits7 += canonical_form(h) in keys
        hits5 += count_induced_c5(h.induced(range(5)))
    p5, p7 = hits5 / samples, hits7 / samples
    return p5, sqrt(p5 * (1 - p5) / samples), p7, sqrt(p7 * (1 - p7) / samples)
