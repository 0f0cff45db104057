"""Adaptive-mesh lower bounds for the two continuous programs of the large case.

Both verifiers cover a box by dyadic cells, bound the objective from below on
each cell, and split a cell into all half-width children while its bound is
not safely positive.  Cell corners live on an integer lattice, so children
tile their parent exactly.

The four-variable program works with part fractions ``y_1 >= ... >= y_5`` and
average funky degree ``d <= 0.2``.  The nine-variable program looks at one
vertex ``v`` of large funky degree in ``X_1``; ``r_i`` and ``b_i`` are its red
and blue neighbourhoods in ``X_i`` as fractions of n.  In that program the
color roles are swapped: pairs between consecutive parts are red.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Sequence

from .constants import DEFAULT, Constants
from .funky import numfunky_rhs

N_FIXED = 1000
MAX_DEPTH = 40
MAX_CALLS = 50_000_000


@dataclass(frozen=True)
class Grid:
    origin: tuple[float, ...]
    width: tuple[float, ...]

    @property
    def dim(self) -> int:
        return len(self.origin)


@dataclass(frozen=True)
class Cell:
    """Cell of the dyadic mesh: coordinate i spans origin_i + width_i * [c_i, c_i + 1] / 2^depth."""

    grid: Grid
    corner: tuple[int, ...]
    depth: int = 0

    def __post_init__(self):
        if len(self.corner) != self.grid.dim:
            raise ValueError("corner dimension does not match the grid")
        if any(not 0 <= c < 1 << self.depth for c in self.corner):
            raise ValueError("cell lies outside the grid box")

    @property
    def eps(self) -> tuple[float, ...]:
        return tuple(w / (1 << self.depth) for w in self.grid.width)

    @property
    def base(self) -> tuple[float, ...]:
        s = 1 << self.depth
        return tuple(o + w * c / s for o, w, c in zip(self.grid.origin, self.grid.width, self.corner))

    def exact_base(self) -> tuple[Fraction, ...]:
        s = 1 << self.depth
        return tuple(Fraction(o) + Fraction(w) * c / s for o, w, c in zip(self.grid.origin, self.grid.width, self.corner))

    def children(self) -> list["Cell"]:
        return [
            Cell(self.grid, tuple(2 * c + h for c, h in zip(self.corner, bits)), self.depth + 1)
            for bits in product((0, 1), repeat=self.grid.dim)
        ]


@dataclass
class VerifierReport:
    program: str
    verdict: bool = False
    objective_calls: int = 0
    max_stack: int = 0
    min_bound: float = math.inf
    cells_refined: int = 0
    cells_pruned: int = 0
    max_depth_reached: int = 0
    aborted_cell: dict | None = None
    settings: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "program": self.program,
            "verdict": self.verdict,
            "objective_calls": self.objective_calls,
            "max_stack": self.max_stack,
            "min_bound": self.min_bound,
            "cells_refined": self.cells_refined,
            "cells_pruned": self.cells_pruned,
            "max_depth_reached": self.max_depth_reached,
            "aborted_cell": self.aborted_cell,
            "settings": self.settings,
        }


def _rhs(constants: Constants) -> float:
    return float(numfunky_rhs(constants.cstar_large, constants))


def run_mesh(
    program: str,
    root: Cell,
    bound: Callable[[Cell], float | None],
    slack: float,
    max_depth: int = MAX_DEPTH,
    max_calls: int = MAX_CALLS,
) -> VerifierReport:
    """Depth-first refinement.  ``bound`` returns None for a cell without feasible points.

    A cell is accepted when its bound exceeds ``slack``; otherwise it is split.
    """
    report = VerifierReport(program, settings={"slack": slack, "max_depth": max_depth})
    stack = [root]
    report.max_stack = 1
    while stack:
        cell = stack.pop()
        report.max_depth_reached = max(report.max_depth_reached, cell.depth)
        value = bound(cell)
        if value is None:
            report.cells_pruned += 1
            continue
        report.objective_calls += 1
        if value > slack:
            report.min_bound = min(report.min_bound, value)
            continue
        if cell.depth >= max_depth or report.objective_calls >= max_calls:
            report.aborted_cell = {"base": list(cell.base), "eps": list(cell.eps), "depth": cell.depth, "bound": value}
            return report
        report.cells_refined += 1
        stack.extend(cell.children())
        report.max_stack = max(report.max_stack, len(stack))
    report.verdict = True
    return report


# ---------------------------------------------------------------------------
# four variables, d <= 0.2


@dataclass(frozen=True)
class PPrimeSetup:
    d: float
    f: float
    rhs: float
    n: int = N_FIXED

    @classmethod
    def from_constants(cls, constants: Constants = DEFAULT, exact: bool = False) -> "PPrimeSetup":
        rhs = numfunky_rhs(constants.cstar_large, constants)
        n = N_FIXED
        # f at its largest value, reached at the equal split where the pair sum is 0.4
        f = (Fraction(2, 5) - rhs) * (2 * n) / (n - 1)
        if exact:
            return cls(constants.d_split, f, rhs, n)
        return cls(float(constants.d_split), float(f), float(rhs), n)


def _box_grid(constants: Constants, dims: int, extra: int = 0, exact: bool = False) -> Grid:
    lo, hi = constants.box_lo, constants.box_hi
    if not exact:
        lo, hi = float(lo), float(hi)
    return Grid((lo,) * dims + (0 * lo,) * extra, (hi - lo,) * dims + (hi,) * extra)


def pprime_grid(constants: Constants = DEFAULT, exact: bool = False) -> Grid:
    return _box_grid(constants, 4, exact=exact)


def pprime_objective(y: Sequence[float], setup: PPrimeSetup) -> float:
    """Objective of the four-variable program at a point (y_5 dependent)."""
    y1, y2, y3, y4 = y
    y5 = 1 - y1 - y2 - y3 - y4
    d, f = setup.d, setup.f
    return (
        y3 * y4 * y5
        - 0.375 * d * y3 * y4
        - f * y3 / 8
        - 0.25 * f * (y1 + y2 + 0.5 * (y3 + y4 + y5))
        - 9 / 32 * d * y1 * y1
        - 9 / (16 * setup.n) * y1 * y1
    )


def pprime_feasible_point(y: Sequence[float], setup: PPrimeSetup) -> bool:
    y1, y2, y3, y4 = y
    y5 = 1 - y1 - y2 - y3 - y4
    ys = (y1, y2, y3, y4, y5)
    if any(ys[i] < ys[i + 1] for i in range(4)) or y5 < 0:
        return False
    pairs = sum(ys[i] * ys[j] for i in range(5) for j in range(i + 1, 5))
    return pairs >= setup.rhs


def pprime_cell_bound(cell: Cell, setup: PPrimeSetup) -> float | None:
    """Lower bound of the objective on the ordered feasible part of the cell, or None if that part is empty."""
    t1, t2, t3, t4 = cell.base
    e = cell.eps[0]
    t5 = 1 - t1 - t2 - t3 - t4
    t = (t1, t2, t3, t4)
    # some point of the cell must satisfy y_1 >= ... >= y_5
    for i in range(4):
        for j in range(i + 1, 4):
            if t[j] > t[i] + e:
                return None
    if t4 + e < t5 - 4 * e:
        return None
    # generous test of the funky-edge bound with f = 0
    pairs = t5 * (1 - t5) + sum((t[i] + e) * (t[j] + e) for i in range(4) for j in range(i + 1, 4))
    if pairs < setup.rhs:
        return None
    d, f = setup.d, setup.f
    return (
        (t3 + e) * (t4 + e) * (t5 - 4 * e)
        - 3 * d * (t3 + e) * (t4 + e) / 8
        - f * (t3 + e) / 8
        - f * (t1 + t2 + (t3 + t4 + t5) / 2 + e) / 4
        - 9 * d * (t1 + e) ** 2 / 32
        - 9 * (t1 + e) ** 2 / (16 * setup.n)
    )


def run_pprime(
    constants: Constants = DEFAULT,
    max_depth: int = MAX_DEPTH,
    slack: float | None = None,
    strict: bool = False,
    max_calls: int = MAX_CALLS,
) -> VerifierReport:
    """Refine the four-variable box until every cell bound exceeds the slack.

    With ``strict`` every cell bound is evaluated in exact rationals.
    """
    setup = PPrimeSetup.from_constants(constants, exact=strict)
    slack = (constants.slack if strict else float(constants.slack)) if slack is None else slack
    root = Cell(pprime_grid(constants, exact=strict), (0, 0, 0, 0), 0)
    report = run_mesh("pprime", root, lambda c: pprime_cell_bound(c, setup), slack, max_depth, max_calls)
    report.settings.update({"d": float(setup.d), "f": float(setup.f), "rhs": float(setup.rhs), "n": setup.n, "strict": strict})
    report.min_bound = float(report.min_bound)
    report.settings["slack"] = float(slack)
    return report


# ---------------------------------------------------------------------------
# nine variables, d > 0.2


# The 30 candidate counts for cycles through v and one funky edge away from v.
# Each term is a list of (("r"|"b", i), ("r"|"b", j)) products, parts 1-based.
_M3_TABLE = """
b1b2+b1b5+b3b2 r5b2+r2b2 b1r3+b1r1
b2b3+b2b1+b4b3 r1b3+r3b3 b2r4+b2r2
b3b4+b3b2+b5b4 r2b4+r4b4 b3r5+b3r3
b4b5+b4b3+b1b5 r3b5+r5b5 b4r1+b4r4
b5b1+b5b4+b2b1 r4b1+r1b1 b5r2+b5r5
r1r3+r5r3+r1r4 b4r3+b3r3 b5r1+b1r1
r2r4+r1r4+r2r5 b5r4+b4r4 b1r2+b2r2
r3r5+r2r5+r3r1 b1r5+b5r5 b2r3+b3r3
r4r1+r3r1+r4r2 b2r1+b1r1 b3r4+b4r4
r5r2+r4r2+r5r3 b3r2+b2r2 b4r5+b5r5
"""


def _parse_m3(text: str) -> tuple:
    terms = []
    for word in text.split():
        prods = []
        for mono in word.split("+"):
            prods.append(((mono[0], int(mono[1]) - 1), (mono[2], int(mono[3]) - 1)))
        terms.append(tuple(prods))
    return tuple(terms)


M3_TERMS = _parse_m3(_M3_TABLE)


def m3_terms(r: Sequence[float], b: Sequence[float]) -> float:
    """Largest of the 30 bilinear counts."""
    if len(r) != 5 or len(b) != 5:
        raise ValueError("need five r and five b values")
    var = {"r": r, "b": b}
    return max(sum(var[p][i] * var[q][j] for (p, i), (q, j) in term) for term in M3_TERMS)


def m1_value(x: Sequence[float], K: float) -> float:
    """Cycles avoiding X_i after the move, per n^4, maximized over the target part i."""
    best = -math.inf
    for i in range(5):
        prod = 1.0
        for j in range(5):
            if j != i:
                prod *= x[j]
        worst = max(x[j] * x[l] for j in range(5) for l in range(j + 1, 5) if i not in (j, l))
        best = max(best, prod - K * worst)
    return best


def m2_value(r: Sequence[float], b: Sequence[float]) -> float:
    """Cycles in G through v whose only funky edges meet v, per n^4."""
    s = 0.0
    for i in range(5):
        s += r[i] * b[(i + 1) % 5] * b[(i + 2) % 5] * r[(i + 3) % 5]
    s += sum(r[i] ** 2 * b[i] ** 2 for i in range(1, 5)) / 16
    return s


@dataclass(frozen=True)
class PDoublePrimeSetup:
    f: float
    K: float
    rhs: float
    funky_degree: float = 0.1
    n: int = N_FIXED

    @classmethod
    def from_constants(cls, constants: Constants = DEFAULT, exact: bool = False) -> "PDoublePrimeSetup":
        rhs = numfunky_rhs(constants.cstar_large, constants)
        n = N_FIXED
        f = Fraction(2 * n, n - 1) * (10 * constants.d_split**2 - rhs)
        K = f * n * (n - 1) / 2 / n**2
        if exact:
            return cls(f, K, rhs, constants.d_split / 2, n)
        return cls(float(f), float(K), float(rhs), float(constants.d_split) / 2, n)


def pdoubleprime_objective(x: Sequence[float], r: Sequence[float], setup: PDoublePrimeSetup) -> float:
    b = [x[i] - r[i] for i in range(5)]
    return m1_value(x, setup.K) - m2_value(r, b) - (0.125 + 0.5 * m3_terms(r, b)) * setup.K


def pdoubleprime_feasible_point(x: Sequence[float], r: Sequence[float], setup: PDoublePrimeSetup, constants: Constants = DEFAULT) -> bool:
    """Constraints a genuine configuration satisfies (v sits in X_1)."""
    lo, hi = float(constants.box_lo), float(constants.box_hi)
    if abs(sum(x) - 1) > 1e-12 or any(not lo <= xi <= hi for xi in x):
        return False
    b = [x[i] - r[i] for i in range(5)]
    if min(r) < 0 or min(b) < 0:
        return False
    stay = r[1] + b[2] + b[3] + r[4]
    moves = (
        r[0] + b[1] + b[2] + r[3],
        r[2] + b[3] + b[4] + r[0],
        r[3] + b[4] + b[0] + r[1],
        r[4] + b[0] + b[1] + r[2],
    )
    if stay < max(moves):
        return False
    if b[1] + r[2] + r[3] + b[4] <= setup.funky_degree:
        return False
    pairs = sum(x[i] * x[j] for i in range(5) for j in range(i + 1, 5))
    return pairs >= setup.rhs


def pdoubleprime_grid(constants: Constants = DEFAULT, exact: bool = False) -> Grid:
    return _box_grid(constants, 4, 5, exact)


def _cell_ranges(cell: Cell):
    base, eps = cell.base, cell.eps
    xlo = list(base[:4])
    xhi = [xlo[i] + eps[i] for i in range(4)]
    x_lo = [1 - sum(xhi)] + xlo
    x_hi = [1 - sum(xlo)] + xhi
    r_lo = list(base[4:])
    r_hi = [r_lo[i] + eps[4 + i] for i in range(5)]
    return x_lo, x_hi, r_lo, r_hi


def pdoubleprime_cell_bound(cell: Cell, setup: PDoublePrimeSetup, constants: Constants = DEFAULT) -> float | None:
    """Lower bound of the nine-variable objective over the feasible part of the cell, or None if empty.

    Every factor is non-negative on a feasible cell, so products are bounded
    by plugging in the smallest or largest value of each variable.
    """
    lo, hi = float(constants.box_lo), float(constants.box_hi)
    x_lo, x_hi, r_lo, r_hi = _cell_ranges(cell)
    if x_hi[0] < lo or x_lo[0] > hi:
        return None
    x_lo = [max(v, lo) for v in x_lo]
    x_hi = [min(v, hi) for v in x_hi]
    r_hi = [min(r_hi[i], x_hi[i]) for i in range(5)]
    if any(r_lo[i] > r_hi[i] for i in range(5)):
        return None
    b_lo = [max(x_lo[i] - r_hi[i], 0.0) for i in range(5)]
    b_hi = [x_hi[i] - r_lo[i] for i in range(5)]
    if any(v < 0 for v in b_hi):
        return None
    # b_i = x_i - r_i shares x_i and r_i, so differences are bounded through x and r directly
    # stay - move >= 0 for each alternative part (b_3, b_4, ... cancel where they appear on both sides)
    def hi_of(terms):
        s = 0.0
        for sign, kind, i in terms:
            if kind == "r":
                s += sign * (r_hi[i] if sign > 0 else r_lo[i])
            elif kind == "x":
                s += sign * (x_hi[i] if sign > 0 else x_lo[i])
        return s

    # stay = r2 + b3 + b4 + r5 with b = x - r
    stay = [(+1, "r", 1), (+1, "x", 2), (-1, "r", 2), (+1, "x", 3), (-1, "r", 3), (+1, "r", 4)]
    moves = [
        [(+1, "r", 0), (+1, "x", 1), (-1, "r", 1), (+1, "x", 2), (-1, "r", 2), (+1, "r", 3)],
        [(+1, "r", 2), (+1, "x", 3), (-1, "r", 3), (+1, "x", 4), (-1, "r", 4), (+1, "r", 0)],
        [(+1, "r", 3), (+1, "x", 4), (-1, "r", 4), (+1, "x", 0), (-1, "r", 0), (+1, "r", 1)],
        [(+1, "r", 4), (+1, "x", 0), (-1, "r", 0), (+1, "x", 1), (-1, "r", 1), (+1, "r", 2)],
    ]
    for mv in moves:
        if hi_of(_combine(stay, mv)) < 0:
            return None
    funky = [(+1, "x", 1), (-1, "r", 1), (+1, "r", 2), (+1, "r", 3), (+1, "x", 4), (-1, "r", 4)]
    if hi_of(funky) <= setup.funky_degree:
        return None
    pairs = sum(x_hi[i] * x_hi[j] for i in range(5) for j in range(i + 1, 5))
    if pairs < setup.rhs:
        return None
    m1 = m1_value(x_lo, 0.0) if setup.K == 0 else _m1_lower(x_lo, x_hi, setup.K)
    m2 = m2_value(r_hi, b_hi)
    m3 = m3_terms(r_hi, b_hi)
    return m1 - m2 - (0.125 + 0.5 * m3) * setup.K


def _combine(stay, move):
    """Linear form stay - move with like terms merged."""
    coef: dict = {}
    for sign, kind, i in stay:
        coef[(kind, i)] = coef.get((kind, i), 0) + sign
    for sign, kind, i in move:
        coef[(kind, i)] = coef.get((kind, i), 0) - sign
    out = []
    for (kind, i), c in coef.items():
        for _ in range(abs(c)):
            out.append((1 if c > 0 else -1, kind, i))
    return out


def _m1_lower(x_lo: Sequence[float], x_hi: Sequence[float], K: float) -> float:
    best = -math.inf
    for i in range(5):
        prod = 1.0
        for j in range(5):
            if j != i:
                prod *= x_lo[j]
        worst = max(x_hi[j] * x_hi[l] for j in range(5) for l in range(j + 1, 5) if i not in (j, l))
        best = max(best, prod - K * worst)
    return best


# Second-order bound.  The corner bound above loses a term linear in the cell
# width, which does not close the gap on this program in reasonable time.
# Here each polynomial is replaced by its tangent plane at the cell centre
# with a rigorous bound on the quadratic remainder, and the resulting linear
# model is minimized over the cell intersected with the linear constraints.
# Variables are indexed x_i -> i, r_i -> 5 + i, b_i -> 10 + i.

_M2_MONOMIALS = tuple((1, (5 + i, 10 + (i + 1) % 5, 10 + (i + 2) % 5, 5 + (i + 3) % 5)) for i in range(5)) + tuple(
    (Fraction(1, 16), (5 + i, 5 + i, 10 + i, 10 + i)) for i in range(1, 5)
)
_M1_MONOMIALS = tuple(tuple(j for j in range(5) if j != i) for i in range(5))
# stay - move >= 0 for v in X_1, as (kind, index) lists
_STAY = (("r", 1), ("b", 2), ("b", 3), ("r", 4))
_MOVES = (
    (("r", 0), ("b", 1), ("b", 2), ("r", 3)),
    (("r", 2), ("b", 3), ("b", 4), ("r", 0)),
    (("r", 3), ("b", 4), ("b", 0), ("r", 1)),
    (("r", 4), ("b", 0), ("b", 1), ("r", 2)),
)
_FUNKY = (("b", 1), ("r", 2), ("r", 3), ("b", 4))


@dataclass(frozen=True)
class BoxCell:
    """Cell refined by bisecting one axis at a time: axis i spans origin_i + width_i * [c_i, c_i + 1] / 2^level_i."""

    grid: Grid
    corner: tuple[int, ...]
    levels: tuple[int, ...]

    @property
    def depth(self) -> int:
        return max(self.levels)

    @property
    def eps(self) -> tuple:
        return tuple(w / (1 << l) for w, l in zip(self.grid.width, self.levels))

    @property
    def base(self) -> tuple:
        return tuple(o + w * c / (1 << l) for o, w, c, l in zip(self.grid.origin, self.grid.width, self.corner, self.levels))

    def children(self) -> list["BoxCell"]:
        eps = self.eps
        axis = max(range(len(eps)), key=lambda i: (eps[i], -i))
        out = []
        for h in (0, 1):
            corner = list(self.corner)
            corner[axis] = 2 * corner[axis] + h
            levels = list(self.levels)
            levels[axis] += 1
            out.append(BoxCell(self.grid, tuple(corner), tuple(levels)))
        return out


def _taylor(mono: Sequence[int], c, half, up):
    """Value and gradient of a monomial at c, and a bound on |remainder| over the box c +- half."""
    v = 1
    for k in mono:
        v = v * c[k]
    grad: dict = {}
    rem = 0
    m = len(mono)
    for a in range(m):
        p = 1
        for k in range(m):
            if k != a:
                p = p * c[mono[k]]
        grad[mono[a]] = grad.get(mono[a], 0) + p
        for b in range(m):
            if b != a:
                q = 1
                for k in range(m):
                    if k != a and k != b:
                        q = q * up[mono[k]]
                rem = rem + q * half[mono[a]] * half[mono[b]]
    return v, grad, rem / 2


def _fold(grad: dict) -> list:
    """Gradient over (x, r, b) as a gradient over (x, r) with b = x - r."""
    out = [0] * 10
    for k, g in grad.items():
        if k < 10:
            out[k] = out[k] + g
        else:
            out[k - 10] = out[k - 10] + g
            out[k - 5] = out[k - 5] - g
    return out


def _linear(terms, sign=1) -> list:
    row = [0] * 10
    for kind, i in terms:
        if kind == "r":
            row[5 + i] += sign
        else:
            row[i] += sign
            row[5 + i] -= sign
    return row


@dataclass
class _LinearModel:
    cost: list  # over (x, r, t)
    const: object
    A_ub: list
    b_ub: list
    A_eq: list
    b_eq: list
    lo: list
    hi: list


def _cell_model(cell, setup: PDoublePrimeSetup, constants: Constants, exact: bool):
    """Linear lower model of the objective on a cell, or None when the cell has no feasible point."""
    num = Fraction if exact else float
    box_lo, box_hi = (constants.box_lo, constants.box_hi) if exact else (float(constants.box_lo), float(constants.box_hi))
    base, eps = cell.base, cell.eps
    if exact:
        base, eps = [Fraction(v) for v in base], [Fraction(v) for v in eps]
    xl = [1 - sum(base[i] + eps[i] for i in range(4))] + [base[i] for i in range(4)]
    xh = [1 - sum(base[:4])] + [base[i] + eps[i] for i in range(4)]
    xl = [max(v, box_lo) for v in xl]
    xh = [min(v, box_hi) for v in xh]
    rl = [base[4 + i] for i in range(5)]
    rh = [min(base[4 + i] + eps[4 + i], xh[i]) for i in range(5)]
    if any(xl[i] > xh[i] or rl[i] > rh[i] for i in range(5)):
        return None
    bl = [max(xl[i] - rh[i], 0 * xl[i]) for i in range(5)]
    bh = [xh[i] - rl[i] for i in range(5)]
    if any(bl[i] > bh[i] for i in range(5)) or sum(xl) > 1 or sum(xh) < 1:
        return None
    lo, hi = xl + rl + bl, xh + rh + bh
    c = [(lo[k] + hi[k]) / 2 for k in range(10)]
    c += [c[i] - c[5 + i] for i in range(5)]
    half = [max(c[k] - lo[k], hi[k] - c[k]) for k in range(15)]
    K = setup.K

    cost = [num(0)] * 10
    const = num(0)
    rem = num(0)
    for coef, mono in _M2_MONOMIALS:
        v, grad, rm = _taylor(mono, c, half, hi)
        g = _fold(grad)
        coef = num(coef)
        const -= coef * (v - sum(g[k] * c[k] for k in range(10)))
        cost = [cost[k] - coef * g[k] for k in range(10)]
        rem += coef * rm
    m3 = m3_terms(rh, bh)
    const -= (num(1) / 8 + m3 / 2) * K + rem

    A_ub, b_ub = [], []
    for i, mono in enumerate(_M1_MONOMIALS):
        v, grad, rm = _taylor(mono, c, half, hi)
        g = _fold(grad)
        worst = max(xh[j] * xh[l] for j in range(5) for l in range(j + 1, 5) if i not in (j, l))
        # t >= v + g (z - c) - rm - K worst
        A_ub.append(g + [num(-1)])
        b_ub.append(sum(g[k] * c[k] for k in range(10)) - v + rm + K * worst)
    stay = _linear(_STAY)
    for mv in _MOVES:
        A_ub.append([num(a - b) for a, b in zip(_linear(mv), stay)] + [num(0)])
        b_ub.append(num(0))
    A_ub.append([num(a) for a in _linear(_FUNKY, -1)] + [num(0)])
    b_ub.append(-num(setup.funky_degree))
    for i in range(5):
        row = [num(0)] * 11
        row[5 + i], row[i] = num(1), num(-1)
        A_ub.append(row)
        b_ub.append(num(0))
    # the pair-sum constraint is concave; its tangent at the centre is a relaxation
    A_ub.append([2 * c[i] for i in range(5)] + [num(0)] * 6)
    b_ub.append(1 - 2 * setup.rhs + sum(c[i] * c[i] for i in range(5)))
    A_eq = [[num(1)] * 5 + [num(0)] * 6]
    b_eq = [num(1)]
    one = num(1)
    return _LinearModel(cost + [one], const, A_ub, b_ub, A_eq, b_eq, xl + rl + [-one], xh + rh + [one])


def _dual_bound(model: _LinearModel, y, mu, exact: bool):
    """Weak-duality lower bound of min cost.z over the model for multipliers y >= 0 and mu."""
    num = Fraction if exact else float
    y = [num(max(v, 0.0)) for v in y]
    mu = [num(v) for v in mu]
    n = len(model.cost)
    g = list(model.cost)
    for yi, row in zip(y, model.A_ub):
        if yi:
            g = [g[k] + yi * row[k] for k in range(n)]
    for mi, row in zip(mu, model.A_eq):
        g = [g[k] + mi * row[k] for k in range(n)]
    value = -sum(yi * bi for yi, bi in zip(y, model.b_ub)) - sum(mi * bi for mi, bi in zip(mu, model.b_eq))
    for k in range(n):
        value += g[k] * (model.lo[k] if g[k] >= 0 else model.hi[k])
    return value


def _solve(model: _LinearModel, exact: bool):
    """Certified minimum of the linear model, or None when the model is infeasible."""
    import numpy as np
    from scipy.optimize import linprog

    f = lambda rows: np.array([[float(v) for v in row] for row in rows])
    res = linprog(
        np.array([float(v) for v in model.cost]),
        A_ub=f(model.A_ub),
        b_ub=np.array([float(v) for v in model.b_ub]),
        A_eq=f(model.A_eq),
        b_eq=np.array([float(v) for v in model.b_eq]),
        bounds=list(zip(map(float, model.lo), map(float, model.hi))),
        method="highs",
    )
    if res.status == 0:
        return _dual_bound(model, -res.ineqlin.marginals, -res.eqlin.marginals, exact)
    if res.status != 2:
        raise RuntimeError(f"linear program failed: {res.message}")
    # certify infeasibility: the least uniform violation of the inequalities is positive
    n = len(model.cost)
    phase = _LinearModel(
        [0] * n + [1],
        0,
        [list(row) + [-1] for row in model.A_ub],
        model.b_ub,
        [list(row) + [0] for row in model.A_eq],
        model.b_eq,
        list(model.lo) + [0],
        list(model.hi) + [1],
    )
    res = linprog(
        np.array([float(v) for v in phase.cost]),
        A_ub=f(phase.A_ub),
        b_ub=np.array([float(v) for v in phase.b_ub]),
        A_eq=f(phase.A_eq),
        b_eq=np.array([float(v) for v in phase.b_eq]),
        bounds=list(zip(map(float, phase.lo), map(float, phase.hi))),
        method="highs",
    )
    if res.status == 0 and _dual_bound(phase, -res.ineqlin.marginals, -res.eqlin.marginals, exact) > 0:
        return None
    # not certified: treat as feasible with a bound from the box alone
    return _dual_bound(model, [0] * len(model.A_ub), [0] * len(model.A_eq), exact)


def pdoubleprime_tangent_bound(cell, setup: PDoublePrimeSetup, constants: Constants = DEFAULT, exact: bool = False):
    """Lower bound of the nine-variable objective over the feasible part of a cell, or None if that part is empty.

    Valid on any cell type with ``base`` and ``eps``.  With ``exact`` the
    model, remainder and duality certificate are evaluated in rationals.
    """
    model = _cell_model(cell, setup, constants, exact)
    if model is None:
        return None
    value = _solve(model, exact)
    if value is None:
        return None
    return value + model.const


def run_pdoubleprime(
    constants: Constants = DEFAULT,
    max_depth: int = MAX_DEPTH,
    slack: float | None = None,
    strict: bool = False,
    method: str = "tangent",
    max_calls: int = MAX_CALLS,
) -> VerifierReport:
    """Refine the nine-variable box until every cell bound exceeds the slack.

    ``method="tangent"`` bisects one axis at a time with the second-order
    bound; ``method="corner"`` splits into 2^9 children with the corner bound.
    """
    setup = PDoublePrimeSetup.from_constants(constants, exact=strict)
    slack = (constants.slack if strict else float(constants.slack)) if slack is None else slack
    grid = pdoubleprime_grid(constants, exact=strict)
    if method == "tangent":
        root = BoxCell(grid, (0,) * 9, (0,) * 9)
        bound = lambda c: pdoubleprime_tangent_bound(c, setup, constants, strict)
    elif method == "corner":
        if strict:
            raise ValueError("the corner bound has no strict mode")
        root = Cell(grid, (0,) * 9, 0)
        bound = lambda c: pdoubleprime_cell_bound(c, setup, constants)
    else:
        raise ValueError(f"unknown method {method!r}")
    report = run_mesh("pdoubleprime", root, bound, slack, max_depth, max_calls)
    report.settings.update({"f": float(setup.f), "K": float(setup.K), "rhs": float(setup.rhs), "n": setup.n, "strict": strict, "method": method})
    report.min_bound = float(report.min_bound)
    report.settings["slack"] = float(slack)
    return report
