import math
import random
from fractions import Fraction

import pytest

from c5frac.constants import DEFAULT
from c5frac.mesh import (
    M3_TERMS,
    BoxCell,
    Cell,
    Grid,
    PDoublePrimeSetup,
    PPrimeSetup,
    m1_value,
    m2_value,
    m3_terms,
    pdoubleprime_cell_bound,
    pdoubleprime_feasible_point,
    pdoubleprime_grid,
    pdoubleprime_objective,
    pdoubleprime_tangent_bound,
    pprime_cell_bound,
    pprime_feasible_point,
    pprime_grid,
    pprime_objective,
    run_mesh,
    run_pdoubleprime,
)

LO, HI = float(DEFAULT.box_lo), float(DEFAULT.box_hi)


def pprime_objective_reference(y, d, f, n=1000):
    """The four-variable objective written out term by term."""
    y1, y2, y3, y4 = y
    y5 = 1 - sum(y)
    value = y3 * y4 * y5
    value -= 3 / 8 * d * y3 * y4
    value -= f * y3 / 8
    value -= f * (y1 + y2 + (y3 + y4 + y5) / 2) / 4
    value -= 9 / 32 * d * y1**2
    value -= 9 / (16 * n) * y1**2
    return value


def random_pprime_point(rng, setup):
    while True:
        y = sorted((rng.uniform(LO, HI) for _ in range(5)), reverse=True)
        s = sum(y)
        y = [v / s for v in y]
        if pprime_feasible_point(y[:4], setup):
            return y[:4]


def random_pdoubleprime_point(rng, setup):
    while True:
        x = [rng.uniform(LO, HI) for _ in range(4)]
        x = [1 - sum(x)] + x
        r = [rng.uniform(0, v) for v in x]
        if pdoubleprime_feasible_point(x, r, setup):
            return x, r


def cell_around(grid, point, depth):
    corner = tuple(min(int((p - o) / w * (1 << depth)), (1 << depth) - 1) for p, o, w in zip(point, grid.origin, grid.width))
    return Cell(grid, corner, depth)


def points_in_cell(rng, cell, feasible, count, tries=400):
    out = []
    for _ in range(tries):
        p = [b + rng.random() * e for b, e in zip(cell.base, cell.eps)]
        if feasible(p):
            out.append(p)
            if len(out) == count:
                break
    return out


# ---------------------------------------------------------------------------
# four variables


def test_objective_cross_implementation():
    setup = PPrimeSetup.from_constants()
    rng = random.Random(3)
    for _ in range(200):
        y = random_pprime_point(rng, setup)
        assert pprime_objective(y, setup) == pytest.approx(pprime_objective_reference(y, setup.d, setup.f), abs=1e-15)


def test_pprime_initial_cell_refines():
    setup = PPrimeSetup.from_constants()
    root = Cell(pprime_grid(), (0, 0, 0, 0), 0)
    assert pprime_cell_bound(root, setup) < float(DEFAULT.slack)


def test_pprime_soundness():
    setup = PPrimeSetup.from_constants()
    grid = pprime_grid()
    rng = random.Random(11)
    pairs = 0
    feasible = lambda p: pprime_feasible_point(p, setup)
    while pairs < 10_000:
        cell = cell_around(grid, random_pprime_point(rng, setup), rng.randrange(0, 9))
        bound = pprime_cell_bound(cell, setup)
        assert bound is not None
        for p in points_in_cell(rng, cell, feasible, 10):
            assert bound <= pprime_objective_reference(p, setup.d, setup.f) + 1e-15
            pairs += 1


def test_ordering_prune_is_safe():
    setup = PPrimeSetup.from_constants()
    grid = pprime_grid()
    rng = random.Random(5)
    pruned = 0
    while pruned < 300:
        depth = rng.randrange(1, 6)
        cell = Cell(grid, tuple(rng.randrange(1 << depth) for _ in range(4)), depth)
        if pprime_cell_bound(cell, setup) is not None:
            continue
        pruned += 1
        for _ in range(50):
            p = [b + rng.random() * e for b, e in zip(cell.base, cell.eps)]
            assert not pprime_feasible_point(p, setup)


def test_strict_pprime_bound_matches_float():
    fs, es = PPrimeSetup.from_constants(), PPrimeSetup.from_constants(exact=True)
    fg, eg = pprime_grid(), pprime_grid(exact=True)
    rng = random.Random(2)
    checked = disagree = 0
    while checked < 50:
        depth = rng.randrange(2, 7)
        corner = tuple(rng.randrange(1 << depth) for _ in range(4))
        a, b = pprime_cell_bound(Cell(fg, corner, depth), fs), pprime_cell_bound(Cell(eg, corner, depth), es)
        if (a is None) != (b is None):
            # a pruning test sitting exactly on a tie, decided differently by rounding
            disagree += 1
        elif a is not None:
            assert isinstance(b, Fraction) and abs(a - float(b)) < 1e-12
            checked += 1
    assert disagree <= 5


# ---------------------------------------------------------------------------
# cells and the driver


@pytest.mark.parametrize("make", [lambda g: Cell(g, (1, 2, 0), 2), lambda g: BoxCell(g, (1, 2, 0), (2, 3, 1))])
def test_children_tile_parent(make):
    grid = Grid((Fraction(0),) * 3, (Fraction(1), Fraction(3), Fraction(1, 2)))
    parent = make(grid)
    kids = parent.children()
    vol = lambda c: math.prod(c.eps)
    assert sum(vol(k) for k in kids) == vol(parent)
    for k in kids:
        for i in range(3):
            assert parent.base[i] <= k.base[i] and k.base[i] + k.eps[i] <= parent.base[i] + parent.eps[i]
    corners = {k.base for k in kids}
    assert len(corners) == len(kids)


@pytest.mark.parametrize("root", [Cell(Grid((0.0, 0.0), (1.0, 2.0)), (0, 0), 0), BoxCell(Grid((0.0, 0.0), (1.0, 2.0)), (0, 0), (0, 0))])
def test_driver_covers_the_box(root):
    covered = []

    def bound(cell):
        if cell.depth < 3 and sum(cell.base) < 1.5:
            return -1.0
        covered.append(math.prod(cell.eps))
        return 1.0

    report = run_mesh("synthetic", root, bound, 0.0)
    assert report.verdict
    assert sum(covered) == pytest.approx(2.0, abs=1e-12)
    assert report.objective_calls == len(covered) + report.cells_refined


def test_driver_aborts_at_depth():
    root = Cell(Grid((0.0,), (1.0,)), (0,), 0)
    report = run_mesh("synthetic", root, lambda c: -1.0, 0.0, max_depth=3)
    assert not report.verdict and report.aborted_cell["depth"] == 3
    report = run_mesh("synthetic", root, lambda c: -1.0, 0.0, max_calls=5)
    assert not report.verdict and report.objective_calls == 5


def test_driver_pruned_cells():
    root = Cell(Grid((0.0,), (1.0,)), (0,), 0)
    report = run_mesh("synthetic", root, lambda c: None if c.depth else -1.0, 0.0)
    assert report.verdict and report.cells_pruned == 2


# ---------------------------------------------------------------------------
# nine variables


def test_m3_examples():
    assert m3_terms([0] * 5, [0] * 5) == 0
    assert m3_terms([0.1] * 5, [0.1] * 5) == pytest.approx(0.03)
    assert len(M3_TERMS) == 30
    rng = random.Random(7)
    for _ in range(100):
        r = [rng.random() for _ in range(5)]
        b = [rng.random() for _ in range(5)]
        rot = lambda v: v[-1:] + v[:-1]
        assert m3_terms(rot(r), rot(b)) == pytest.approx(m3_terms(r, b))
    with pytest.raises(ValueError):
        m3_terms([0] * 4, [0] * 5)


def test_m1_and_m2():
    x = [0.2] * 5
    assert m1_value(x, 0) == pytest.approx(0.2**4)
    assert m1_value(x, 0.01) == pytest.approx(0.2**4 - 0.01 * 0.04)
    assert m2_value([0.1] * 5, [0.1] * 5) == pytest.approx(5e-4 + 4e-4 / 16)


def test_pdoubleprime_setup():
    s, e = PDoublePrimeSetup.from_constants(), PDoublePrimeSetup.from_constants(exact=True)
    assert isinstance(e.K, Fraction) and abs(float(e.K) - s.K) < 1e-15
    assert 0 < s.K < 1e-3
    assert s.K == pytest.approx(s.f * 999 / 2000)


def test_pdoubleprime_box_prune():
    setup = PDoublePrimeSetup.from_constants()
    grid = Grid((0.24, LO, LO, LO) + (0.0,) * 5, (0.01,) * 4 + (0.2,) * 5)
    assert pdoubleprime_cell_bound(Cell(grid, (0,) * 9, 0), setup) is None
    root = Cell(pdoubleprime_grid(), (0,) * 9, 0)
    assert pdoubleprime_cell_bound(root, setup) < float(DEFAULT.slack)
    assert pdoubleprime_tangent_bound(root, setup) < float(DEFAULT.slack)


def _pdoubleprime_pairs(bound_of, cells, points_per_cell, seed):
    setup = PDoublePrimeSetup.from_constants()
    grid = pdoubleprime_grid()
    rng = random.Random(seed)
    feasible = lambda p: pdoubleprime_feasible_point([1 - sum(p[:4])] + list(p[:4]), list(p[4:]), setup)
    pairs = 0
    for _ in range(cells):
        x, r = random_pdoubleprime_point(rng, setup)
        cell = cell_around(grid, x[1:] + r, rng.randrange(2, 8))
        bound = bound_of(cell, setup)
        assert bound is not None
        for p in points_in_cell(rng, cell, feasible, points_per_cell):
            value = pdoubleprime_objective([1 - sum(p[:4])] + list(p[:4]), list(p[4:]), setup)
            assert bound <= value + 1e-12
            pairs += 1
    return pairs


def test_pdoubleprime_corner_soundness():
    assert _pdoubleprime_pairs(pdoubleprime_cell_bound, 1500, 10, 17) >= 10_000


def test_pdoubleprime_tangent_soundness():
    assert _pdoubleprime_pairs(lambda c, s: pdoubleprime_tangent_bound(c, s), 1100, 10, 23) >= 10_000


def test_tangent_bound_on_box_cells_and_strict_mode():
    fs, es = PDoublePrimeSetup.from_constants(), PDoublePrimeSetup.from_constants(exact=True)
    fg, eg = pdoubleprime_grid(), pdoubleprime_grid(exact=True)
    rng = random.Random(4)
    for _ in range(8):
        levels = tuple(rng.randrange(1, 4) for _ in range(9))
        corner = tuple(rng.randrange(1 << l) for l in levels)
        a = pdoubleprime_tangent_bound(BoxCell(fg, corner, levels), fs)
        b = pdoubleprime_tangent_bound(BoxCell(eg, corner, levels), es, exact=True)
        assert (a is None) == (b is None)
        if a is not None:
            assert isinstance(b, Fraction) and abs(a - float(b)) < 1e-9


def test_pdoubleprime_run_is_deterministic():
    a = run_pdoubleprime(max_calls=60).to_dict()
    b = run_pdoubleprime(max_calls=60).to_dict()
    assert a == b and not a["verdict"] and a["objective_calls"] == 60
    with pytest.raises(ValueError):
        run_pdoubleprime(method="simplex")
