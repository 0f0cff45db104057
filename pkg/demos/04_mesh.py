"""Adaptive meshes for the two continuous programs."""

import random

from c5frac.mesh import (
    BoxCell,
    Cell,
    PDoublePrimeSetup,
    PPrimeSetup,
    pdoubleprime_feasible_point,
    pdoubleprime_grid,
    pdoubleprime_objective,
    pdoubleprime_tangent_bound,
    pprime_cell_bound,
    pprime_grid,
    run_mesh,
)

# Four variables: part fractions y_1..y_4 (y_5 is what is left), funky
# degree at most 0.2.  The root cell is far too coarse to decide anything.
setup = PPrimeSetup.from_constants()
grid = pprime_grid()
root = Cell(grid, (0, 0, 0, 0), 0)
print(pprime_cell_bound(root, setup))

# Children halve every side.  A child whose points all break y_1 >= ... >= y_5
# gets None; at this depth every child still meets the ordering.
bounds = [pprime_cell_bound(c, setup) for c in root.children()]
print(sum(b is None for b in bounds), min(b for b in bounds if b is not None))

# A shallow run shows the bookkeeping; the full run (about 10 minutes) is
# c5frac mesh pprime.
report = run_mesh("pprime", root, lambda c: pprime_cell_bound(c, setup), 1e-4, max_depth=3)
print(report.objective_calls, report.cells_pruned, report.max_stack, report.aborted_cell is not None)

# Nine variables: one vertex v with many funky edges.  Cells are split one
# axis at a time, and each is bounded by a linear program over a
# second-order model of the objective.
setup2 = PDoublePrimeSetup.from_constants()
cell = BoxCell(pdoubleprime_grid(), (0,) * 9, (0,) * 9)
for _ in range(12):
    cell = cell.children()[0]
print(cell.eps, pdoubleprime_tangent_bound(cell, setup2))

# Every bound must stay below the objective at feasible points of its cell.
rng = random.Random(1)
worst = float("inf")
for _ in range(2000):
    x = [rng.uniform(0.166, 0.234) for _ in range(4)]
    x = [1 - sum(x)] + x
    r = [rng.uniform(0, v) for v in x]
    if pdoubleprime_feasible_point(x, r, setup2):
        worst = min(worst, pdoubleprime_objective(x, r, setup2))
print(worst)
