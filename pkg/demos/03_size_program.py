"""Part sizes where the counting argument is inconclusive, and the funky placements on them."""

from c5frac.blowup import shared_table
from c5frac.program_p import (
    LISTED_SURVIVORS,
    compare_with_listed,
    enumerate_placements,
    expand_to_x,
    max_funky_edges,
    objective_p,
    potential_c5_count,
    scan_medium,
    verify_survivors,
)

table = shared_table(200)

# A negative objective means the bound cannot rule the part sizes out.
print(float(objective_p(9, (3, 2, 2, 1, 1), table)))
print(float(objective_p(16, (4, 3, 3, 3, 3), table)))

# Scan a short range.  Every survivor sits at small n here.
report = scan_medium(9, 40, table)
print(report.tuples_evaluated, len(report.survivors), sorted({o.n for o in report.survivors}))

# Survivors are sorted sizes; the cycle order of the parts matters, so each
# one expands to a few orderings up to rotation, reflection and color swap.
print(expand_to_x((3, 3, 1, 1, 1)))
cmp = compare_with_listed(report)
print(cmp["x_orbits_found"], cmp["x_orbits_listed"], cmp["missing_from_scan"])

# Few funky edges fit on such a small frame.  Each placement gets an upper
# bound on its C5 count, whatever the colors inside the parts are.
x = (1, 1, 1, 3, 3)
k_max, feasible = max_funky_edges(x, table=table)
configs = list(enumerate_placements(x, k_max))
potentials = [potential_c5_count(c, table) for c in configs]
print(k_max, len(configs), max(potentials), table.count(sum(x)))

# Placements whose bound reaches the balanced count are settled exactly.
result = verify_survivors([x])
print(result.verdict, [(e["potential"], e["exact"]) for e in result.escalated])

# The full check over all listed orderings: c5frac verify-survivors
print(len(LISTED_SURVIVORS))
