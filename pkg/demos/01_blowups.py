"""Induced 5-cycles in small colorings and in iterated blow-ups of C5."""

from math import comb

from c5frac import C5, complement, count_induced_c5, cycle_table, materialize, balanced_tree, mobius_ladder
from c5frac.graphs import c5_blowup, is_blowup_of_c5

# A coloring of K_n is stored as the bitmasks of its red pairs.
# C5 itself has one induced 5-cycle, and so does its complement.
print(count_induced_c5(C5), count_induced_c5(complement(C5)))

# The Möbius ladder on 8 vertices ties the balanced blow-up at 8 cycles
# without being a blow-up of C5.
ladder = mobius_ladder()
print(count_induced_c5(ladder), is_blowup_of_c5(ladder))

# Blowing C5 up with parts (2, 2, 2, 1, 1) gives 8 transversal cycles.
g = c5_blowup((2, 2, 2, 1, 1))
print(count_induced_c5(g), is_blowup_of_c5(g))

# The iterated balanced blow-up puts another blow-up inside every part.
# The cycle table gets its counts from a recurrence; check a few
# against the materialized graphs.
table = cycle_table(200)
for n in (9, 13, 25):
    print(n, table.count(n), count_induced_c5(materialize(balanced_tree(n))))

# The density tends to 1/26 from above, and C(n*) is the density of the
# limit object built over the n-vertex blow-up.
for n in (10, 50, 100, 200):
    print(n, float(table.count(n) / comb(n, 5)), float(table.cstar(n)))
print(1 / 26)
