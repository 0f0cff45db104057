"""Threshold facts about C(n*), balance, and the C5 versus C•• inequality."""

from c5frac.balance import claim4_large_constant, verify_balance_small, verify_cstar_thresholds, verify_proposition_step
from c5frac.blowup import shared_table
from c5frac.canon import enumerate_graphs
from c5frac.flagcheck import empirical_lemma1, gate, limit_margin, verify_rational_constants
from c5frac.graphs import cycle_graph

table = shared_table(25005)

# C(n*) stays above 0.03 for small n and above 0.0384609 for large n.
th = verify_cstar_thresholds(table)
print(th.verdict, float(th.small_min), th.small_argmin, float(th.large_min), th.large_argmin)

# The induction step carries the large-n bound from [n, n + 1] to 5n + i.
step = verify_proposition_step(1000, 1100, table)
print(step.verdict, float(step.min_final))

# Balanced part sizes are the unique best choice of an iterated blow-up.
print(verify_balance_small(300, table).verdict, float(claim4_large_constant(table=table)))

# The inequality uses rounded constants; the rational ones are the safe side.
print(verify_rational_constants()["checks"])

# Graphs on at most 7 vertices whose limit blow-up is dense enough in C5.
gated = []
for n in range(1, 8):
    for g in enumerate_graphs(n):
        try:
            gate(g)
        except ValueError:
            continue
        gated.append(g)
print(len(gated), [float(limit_margin(g)) for g in gated])

# Finite blow-ups overshoot the limit C5 density, so their margins can be
# negative even though the limit margin is not.
r = empirical_lemma1(cycle_graph(5), 1)
print(r.n, r.c5, r.margin)
