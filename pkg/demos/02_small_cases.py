"""Exhaustive classification of small colorings by their C5 counts."""

import time

from c5frac import classify_small
from c5frac.canon import canonical_form, enumerate_graphs, to_graph6
from c5frac.graphs import complement, count_induced_c5

# Isomorphism classes are grown one vertex at a time and deduplicated by
# canonical key.
for n in range(1, 8):
    print(n, sum(1 for _ in enumerate_graphs(n)))

# Counts are invariant under swapping colors, so the complement of a class
# has the same number of cycles.
bad = [to_graph6(g) for g in enumerate_graphs(7) if count_induced_c5(g) != count_induced_c5(complement(g))]
print("complement mismatches on 7 vertices:", bad)

# Colorings that maximize the count on 7 vertices are balanced blow-ups.
report = classify_small(7)
print(report.max_count, len(report.extremal), {e["kind"] for e in report.extremal})

# On 8 vertices two extra extremal classes appear: the Möbius ladder and
# its complement (about half a minute).
start = time.perf_counter()
report = classify_small(8)
print(report.classes, report.max_count, sorted({e["kind"] for e in report.extremal}), f"{time.perf_counter() - start:.0f}s")

# Extremal classes come back in graph6, red pairs as edges.
ladder = [e for e in report.extremal if e["kind"] == "mobius_ladder"][0]
print(ladder["graph6"])
