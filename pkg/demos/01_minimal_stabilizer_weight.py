"""Minimal stabilizer weight of a few graph states, three ways.

The cut-rank scan, the brute-force scan over the whole stabilizer and the
LC-orbit search (minimum degree + 1) must agree on every connected graph.
"""

from __future__ import annotations

import time

from graphground import cycle, delta_via_bruteforce, delta_via_rank, grid, lc_orbit_min_degree, path, star
from graphground.stabilizer import delta_with_witness

graphs = [path(6), cycle(5), cycle(8), star(6), grid(3, 3), grid(4, 4, periodic=True), grid(5, 5, periodic=True)]

for G in graphs:
    t = time.perf_counter()
    d, witness = delta_with_witness(G)
    elapsed = time.perf_counter() - t
    line = f"{G.name:<22} n={G.n:<3} delta={d}  witness={witness.label()}  ({elapsed * 1e3:.1f} ms)"
    if G.n <= 16:
        orbit = lc_orbit_min_degree(G)
        line += f"  brute={delta_via_bruteforce(G)}  orbit={orbit.min_degree + 1}"
    print(line)

# the cycle on four vertices is the odd one out: two opposite vertices share
# their neighbourhood, so the product of their generators is X0 X2
print("cycle:4 ->", delta_via_rank(cycle(4)), delta_with_witness(cycle(4))[1].label())
