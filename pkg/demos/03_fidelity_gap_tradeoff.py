"""Fidelity against gap for few-body Hamiltonians near a graph state.

Start from the truncated stabilizer Hamiltonian (exactly degenerate, unit
fidelity) and add a random 2-body perturbation of growing strength.  The
perturbation lifts the degeneracy, and the unique ground state it picks is
far from the target: the fidelity collapses as soon as a gap appears.
"""

from __future__ import annotations

import numpy as np

from graphground import cycle, gap_tradeoff, path, theorem4_check
from graphground.hamiltonian import random_local_hamiltonian, truncated_stabilizer_hamiltonian

rng = np.random.default_rng(3)
G = path(6)
base = truncated_stabilizer_hamiltonian(G, 2)
V = random_local_hamiltonian(G.n, 2, rng)

print(" eps      F        gap/|E|    ceiling   satisfied")
for eps in (0.0, 1e-3, 1e-2, 0.1, 0.3, 1.0):
    r = theorem4_check(G, base + eps * V)
    ceiling = r.fidelity_ceiling
    print(f"{eps:5.3f}  {r.fidelity:.6f}  {r.energy_gap / r.frobenius_norm:.3e}  {ceiling:.6f}  {r.satisfied}")

# purely random 2-body Hamiltonians sit far from the cycle state
worst = 0.0
for _ in range(100):
    r = gap_tradeoff(cycle(6), random_local_hamiltonian(6, 2, rng))
    worst = max(worst, r.fidelity)
print(f"best fidelity with |C6> over 100 random 2-body Hamiltonians: {worst:.4f}")
