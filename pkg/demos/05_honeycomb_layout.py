"""Structural build of the 2-body gadget for a periodic honeycomb lattice.

Far too large to diagonalize; the point is the layout, the per-site term
inventory and the locality audit.
"""

from __future__ import annotations

from collections import Counter

from graphground import honeycomb_gadget
from graphground.gadget import audit_locality, default_honeycomb_coefficients

delta = 0.1
res = honeycomb_gadget(2, 2, delta, default_honeycomb_coefficients(delta, 8))
audit_locality(res.hamiltonian)
print(f"{res.layout.n_system} sites, {res.layout.total_n} qubits, {len(res.hamiltonian)} terms")
print("weights:", dict(sorted(Counter(op.weight for _, op in res.hamiltonian.terms).items())))
print(f"dynamic range {res.dynamic_range:.3e}")
site, inv = next(iter(res.inventory.items()))
print(f"site {site}: ancillas {res.layout.ancilla_map['site ' + str(site)]}, term groups {inv}")
