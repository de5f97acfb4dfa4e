"""How much of the stabilizer is generated by its low-weight elements.

For each d the subgroup S_d has dimension s; any d-body Hamiltonian with the
graph state in its ground space then has a ground degeneracy of at least
2**(n - s).  eta is the first d at which S_d is the whole group.
"""

from __future__ import annotations

import numpy as np

from graphground import cycle, eta, graph_stabilizer, grid, path
from graphground.hamiltonian import spectrum, truncated_stabilizer_hamiltonian
from graphground.stabilizer import span_dimension

for G in (path(6), cycle(6), grid(2, 3), grid(3, 3)):
    S = graph_stabilizer(G)
    dims = [span_dimension(S, d) for d in range(1, G.n + 1)]
    print(f"{G.name:<16} eta={eta(G)}  s(d)={dims[: eta(G)]}")

# the forced degeneracy is realized by the truncated stabilizer Hamiltonian
G = path(6)
s = span_dimension(graph_stabilizer(G), 2)
rep = spectrum(truncated_stabilizer_hamiltonian(G, 2))
print(f"path:6 d=2: s={s}, bound 2**(n-s)={2 ** (G.n - s)}, observed degeneracy={rep.ground_degeneracy}")

rep = spectrum(truncated_stabilizer_hamiltonian(G, 3))
print("path:6 d=3: lowest levels", np.round(rep.energies[:4], 6), "(unique ground state)")
