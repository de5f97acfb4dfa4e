"""Locality of graph states as ground states of few-body Hamiltonians.

Core objects: :class:`Graph` (simple undirected graphs on packed adjacency
rows), :class:`PauliOperator` / :class:`StabilizerGroup` (symplectic Pauli
algebra), :class:`PauliSumHamiltonian` (matrix-free Pauli sums) plus the
analyses built on them: minimal stabilizer weight, the low-weight subgroup,
spectral bounds and perturbative gadgets.
"""

from .bounds import BoundReport, gap_tradeoff, theorem4_check
from .errors import (
    ConsistencyError,
    ConvergenceError,
    GraphGroundError,
    InvalidInputError,
    SizeLimitError,
)
from .gadget import (
    GadgetLayout,
    GadgetResult,
    gadget_fidelity_sweep,
    generic_gadget,
    honeycomb_gadget,
    linear_cluster_gadget,
    split_four_to_three,
)
from .gf2 import BitMatrix, XorBasis, nullspace2, rank2, row_reduce
from .graph import (
    Graph,
    complete,
    cycle,
    grid,
    honeycomb,
    lc_orbit_min_degree,
    load_graph,
    local_complement,
    path,
    star,
    submatrix_cut,
)
from .hamiltonian import (
    PauliSumHamiltonian,
    SpectrumReport,
    canonical_hamiltonian,
    graph_state_vector,
    random_local_hamiltonian,
    spectrum,
    truncated_stabilizer_hamiltonian,
)
from .pauli import PauliOperator, commutes, multiply
from .stabilizer import (
    StabilizerGroup,
    degeneracy_lower_bound,
    delta_via_bruteforce,
    delta_via_rank,
    eta,
    graph_stabilizer,
    low_weight_subgroup,
    sign_flipped_family,
)

__version__ = "0.1.0"
