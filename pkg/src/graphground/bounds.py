"""Fidelity versus spectrum trade-off for ``d``-body Hamiltonians.

For a ``d``-body Hamiltonian ``H`` with ground state ``psi`` and a graph state
``|G>`` whose weight-``<= d`` stabilizer elements generate a subgroup of index
``r``::

    (mean(E_0..E_{r-1}) - E_0) / (sqrt(2) |E|)  <=  sqrt(1 - |<G|psi>|^2)

and, with ``dE = E_1 - E_0``, the weaker gap form
``(r-1) dE / (sqrt(2) r |E|) <= sqrt(1 - F^2)``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .errors import InvalidInputError
from .graph import Graph
from .hamiltonian import (
    MAX_LOWEST_K,
    PauliSumHamiltonian,
    SpectrumReport,
    graph_state_vector,
    max_fidelity,
    spectrum,
)
from .stabilizer import graph_stabilizer, span_dimension

DEFAULT_TOL = 1e-8


@dataclass
class BoundReport:
    """Both sides of the trade-off inequalities for one Hamiltonian.

    ``lhs``/``rhs`` are dimensionless (energies divided by ``|E|``) and
    ``tol`` is applied to them directly.  ``energy_gap`` is ``E_1 - E_0``
    counted with multiplicity (zero for a degenerate ground level), while
    ``level_gap`` is the distance to the first distinct excited level.
    """

    d: int
    s: int
    r: int
    lhs: float
    rhs: float
    gap_lhs: float
    fidelity: float
    satisfied: bool
    ground_degeneracy: int
    energy_gap: float
    level_gap: float
    relative_gap: float
    frobenius_norm: float
    tol: float
    gap_corollary_applicable: bool

    @property
    def fidelity_ceiling(self) -> float:
        """Upper bound on ``F`` implied by the gap form."""
        return math.sqrt(max(0.0, 1.0 - self.gap_lhs**2))

    def to_json(self) -> dict:
        out = asdict(self)
        out["fidelity_ceiling"] = self.fidelity_ceiling
        for k, v in out.items():
            if isinstance(v, float) and math.isnan(v):
                out[k] = None
        return out


def _spectrum_for(H: PauliSumHamiltonian, r: int) -> SpectrumReport:
    try:
        return spectrum(H, "full")
    except Exception as exc:  # too large for the dense path
        from .errors import SizeLimitError

        if not isinstance(exc, SizeLimitError):
            raise
    k = max(r, 2)
    if k > MAX_LOWEST_K:
        raise InvalidInputError(f"r={r} exceeds the iterative eigenvalue count limit {MAX_LOWEST_K}")
    return spectrum(H, "lowest", k=k)


def theorem4_check(
    G: Graph,
    H: PauliSumHamiltonian,
    tol: float = DEFAULT_TOL,
    report: SpectrumReport | None = None,
) -> BoundReport:
    """Evaluate the fidelity/spectrum inequality for ``H`` against ``|G>``.

    ``F`` is the largest overlap of ``|G>`` with any vector of the computed
    ground space, which is the least favourable choice for the inequality.
    """
    if H.n != G.n:
        raise InvalidInputError("Hamiltonian and graph act on different qubit counts")
    d = H.locality
    if d == 0:
        raise InvalidInputError("H is a multiple of the identity")
    s = span_dimension(graph_stabilizer(G), d)
    r = 1 << (G.n - s)
    rep = report if report is not None else _spectrum_for(H, r)
    E = rep.energies
    if len(E) < max(r, 2):
        raise InvalidInputError(f"need the lowest {max(r, 2)} energies, have {len(E)}")
    norm = rep.frobenius_norm
    e0 = E[0]
    lhs = float((np.mean(E[:r]) - e0) / (math.sqrt(2) * norm))
    F = max_fidelity(graph_state_vector(G), rep.ground_space)
    rhs = math.sqrt(max(0.0, 1.0 - F * F))
    energy_gap = float(E[1] - e0)
    if rep.ground_degeneracy > 1:
        energy_gap = 0.0
    gap_lhs = (r - 1) * energy_gap / (math.sqrt(2) * r * norm)
    satisfied = lhs <= rhs + tol and gap_lhs <= rhs + tol
    return BoundReport(
        d=d,
        s=s,
        r=r,
        lhs=lhs,
        rhs=rhs,
        gap_lhs=gap_lhs,
        fidelity=F,
        satisfied=satisfied,
        ground_degeneracy=rep.ground_degeneracy,
        energy_gap=energy_gap,
        level_gap=rep.gap,
        relative_gap=rep.gap / norm,
        frobenius_norm=norm,
        tol=tol,
        gap_corollary_applicable=rep.ground_degeneracy == 1,
    )


def gap_tradeoff(G: Graph, H: PauliSumHamiltonian, tol: float = DEFAULT_TOL) -> BoundReport:
    """Gap form of the bound; only meaningful when ``locality(H) < eta(G)``."""
    d = H.locality
    if span_dimension(graph_stabilizer(G), max(d, 1)) == G.n:
        raise InvalidInputError(f"locality {d} >= eta: no constraint from the trade-off bound")
    return theorem4_check(G, H, tol)
