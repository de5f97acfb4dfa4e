"""Pauli-sum Hamiltonians, graph-state vectors and eigensolvers.

Terms are stored as ``{(x, z): h}`` where ``(x, z)`` names the Hermitian
letter operator (X, Y, Z tensor product with sign +) and ``h`` is real.  The
matrix-free product groups terms by their X mask: for a fixed flip pattern
``x`` the action is a diagonal followed by the index permutation ``k -> k ^ x``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping

import numpy as np
import scipy.linalg

from .errors import ConsistencyError, ConvergenceError, InvalidInputError, SizeLimitError
from .gf2 import popcount
from .graph import Graph
from .pauli import PauliOperator, apply_to_state, parity_signs
from .stabilizer import (
    StabilizerGroup,
    _mask,
    _span,
    eta,
    graph_stabilizer,
    low_weight_subgroup,
)

DENSE_STATE_LIMIT = 22
DENSE_MATRIX_LIMIT = 4096
MAX_LOWEST_K = 64


class PauliSumHamiltonian:
    """Real combination of Hermitian Pauli operators on ``n`` qubits.

    Duplicate operators are merged on construction; exact zeros are dropped.
    """

    def __init__(self, n: int, terms: Iterable[tuple[float, PauliOperator]] = ()):
        self.n = n
        coeffs: dict[tuple[int, int], float] = {}
        for h, op in terms:
            if op.n != n:
                raise InvalidInputError(f"term {op} acts on {op.n} qubits, expected {n}")
            if not op.is_hermitian:
                raise InvalidInputError(f"term {op} is not Hermitian")
            h = float(h)
            if not math.isfinite(h):
                raise InvalidInputError("coefficients must be finite")
            key = (op.x, op.z)
            coeffs[key] = coeffs.get(key, 0.0) + h * op.sign
        self._coeffs = {k: v for k, v in coeffs.items() if v != 0.0}
        self._diag_cache = None

    @classmethod
    def from_coefficients(cls, n: int, coeffs: Mapping[tuple[int, int], float]) -> PauliSumHamiltonian:
        return cls(n, ((h, PauliOperator.hermitian(n, x, z)) for (x, z), h in coeffs.items()))

    @classmethod
    def from_labels(cls, labels: Mapping[str, float]) -> PauliSumHamiltonian:
        ops = [(h, PauliOperator.from_label(s)) for s, h in labels.items()]
        if not ops:
            raise InvalidInputError("need at least one label to infer n")
        return cls(ops[0][1].n, ops)

    @property
    def coefficients(self) -> dict[tuple[int, int], float]:
        return dict(self._coeffs)

    @property
    def terms(self) -> list[tuple[float, PauliOperator]]:
        return [(h, PauliOperator.hermitian(self.n, x, z)) for (x, z), h in self._coeffs.items()]

    def __len__(self) -> int:
        return len(self._coeffs)

    @property
    def locality(self) -> int:
        return max((popcount(x | z) for x, z in self._coeffs), default=0)

    @property
    def is_real(self) -> bool:
        return all(popcount(x & z) % 2 == 0 for x, z in self._coeffs)

    def coefficient(self, op: PauliOperator) -> float:
        return self._coeffs.get((op.x, op.z), 0.0) * op.sign

    def __add__(self, other: PauliSumHamiltonian) -> PauliSumHamiltonian:
        if other.n != self.n:
            raise InvalidInputError("qubit count mismatch")
        return PauliSumHamiltonian(self.n, self.terms + other.terms)

    def __mul__(self, c: float) -> PauliSumHamiltonian:
        return PauliSumHamiltonian(self.n, [(c * h, op) for h, op in self.terms])

    __rmul__ = __mul__

    def __neg__(self) -> PauliSumHamiltonian:
        return self * -1.0

    def shifted(self, c: float) -> PauliSumHamiltonian:
        """``H + c I``."""
        return PauliSumHamiltonian(self.n, self.terms + [(c, PauliOperator.identity(self.n))])

    def __repr__(self) -> str:
        return f"PauliSumHamiltonian(n={self.n}, terms={len(self)}, locality={self.locality})"

    def describe(self, limit: int = 20) -> str:
        parts = [f"{h:+.6g} {op.label()[1:]}" for h, op in self.terms[:limit]]
        if len(self) > limit:
            parts.append("...")
        return " ".join(parts)

    # -- numerics ---------------------------------------------------------

    @property
    def dim(self) -> int:
        return 1 << self.n

    def _diagonals(self):
        if self._diag_cache is None:
            if self.n > DENSE_STATE_LIMIT:
                raise SizeLimitError(f"n={self.n} exceeds the state-vector limit {DENSE_STATE_LIMIT}")
            idx = np.arange(self.dim, dtype=np.int64)
            dtype = np.float64 if self.is_real else np.complex128
            groups: dict[int, np.ndarray] = {}
            for (x, z), h in sorted(self._coeffs.items()):
                d = groups.get(x)
                if d is None:
                    d = groups[x] = np.zeros(self.dim, dtype=dtype)
                # letter operator = i^|x&z| X^x Z^z
                c = h * 1j ** popcount(x & z)
                d += (c.real if dtype is np.float64 else c) * parity_signs(idx, z)
            self._diag_cache = (idx, groups, dtype)
        return self._diag_cache

    def matvec(self, v: np.ndarray) -> np.ndarray:
        """``H v`` without materialising the matrix.  Accepts ``(dim,)`` or ``(dim, b)``."""
        v = np.asarray(v)
        if v.shape[0] != self.dim:
            raise InvalidInputError(f"vector has {v.shape[0]} amplitudes, expected {self.dim}")
        idx, groups, dtype = self._diagonals()
        out = np.zeros(v.shape, dtype=np.result_type(dtype, v.dtype))
        for x, d in groups.items():
            w = d * v if v.ndim == 1 else d[:, None] * v
            out += w[idx ^ x]
        return out

    def to_dense(self) -> np.ndarray:
        if self.dim > DENSE_MATRIX_LIMIT:
            raise SizeLimitError(f"dimension {self.dim} exceeds the dense limit {DENSE_MATRIX_LIMIT}")
        idx, groups, dtype = self._diagonals()
        M = np.zeros((self.dim, self.dim), dtype=dtype)
        for x, d in groups.items():
            M[idx ^ x, idx] += d
        return M

    def expectation(self, v: np.ndarray) -> float:
        return float(np.vdot(v, self.matvec(v)).real)


def matvec(H: PauliSumHamiltonian, v: np.ndarray) -> np.ndarray:
    return H.matvec(v)


def frobenius_energy_norm(H: PauliSumHamiltonian) -> float:
    """``sqrt(Tr H^2) = sqrt(2**n * sum h^2)`` from Pauli orthogonality."""
    return math.sqrt(H.dim * sum(h * h for h in H.coefficients.values()))


# --------------------------------------------------------------------------
# graph-state Hamiltonians


def stabilizer_hamiltonian(ops: Iterable[PauliOperator], n: int) -> PauliSumHamiltonian:
    """``-sum g`` over the given stabilizer elements."""
    return PauliSumHamiltonian(n, [(-1.0, g) for g in ops])


def canonical_hamiltonian(G: Graph, minimal_weight: bool = False) -> PauliSumHamiltonian:
    """Minus the sum of ``n`` independent stabilizer generators.

    With ``minimal_weight`` the generators are a minimum-weight basis of the
    stabilizer, so the locality equals eta rather than max degree + 1.
    """
    S = graph_stabilizer(G)
    gens = S.generators
    if minimal_weight:
        gens = low_weight_subgroup(S, eta(G)).basis
    return stabilizer_hamiltonian(gens, G.n)


def low_weight_elements(S: StabilizerGroup, d: int) -> list[PauliOperator]:
    """All nonidentity elements of weight ``<= d``."""
    combos: set[int] = set()
    for A in combinations(range(S.n), min(d, S.n)):
        basis = S.supported_combos(_mask(A, S.n))
        if basis:
            combos.update(_span(basis))
    combos.discard(0)
    return [S.element(c) for c in sorted(combos)]


def truncated_stabilizer_hamiltonian(G: Graph, d: int) -> PauliSumHamiltonian:
    """``-sum g`` over every nonidentity stabilizer element of weight ``<= d``."""
    elems = low_weight_elements(graph_stabilizer(G), d)
    if not elems:
        raise InvalidInputError(f"no stabilizer elements of weight <= {d} (d below delta)")
    return stabilizer_hamiltonian(elems, G.n)


def local_paulis(n: int, d: int, identity: bool = False) -> list[PauliOperator]:
    """Every Hermitian letter operator of weight ``1..d`` (and ``I`` if asked)."""
    out = [PauliOperator.identity(n)] if identity else []
    for w in range(1, min(d, n) + 1):
        for qubits in combinations(range(n), w):
            for letters in range(3**w):
                x = z = 0
                for q in qubits:
                    letters, r = divmod(letters, 3)
                    # r: 0 -> X, 1 -> Y, 2 -> Z
                    if r < 2:
                        x |= 1 << q
                    if r > 0:
                        z |= 1 << q
                out.append(PauliOperator.hermitian(n, x, z))
    return out


def random_local_hamiltonian(n: int, d: int, rng=None, low: float = -1.0, high: float = 1.0) -> PauliSumHamiltonian:
    """All weight-``<= d`` Pauli terms with coefficients uniform in ``[low, high]``."""
    rng = np.random.default_rng(rng)
    ops = local_paulis(n, d)
    coeffs = rng.uniform(low, high, size=len(ops))
    return PauliSumHamiltonian(n, zip(coeffs, ops))


# --------------------------------------------------------------------------
# state vectors


def _check_state_size(n: int):
    if n > DENSE_STATE_LIMIT:
        raise SizeLimitError(f"n={n} exceeds the state-vector limit {DENSE_STATE_LIMIT}")


def graph_state_vector(G: Graph) -> np.ndarray:
    """Amplitudes ``2**(-n/2) (-1)**(number of edges with both ends set)``."""
    _check_state_size(G.n)
    idx = np.arange(1 << G.n, dtype=np.int64)
    count = np.zeros(idx.shape, dtype=np.int64)
    for a, b in G.edges():
        count += ((idx >> a) & 1) & ((idx >> b) & 1)
    return (1 - 2 * (count & 1)) * 2.0 ** (-G.n / 2) + 0j


def _project(S: StabilizerGroup, v: np.ndarray) -> np.ndarray:
    for g in S.generators:
        v = 0.5 * (v + apply_to_state(g, v))
    return v


def stabilizer_state_vector(S: StabilizerGroup) -> np.ndarray:
    """Unique unit vector fixed by every generator; first nonzero amplitude real positive."""
    _check_state_size(S.n)
    dim = 1 << S.n
    seeds = [np.eye(1, dim, 0, dtype=complex)[0]]
    rng = np.random.default_rng(0)
    seeds.append(rng.standard_normal(dim) + 1j * rng.standard_normal(dim))
    for seed in seeds:
        v = _project(S, seed)
        norm = np.linalg.norm(v)
        if norm > 1e-8 * np.linalg.norm(seed):
            v = v / norm
            first = np.flatnonzero(np.abs(v) > 1e-12)[0]
            return v * (abs(v[first]) / v[first])
    raise ConsistencyError("projection annihilated every seed; generators are inconsistent")


def fidelity(u: np.ndarray, v: np.ndarray, tol: float = 1e-8) -> float:
    """``|<u|v>|`` for unit vectors."""
    u = np.asarray(u)
    v = np.asarray(v)
    if u.shape != v.shape:
        raise InvalidInputError("state dimension mismatch")
    for w in (u, v):
        if abs(np.linalg.norm(w) - 1.0) > tol:
            raise InvalidInputError("fidelity requires normalised states")
    return float(min(1.0, abs(np.vdot(u, v))))


def max_fidelity(target: np.ndarray, space: np.ndarray) -> float:
    """Largest ``|<target|psi>|`` over unit vectors in the span of the orthonormal columns of ``space``."""
    overlaps = space.conj().T @ target
    return float(min(1.0, np.linalg.norm(overlaps)))


# --------------------------------------------------------------------------
# spectra


@dataclass
class SpectrumReport:
    """Lowest (or all) energies of a Hamiltonian with ground-level statistics.

    ``gap`` is the distance from E0 to the first level outside the ground
    cluster (``nan`` when no such level was computed).
    """

    n: int
    locality: int
    energies: np.ndarray
    ground_degeneracy: int
    gap: float
    frobenius_norm: float
    method: str
    tol: float
    tol_cluster: float
    ground_space: np.ndarray | None = None
    residuals: np.ndarray | None = field(default=None, repr=False)

    @property
    def ground_energy(self) -> float:
        return float(self.energies[0])

    @property
    def full(self) -> bool:
        return len(self.energies) == 1 << self.n

    def to_json(self, max_energies: int = 64) -> dict:
        return {
            "n": self.n,
            "locality": self.locality,
            "energies": [float(e) for e in self.energies[:max_energies]],
            "ground_energy": self.ground_energy,
            "degeneracy": self.ground_degeneracy,
            "gap": None if math.isnan(self.gap) else float(self.gap),
            "frobenius_norm": self.frobenius_norm,
            "method": self.method,
            "tolerances": {"tol": self.tol, "tol_cluster": self.tol_cluster},
        }


def _phase_fix(vectors: np.ndarray) -> np.ndarray:
    """Make the largest-magnitude amplitude of each column real positive."""
    out = vectors.astype(complex, copy=True)
    for j in range(out.shape[1]):
        col = out[:, j]
        i = int(np.argmax(np.abs(col)))
        if abs(col[i]) > 0:
            out[:, j] = col * (abs(col[i]) / col[i])
    return out


def _cluster(energies: np.ndarray, tol_cluster: float) -> tuple[int, float]:
    e0 = energies[0]
    above = np.flatnonzero(energies > e0 + tol_cluster)
    if above.size == 0:
        return len(energies), math.nan
    return int(above[0]), float(energies[above[0]] - e0)


def spectrum(
    H: PauliSumHamiltonian,
    mode: str = "full",
    k: int | None = None,
    tol: float = 1e-10,
    tol_cluster: float | None = None,
    seed: int = 0,
    vectors: bool = True,
    dense_limit: int = DENSE_MATRIX_LIMIT,
    max_restarts: int = 200,
) -> SpectrumReport:
    """Diagonalise ``H``.

    ``mode="full"`` uses a dense symmetric eigendecomposition (all energies, or
    the lowest ``k`` when given).  ``mode="lowest"`` runs a restarted block
    Lanczos iteration with full reorthogonalisation for the lowest ``k``
    energies; convergence means every residual ``|Hv - Ev|`` is at most
    ``tol * |E|``.
    """
    norm = frobenius_energy_norm(H)
    if tol_cluster is None:
        tol_cluster = 1e-6 * max(1.0, norm)
    if mode == "full":
        if H.dim > dense_limit:
            raise SizeLimitError(f"dimension {H.dim} exceeds the dense limit {dense_limit}")
        M = H.to_dense()
        if k is None or k >= H.dim:
            w, V = np.linalg.eigh(M)
        else:
            w, V = scipy.linalg.eigh(M, subset_by_index=[0, k - 1], driver="evr")
        residuals = None
        method = "dense"
    elif mode == "lowest":
        if k is None:
            k = 1
        if not 1 <= k <= MAX_LOWEST_K:
            raise InvalidInputError(f"lowest-k mode needs 1 <= k <= {MAX_LOWEST_K}")
        if k >= H.dim:
            return spectrum(H, "full", None, tol, tol_cluster, seed, vectors, dense_limit)
        w, V, residuals = _block_lanczos(H, k, tol * max(norm, 1e-300), seed, max_restarts)
        method = "iterative"
    else:
        raise InvalidInputError(f"unknown spectrum mode {mode!r}")
    degeneracy, gap = _cluster(w, tol_cluster)
    ground = _phase_fix(V[:, :degeneracy]) if vectors else None
    return SpectrumReport(
        n=H.n,
        locality=H.locality,
        energies=np.asarray(w, dtype=float),
        ground_degeneracy=degeneracy,
        gap=gap,
        frobenius_norm=norm,
        method=method,
        tol=tol,
        tol_cluster=tol_cluster,
        ground_space=ground,
        residuals=residuals,
    )


def _project_out(W: np.ndarray, V: np.ndarray | None) -> np.ndarray:
    if V is None or not V.shape[1]:
        return W
    for _ in range(2):
        W = W - V @ (V.conj().T @ W)
    return W


def _orthonormalize(W: np.ndarray, V: np.ndarray | None, rng) -> np.ndarray:
    """Orthonormalise ``W`` against ``V`` and itself; refill lost directions randomly.

    Columns whose norm collapses below ``1e-8`` of the block norm carry mostly
    rounding noise and are replaced by fresh random directions.
    """
    ref = max(float(np.linalg.norm(W, axis=0).max(initial=0.0)), 1e-300)
    W = _project_out(W, V)
    Q, R = np.linalg.qr(W)
    weak = np.abs(np.diag(R)) < 1e-8 * ref
    if weak.any():
        fresh = rng.standard_normal((W.shape[0], int(weak.sum()))).astype(W.dtype)
        keep = Q[:, ~weak]
        basis = keep if V is None else np.hstack([V, keep])
        fresh, _ = np.linalg.qr(_project_out(fresh, basis))
        Q = np.hstack([keep, fresh])
    # final pass restores orthogonality to working precision
    Q, _ = np.linalg.qr(_project_out(Q, V))
    return Q


def _block_lanczos(H: PauliSumHamiltonian, k: int, tol_abs: float, seed: int, max_restarts: int):
    dim = H.dim
    dtype = np.float64 if H.is_real else np.complex128
    rng = np.random.default_rng(seed)
    b = min(dim, k + 2)
    steps = max(4, min(40, 240 // b))
    X = rng.standard_normal((dim, b))
    if dtype is np.complex128:
        X = X + 1j * rng.standard_normal((dim, b))
    X = _orthonormalize(X.astype(dtype), None, rng)
    res = None
    # one initial pass plus max_restarts restarts
    for _ in range(max_restarts + 1):
        Vs, HVs = [X], []
        for j in range(steps):
            HVs.append(H.matvec(Vs[j]))
            if (j + 1) * b >= dim or j == steps - 1:
                break
            V = np.hstack(Vs)
            Vs.append(_orthonormalize(HVs[j], V, rng))
        V = np.hstack(Vs[: len(HVs)])
        HV = np.hstack(HVs)
        T = V.conj().T @ HV
        T = 0.5 * (T + T.conj().T)
        theta, S = np.linalg.eigh(T)
        Y = V @ S[:, :b]
        R = HV @ S[:, :b] - Y * theta[:b]
        res = np.linalg.norm(R, axis=0)
        if np.all(res[:k] <= tol_abs):
            return theta[:k], Y[:, :k], res[:k]
        X = _orthonormalize(Y, None, rng)
    raise ConvergenceError(
        f"block Lanczos did not converge in {max_restarts} restarts", residuals=res[:k]
    )
