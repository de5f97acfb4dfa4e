"""Graph-state stabilizers, minimal weight and the low-weight subgroup.

Elements of a stabilizer group are addressed by *combination masks*: bit ``j``
of ``c`` says whether generator ``j`` takes part in the product.  For a graph
stabilizer the combination mask of an element equals its X mask, which is what
makes the cut-rank counting of supported elements work.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import ConsistencyError, InvalidInputError, SizeLimitError
from .gf2 import XorBasis, left_nullspace, popcount, rank_of_rows
from .graph import Graph, cut_rows, require_connected
from .pauli import PauliOperator, commutes, multiply

BRUTEFORCE_MAX_N = 20


@dataclass(frozen=True)
class StabilizerGroup:
    """A full stabilizer group given by ``n`` independent commuting generators."""

    n: int
    generators: tuple[PauliOperator, ...]
    graph: Graph | None = None

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        if len(gens) != self.n:
            raise InvalidInputError(f"need {self.n} generators, got {len(gens)}")
        for g in gens:
            if g.n != self.n:
                raise InvalidInputError("generator qubit count mismatch")
            if not g.is_hermitian:
                raise InvalidInputError(f"generator {g} is not Hermitian")
        for g, h in combinations(gens, 2):
            if not commutes(g, h):
                raise InvalidInputError(f"generators {g} and {h} anticommute")
        if rank_of_rows([g.symplectic for g in gens]) != self.n:
            raise InvalidInputError("generators are not independent")

    def element(self, combo: int) -> PauliOperator:
        """Product of the generators selected by ``combo`` (ascending order)."""
        out = PauliOperator.identity(self.n)
        j = 0
        while combo:
            if combo & 1:
                out = multiply(out, self.generators[j])
            combo >>= 1
            j += 1
        return out

    def elements(self):
        """Iterate all ``2**n`` elements in Gray-code order (identity first)."""
        g = PauliOperator.identity(self.n)
        yield g
        for i in range(1, 1 << self.n):
            j = (i & -i).bit_length() - 1
            g = multiply(g, self.generators[j])
            yield g

    def supported_combos(self, A_mask: int) -> list[int]:
        """Basis of combination masks whose product acts trivially outside ``A``."""
        if self.graph is not None:
            rows = cut_rows(self.graph, A_mask)
            tags = [1 << a for a in _bits(A_mask)]
            return left_nullspace(rows, tags)
        outside = ((1 << self.n) - 1) & ~A_mask
        rows = [(g.x & outside) | ((g.z & outside) << self.n) for g in self.generators]
        return left_nullspace(rows)


def _bits(m: int) -> list[int]:
    out = []
    while m:
        low = m & -m
        out.append(low.bit_length() - 1)
        m ^= low
    return out


def _mask(A: Iterable[int], n: int) -> int:
    m = 0
    for a in A:
        if not 0 <= a < n:
            raise InvalidInputError(f"vertex {a} out of range")
        m |= 1 << a
    return m


def _span(basis: Sequence[int]) -> list[int]:
    out = [0]
    for b in basis:
        out += [c ^ b for c in out]
    return out


def graph_stabilizer(G: Graph) -> StabilizerGroup:
    """Generator ``a`` is X on ``a`` and Z on every neighbour of ``a``."""
    gens = tuple(PauliOperator(G.n, 1 << a, G.rows[a], 0) for a in range(G.n))
    return StabilizerGroup(G.n, gens, graph=G)


def elements_supported_in(S: StabilizerGroup, A: Iterable[int]) -> list[PauliOperator]:
    """All elements of ``S`` acting trivially outside ``A`` (identity included)."""
    combos = _span(S.supported_combos(_mask(A, S.n)))
    return [S.element(c) for c in sorted(combos)]


# --------------------------------------------------------------------------
# minimal weight


def delta_with_witness(G: Graph) -> tuple[int, PauliOperator]:
    """Minimal stabilizer weight via the cut-rank criterion, with a minimum-weight element.

    Scans ``|A| = 1, 2, ...`` and stops at the first subset whose cut matrix is
    rank deficient.
    """
    require_connected(G)
    S = graph_stabilizer(G)
    n = G.n
    for k in range(1, n):
        for A in combinations(range(n), k):
            A_mask = _mask(A, n)
            rows = cut_rows(G, A_mask)
            if rank_of_rows(rows) < k:
                combo = S.supported_combos(A_mask)[0]
                return k, S.element(combo)
    # |A| = n - 1 always has a rank-deficient (n-1) x 1 cut when n >= 3
    raise ConsistencyError("no rank-deficient cut found")


def delta_via_rank(G: Graph) -> int:
    return delta_with_witness(G)[0]


def delta_via_bruteforce(G: Graph | StabilizerGroup) -> int:
    """Minimum weight over all nonidentity stabilizer elements (Gray-code walk)."""
    S = G if isinstance(G, StabilizerGroup) else graph_stabilizer(G)
    if S.n > BRUTEFORCE_MAX_N:
        raise SizeLimitError(f"brute force limited to n <= {BRUTEFORCE_MAX_N}")
    gx = [g.x for g in S.generators]
    gz = [g.z for g in S.generators]
    x = z = 0
    best = S.n
    for i in range(1, 1 << S.n):
        j = (i & -i).bit_length() - 1
        x ^= gx[j]
        z ^= gz[j]
        w = popcount(x | z)
        if w < best:
            best = w
    return best


# --------------------------------------------------------------------------
# low-weight subgroup and eta


@dataclass(frozen=True)
class LowWeightSubgroupReport:
    """Subgroup generated by the elements of weight at most ``d``.

    ``combos`` are the combination masks of the ``basis`` elements with
    respect to the parent group's generators.
    """

    d: int
    n: int
    s: int
    basis: tuple[PauliOperator, ...]
    combos: tuple[int, ...]

    @property
    def complete(self) -> bool:
        return self.s == self.n

    @property
    def r(self) -> int:
        """Index ``2**n / |S_d|``."""
        return 1 << (self.n - self.s)


def _lex_key(g: PauliOperator) -> tuple[int, str]:
    bits = "".join(str((g.x >> a) & 1) for a in range(g.n))
    bits += "".join(str((g.z >> a) & 1) for a in range(g.n))
    return g.weight, bits


def low_weight_subgroup(S: StabilizerGroup, d: int) -> LowWeightSubgroupReport:
    """Independent generators of the subgroup spanned by weight-``<= d`` elements.

    Every such element is supported on some ``d``-subset, so only subsets of
    size exactly ``min(d, n)`` are scanned; subsets with no nontrivial
    supported element are skipped by the cut-rank test.  The basis is chosen
    greedily from candidates ordered by weight, then by their symplectic bit
    string, which gives a minimum-weight basis with reproducible ties.
    """
    if d < 1:
        raise InvalidInputError("locality d must be >= 1")
    n = S.n
    k = min(d, n)
    candidates: set[int] = set()
    for A in combinations(range(n), k):
        basis = S.supported_combos(_mask(A, n))
        if basis:
            candidates.update(_span(basis))
    candidates.discard(0)
    elements = sorted(((S.element(c), c) for c in candidates), key=lambda t: _lex_key(t[0]))
    span = XorBasis()
    chosen = []
    for g, c in elements:
        if span.add(c):
            chosen.append((g, c))
            if len(span) == n:
                break
    return LowWeightSubgroupReport(
        d=d,
        n=n,
        s=len(span),
        basis=tuple(g for g, _ in chosen),
        combos=tuple(c for _, c in chosen),
    )


def span_dimension(S: StabilizerGroup, d: int) -> int:
    """``log2 |S_d|`` without building a basis; stops as soon as the span is full."""
    n = S.n
    span = XorBasis()
    for A in combinations(range(n), min(d, n)):
        for c in S.supported_combos(_mask(A, n)):
            span.add(c)
        if len(span) == n:
            break
    return len(span)


def eta(G: Graph) -> int:
    """Smallest ``d`` for which the weight-``<= d`` elements generate the whole stabilizer."""
    require_connected(G)
    S = graph_stabilizer(G)
    for d in range(delta_via_rank(G), G.n + 1):
        if span_dimension(S, d) == G.n:
            return d
    raise ConsistencyError("S_n != S; stabilizer is malformed")


def degeneracy_lower_bound(G: Graph, d: int) -> int:
    """``2**(n - s)``: forced ground degeneracy of any ``d``-body Hamiltonian with |G> in its ground space."""
    require_connected(G)
    S = graph_stabilizer(G)
    s = span_dimension(S, d)
    if s == G.n:
        raise InvalidInputError(f"d={d} >= eta: no degeneracy forced")
    return 1 << (G.n - s)


def sign_flipped_family(S: StabilizerGroup, d: int, gamma: Sequence[int]) -> StabilizerGroup:
    """Stabilizer generated by the ``S_d`` basis plus sign-flipped complement generators.

    The complement consists of the parent generators (lowest index first) that
    extend the ``S_d`` basis to a full basis; the ``j``-th of them is multiplied
    by ``(-1)**gamma[j]``.
    """
    rep = low_weight_subgroup(S, d)
    if rep.complete:
        raise InvalidInputError(f"d={d} >= eta: S_d is already the full group")
    gamma = [int(b) & 1 for b in gamma]
    if len(gamma) != S.n - rep.s:
        raise InvalidInputError(f"gamma must have length n - s = {S.n - rep.s}")
    span = XorBasis(rep.combos)
    extra = []
    for j in range(S.n):
        if span.add(1 << j):
            extra.append(S.generators[j])
    flipped = [(-g if b else g) for g, b in zip(extra, gamma)]
    return StabilizerGroup(S.n, rep.basis + tuple(flipped))


# --------------------------------------------------------------------------
# report


def stabilizer_report(G: Graph) -> dict:
    """JSON-ready summary of delta, eta and the low-weight subgroup dimensions."""
    delta, witness = delta_with_witness(G)
    S = graph_stabilizer(G)
    s_by_d = []
    d = 1
    while True:
        s = span_dimension(S, d)
        s_by_d.append(s)
        if s == G.n:
            break
        d += 1
    eta_value = len(s_by_d)
    return {
        "graph": str(G),
        "n": G.n,
        "delta": delta,
        "delta_witness": witness.label(),
        "eta": eta_value,
        "s_by_d": s_by_d,
        "degeneracy_bound_by_d": [1 << (G.n - s) for s in s_by_d[:-1]],
    }
