"""Symplectic n-qubit Pauli operators with exact phase tracking.

A :class:`PauliOperator` stands for ``i**phase * prod_a X_a**x_a Z_a**z_a`` with
the X factor to the left of the Z factor on every qubit.  Qubit 0 is the
lowest-order bit of both the masks and of state-vector basis indices, and the
leftmost letter in text labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import InvalidInputError
from .gf2 import parity, popcount

_LETTERS = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
_SIGNS = {0: "+", 1: "+i", 2: "-", 3: "-i"}


@dataclass(frozen=True)
class PauliOperator:
    n: int
    x: int
    z: int
    phase: int = 0

    def __post_init__(self):
        full = (1 << self.n) - 1
        if self.n < 0 or self.x & ~full or self.z & ~full or self.x < 0 or self.z < 0:
            raise InvalidInputError("Pauli masks exceed the qubit count")
        object.__setattr__(self, "phase", self.phase % 4)

    # -- construction -----------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> PauliOperator:
        return cls(n, 0, 0, 0)

    @classmethod
    def from_label(cls, label: str) -> PauliOperator:
        """Parse ``"+XZI"``, ``"-IYY"``, ``"iXX"`` (qubit 0 leftmost)."""
        s = label.strip()
        sign = 0
        if s.startswith("+"):
            s = s[1:]
        elif s.startswith("-"):
            sign, s = 2, s[1:]
        if s.startswith("i"):
            sign, s = sign + 1, s[1:]
        x = z = ny = 0
        for a, ch in enumerate(s):
            if ch in "XY":
                x |= 1 << a
            if ch in "ZY":
                z |= 1 << a
            if ch == "Y":
                ny += 1
            elif ch not in "IXZ":
                raise InvalidInputError(f"bad Pauli letter {ch!r} in {label!r}")
        # Y = i X Z
        return cls(len(s), x, z, sign + ny)

    @classmethod
    def hermitian(cls, n: int, x: int, z: int, sign: int = 1) -> PauliOperator:
        """The letter operator with masks ``(x, z)`` times ``sign`` (+1 or -1)."""
        return cls(n, x, z, popcount(x & z) + (0 if sign > 0 else 2))

    @classmethod
    def single(cls, n: int, qubit: int, letter: str) -> PauliOperator:
        b = 1 << qubit
        x = b if letter in "XY" else 0
        z = b if letter in "ZY" else 0
        return cls.hermitian(n, x, z)

    # -- properties -------------------------------------------------------

    @property
    def support(self) -> int:
        return self.x | self.z

    @property
    def weight(self) -> int:
        return popcount(self.x | self.z)

    @property
    def letter_phase(self) -> int:
        """Phase exponent relative to the tensor product of X/Y/Z letters."""
        return (self.phase - popcount(self.x & self.z)) % 4

    @property
    def is_hermitian(self) -> bool:
        return self.letter_phase in (0, 2)

    @property
    def sign(self) -> int:
        """+1 or -1 for Hermitian operators."""
        lp = self.letter_phase
        if lp not in (0, 2):
            raise InvalidInputError(f"{self.label()} is not Hermitian")
        return 1 if lp == 0 else -1

    @property
    def symplectic(self) -> int:
        """Packed symplectic vector ``x | z << n``."""
        return self.x | (self.z << self.n)

    def label(self) -> str:
        letters = "".join(_LETTERS[((self.x >> a) & 1, (self.z >> a) & 1)] for a in range(self.n))
        return _SIGNS[self.letter_phase] + letters

    def __str__(self) -> str:
        return self.label()

    def __mul__(self, other: PauliOperator) -> PauliOperator:
        return multiply(self, other)

    def __neg__(self) -> PauliOperator:
        return PauliOperator(self.n, self.x, self.z, self.phase + 2)

    def restricted(self, qubits) -> PauliOperator:
        """Tensor factor on ``qubits`` (in the given order), keeping the letter sign."""
        x = z = 0
        for j, q in enumerate(qubits):
            x |= ((self.x >> q) & 1) << j
            z |= ((self.z >> q) & 1) << j
        return PauliOperator(len(qubits), x, z, popcount(x & z) + self.letter_phase)

    def embedded(self, n: int, qubits) -> PauliOperator:
        """Place this operator on ``qubits`` of an ``n``-qubit register."""
        x = z = 0
        for j, q in enumerate(qubits):
            x |= ((self.x >> j) & 1) << q
            z |= ((self.z >> j) & 1) << q
        return PauliOperator(n, x, z, popcount(x & z) + self.letter_phase)

    def to_matrix(self) -> np.ndarray:
        """Dense ``2**n x 2**n`` matrix (small n only)."""
        dim = 1 << self.n
        idx = np.arange(dim)
        out = np.zeros((dim, dim), dtype=complex)
        # <k ^ x| P |k> with P = i^p X^x Z^z
        signs = parity_signs(idx, self.z)
        out[idx ^ self.x, idx] = (1j**self.phase) * signs
        return out


def parity_signs(idx: np.ndarray, mask: int) -> np.ndarray:
    """``(-1)**popcount(idx & mask)`` elementwise, as int8."""
    return 1 - 2 * (np.bitwise_count(idx & mask) & 1).astype(np.int8)


def _check_pair(g: PauliOperator, h: PauliOperator):
    if g.n != h.n:
        raise InvalidInputError(f"qubit count mismatch: {g.n} vs {h.n}")


def multiply(g: PauliOperator, h: PauliOperator) -> PauliOperator:
    """Exact product ``g h``; moving Z^z_g past X^x_h contributes (-1)^|z_g & x_h|."""
    _check_pair(g, h)
    phase = g.phase + h.phase + 2 * popcount(g.z & h.x)
    return PauliOperator(g.n, g.x ^ h.x, g.z ^ h.z, phase)


def product(ops, n: int | None = None) -> PauliOperator:
    ops = list(ops)
    if not ops:
        if n is None:
            raise InvalidInputError("empty product needs n")
        return PauliOperator.identity(n)
    return reduce(multiply, ops)


def commutes(g: PauliOperator, h: PauliOperator) -> bool:
    _check_pair(g, h)
    return not parity((g.x & h.z) ^ (g.z & h.x))


def weight(g: PauliOperator) -> int:
    return g.weight


def apply_to_state(g: PauliOperator, v: np.ndarray) -> np.ndarray:
    """Return ``g v`` for a state vector with ``2**n`` amplitudes."""
    v = np.asarray(v)
    if v.shape != (1 << g.n,):
        raise InvalidInputError(f"state has shape {v.shape}, expected ({1 << g.n},)")
    idx = np.arange(v.shape[0])
    src = idx ^ g.x
    signs = parity_signs(src, g.z)
    return (1j**g.phase) * signs * v[src]
