import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphground.errors import InvalidInputError
from graphground.pauli import PauliOperator, apply_to_state, commutes, multiply, product
from oracles import kron_label

SIGNS = ["+", "-", "+i", "-i"]


@st.composite
def paulis(draw, n=None):
    n = n if n is not None else draw(st.integers(1, 3))
    letters = "".join(draw(st.sampled_from("IXYZ")) for _ in range(n))
    return draw(st.sampled_from(SIGNS)) + letters


def test_label_round_trip():
    for lab in ("+XZI", "-IYY", "+iXX", "-iZ"):
        assert PauliOperator.from_label(lab).label() == lab
    assert PauliOperator.from_label("XY").label() == "+XY"


def test_y_is_i_x_z():
    y = PauliOperator.from_label("Y")
    assert (y.x, y.z, y.phase) == (1, 1, 1)
    assert np.allclose(y.to_matrix(), kron_label("Y"))


def test_properties():
    g = PauliOperator.from_label("-XIZY")
    assert g.weight == 3
    assert g.support == 0b1101
    assert g.is_hermitian and g.sign == -1
    assert not PauliOperator.from_label("iX").is_hermitian
    with pytest.raises(InvalidInputError):
        PauliOperator.from_label("iX").sign
    with pytest.raises(InvalidInputError):
        PauliOperator.from_label("XQ")
    with pytest.raises(InvalidInputError):
        multiply(PauliOperator.identity(2), PauliOperator.identity(3))


def test_restrict_embed():
    g = PauliOperator.from_label("-XIZY")
    r = g.restricted([0, 2, 3])
    assert r.label() == "-XZY"
    assert r.embedded(4, [0, 2, 3]) == g


def test_product_and_negation():
    ops = [PauliOperator.from_label(s) for s in ("XX", "ZZ")]
    assert product(ops).label() == "-YY"
    assert (-ops[0]).label() == "-XX"
    assert product([], n=2) == PauliOperator.identity(2)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_multiply_matches_kronecker(data):
    n = data.draw(st.integers(1, 3))
    a, b = data.draw(paulis(n)), data.draw(paulis(n))
    g, h = PauliOperator.from_label(a), PauliOperator.from_label(b)
    assert np.allclose((g * h).to_matrix(), kron_label(a) @ kron_label(b))
    assert np.allclose(g.to_matrix(), kron_label(a))


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_commute_matches_kronecker(data):
    n = data.draw(st.integers(1, 3))
    a, b = data.draw(paulis(n)), data.draw(paulis(n))
    g, h = PauliOperator.from_label(a), PauliOperator.from_label(b)
    A, B = kron_label(a), kron_label(b)
    assert commutes(g, h) == np.allclose(A @ B, B @ A)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_apply_matches_kronecker(data):
    n = data.draw(st.integers(1, 3))
    lab = data.draw(paulis(n))
    rng = np.random.default_rng(data.draw(st.integers(0, 2**16)))
    v = rng.standard_normal(1 << n) + 1j * rng.standard_normal(1 << n)
    out = apply_to_state(PauliOperator.from_label(lab), v)
    assert np.allclose(out, kron_label(lab) @ v)


def test_apply_shape_check():
    with pytest.raises(InvalidInputError):
        apply_to_state(PauliOperator.from_label("XX"), np.ones(8))
