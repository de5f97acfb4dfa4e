import numpy as np
import pytest

from graphground.errors import ConsistencyError, InvalidInputError, SizeLimitError
from graphground.gadget import (
    GadgetLayout,
    ancilla_penalty,
    audit_locality,
    default_honeycomb_coefficients,
    gadget_fidelity_sweep,
    generic_gadget,
    honeycomb_gadget,
    linear_cluster_gadget,
    split_four_to_three,
    strictly_increasing,
)
from graphground.graph import complete, cycle, honeycomb, path, star
from graphground.hamiltonian import PauliSumHamiltonian, canonical_hamiltonian, spectrum
from graphground.pauli import PauliOperator


@pytest.fixture(scope="module")
def cluster_sweep():
    return gadget_fidelity_sweep(lambda d: linear_cluster_gadget(3, d), [0.2, 0.1, 0.05])


def _hermitian_terms(H):
    return all(op.is_hermitian for _, op in H.terms)


def test_penalty_spectrum():
    for delta in (0.3, 0.1):
        w = np.linalg.eigvalsh(ancilla_penalty(delta).to_dense())
        assert np.allclose(w[:2], 0) and np.allclose(w[2:], delta**-3)


def test_linear_cluster_structure():
    res = linear_cluster_gadget(4, 0.1, spectral=False)
    assert res.layout.total_n == 16
    assert res.locality == 2
    audit_locality(res.hamiltonian)
    assert res.layout.ancilla_map["Z3 X0 Z1"] == (4, 5, 6)
    assert _hermitian_terms(res.hamiltonian)


def test_linear_cluster_converges(cluster_sweep):
    assert strictly_increasing(cluster_sweep, "fidelity")
    assert strictly_increasing(cluster_sweep, "dynamic_range")
    assert cluster_sweep[-1].fidelity > 0.999
    # effective ground energy approaches -n
    assert abs(cluster_sweep[-1].ground_energy + 3) < abs(cluster_sweep[0].ground_energy + 3)


def test_normalized_is_rescaled():
    a = linear_cluster_gadget(3, 0.2, spectral=False)
    b = linear_cluster_gadget(3, 0.2, normalized=True, spectral=False)
    assert np.isclose(b.scale, 3**9 / 6)
    key = next(iter(a.hamiltonian.coefficients))
    assert np.isclose(a.hamiltonian.coefficients[key], b.scale * b.hamiltonian.coefficients[key])


def test_literal_transcription_misses_target():
    res = linear_cluster_gadget(3, 0.1, literal=True)
    assert res.locality == 2
    assert res.fidelity < 0.9


def test_delta_validation():
    with pytest.raises(InvalidInputError):
        linear_cluster_gadget(3, 0.0, spectral=False)
    with pytest.raises(InvalidInputError):
        linear_cluster_gadget(2, 0.1, spectral=False)
    with pytest.warns(UserWarning):
        linear_cluster_gadget(3, 0.7, spectral=False)


def test_layout_validation():
    with pytest.raises(ConsistencyError):
        GadgetLayout((0, 1), {"t": (1, 2)}, 0.1, 3)
    with pytest.raises(ConsistencyError):
        GadgetLayout((0, 1), {"t": (2,)}, 0.1, 4)
    with pytest.raises(InvalidInputError):
        GadgetLayout((0,), {}, -0.1, 1)


def test_audit_rejects_three_body():
    with pytest.raises(ConsistencyError):
        audit_locality(canonical_hamiltonian(cycle(4)))


def test_split_honeycomb_generator():
    G = honeycomb(2, 2, periodic=True)
    H4 = PauliSumHamiltonian(G.n, [(-1.0, PauliOperator(G.n, 1, G.rows[0]))])
    out = split_four_to_three(H4)
    assert out.hamiltonian.n == G.n + 1
    assert out.hamiltonian.locality == 3
    three = [op for _, op in out.hamiltonian.terms if op.weight == 3]
    assert len(three) == 2
    w = G.n
    assert all((op.x >> w) & 1 for op in three)
    i, (a, b, c) = 0, G.neighbors(0)
    assert out.schedule[0]["parts"] == [[i, a], [b, c]]


def test_split_per_qubit_convention():
    G = honeycomb(2, 2, periodic=True)
    from graphground.stabilizer import graph_stabilizer

    H4 = PauliSumHamiltonian(G.n, [(-1.0, g) for g in graph_stabilizer(G).generators])
    out = split_four_to_three(H4, convention="qubit")
    assert out.hamiltonian.n == 2 * G.n
    assert [s["ancilla"] for s in out.schedule] == [G.n + i for i in range(G.n)]


def test_split_effective_hamiltonian():
    """Low-energy spectrum of the split term tracks the original 4-body term."""
    H4 = PauliSumHamiltonian.from_labels({"XZZZ": -1.0})
    errs = []
    for delta in (0.05, 0.01):
        out = split_four_to_three(H4, delta=delta)
        w = spectrum(out.hamiltonian).energies
        errs.append(abs(w[0] + 1))
    assert errs[1] < errs[0] < 0.2


def test_split_passthrough_and_errors():
    H2 = PauliSumHamiltonian.from_labels({"XZI": 1.0, "IZZ": -0.5})
    assert split_four_to_three(H2).hamiltonian.coefficients == H2.coefficients
    H3 = PauliSumHamiltonian.from_labels({"XZZ": 1.0})
    assert split_four_to_three(H3).hamiltonian.n == 3
    with pytest.raises(InvalidInputError):
        split_four_to_three(PauliSumHamiltonian.from_labels({"XXXXX": 1.0}))
    with pytest.raises(InvalidInputError):
        split_four_to_three(PauliSumHamiltonian.from_labels({"XXXX": 1.0}), pairing={(15, 0): ((0, 1), (1, 2, 3))})


def test_honeycomb_structure():
    delta = 0.1
    res = honeycomb_gadget(2, 2, delta, default_honeycomb_coefficients(delta, 8))
    n = 8
    assert res.layout.total_n == 8 * n
    assert all(len(v) == 7 for v in res.layout.ancilla_map.values())
    assert res.locality <= 2
    assert _hermitian_terms(res.hamiltonian)
    assert all(inv == {"A": 6, "B": 6, "C": 6, "D": 11} for inv in res.inventory.values())
    assert res.fidelity is None
    with pytest.raises(SizeLimitError):
        honeycomb_gadget(2, 2, delta, default_honeycomb_coefficients(delta, 8), spectral=True)
    with pytest.raises(InvalidInputError):
        honeycomb_gadget(2, 2, delta, {"a": 1.0})


def test_generic_triangle_matches_linear_cluster(cluster_sweep):
    a = generic_gadget(complete(3), 0.1)
    b = generic_gadget(cycle(3), 0.1, spectral=False)
    c = cluster_sweep[1]
    assert c.delta == 0.1
    assert a.layout.total_n == 12
    assert a.hamiltonian.coefficients == b.hamiltonian.coefficients
    assert np.isclose(a.ground_energy, c.ground_energy, rtol=1e-9)
    assert np.isclose(a.fidelity, c.fidelity, atol=1e-7)


def test_generic_path4():
    res = generic_gadget(path(4), 0.1)
    # two weight-3 generators need ancilla triples, the two weight-2 ones do not
    assert res.layout.total_n == 4 + 6
    assert res.locality == 2
    assert res.fidelity > 0.99


def test_generic_with_splitting():
    fids = []
    for delta in (0.2, 0.05):
        res = generic_gadget(star(4), delta, generators="graph")
        assert res.locality == 2
        assert res.layout.total_n == 4 + 1 + 6
        fids.append(res.fidelity)
    assert fids[1] > fids[0]


def test_sweep_empty_and_annotations(cluster_sweep):
    assert gadget_fidelity_sweep(lambda d: linear_cluster_gadget(3, d), []) == []
    assert cluster_sweep[0].fidelity_change is None
    assert all(p.fidelity_change > 0 for p in cluster_sweep[1:])
    assert all(p.dynamic_range_change > 0 for p in cluster_sweep[1:])


def test_relative_gap_small(cluster_sweep):
    assert all(0 < p.relative_gap < 1e-6 for p in cluster_sweep)
