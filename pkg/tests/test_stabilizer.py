import numpy as np
import pytest
from hypothesis import given, settings

from graphground.errors import InvalidInputError, SizeLimitError
from graphground.graph import Graph, complete, cycle, grid, path, star
from graphground.hamiltonian import stabilizer_state_vector
from graphground.pauli import PauliOperator, apply_to_state, commutes
from graphground.stabilizer import (
    StabilizerGroup,
    degeneracy_lower_bound,
    delta_via_bruteforce,
    delta_via_rank,
    delta_with_witness,
    elements_supported_in,
    eta,
    graph_stabilizer,
    low_weight_subgroup,
    sign_flipped_family,
    span_dimension,
    stabilizer_report,
)
from oracles import adjacency, delta_bruteforce, eta_bruteforce, graph_state, s_dimension
from test_graph import connected_graph

# Computed with oracles.delta_bruteforce / eta_bruteforce over all 2^n elements.
GRID_DELTA = {(3, 3, False): 3, (3, 3, True): 3, (4, 4, False): 3, (4, 4, True): 4}
GRID_ETA = {(3, 3, False): 4, (3, 3, True): 4, (4, 4, False): 4, (4, 4, True): 5}


def _oracle_adj(G):
    return adjacency(G.n, G.edges())


def test_generators_fix_graph_state():
    G = grid(2, 3)
    psi = graph_state(G.n, G.edges())
    for g in graph_stabilizer(G).generators:
        assert np.allclose(apply_to_state(g, psi), psi)


def test_group_validation():
    X, Z = PauliOperator.from_label("XI"), PauliOperator.from_label("ZI")
    with pytest.raises(InvalidInputError):
        StabilizerGroup(2, (X, Z))
    with pytest.raises(InvalidInputError):
        StabilizerGroup(2, (X, X))
    with pytest.raises(InvalidInputError):
        StabilizerGroup(2, (X,))
    with pytest.raises(InvalidInputError):
        StabilizerGroup(1, (PauliOperator.from_label("iX"),))


@pytest.mark.parametrize(
    "G, expected",
    [(cycle(6), 3), (path(8), 2), (complete(4), 2), (star(6), 2), (grid(3, 3), 3)],
)
def test_delta_known(G, expected):
    d, w = delta_with_witness(G)
    assert d == expected
    assert w.weight == d
    assert w in set(graph_stabilizer(G).elements())


@pytest.mark.parametrize("key", sorted(GRID_DELTA))
def test_grid_values_match_bruteforce(key):
    G = grid(key[0], key[1], periodic=key[2])
    assert delta_via_rank(G) == GRID_DELTA[key]
    assert eta(G) == GRID_ETA[key]


def test_large_lattice_values():
    # from side 5 on the periodic lattice reaches delta 5 and the open one eta 5
    assert delta_via_rank(grid(5, 5, periodic=True)) == 5
    assert eta(grid(5, 5, periodic=True)) == 5
    assert delta_via_rank(grid(5, 5)) == 3
    assert eta(grid(5, 5)) == 5


@settings(max_examples=80, deadline=None)
@given(connected_graph(max_n=9))
def test_delta_oracles_agree(G):
    A = _oracle_adj(G)
    assert delta_via_rank(G) == delta_via_bruteforce(G) == delta_bruteforce(A)


@settings(max_examples=60, deadline=None)
@given(connected_graph(max_n=8))
def test_low_weight_dimension_matches_oracle(G):
    A = _oracle_adj(G)
    S = graph_stabilizer(G)
    for d in range(1, G.n + 1):
        rep = low_weight_subgroup(S, d)
        assert rep.s == span_dimension(S, d) == s_dimension(A, d)
        assert all(g.weight <= d for g in rep.basis)
        assert rep.r == 2 ** (G.n - rep.s)
    assert eta(G) == eta_bruteforce(A) >= 3


def test_elements_supported_in():
    G = cycle(5)
    elems = elements_supported_in(graph_stabilizer(G), [0, 1, 4])
    # K_0 = Z4 X0 Z1 is the only nontrivial one
    assert [g.label() for g in elems] == ["+IIIII", "+XZIIZ"]


def test_eta_values():
    assert eta(cycle(5)) == 3
    assert eta(path(6)) == 3
    assert eta(complete(3)) == 3
    assert eta(complete(5)) == 5
    rep = stabilizer_report(complete(3))
    assert rep["s_by_d"] == [0, 2, 3]
    assert rep["degeneracy_bound_by_d"] == [8, 2]


def test_degeneracy_bound():
    assert degeneracy_lower_bound(path(6), 2) == 16
    with pytest.raises(InvalidInputError):
        degeneracy_lower_bound(path(6), 3)


def test_sign_flipped_family():
    G = cycle(6)
    S = graph_stabilizer(G)
    rep = low_weight_subgroup(S, 2)
    assert rep.s == 0
    T = sign_flipped_family(S, 2, [1, 0, 1, 0, 0, 1])
    assert all(commutes(a, b) for a in T.generators for b in T.generators)
    v = stabilizer_state_vector(T)
    w = stabilizer_state_vector(S)
    assert abs(np.vdot(v, w)) < 1e-12
    with pytest.raises(InvalidInputError):
        sign_flipped_family(S, 2, [1, 0])
    with pytest.raises(InvalidInputError):
        sign_flipped_family(S, 3, [])


def test_sign_flip_keeps_low_weight_part():
    G = path(5)
    S = graph_stabilizer(G)
    rep = low_weight_subgroup(S, 2)
    T = sign_flipped_family(S, 2, [1] * (G.n - rep.s))
    assert T.generators[: rep.s] == rep.basis


def test_errors():
    with pytest.raises(InvalidInputError):
        delta_via_rank(Graph.from_edges(4, [(0, 1), (2, 3)]))
    with pytest.raises(InvalidInputError):
        eta(path(2))
    with pytest.raises(InvalidInputError):
        low_weight_subgroup(graph_stabilizer(path(3)), 0)
    with pytest.raises(SizeLimitError):
        delta_via_bruteforce(cycle(21))
