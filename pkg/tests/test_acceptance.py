"""One test per acceptance criterion; each prints a PASS/FAIL line.

Criteria 1 and 2 contain lattice values that brute force over the whole
stabilizer contradicts (see the grid notes in test_stabilizer.py); they are
asserted exactly as stated and are expected to fail.
"""

import time

import numpy as np
import pytest

from conftest import connected_graphs
from graphground.bounds import theorem4_check
from graphground.gadget import (
    ancilla_penalty,
    audit_locality,
    default_honeycomb_coefficients,
    gadget_fidelity_sweep,
    honeycomb_gadget,
    linear_cluster_gadget,
    strictly_increasing,
)
from graphground.graph import cycle, grid, lc_orbit_min_degree, path
from graphground.hamiltonian import (
    PauliSumHamiltonian,
    canonical_hamiltonian,
    graph_state_vector,
    random_local_hamiltonian,
    spectrum,
    stabilizer_state_vector,
    truncated_stabilizer_hamiltonian,
)
from graphground.pauli import PauliOperator, apply_to_state, commutes
from graphground.stabilizer import (
    delta_via_bruteforce,
    delta_via_rank,
    eta,
    graph_stabilizer,
    low_weight_subgroup,
    sign_flipped_family,
)
from oracles import adjacency, delta_bruteforce, kron_label

pytestmark = pytest.mark.acceptance


def _mismatches(expected: dict, compute) -> list[str]:
    out = []
    for name, (G, want) in expected.items():
        got = compute(G)
        if got != want:
            out.append(f"{name}: expected {want}, got {got}")
    return out


def test_criterion_01_golden_delta(criterion):
    cases = {f"path:{n}": (path(n), 2) for n in range(4, 11)}
    cases.update({f"cycle:{n}": (cycle(n), 3) for n in range(4, 11)})
    cases["grid:3x3:open"] = (grid(3, 3), 3)
    cases["grid:3x3:periodic"] = (grid(3, 3, periodic=True), 5)
    cases["grid:4x4:periodic"] = (grid(4, 4, periodic=True), 5)
    t = time.perf_counter()
    bad = _mismatches(cases, delta_via_rank)
    elapsed = time.perf_counter() - t
    ok = not bad and elapsed < 10
    criterion(1, ok, f"golden delta values ({elapsed:.2f}s) " + ("; ".join(bad) or "all match"))
    assert not bad
    assert elapsed < 10


def test_criterion_02_golden_eta(criterion):
    cases = {f"cycle:{n}": (cycle(n), 3) for n in range(4, 9)}
    cases.update({f"path:{n}": (path(n), 3) for n in range(4, 9)})
    cases["grid:3x3:open"] = (grid(3, 3), 5)
    cases["grid:4x4:open"] = (grid(4, 4), 5)
    t = time.perf_counter()
    bad = _mismatches(cases, eta)
    elapsed = time.perf_counter() - t
    ok = not bad and elapsed < 60
    criterion(2, ok, f"golden eta values ({elapsed:.2f}s) " + ("; ".join(bad) or "all match"))
    assert not bad
    assert elapsed < 60


def test_criterion_03_cut_rank_equivalence(criterion):
    t = time.perf_counter()
    graphs = list(connected_graphs(7))
    bad = []
    for G in graphs:
        rank = delta_via_rank(G)
        brute = delta_via_bruteforce(G)
        orbit = lc_orbit_min_degree(G)
        indep = delta_bruteforce(adjacency(G.n, G.edges()))
        if not (orbit.exact and rank == brute == orbit.delta == indep):
            bad.append(f"{G.edges()}: rank={rank} brute={brute} orbit={orbit.delta} oracle={indep}")
    elapsed = time.perf_counter() - t
    ok = not bad and elapsed < 300
    criterion(3, ok, f"{len(graphs)} connected graphs n<=7, {len(bad)} mismatches ({elapsed:.1f}s)")
    assert not bad, bad[:5]
    assert elapsed < 300


def test_criterion_04_eta_at_least_three(criterion):
    graphs = list(connected_graphs(7))
    low = [G.edges() for G in graphs if eta(G) < 3]
    criterion(4, not low, f"eta >= 3 on {len(graphs)} connected graphs n<=7, {len(low)} exceptions")
    assert not low


def test_criterion_05_degeneracy(criterion):
    tol_cluster = 1e-6
    details, ok = [], True
    for n in (4, 5, 6):
        rep = spectrum(truncated_stabilizer_hamiltonian(path(n), 2), tol_cluster=tol_cluster)
        good = rep.ground_degeneracy == 2 ** (n - 2)
        ok &= good
        details.append(f"path:{n} d=2 -> {rep.ground_degeneracy}")
    for n in (4, 5, 6):
        ising = PauliSumHamiltonian(
            n, [(-1.0, PauliOperator.hermitian(n, 0, (1 << i) | (1 << (i + 1)))) for i in range(n - 1)]
        )
        rep = spectrum(ising, tol_cluster=tol_cluster)
        ok &= rep.ground_degeneracy == 2
        details.append(f"ising:{n} -> {rep.ground_degeneracy}")
    criterion(5, ok, "ground degeneracies " + ", ".join(details))
    assert ok


def test_criterion_06_canonical_nondegenerate(criterion):
    bad = []
    for n in range(4, 11):
        for G in (cycle(n), path(n)):
            rep = spectrum(canonical_hamiltonian(G))
            psi = graph_state_vector(G)
            F = abs(np.vdot(rep.ground_space[:, 0], psi))
            if not (
                abs(rep.ground_energy + n) < 1e-9
                and rep.ground_degeneracy == 1
                and abs(rep.gap - 2) < 1e-9
                and F >= 1 - 1e-10
            ):
                bad.append(f"{G}: E0={rep.ground_energy} deg={rep.ground_degeneracy} gap={rep.gap} F={F}")
    criterion(6, not bad, f"canonical H for cycle/path n=4..10: {len(bad)} failures")
    assert not bad


def test_criterion_07_sign_flipped_ground_space(criterion):
    G = cycle(6)
    d = 2
    S = graph_stabilizer(G)
    rep = low_weight_subgroup(S, d)
    assert rep.s == 0
    # H_d is minus the sum over S_d; with s = 0 that group is {I}
    elems = [PauliOperator.identity(G.n)] + list(rep.basis)
    H = PauliSumHamiltonian(G.n, [(-1.0, g) for g in elems])
    sp = spectrum(H)
    E0, norm = sp.ground_energy, sp.frobenius_norm
    rng = np.random.default_rng(7)
    gammas = rng.choice(2 ** (G.n - rep.s), size=20, replace=False)
    worst, states = 0.0, []
    for code in gammas:
        gamma = [(int(code) >> j) & 1 for j in range(G.n - rep.s)]
        v = stabilizer_state_vector(sign_flipped_family(S, d, gamma))
        worst = max(worst, float(np.linalg.norm(H.matvec(v) - E0 * v)))
        states.append(v)
    V = np.array(states)
    orthonormal = np.allclose(V.conj() @ V.T, np.eye(len(states)), atol=1e-10)
    ok = worst <= 1e-8 * norm and orthonormal
    criterion(7, ok, f"20 sign-flipped states, max |H_d v - E0 v| = {worst:.2e} (bound {1e-8 * norm:.2e}), orthonormal={orthonormal}")
    assert ok


def test_criterion_08_tradeoff_property(criterion):
    rng = np.random.default_rng(20240501)
    targets = {4: [cycle(4), path(4), grid(2, 2)], 5: [cycle(5), path(5)], 6: [cycle(6), path(6), grid(2, 3)]}
    violations, invariance_fail, count = [], [], 0
    for i in range(500):
        n = (4, 5, 6)[i % 3]
        d = (1, 2, 3)[(i // 3) % 3]
        G = targets[n][(i // 9) % len(targets[n])]
        H = random_local_hamiltonian(n, d, rng)
        r = theorem4_check(G, H, tol=1e-8)
        count += 1
        if not r.satisfied:
            violations.append(f"{G} d={d}: lhs={r.lhs} gap_lhs={r.gap_lhs} rhs={r.rhs}")
        if i % 10 == 0:
            scaled = theorem4_check(G, rng.uniform(0.1, 10) * H)
            shifted = theorem4_check(G, H.shifted(rng.uniform(-5, 5)))
            if abs(scaled.lhs - r.lhs) > 1e-9 * max(1.0, abs(r.lhs)) or not shifted.satisfied:
                invariance_fail.append(str(G))
    ok = not violations and not invariance_fail
    criterion(8, ok, f"{count} random d-body Hamiltonians: {len(violations)} violations, "
                     f"{len(invariance_fail)} invariance failures")
    assert ok, violations[:3] + invariance_fail[:3]


def test_criterion_09_gadget_convergence(criterion):
    t = time.perf_counter()
    sweep = gadget_fidelity_sweep(lambda d: linear_cluster_gadget(3, d), [0.2, 0.1, 0.05])
    elapsed = time.perf_counter() - t
    fid_up = strictly_increasing(sweep, "fidelity")
    range_up = strictly_increasing(sweep, "dynamic_range")
    kernels = []
    for delta in (0.2, 0.1, 0.05):
        w = np.linalg.eigvalsh(ancilla_penalty(delta).to_dense())
        kernels.append(int(np.sum(np.abs(w) < 1e-9 * delta**-3)))
        assert np.allclose(w[np.abs(w) > 1e-9 * delta**-3], delta**-3)
    ok = fid_up and range_up and kernels == [2, 2, 2] and elapsed < 300
    fids = ", ".join(f"{p.delta}:{p.fidelity:.6f}" for p in sweep)
    criterion(9, ok, f"linear cluster n=3 fidelities {fids}; dynamic range increasing={range_up}; "
                     f"K kernel dims {kernels} ({elapsed:.0f}s)")
    assert ok


def test_criterion_10_honeycomb_structure(criterion):
    delta = 0.1
    res = honeycomb_gadget(2, 2, delta, default_honeycomb_coefficients(delta, 8))
    audit_locality(res.hamiltonian, 2)
    n = res.layout.n_system
    hermitian = all(op.is_hermitian for _, op in res.hamiltonian.terms)
    per_site = all(len(v) == 7 for v in res.layout.ancilla_map.values())
    inventory = all(v == {"A": 6, "B": 6, "C": 6, "D": 11} for v in res.inventory.values())
    ok = res.locality <= 2 and hermitian and per_site and inventory and res.layout.total_n == 8 * n
    criterion(10, ok, f"honeycomb 2x2: {len(res.hamiltonian)} terms, locality {res.locality}, "
                      f"7 ancillas/site={per_site}, inventory 6/6/6/11={inventory}")
    assert ok


def test_criterion_11_pauli_oracle(criterion):
    rng = np.random.default_rng(11)
    signs = ["+", "-", "+i", "-i"]
    bad = 0
    for _ in range(200):
        n = int(rng.integers(1, 4))
        a = signs[rng.integers(4)] + "".join(rng.choice(list("IXYZ"), n))
        b = signs[rng.integers(4)] + "".join(rng.choice(list("IXYZ"), n))
        g, h = PauliOperator.from_label(a), PauliOperator.from_label(b)
        A, B = kron_label(a), kron_label(b)
        v = rng.integers(-3, 4, 1 << n) + 1j * rng.integers(-3, 4, 1 << n)
        same = (
            np.array_equal((g * h).to_matrix(), A @ B)
            and commutes(g, h) == np.array_equal(A @ B, B @ A)
            and np.array_equal(apply_to_state(g, v), A @ v)
        )
        bad += not same
    criterion(11, bad == 0, f"200 random Pauli multiply/commute/apply cases, {bad} mismatches")
    assert bad == 0
