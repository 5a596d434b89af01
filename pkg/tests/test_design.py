from __future__ import annotations

import numpy as np
import pytest
from scipy.stats import chisquare, unitary_group

from kerdock_design.circuit_synth import circuit_symplectic, verify_conjugation
from kerdock_design.f2linalg import BitMatrix
from kerdock_design.gf2m import make_context
from kerdock_design.design import (INF, NotInSymmetryGroupError, PSLElement, action_on_subgroup,
                                   check_pauli_mixing, check_strong_regularity, clifford_lift,
                                   count_projectively_distinct, enlarged_element, ensemble_twirl,
                                   ensemble_unitaries, factors_product, frame_potential, generators,
                                   group_closure, group_matrices, group_order, haar_twirl, kerdock_circuit,
                                   kerdock_factors, mobius, projective_points, psl_element_by_index,
                                   psl_elements, psl_to_symplectic, sample_design_element, sample_factors,
                                   sample_group_element, swap_operator, twirl_check, verify_design)
from kerdock_design.pauli import PauliLabel, realize_dense
from kerdock_design.symplectic import L, T, omega, random_symplectic

from conftest import F_ABCD


def test_identity_element():
    ctx = make_context(3)
    assert psl_to_symplectic(PSLElement(ctx, 1, 0, 0, 1)).is_identity()


def test_printed_matrix(element_abcd):
    assert psl_to_symplectic(element_abcd).F == F_ABCD
    assert factors_product(4, kerdock_factors(element_abcd)).F == F_ABCD
    assert enlarged_element(element_abcd, 0).F == F_ABCD


def test_element_validation(ctx4):
    with pytest.raises(ValueError):
        PSLElement(ctx4, 1, 1, 1, 1)
    with pytest.raises(ValueError):
        PSLElement(ctx4, 1, 0, 0, 1, i=4)


def test_index_bijection():
    ctx = make_context(3)
    elems = {(e.a, e.b, e.c, e.d) for e in psl_elements(ctx)}
    assert len(elems) == group_order(3) == 504


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_kerdock_factors_reproduce_block_form(m):
    ctx = make_context(m)
    for k in range(0, group_order(m), max(1, group_order(m) // 200)):
        e = psl_element_by_index(ctx, k)
        F = psl_to_symplectic(e)
        assert factors_product(m, kerdock_factors(e)) == F
        assert len(kerdock_factors(e)) <= 5
        assert circuit_symplectic(kerdock_circuit(e)) == F


def test_sample_factors_generator_case(ctx4):
    fs = sample_factors(ctx4, 0, 1, 0)
    assert [f.kind for f in fs] == ["L", "Omega"]
    assert factors_product(4, fs) == omega(4) @ L(ctx4.W_inv)
    with pytest.raises(ValueError):
        sample_factors(ctx4, 0, 0, 0)


def test_sampling_uniform_m2():
    ctx = make_context(2)
    rng = np.random.default_rng(7)
    counts = {}
    for _ in range(100_000):
        e = sample_group_element(ctx, rng)
        key = (e.a, e.b, e.c, e.d)
        counts[key] = counts.get(key, 0) + 1
    assert len(counts) == 60
    obs = np.array(list(counts.values()))
    assert chisquare(obs).pvalue > 1e-4
    assert np.all(np.abs(obs - 100_000 / 60) < 4 * np.sqrt(100_000 / 60))


def test_sampled_elements_generate_group_m3():
    ctx = make_context(3)
    rng = np.random.default_rng(3)
    samples = [sample_design_element(ctx, rng) for _ in range(6)]
    assert len(group_closure([s.symplectic for s in samples])) == 504
    for s in samples:
        assert circuit_symplectic(s.circuit) == s.symplectic


@pytest.mark.parametrize("m,order", [(2, 60), (3, 504)])
def test_group_closure(m, order):
    ctx = make_context(m)
    closed = group_closure(generators(ctx))
    assert len(closed) == order
    assert closed == {tuple(F.F.rows) for F in group_matrices(ctx)}


def test_action_examples():
    ctx = make_context(3)
    for x in range(8):
        Tx = T(ctx.mult_matrix(ctx.square(x)) @ ctx.W)
        for z in range(8):
            assert action_on_subgroup(Tx, z, ctx) == z ^ x
    F = omega(3) @ L(ctx.W_inv)
    assert action_on_subgroup(F, 0, ctx) is INF


def test_action_rejects_outsider(rng):
    ctx = make_context(3)
    F = L(BitMatrix.from_strings(["110", "010", "001"]))
    with pytest.raises(NotInSymmetryGroupError):
        for z in projective_points(ctx):
            action_on_subgroup(F, z, ctx)


@pytest.mark.parametrize("m", [3, 4])
def test_mobius_action_exhaustive(m):
    ctx = make_context(m)
    step = 1 if m == 3 else 7
    for i in range(m):
        for k in range(0, group_order(m), step):
            e = psl_element_by_index(ctx, k)
            e = PSLElement(ctx, e.a, e.b, e.c, e.d, i)
            F = enlarged_element(e)
            for z in projective_points(ctx):
                assert action_on_subgroup(F, z, ctx) == mobius(e, z)


def test_frobenius_only_action():
    ctx = make_context(3)
    F = enlarged_element(PSLElement(ctx, 1, 0, 0, 1, 1))
    for z in range(8):
        assert action_on_subgroup(F, z, ctx) == ctx.sqrt(z)
    assert action_on_subgroup(F, INF, ctx) is INF


def test_enlarged_symplectic(rng):
    ctx = make_context(4)
    for _ in range(20):
        e = sample_group_element(ctx, rng)
        e = PSLElement(ctx, e.a, e.b, e.c, e.d, int(rng.integers(0, 4)))
        enlarged_element(e)          # validated on construction


@pytest.mark.parametrize("m", [2, 3])
def test_homomorphism(m):
    ctx = make_context(m)
    rng = np.random.default_rng(m)
    for _ in range(100):
        e1, e2 = sample_group_element(ctx, rng), sample_group_element(ctx, rng)
        F1, F2 = psl_to_symplectic(e1), psl_to_symplectic(e2)
        assert F1 @ F2 == psl_to_symplectic(e1.compose(e2))
        for z in projective_points(ctx):
            assert action_on_subgroup(F1 @ F2, z, ctx) == action_on_subgroup(F2, action_on_subgroup(F1, z, ctx), ctx)


@pytest.mark.parametrize("m,params", [(2, (15, 6, 1, 3)), (3, (63, 30, 13, 15)), (4, (255, 126, 61, 63))])
def test_strong_regularity(m, params):
    rep = check_strong_regularity(m)
    assert rep.expected == params
    assert (rep.n, rep.t, rep.lam, rep.mu) == (params[0], {params[1]}, {params[2]}, {params[3]})
    assert (rep.type1_edges, rep.type2_edges) == rep.expected_edge_types
    N = 1 << m
    assert rep.type1_edges == (N + 1) * (N - 1) * (N - 2) // 2
    assert rep.passed


@pytest.mark.parametrize("m,mult", [(1, 2), (2, 4), (3, 8), (4, 16)])
def test_pauli_mixing(m, mult):
    rep = check_pauli_mixing(m)
    assert rep.multiplicities == {mult}
    assert rep.passed


def test_edge_orbits_not_mixed():
    rep = check_pauli_mixing(3, edges=True)
    assert rep.edge_orbits >= 2
    assert rep.mixed_type_orbits == 0


def test_mixing_enlarged_m3():
    assert check_pauli_mixing(3, enlarged=True).multiplicities == {24}


def test_clifford_lift_examples(rng):
    H = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    assert np.allclose(clifford_lift(omega(2)), np.kron(H, H))
    ctx = make_context(3)
    P = ctx.mult_matrix(5) @ ctx.W
    Pi = P.to_array().astype(int)
    diag = [1j ** (int(np.array([(v >> j) & 1 for j in range(3)]) @ Pi @ np.array([(v >> j) & 1 for j in range(3)])) % 4)
            for v in range(8)]
    assert np.allclose(clifford_lift(T(P)), np.diag(diag))
    for _ in range(5):
        F = random_symplectic(3, rng)
        U = clifford_lift(F)
        for v in range(64):
            img = U @ realize_dense(PauliLabel.from_vector(v, 3)) @ U.conj().T
            tgt = realize_dense(PauliLabel.from_vector(F.apply(v), 3))
            assert np.allclose(img, tgt) or np.allclose(img, -tgt)


def test_haar_twirl_oracle(rng):
    N = 2
    X = np.eye(4)
    assert np.allclose(haar_twirl(X, N), X)
    # Monte Carlo Haar average agrees with the projector formula
    X = rng.normal(size=(4, 4))
    Us = unitary_group.rvs(2, size=20000, random_state=5)
    UU = np.einsum("kij,kab->kiajb", Us, Us).reshape(-1, 4, 4)
    mc = np.mean(UU @ X @ UU.conj().transpose(0, 2, 1), axis=0)
    assert np.max(np.abs(mc - haar_twirl(X, N))) < 0.05
    S = swap_operator(2)
    assert np.allclose(S @ S, np.eye(4))


def test_twirl_identity_fixed():
    U = ensemble_unitaries(make_context(1))
    assert np.allclose(ensemble_twirl(np.eye(4), U), np.eye(4))


@pytest.mark.parametrize("m", [1, 2])
def test_design_dense(m):
    ctx = make_context(m)
    U = ensemble_unitaries(ctx)
    assert abs(frame_potential(U) - 2) < 1e-9
    assert twirl_check(m, 20, np.random.default_rng(m), U) < 1e-9
    N = 1 << m
    assert count_projectively_distinct(U) == N ** 5 - N ** 3


def test_non_design_frame_potential_exceeds_two():
    U = ensemble_unitaries(make_context(1))[:4]       # Paulis with one Clifford only
    assert frame_potential(U) > 2 + 1e-6


def test_verify_design_reports():
    rep = verify_design(2, np.random.default_rng(0))
    assert rep.passed
    js = rep.to_json()
    assert js["frame_potential"] == pytest.approx(2.0, abs=1e-9)
    assert js["ensemble_size"] == 960
    assert verify_design(1, np.random.default_rng(0)).passed


def test_design_element_circuit(rng):
    ctx = make_context(3)
    s = sample_design_element(ctx, rng)
    full = s.full_circuit()
    assert verify_conjugation(full, s.symplectic).wrong_label == 0
    js = s.to_json()
    assert set(js) == {"m", "element", "symplectic", "pauli", "circuit"}
