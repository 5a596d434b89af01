from __future__ import annotations

import itertools

import numpy as np
import pytest

from kerdock_design.f2linalg import BitVector
from kerdock_design.pauli import (CommutationError, PauliLabel, all_labels, check_generators, multiply,
                                  product, realize_dense, stabilizer_projector, symplectic_inner)

X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.diag([1, -1]).astype(complex)
Y = 1j * X @ Z


def test_symplectic_inner_examples():
    assert symplectic_inner(BitVector.from_str("10"), BitVector.from_str("01")) == 1
    u = BitVector.from_str("1101")
    assert symplectic_inner(u, u) == 0


def test_symplectic_inner_matches_dense_commutator_m2():
    labels = list(all_labels(2))
    mats = [realize_dense(p) for p in labels]
    for p, P in zip(labels, mats):
        for q, Q in zip(labels, mats):
            commute = np.allclose(P @ Q, Q @ P)
            assert symplectic_inner(p.vector, q.vector) == (0 if commute else 1)


def test_realize_dense_examples():
    assert np.array_equal(realize_dense(PauliLabel(1, 1, 1)), Y)
    assert np.array_equal(realize_dense(PauliLabel(3, 0, 0)), np.eye(8))
    # qubit j is bit j of the basis index
    assert np.array_equal(realize_dense(PauliLabel(2, 1, 0)), np.kron(np.eye(2), X))


def test_swap_rule_m2():
    for v, w in itertools.product(range(16), repeat=2):
        p, q = PauliLabel.from_vector(v, 2), PauliLabel.from_vector(w, 2)
        P, Q = realize_dense(p), realize_dense(q)
        sign = (-1) ** symplectic_inner(p.vector, q.vector)
        assert np.allclose(P @ Q, sign * Q @ P)


def test_multiply_examples(rng):
    for p in all_labels(2):
        sq = p * p
        assert (sq.a, sq.b, sq.phase) == (0, 0, 0)
        assert multiply(PauliLabel.identity(2), p) == p
    for _ in range(200):
        p = PauliLabel(3, *(int(x) for x in rng.integers(0, 8, 2)), int(rng.integers(0, 4)))
        q = PauliLabel(3, *(int(x) for x in rng.integers(0, 8, 2)), int(rng.integers(0, 4)))
        assert np.array_equal(realize_dense(p * q), realize_dense(p) @ realize_dense(q))


def test_multiply_exhaustive_m2_and_gamma_homomorphism():
    for v, w in itertools.product(range(16), repeat=2):
        for k in range(4):
            p, q = PauliLabel.from_vector(v, 2, k), PauliLabel.from_vector(w, 2)
            pq = p * q
            assert pq.vector.bits == v ^ w
            assert np.allclose(realize_dense(pq), realize_dense(p) @ realize_dense(q))


def test_hermitian_labels():
    for p in all_labels(2):
        P = realize_dense(p)
        assert np.allclose(P, P.conj().T)
        assert np.allclose(P @ P, np.eye(4))
        assert np.allclose((-p).sign, -1)
    assert not PauliLabel(1, 1, 0, 1).is_hermitian


def test_parse_and_str():
    for text in ("+E(101|011)", "-E(101|011)", "+iE(1|0)", "-iE(00|11)"):
        assert str(PauliLabel.parse(text)) == text
    assert PauliLabel.parse("E(10|01)") == PauliLabel(2, 1, 2, 0)
    with pytest.raises(ValueError):
        PauliLabel.parse("E(10|0)")


def test_stabilizer_projector_examples():
    Pz = stabilizer_projector([PauliLabel(1, 0, 1)])
    assert np.array_equal(Pz, np.diag([1, 0]).astype(complex))
    gens = [PauliLabel(2, 0b11, 0), PauliLabel(2, 0, 0b11)]
    Pi = stabilizer_projector(gens)
    assert np.isclose(np.trace(Pi), 1)
    assert np.linalg.matrix_rank(Pi) == 1
    assert np.allclose(Pi @ Pi, Pi) and np.allclose(Pi, Pi.conj().T)
    total = sum(stabilizer_projector([g if s == 0 else -g for g, s in zip(gens, signs)])
                for signs in itertools.product((0, 1), repeat=2))
    assert np.allclose(total, np.eye(4))


def test_stabilizer_projector_errors():
    with pytest.raises(CommutationError):
        stabilizer_projector([PauliLabel(1, 1, 0), PauliLabel(1, 0, 1)])
    with pytest.raises(ValueError):
        check_generators([PauliLabel(2, 1, 0), PauliLabel(2, 1, 0)])


def test_product_of_list():
    labels = [PauliLabel(2, 1, 0), PauliLabel(2, 0, 1)]
    assert product(labels, 2) == labels[0] * labels[1]
