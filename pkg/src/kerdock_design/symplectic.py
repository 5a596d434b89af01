"""Binary symplectic matrices and the elementary factors Omega, L_Q, T_P, G_t.

A 2m x 2m matrix acts on row vectors ``[a, b]`` from the right.  Column ``j`` of
a row is bit ``j`` of the packed row, so the ``a`` half is the low ``m`` bits.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .f2linalg import BitMatrix, BitVector, inverse, random_invertible, random_bits


class NotSymplecticError(ValueError):
    pass


def omega_matrix(m: int) -> BitMatrix:
    return BitMatrix(tuple(1 << ((i + m) % (2 * m)) for i in range(2 * m)), 2 * m)


def is_symplectic(F: BitMatrix) -> bool:
    n = F.nrows
    if n != F.cols or n % 2:
        return False
    om = omega_matrix(n // 2)
    return F @ om @ F.T == om


@dataclass(frozen=True)
class SymplecticMatrix:
    """Validated ``F`` with ``F Omega F^T = Omega``."""

    m: int
    F: BitMatrix

    def __post_init__(self):
        if self.F.shape != (2 * self.m, 2 * self.m):
            raise NotSymplecticError(f"expected a {2*self.m}x{2*self.m} matrix, got {self.F.shape}")
        if not is_symplectic(self.F):
            raise NotSymplecticError("matrix does not preserve the symplectic form")

    @classmethod
    def _trusted(cls, m: int, F: BitMatrix) -> "SymplecticMatrix":
        obj = object.__new__(cls)
        object.__setattr__(obj, "m", m)
        object.__setattr__(obj, "F", F)
        return obj

    @classmethod
    def from_blocks(cls, A: BitMatrix, B: BitMatrix, C: BitMatrix, D: BitMatrix) -> "SymplecticMatrix":
        return cls(A.nrows, BitMatrix.block([[A, B], [C, D]]))

    @classmethod
    def identity(cls, m: int) -> "SymplecticMatrix":
        return cls._trusted(m, BitMatrix.identity(2 * m))

    @property
    def A(self) -> BitMatrix:
        return self.F.submatrix(0, self.m, 0, self.m)

    @property
    def B(self) -> BitMatrix:
        return self.F.submatrix(0, self.m, self.m, 2 * self.m)

    @property
    def C(self) -> BitMatrix:
        return self.F.submatrix(self.m, 2 * self.m, 0, self.m)

    @property
    def D(self) -> BitMatrix:
        return self.F.submatrix(self.m, 2 * self.m, self.m, 2 * self.m)

    def __matmul__(self, other: "SymplecticMatrix") -> "SymplecticMatrix":
        if other.m != self.m:
            raise ValueError("symplectic matrices of different sizes")
        return SymplecticMatrix._trusted(self.m, self.F @ other.F)

    def inverse(self) -> "SymplecticMatrix":
        # F^{-1} = Omega F^T Omega
        om = omega_matrix(self.m)
        return SymplecticMatrix._trusted(self.m, om @ self.F.T @ om)

    def apply(self, v: int) -> int:
        """Image ``v F`` of a packed length-2m row vector."""
        out, j = 0, 0
        rows = self.F.rows
        while v:
            if v & 1:
                out ^= rows[j]
            v >>= 1
            j += 1
        return out

    def is_identity(self) -> bool:
        return self.F == BitMatrix.identity(2 * self.m)

    def __str__(self) -> str:
        return self.F.to_text()


def omega(m: int) -> SymplecticMatrix:
    return SymplecticMatrix._trusted(m, omega_matrix(m))


def L(Q: BitMatrix) -> SymplecticMatrix:
    """L_Q = diag(Q, Q^{-T})."""
    m = Q.nrows
    Qinv_T = inverse(Q).T
    return SymplecticMatrix._trusted(m, BitMatrix.block([[Q, BitMatrix.zeros(m, m)],
                                                          [BitMatrix.zeros(m, m), Qinv_T]]))


def T(P: BitMatrix) -> SymplecticMatrix:
    """T_P = [[I, P], [0, I]] for symmetric P."""
    if not P.is_symmetric():
        raise NotSymplecticError("T_P requires a symmetric P")
    m = P.nrows
    return SymplecticMatrix._trusted(m, BitMatrix.block([[BitMatrix.identity(m), P],
                                                          [BitMatrix.zeros(m, m), BitMatrix.identity(m)]]))


def G(m: int, t: int) -> SymplecticMatrix:
    """Partial Hadamard factor: swaps a_j and b_j for the first ``t`` qubits."""
    if not 0 <= t <= m:
        raise ValueError("t must lie in [0, m]")
    rows = []
    for i in range(2 * m):
        j = i % m
        if j < t:
            rows.append(1 << (j + m) if i < m else 1 << j)
        else:
            rows.append(1 << i)
    return SymplecticMatrix._trusted(m, BitMatrix(tuple(rows), 2 * m))


def transvection(h: BitVector) -> SymplecticMatrix:
    """Z_h = I + Omega h^T h, i.e. v -> v + <v, h>_s h."""
    n = h.length
    if n % 2:
        raise ValueError("transvection vector must have even length")
    m = n // 2
    # row i of Omega h^T h is (Omega h^T)_i * h, and (Omega h^T)_i = h_{i +- m}
    rows = []
    for i in range(n):
        k = i + m if i < m else i - m
        rows.append((1 << i) ^ (h.bits if (h.bits >> k) & 1 else 0))
    return SymplecticMatrix._trusted(m, BitMatrix(tuple(rows), n))


def random_symmetric(m: int, rng: np.random.Generator) -> BitMatrix:
    upper = [random_bits(m, rng) & ~((1 << i) - 1) for i in range(m)]
    rows = []
    for i in range(m):
        r = upper[i]
        for j in range(i):
            r |= ((upper[j] >> i) & 1) << j
        rows.append(r)
    return BitMatrix(tuple(rows), m)


def random_symplectic(m: int, rng: np.random.Generator) -> SymplecticMatrix:
    """L_Q1 T_P1 G_t T_P2 L_Q2 with independent random parameters.

    Every symplectic matrix has this form, so all Bruhat cells are reached,
    though not with uniform probability.
    """
    t = int(rng.integers(0, m + 1))
    return (L(random_invertible(m, rng)) @ T(random_symmetric(m, rng)) @ G(m, t)
            @ T(random_symmetric(m, rng)) @ L(random_invertible(m, rng)))
