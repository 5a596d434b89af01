"""Stabilizer states from exponentiated Z4 codewords and the Kerdock MUBs.

Vectors are kept unnormalized as Z4 exponent arrays, ``v_x = i^{c_x}``, so every
inner product is an exact Gaussian integer ``(n0 - n2) + (n1 - n3) i`` where
``n_j`` counts the positions with ``c_u - c_v = j``.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .f2linalg import BitMatrix, BitVector, rank
from .gf2m import FieldContext
from .kerdock_codes import dg_matrices_array, kerdock_matrix, points, quadratic_form
from .pauli import PauliLabel, realize_dense

MUB_MAX_M = 10
INFINITY = "inf"


@dataclass(frozen=True)
class GaussianInteger:
    re: int
    im: int

    @property
    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def __complex__(self) -> complex:
        return complex(self.re, self.im)

    def __str__(self) -> str:
        return f"{self.re}{self.im:+d}i"


@dataclass(frozen=True)
class QuaternaryPhaseVector:
    exps: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.exps, dtype=np.int64) % 4
        arr.setflags(write=False)
        object.__setattr__(self, "exps", arr)

    def __len__(self) -> int:
        return len(self.exps)

    def to_array(self) -> np.ndarray:
        return 1j ** self.exps


def eigenvector(ctx: FieldContext | int, P: BitMatrix, w: BitVector | int) -> QuaternaryPhaseVector:
    """``[i^{x P x^T + 2 w x^T}]_x``, a common eigenvector of all E(a, aP)."""
    if not P.is_symmetric():
        raise ValueError("eigenvectors require a symmetric P")
    m = ctx.m if isinstance(ctx, FieldContext) else int(ctx)
    wb = w.bits if isinstance(w, BitVector) else int(w)
    X = points(m)
    return QuaternaryPhaseVector(quadratic_form(P, m) + 2 * ((X @ ((wb >> np.arange(m)) & 1)) % 2))


def eigenbasis_exps(P: BitMatrix) -> np.ndarray:
    """(N_w, N_x) exponent array of all ``2^m`` eigenvectors of ``P``, row ``w``."""
    m = P.nrows
    X = points(m)
    return (quadratic_form(P, m)[None, :] + 2 * ((X @ X.T) % 2)) % 4


def inner_product(u: QuaternaryPhaseVector, v: QuaternaryPhaseVector) -> GaussianInteger:
    """Hermitian ``sum_x u_x conj(v_x)``."""
    if len(u) != len(v):
        raise ValueError("vectors of different lengths")
    n = np.bincount((u.exps - v.exps) % 4, minlength=4)
    return GaussianInteger(int(n[0] - n[2]), int(n[1] - n[3]))


def inner_product_norms(U: np.ndarray, V: np.ndarray) -> np.ndarray:
    """|<u, v>|^2 for all rows u of U and v of V (exponent arrays)."""
    d = (U[:, None, :] - V[None, :, :]) % 4
    re = (d == 0).sum(-1) - (d == 2).sum(-1)
    im = (d == 1).sum(-1) - (d == 3).sum(-1)
    return re * re + im * im


@dataclass
class InnerProductReport:
    m: int
    k: int
    expected: dict[int, int]
    observed: list[dict[int, int]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(h == self.expected for h in self.observed)


def inner_product_law(m: int, k: int) -> dict[int, int]:
    out = {1 << (2 * m - k): 1 << k}
    if (1 << m) > (1 << k):
        out[0] = (1 << m) - (1 << k)
    return out


def verify_inner_product_law(ctx: FieldContext, r: int, P1: BitMatrix, P2: BitMatrix,
                  all_v: bool = True) -> InnerProductReport:
    """Histogram of |<u,v>|^2 over u in V(P1), for each v in V(P2)."""
    m = ctx.m
    k = rank(P1 + P2)
    rep = InnerProductReport(m, k, inner_product_law(m, k))
    U = eigenbasis_exps(P1)
    V = eigenbasis_exps(P2)
    if not all_v:
        V = V[:1]
    for norms in inner_product_norms(U, V).T:
        rep.observed.append(dict(Counter(int(x) for x in norms)))
    return rep


@dataclass(frozen=True)
class Basis:
    """Either the computational basis (``label == INFINITY``) or the phase basis M_z."""

    label: object
    exps: np.ndarray | None

    def dense(self, N: int) -> np.ndarray:
        """Columns scaled to norm sqrt(N), the common unnormalized length."""
        if self.exps is None:
            return np.sqrt(N) * np.eye(N, dtype=complex)
        return (1j ** self.exps).T


@dataclass(frozen=True)
class MUBCollection:
    ctx: FieldContext
    bases: tuple[Basis, ...]

    @property
    def N(self) -> int:
        return self.ctx.order


def build_mubs(ctx: FieldContext) -> MUBCollection:
    """M_inf = I_N and M_z = diag(i^{x P_z x^T}) H_N for every z."""
    if ctx.m > MUB_MAX_M:
        raise ValueError(f"MUB construction limited to m <= {MUB_MAX_M}")
    bases = [Basis(INFINITY, None)]
    bases += [Basis(z, eigenbasis_exps(kerdock_matrix(ctx, z))) for z in range(ctx.order)]
    return MUBCollection(ctx, tuple(bases))


def _gram_norms(b1: Basis, b2: Basis, N: int) -> np.ndarray:
    """|<u, v>|^2 with all vectors at squared length N, exact integers."""
    if b1.exps is None and b2.exps is None:
        return N * N * np.eye(N, dtype=np.int64)
    if b1.exps is None or b2.exps is None:
        # |<sqrt(N) e_y, u>|^2 = N for any phase vector u
        return np.full((N, N), N, dtype=np.int64)
    return inner_product_norms(b1.exps, b2.exps)


def partition_violations(ctx: FieldContext) -> int:
    """Deviation from every nonzero [a, b] lying in exactly one of the N+1 subgroups."""
    m, N = ctx.m, ctx.order
    hits = Counter()
    for z in range(N):
        P = kerdock_matrix(ctx, z)
        for a in range(1, N):
            hits[a | ((BitVector(m, a) @ P).bits << m)] += 1
    for b in range(1, N):
        hits[b << m] += 1
    bad = sum(1 for v in range(1, N * N) if hits[v] != 1)
    return bad + sum(c for v, c in hits.items() if v == 0)


@dataclass
class MUBReport:
    m: int
    bases: int
    orthonormal_failures: int
    unbiased_failures: int
    partition_failures: int
    stabilized_failures: int

    @property
    def passed(self) -> bool:
        return not (self.orthonormal_failures or self.unbiased_failures
                    or self.partition_failures or self.stabilized_failures)

    def to_json(self) -> dict:
        return {"m": self.m, "bases": self.bases, "orthonormal_failures": self.orthonormal_failures,
                "unbiased_failures": self.unbiased_failures,
                "partition_failures": self.partition_failures,
                "stabilizer_failures": self.stabilized_failures, "passed": self.passed}


def check_mubs(ctx: FieldContext, dense_eigen_check: bool | None = None) -> MUBReport:
    """Exact orthonormality, unbiasedness and partition checks.

    With ``dense_eigen_check`` each M_z column is also checked to be an
    eigenvector of every E(a, a P_z) (default for m <= 4).
    """
    N = ctx.order
    mubs = build_mubs(ctx)
    ortho = unbiased = 0
    target = N * N * np.eye(N, dtype=np.int64)
    for i, b1 in enumerate(mubs.bases):
        if not np.array_equal(_gram_norms(b1, b1, N), target):
            ortho += 1
        for b2 in mubs.bases[i + 1:]:
            if not np.all(_gram_norms(b1, b2, N) == N):
                unbiased += 1
    stab = 0
    if dense_eigen_check is None:
        dense_eigen_check = ctx.m <= 4
    if dense_eigen_check:
        for b in mubs.bases[1:]:
            P = kerdock_matrix(ctx, b.label)
            vecs = 1j ** b.exps.T
            for a in range(1, N):
                E = realize_dense(PauliLabel(ctx.m, a, (BitVector(ctx.m, a) @ P).bits))
                Ev = E @ vecs
                ok = np.isclose(Ev, vecs).all(0) | np.isclose(Ev, -vecs).all(0)
                stab += int(not ok.all())
    return MUBReport(ctx.m, len(mubs.bases), ortho, unbiased, partition_violations(ctx), stab)


def chordal_distance(ctx: FieldContext, r: int, exhaustive: bool = False, chunk: int = 512) -> float:
    """Minimum chordal distance of the 2^{m(r+2)} DG stabilizer lines.

    The difference of two lifted quadratic forms is ``x (P1 + P2) x^T`` plus a
    linear term mod 4, and the DG set is closed under addition, so every cross
    inner product appears as ``<u, 1>`` for ``u`` in ``V(P)`` with ``P`` in the set.
    ``exhaustive`` compares all pairs directly instead (small sets only).
    """
    N = ctx.order
    Ps = dg_matrices_array(ctx, r).astype(np.int64)
    X = points(ctx.m)
    lin2 = 2 * ((X @ X.T) % 2)
    best = 0
    if exhaustive:
        allv = np.concatenate([(np.einsum("xi,ij,xj->x", X, P, X)[None, :] + lin2) % 4 for P in Ps])
        norms = inner_product_norms(allv, allv)
        np.fill_diagonal(norms, 0)
        best = int(norms.max())
    else:
        for start in range(0, len(Ps), chunk):
            q = np.einsum("xi,kij,xj->kx", X, Ps[start:start + chunk], X) % 4
            d = (q[:, None, :] + lin2[None, :, :]) % 4          # (k, w, x) vs all-ones
            re = (d == 0).sum(-1) - (d == 2).sum(-1)
            im = (d == 1).sum(-1) - (d == 3).sum(-1)
            norms = re * re + im * im
            if start == 0:
                norms[0, 0] = 0                                   # the all-ones line itself
            best = max(best, int(norms.max()))
    return math.sqrt(1 - best / (N * N))


def chordal_distance_expected(m: int, r: int) -> float:
    return math.sqrt(1 - 2.0 ** (-(m - 2 * r)))
