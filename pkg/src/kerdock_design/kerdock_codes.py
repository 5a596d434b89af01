"""Delsarte-Goethals matrix sets, Z4-linear Kerdock codes and the Gray map."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .f2linalg import BitMatrix, BitVector, rank
from .gf2m import FieldContext

# Lee weight of each Z4 symbol, and its Gray image bits (first, second)
LEE = np.array([0, 1, 2, 1], dtype=np.int64)
GRAY = {0: (0, 0), 1: (0, 1), 2: (1, 1), 3: (1, 0)}
ENUMERATION_LIMIT = 26


def max_r(m: int) -> int:
    return (m - 1) // 2


def _check_r(ctx: FieldContext, r: int) -> None:
    if not 0 <= r <= max_r(ctx.m):
        raise ValueError(f"r must lie in [0, {max_r(ctx.m)}] for m = {ctx.m}")


def dg_matrix(ctx: FieldContext, r: int, z: Sequence[int]) -> BitMatrix:
    """P_{z,r} = A_{z0} W + sum_i [A_{zi} W (R^i)^T + R^i W A_{zi}^T]."""
    _check_r(ctx, r)
    if len(z) != r + 1:
        raise ValueError(f"expected {r + 1} field elements, got {len(z)}")
    W = ctx.W
    P = ctx.mult_matrix(z[0]) @ W
    for i in range(1, r + 1):
        if z[i]:
            Ri = ctx.R_power(i)
            Az = ctx.mult_matrix(z[i])
            P = P + Az @ W @ Ri.T + Ri @ W @ Az.T
    return P


def kerdock_matrix(ctx: FieldContext, z: int) -> BitMatrix:
    return ctx.mult_matrix(z) @ ctx.W


@dataclass(frozen=True)
class DGMatrixSet:
    ctx: FieldContext
    r: int

    def __post_init__(self):
        _check_r(self.ctx, self.r)

    def __len__(self) -> int:
        return 1 << (self.ctx.m * (self.r + 1))

    def split_index(self, k: int) -> tuple[int, ...]:
        """Index ``k`` packs ``(z_0, ..., z_r)`` with ``z_i`` in bits ``i m .. (i+1) m``."""
        m = self.ctx.m
        return tuple((k >> (i * m)) & ((1 << m) - 1) for i in range(self.r + 1))

    def __getitem__(self, z) -> BitMatrix:
        if isinstance(z, int):
            z = self.split_index(z)
        return dg_matrix(self.ctx, self.r, z)

    def __iter__(self):
        return (self[k] for k in range(len(self)))

    def rank_histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(rank(P) for P in self).items()))


@dataclass(frozen=True)
class Z4Codeword:
    """Codeword ``[x P x^T + 2 w x^T + kappa]_x`` indexed by ``x`` in F2^m."""

    entries: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.entries, dtype=np.int64) % 4
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    def __len__(self) -> int:
        return len(self.entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, Z4Codeword) and np.array_equal(self.entries, other.entries)

    def __hash__(self) -> int:
        return hash(self.entries.tobytes())

    def __sub__(self, other: "Z4Codeword") -> "Z4Codeword":
        return Z4Codeword(self.entries - other.entries)


def points(m: int) -> np.ndarray:
    """N x m 0/1 array whose row x holds the bits of x."""
    x = np.arange(1 << m)
    return ((x[:, None] >> np.arange(m)) & 1).astype(np.int64)


def quadratic_form(P: BitMatrix, m: int | None = None) -> np.ndarray:
    """``x P x^T`` mod 4 for every x, with P lifted to a 0/1 integer matrix."""
    m = P.nrows if m is None else m
    X = points(m)
    Pi = P.to_array().astype(np.int64)
    return np.einsum("xi,ij,xj->x", X, Pi, X) % 4


def codeword(ctx: FieldContext | int, P: BitMatrix, w: BitVector | int, kappa: int) -> Z4Codeword:
    if not P.is_symmetric():
        raise ValueError("codewords require a symmetric P")
    m = ctx.m if isinstance(ctx, FieldContext) else int(ctx)
    wb = w.bits if isinstance(w, BitVector) else int(w)
    X = points(m)
    lin = (X @ ((wb >> np.arange(m)) & 1)) % 2
    return Z4Codeword(quadratic_form(P, m) + 2 * lin + kappa)


def gray_map(c: Z4Codeword) -> BitVector:
    """Concatenate 0->00, 1->01, 2->11, 3->10; entry x fills bits 2x, 2x+1."""
    bits = 0
    for x, v in enumerate(c.entries):
        hi, lo = GRAY[int(v)]
        bits |= (hi << (2 * x)) | (lo << (2 * x + 1))
    return BitVector(2 * len(c), bits)


def lee_weight(c: Z4Codeword) -> int:
    return int(LEE[c.entries].sum())


@dataclass(frozen=True)
class WeightDistribution:
    m: int
    r: int
    counts: dict[int, int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def is_symmetric(self) -> bool:
        n2 = 2 << self.m
        return all(self.counts.get(n2 - i, 0) == c for i, c in self.counts.items())

    def to_json(self) -> dict[str, int]:
        return {str(k): v for k, v in sorted(self.counts.items())}


def closed_form_distribution(m: int) -> dict[int, int]:
    """Closed-form weight distribution of the binary Kerdock code, m odd."""
    if m % 2 == 0 or m < 1:
        raise ValueError("closed form requires odd m")
    n, s = 1 << m, 1 << ((m - 1) // 2)
    mid = (1 << (2 * m + 1)) - (1 << (m + 1))
    out = {0: 1, n - s: mid, n: (1 << (m + 2)) - 2, n + s: mid, 2 * n: 1}
    return {k: v for k, v in sorted(out.items()) if v}


def _dg_basis_arrays(ctx: FieldContext, r: int) -> list[np.ndarray]:
    m = ctx.m
    basis = []
    for i in range(r + 1):
        for j in range(m):
            z = [0] * (r + 1)
            z[i] = 1 << j
            basis.append(dg_matrix(ctx, r, z).to_array().astype(np.uint8))
    return basis


def dg_matrices_array(ctx: FieldContext, r: int) -> np.ndarray:
    """All DG matrices as a (count, m, m) 0/1 array, in packed-index order."""
    basis = _dg_basis_arrays(ctx, r)
    m = ctx.m
    out = np.zeros((1 << len(basis), m, m), dtype=np.uint8)
    for b, B in enumerate(basis):
        size = 1 << b
        out[size:2 * size] = out[:size] ^ B
    return out


def weight_distribution(ctx: FieldContext, r: int = 0, chunk: int = 256) -> WeightDistribution:
    """Brute-force Gray-image weight distribution of DG(m, r).

    Enumerates every P in the DG set, every w and every kappa.
    """
    _check_r(ctx, r)
    m = ctx.m
    log_size = m * (r + 1) + m + 2
    if log_size > ENUMERATION_LIMIT:
        raise ValueError(f"2^{log_size} codewords exceeds the enumeration limit 2^{ENUMERATION_LIMIT}")
    X = points(m)
    lin2 = 2 * ((X @ X.T) % 2)                    # [x, w] -> 2 w.x
    Ps = dg_matrices_array(ctx, r).astype(np.int64)
    tally = np.zeros((2 << m) + 1, dtype=np.int64)
    for start in range(0, len(Ps), chunk):
        q = np.einsum("xi,kij,xj->kx", X, Ps[start:start + chunk], X) % 4
        base = q[:, :, None] + lin2[None, :, :]   # (k, x, w)
        for kappa in range(4):
            weights = LEE[(base + kappa) % 4].sum(axis=1)
            tally += np.bincount(weights.ravel(), minlength=len(tally))
    counts = {int(i): int(c) for i, c in enumerate(tally) if c}
    return WeightDistribution(m, r, counts)


def dg_closure_violations(ctx: FieldContext, r: int) -> int:
    """Count pairs with P(z1) + P(z2) != P(z1 + z2)."""
    S = DGMatrixSet(ctx, r)
    mats = list(S)
    return sum(1 for a in range(len(S)) for b in range(len(S)) if mats[a] + mats[b] != mats[a ^ b])


def kerdock_difference_violations(ctx: FieldContext) -> int:
    """Number of pairs z1 != z2 whose Kerdock matrices differ by a singular matrix."""
    mats = [kerdock_matrix(ctx, z) for z in range(ctx.order)]
    return sum(1 for a in range(ctx.order) for b in range(a + 1, ctx.order)
               if rank(mats[a] + mats[b]) != ctx.m)
