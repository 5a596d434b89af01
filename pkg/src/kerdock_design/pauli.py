"""Heisenberg-Weyl labels with exact quaternary phases, plus a dense oracle.

``PauliLabel(m, a, b, phase)`` stands for ``i^phase * E(a, b)`` where
``E(a, b) = i^{a.b} D(a, b)`` and ``D(a, b) = X^{a_1} Z^{b_1} (x) ... (x) X^{a_m} Z^{b_m}``.
Qubit ``j`` corresponds to bit ``j`` of ``a``, ``b`` and of the computational
basis index, so ``D(a, b) e_x = (-1)^{b.x} e_{x ^ a}``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .f2linalg import BitMatrix, BitVector, parity, rank

DENSE_MAX_M = 10
PROJECTOR_MAX_M = 8

_PHASE_PREFIX = {0: "+", 1: "+i", 2: "-", 3: "-i"}
_PREFIX_PHASE = {"": 0, "+": 0, "+i": 1, "i": 1, "-": 2, "-i": 3}
_LABEL_RE = re.compile(r"^\s*([+-]?i?)\s*E\(\s*([01]+)\s*\|\s*([01]+)\s*\)\s*$")


class CommutationError(ValueError):
    pass


@dataclass(frozen=True)
class PauliLabel:
    m: int
    a: int
    b: int
    phase: int = 0

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be >= 1")
        mask = (1 << self.m) - 1
        if self.a & ~mask or self.b & ~mask:
            raise ValueError("label bits exceed m")
        object.__setattr__(self, "phase", self.phase % 4)

    @classmethod
    def from_vector(cls, v: BitVector | int, m: int, phase: int = 0) -> "PauliLabel":
        bits = v.bits if isinstance(v, BitVector) else v
        return cls(m, bits & ((1 << m) - 1), bits >> m, phase)

    @classmethod
    def identity(cls, m: int) -> "PauliLabel":
        return cls(m, 0, 0, 0)

    @classmethod
    def parse(cls, text: str) -> "PauliLabel":
        match = _LABEL_RE.match(text)
        if not match:
            raise ValueError(f"cannot parse Pauli label {text!r}")
        sign, a, b = match.groups()
        if len(a) != len(b):
            raise ValueError("a and b parts must have equal length")
        return cls(len(a), BitVector.from_str(a).bits, BitVector.from_str(b).bits,
                   _PREFIX_PHASE[sign])

    @property
    def vector(self) -> BitVector:
        """gamma(p) = [a, b] as a length-2m row vector."""
        return BitVector(2 * self.m, self.a | (self.b << self.m))

    @property
    def is_hermitian(self) -> bool:
        return self.phase % 2 == 0

    @property
    def sign(self) -> int:
        if not self.is_hermitian:
            raise ValueError("non-Hermitian label has no real sign")
        return 1 if self.phase == 0 else -1

    def with_phase(self, phase: int) -> "PauliLabel":
        return PauliLabel(self.m, self.a, self.b, phase)

    def __mul__(self, other: "PauliLabel") -> "PauliLabel":
        return multiply(self, other)

    def __neg__(self) -> "PauliLabel":
        return self.with_phase(self.phase + 2)

    def commutes_with(self, other: "PauliLabel") -> bool:
        return symplectic_inner(self.vector, other.vector) == 0

    def __str__(self) -> str:
        a = BitVector(self.m, self.a)
        b = BitVector(self.m, self.b)
        return f"{_PHASE_PREFIX[self.phase]}E({a}|{b})"


def symplectic_inner(u: BitVector, v: BitVector) -> int:
    """[a,b] Omega [a',b']^T = a'.b + b'.a over F2."""
    if u.length != v.length or u.length % 2:
        raise ValueError("symplectic vectors must have equal even length")
    m = u.length // 2
    mask = (1 << m) - 1
    a, b = u.bits & mask, u.bits >> m
    a2, b2 = v.bits & mask, v.bits >> m
    return parity((a2 & b) ^ (b2 & a))


def symplectic_inner_bits(u: int, v: int, m: int) -> int:
    mask = (1 << m) - 1
    return parity(((v & mask) & (u >> m)) ^ ((v >> m) & (u & mask)))


def multiply(p: PauliLabel, q: PauliLabel) -> PauliLabel:
    if p.m != q.m:
        raise ValueError("labels act on different numbers of qubits")
    a, b = p.a ^ q.a, p.b ^ q.b
    phase = (p.phase + q.phase + (p.a & p.b).bit_count() + (q.a & q.b).bit_count()
             + 2 * (p.b & q.a).bit_count() - (a & b).bit_count())
    return PauliLabel(p.m, a, b, phase)


def product(labels: Sequence[PauliLabel], m: int) -> PauliLabel:
    out = PauliLabel.identity(m)
    for p in labels:
        out = multiply(out, p)
    return out


def realize_dense(p: PauliLabel) -> np.ndarray:
    """Dense N x N complex matrix of the label (exact entries in {0, +-1, +-i})."""
    if p.m > DENSE_MAX_M:
        raise ValueError(f"dense realization limited to m <= {DENSE_MAX_M}")
    n = 1 << p.m
    x = np.arange(n)
    signs = 1 - 2 * (_popcount_array(x & p.b) & 1)
    phase = 1j ** ((p.phase + (p.a & p.b).bit_count()) % 4)
    out = np.zeros((n, n), dtype=complex)
    out[x ^ p.a, x] = phase * signs
    return out


def _popcount_array(x: np.ndarray) -> np.ndarray:
    x = x.astype(np.int64)
    count = np.zeros_like(x)
    while np.any(x):
        count += x & 1
        x = x >> 1
    return count


def check_generators(gens: Sequence[PauliLabel]) -> None:
    """Raise unless ``gens`` are Hermitian, pairwise commuting and independent."""
    if not gens:
        return
    m = gens[0].m
    for g in gens:
        if g.m != m:
            raise ValueError("generators act on different numbers of qubits")
        if not g.is_hermitian:
            raise ValueError(f"generator {g} is not Hermitian")
    for i, g in enumerate(gens):
        for h in gens[i + 1:]:
            if not g.commutes_with(h):
                raise CommutationError(f"{g} and {h} anticommute")
    if rank(BitMatrix.from_vectors([g.vector for g in gens])) != len(gens):
        raise ValueError("generators are dependent")


def stabilizer_projector(gens: Sequence[PauliLabel]) -> np.ndarray:
    """prod_i (I + g_i) / 2 for signed commuting independent generators."""
    if not gens:
        raise ValueError("at least one generator required")
    check_generators(gens)
    m = gens[0].m
    if m > PROJECTOR_MAX_M:
        raise ValueError(f"projector limited to m <= {PROJECTOR_MAX_M}")
    n = 1 << m
    out = np.eye(n, dtype=complex)
    for g in gens:
        out = out @ (np.eye(n) + realize_dense(g)) / 2
    return out


def all_labels(m: int):
    """All N^2 Hermitian labels with phase 0, ordered by gamma as an integer."""
    for v in range(1 << (2 * m)):
        yield PauliLabel.from_vector(v, m)
