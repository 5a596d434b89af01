"""Bit-packed linear algebra over F2.

Vectors and matrix rows are stored as Python integers: coordinate ``j`` of a
row vector lives in bit ``j``.  All values are immutable.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


class DimensionError(ValueError):
    pass


class SingularMatrixError(ValueError):
    pass


class InconsistentSystemError(ValueError):
    pass


def parity(x: int) -> int:
    return x.bit_count() & 1


def _mask(n: int) -> int:
    return (1 << n) - 1


def _bits_from_string(s: str) -> int:
    bits = 0
    for j, ch in enumerate(s):
        if ch == "1":
            bits |= 1 << j
        elif ch != "0":
            raise ValueError(f"not a bit string: {s!r}")
    return bits


def _bits_to_string(bits: int, n: int) -> str:
    return "".join("1" if (bits >> j) & 1 else "0" for j in range(n))


@dataclass(frozen=True)
class BitVector:
    """Row vector over F2 of fixed ``length``."""

    length: int
    bits: int = 0

    def __post_init__(self):
        if self.length < 1:
            raise DimensionError("BitVector length must be >= 1")
        if self.bits >> self.length:
            object.__setattr__(self, "bits", self.bits & _mask(self.length))

    @classmethod
    def from_str(cls, s: str) -> "BitVector":
        s = s.strip()
        return cls(len(s), _bits_from_string(s))

    @classmethod
    def from_iter(cls, values: Iterable[int]) -> "BitVector":
        values = list(values)
        bits = 0
        for j, v in enumerate(values):
            if int(v) & 1:
                bits |= 1 << j
        return cls(len(values), bits)

    @classmethod
    def unit(cls, length: int, j: int) -> "BitVector":
        return cls(length, 1 << j)

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, j: int) -> int:
        if not -self.length <= j < self.length:
            raise IndexError(j)
        return (self.bits >> (j % self.length)) & 1

    def __iter__(self):
        return (((self.bits >> j) & 1) for j in range(self.length))

    def __add__(self, other: "BitVector") -> "BitVector":
        if self.length != other.length:
            raise DimensionError("length mismatch")
        return BitVector(self.length, self.bits ^ other.bits)

    __xor__ = __add__

    def dot(self, other: "BitVector") -> int:
        if self.length != other.length:
            raise DimensionError("length mismatch")
        return parity(self.bits & other.bits)

    def weight(self) -> int:
        return self.bits.bit_count()

    def concat(self, other: "BitVector") -> "BitVector":
        return BitVector(self.length + other.length, self.bits | (other.bits << self.length))

    def split(self, at: int) -> tuple["BitVector", "BitVector"]:
        return (BitVector(at, self.bits & _mask(at)),
                BitVector(self.length - at, self.bits >> at))

    def to_array(self) -> np.ndarray:
        return np.array(list(self), dtype=np.uint8)

    def __matmul__(self, mat: "BitMatrix") -> "BitVector":
        if mat.nrows != self.length:
            raise DimensionError("vector length must equal matrix rows")
        return BitVector(mat.cols, _vec_mul(self.bits, mat.rows))

    def __str__(self) -> str:
        return _bits_to_string(self.bits, self.length)


def _vec_mul(x: int, rows: Sequence[int]) -> int:
    acc = 0
    j = 0
    while x:
        if x & 1:
            acc ^= rows[j]
        x >>= 1
        j += 1
    return acc


@dataclass(frozen=True)
class BitMatrix:
    """Dense ``len(rows) x cols`` matrix over F2, one packed integer per row."""

    rows: tuple[int, ...]
    cols: int

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        if self.cols < 0:
            raise DimensionError("negative column count")
        mask = _mask(self.cols)
        if any(r & ~mask for r in rows):
            rows = tuple(r & mask for r in rows)
        object.__setattr__(self, "rows", rows)

    # construction -------------------------------------------------------
    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(tuple(1 << i for i in range(n)), n)

    @classmethod
    def zeros(cls, nrows: int, cols: int) -> "BitMatrix":
        return cls((0,) * nrows, cols)

    @classmethod
    def from_strings(cls, lines: Sequence[str]) -> "BitMatrix":
        lines = [ln.strip() for ln in lines if ln.strip()]
        if not lines:
            raise DimensionError("empty matrix text")
        cols = len(lines[0])
        if any(len(ln) != cols for ln in lines):
            raise DimensionError("ragged rows")
        return cls(tuple(_bits_from_string(ln) for ln in lines), cols)

    @classmethod
    def from_text(cls, text: str) -> "BitMatrix":
        return cls.from_strings(text.splitlines())

    @classmethod
    def from_array(cls, arr) -> "BitMatrix":
        arr = np.asarray(arr, dtype=np.int64) & 1
        if arr.ndim != 2:
            raise DimensionError("expected a 2-d array")
        rows = tuple(sum(int(v) << j for j, v in enumerate(row)) for row in arr)
        return cls(rows, arr.shape[1])

    @classmethod
    def from_vectors(cls, vectors: Sequence[BitVector]) -> "BitMatrix":
        if not vectors:
            raise DimensionError("no vectors")
        cols = vectors[0].length
        if any(v.length != cols for v in vectors):
            raise DimensionError("ragged rows")
        return cls(tuple(v.bits for v in vectors), cols)

    @classmethod
    def block(cls, blocks: Sequence[Sequence["BitMatrix"]]) -> "BitMatrix":
        """Assemble a matrix from a grid of conforming blocks."""
        out_rows = []
        cols = None
        for brow in blocks:
            height = brow[0].nrows
            if any(b.nrows != height for b in brow):
                raise DimensionError("block heights differ within a block row")
            width = sum(b.cols for b in brow)
            if cols is None:
                cols = width
            elif width != cols:
                raise DimensionError("block rows have different widths")
            for i in range(height):
                acc, shift = 0, 0
                for b in brow:
                    acc |= b.rows[i] << shift
                    shift += b.cols
                out_rows.append(acc)
        return cls(tuple(out_rows), cols or 0)

    # shape / access -----------------------------------------------------
    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not 0 <= j < self.cols:
            raise IndexError(j)
        return (self.rows[i] >> j) & 1

    def row(self, i: int) -> BitVector:
        return BitVector(self.cols, self.rows[i])

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> "BitMatrix":
        mask = _mask(c1 - c0)
        return BitMatrix(tuple((r >> c0) & mask for r in self.rows[r0:r1]), c1 - c0)

    def to_array(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=np.uint8)
        for i, r in enumerate(self.rows):
            for j in range(self.cols):
                out[i, j] = (r >> j) & 1
        return out

    def to_strings(self) -> list[str]:
        return [_bits_to_string(r, self.cols) for r in self.rows]

    def to_text(self) -> str:
        return "\n".join(self.to_strings()) + "\n"

    def __str__(self) -> str:
        return self.to_text().rstrip("\n")

    def weight(self) -> int:
        return sum(r.bit_count() for r in self.rows)

    # algebra ------------------------------------------------------------
    @property
    def T(self) -> "BitMatrix":
        out = [0] * self.cols
        for i, r in enumerate(self.rows):
            j = 0
            while r:
                if r & 1:
                    out[j] |= 1 << i
                r >>= 1
                j += 1
        return BitMatrix(tuple(out), self.nrows)

    def __add__(self, other: "BitMatrix") -> "BitMatrix":
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")
        return BitMatrix(tuple(a ^ b for a, b in zip(self.rows, other.rows)), self.cols)

    __xor__ = __add__

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        return mat_mul(self, other)

    def __pow__(self, k: int) -> "BitMatrix":
        if self.nrows != self.cols:
            raise DimensionError("power of a non-square matrix")
        base = self if k >= 0 else inverse(self)
        k = abs(k)
        out = BitMatrix.identity(self.nrows)
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def is_zero(self) -> bool:
        return not any(self.rows)

    def is_symmetric(self) -> bool:
        return self.nrows == self.cols and self == self.T

    def is_permutation(self) -> bool:
        if self.nrows != self.cols:
            return False
        seen = 0
        for r in self.rows:
            if r.bit_count() != 1 or r & seen:
                return False
            seen |= r
        return True

    def rank(self) -> int:
        return rank(self)

    def inverse(self) -> "BitMatrix":
        return inverse(self)


def mat_mul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    if a.cols != b.nrows:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    brows = b.rows
    return BitMatrix(tuple(_vec_mul(r, brows) for r in a.rows), b.cols)


def _echelon(rows: list[int], ncols: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form in place; pivots are leftmost-nonzero columns,
    taken from the first available row.  Returns (rows, pivot_columns)."""
    pivots = []
    r = 0
    n = len(rows)
    for col in range(ncols):
        bit = 1 << col
        piv = next((i for i in range(r, n) if rows[i] & bit), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        for i in range(n):
            if i != r and rows[i] & bit:
                rows[i] ^= prow
        pivots.append(col)
        r += 1
        if r == n:
            break
    return rows, pivots


def rank(a: BitMatrix) -> int:
    _, pivots = _echelon(list(a.rows), a.cols)
    return len(pivots)


def row_reduce(a: BitMatrix) -> tuple[BitMatrix, list[int]]:
    rows, pivots = _echelon(list(a.rows), a.cols)
    return BitMatrix(tuple(rows), a.cols), pivots


def inverse(a: BitMatrix) -> BitMatrix:
    n = a.nrows
    if n != a.cols:
        raise DimensionError("inverse of a non-square matrix")
    # augmented [a | I], identity part in bits n..2n-1
    rows = [r | (1 << (n + i)) for i, r in enumerate(a.rows)]
    rows, pivots = _echelon(rows, n)
    if len(pivots) < n:
        raise SingularMatrixError("matrix is singular")
    return BitMatrix(tuple(r >> n for r in rows), n)


def kernel(a: BitMatrix) -> list[BitVector]:
    """Basis of the right nullspace {x : a x^T = 0}."""
    rows, pivots = _echelon(list(a.rows), a.cols)
    pivset = set(pivots)
    basis = []
    for free in range(a.cols):
        if free in pivset:
            continue
        x = 1 << free
        for i, pc in enumerate(pivots):
            if (rows[i] >> free) & 1:
                x |= 1 << pc
        basis.append(BitVector(a.cols, x))
    return basis


def left_kernel(a: BitMatrix) -> list[BitVector]:
    """Basis of {x : x a = 0}."""
    if a.nrows == 0:
        return []
    return kernel(a.T)


@dataclass(frozen=True)
class AffineSolution:
    """All solutions ``particular + span(nullspace)``."""

    particular: BitVector
    nullspace: tuple[BitVector, ...]

    def __iter__(self):
        n = len(self.nullspace)
        for mask in range(1 << n):
            x = self.particular.bits
            for j in range(n):
                if (mask >> j) & 1:
                    x ^= self.nullspace[j].bits
            yield BitVector(self.particular.length, x)

    def __len__(self) -> int:
        return 1 << len(self.nullspace)


def solve_affine(a: BitMatrix, y: BitVector) -> AffineSolution:
    """Solve ``x a = y`` for row vectors ``x`` of length ``a.nrows``."""
    if y.length != a.cols:
        raise DimensionError("right-hand side length must equal the column count")
    n = a.nrows
    if n == 0:
        raise DimensionError("empty system")
    # columns of a become equations: a^T x^T = y^T, with y in bit n
    at = a.T
    rows = [r | (((y.bits >> i) & 1) << n) for i, r in enumerate(at.rows)]
    rows, pivots = _echelon(rows, n)
    if any(r == 1 << n for r in rows):
        raise InconsistentSystemError("x a = y has no solution")
    x = 0
    for i, pc in enumerate(pivots):
        if (rows[i] >> n) & 1:
            x |= 1 << pc
    return AffineSolution(BitVector(n, x), tuple(left_kernel(a)))


def rank_brute_force(a: BitMatrix) -> int:
    """Rank from the size of the enumerated row span (small matrices only)."""
    span = {0}
    for r in a.rows:
        span |= {s ^ r for s in span}
    return len(span).bit_length() - 1


def random_bits(n: int, rng: np.random.Generator) -> int:
    return int.from_bytes(rng.bytes((n + 7) // 8), "little") & _mask(n)


def random_matrix(nrows: int, cols: int, rng: np.random.Generator) -> BitMatrix:
    return BitMatrix(tuple(random_bits(cols, rng) for _ in range(nrows)), cols)


def random_invertible(n: int, rng: np.random.Generator) -> BitMatrix:
    while True:
        m = random_matrix(n, n, rng)
        if rank(m) == n:
            return m


def rank_normal_form(a: BitMatrix) -> tuple[BitMatrix, BitMatrix, int]:
    """Invertible ``M1``, ``M2`` and ``r`` with ``M1 a M2 = diag(I_r, 0)`` (square ``a``)."""
    n = a.nrows
    if n != a.cols:
        raise DimensionError("rank normal form implemented for square matrices")
    rows = [r | (1 << (n + i)) for i, r in enumerate(a.rows)]
    rows, pivots = _echelon(rows, n)
    r = len(pivots)
    m1 = BitMatrix(tuple(x >> n for x in rows), n)
    # complete the reduced rows to a basis with unit vectors on free columns
    pivset = set(pivots)
    basis = [x & _mask(n) for x in rows[:r]] + [1 << j for j in range(n) if j not in pivset]
    m2 = inverse(BitMatrix(tuple(basis), n))
    return m1, m2, r
