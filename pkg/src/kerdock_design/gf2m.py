"""GF(2^m) as binary matrices acting on row vectors.

A field element ``z0 + z1*alpha + ... + z_{m-1}*alpha^{m-1}`` is the row vector
``[z0, ..., z_{m-1}]``, packed with ``z_j`` in bit ``j``.  Multiplication by ``z``
is the matrix ``A_z`` with ``x A_z = x z``; ``W`` is the Gram matrix of the trace
form and ``R`` is the Frobenius (squaring) matrix.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from .f2linalg import BitMatrix, BitVector, inverse, parity

MAX_DEGREE = 32
LOG_TABLE_MAX_DEGREE = 22

# Smallest primitive polynomial of each degree, packed with the coefficient of
# x^j in bit j.  Degree 4 gives x^4 + x + 1.
PRIMITIVE_POLYNOMIALS = {
    1: 0x3, 2: 0x7, 3: 0xB, 4: 0x13, 5: 0x25, 6: 0x43, 7: 0x83, 8: 0x11D,
    9: 0x211, 10: 0x409, 11: 0x805, 12: 0x1053, 13: 0x201B, 14: 0x402B,
    15: 0x8003, 16: 0x1002D, 17: 0x20009, 18: 0x40027, 19: 0x80027,
    20: 0x100009, 21: 0x200005, 22: 0x400003, 23: 0x800021, 24: 0x100001B,
    25: 0x2000009, 26: 0x4000047, 27: 0x8000027, 28: 0x10000009,
    29: 0x20000005, 30: 0x40000053, 31: 0x80000009, 32: 0x1000000AF,
}


class FieldMismatchError(ValueError):
    pass


def poly_to_str(poly: int) -> str:
    terms = []
    for j in range(poly.bit_length() - 1, -1, -1):
        if (poly >> j) & 1:
            terms.append("1" if j == 0 else "x" if j == 1 else f"x^{j}")
    return " + ".join(terms) or "0"


def _factor_distinct(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _polymulmod(a: int, b: int, poly: int, m: int) -> int:
    top = 1 << m
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= poly
    return r


def _powmod(base: int, e: int, poly: int, m: int) -> int:
    r = 1
    while e:
        if e & 1:
            r = _polymulmod(r, base, poly, m)
        base = _polymulmod(base, base, poly, m)
        e >>= 1
    return r


def is_primitive(poly: int, m: int) -> bool:
    """True when ``poly`` has degree ``m`` and x generates the multiplicative group."""
    if poly.bit_length() != m + 1 or not poly & 1:
        return False
    x = 2 % poly if m > 1 else 1
    order = (1 << m) - 1
    if _powmod(x, order, poly, m) != 1:
        return False
    return all(_powmod(x, order // q, poly, m) != 1 for q in _factor_distinct(order))


def smallest_primitive_polynomial(m: int) -> int:
    poly = (1 << m) | 1
    while not is_primitive(poly, m):
        poly += 2
    return poly


@dataclass(frozen=True, eq=False)
class FieldContext:
    """Precomputed matrix structure of GF(2^m) for one primitive polynomial."""

    m: int
    prim_poly: int
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if not 1 <= self.m <= MAX_DEGREE:
            raise ValueError(f"m must lie in [1, {MAX_DEGREE}], got {self.m}")
        if self.prim_poly.bit_length() != self.m + 1:
            raise ValueError("primitive polynomial has the wrong degree")

    @property
    def order(self) -> int:
        return 1 << self.m

    # scalar arithmetic on packed ints --------------------------------------
    def mul(self, x: int, y: int) -> int:
        return _polymulmod(x, y, self.prim_poly, self.m)

    def power(self, x: int, e: int) -> int:
        if x == 0:
            if e < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 1 if e == 0 else 0
        e %= self.order - 1
        return _powmod(x, e, self.prim_poly, self.m)

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("0 has no inverse in GF(2^m)")
        return self.power(x, self.order - 2)

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def square(self, x: int) -> int:
        return self.mul(x, x)

    def frobenius(self, x: int, i: int) -> int:
        """x^(2^i), with negative i meaning repeated square roots."""
        i %= self.m
        for _ in range(i):
            x = self.mul(x, x)
        return x

    def sqrt(self, x: int) -> int:
        return self.frobenius(x, -1)

    def alpha_power(self, k: int) -> int:
        return self.power(2 % self.prim_poly if self.m > 1 else 1, k)

    def trace(self, x: int) -> int:
        t, y = 0, x
        for _ in range(self.m):
            t ^= y
            y = self.mul(y, y)
        if t not in (0, 1):
            raise ArithmeticError("trace left the prime field")
        return t

    # tables ------------------------------------------------------------------
    @cached_property
    def antilog(self) -> list[int]:
        """antilog[k] = alpha^k for k in [0, 2^m - 2]."""
        if self.m > LOG_TABLE_MAX_DEGREE:
            raise ValueError(f"log tables are only built for m <= {LOG_TABLE_MAX_DEGREE}")
        a = 2 % self.prim_poly if self.m > 1 else 1
        out = [1]
        for _ in range(self.order - 2):
            out.append(self.mul(out[-1], a))
        return out

    @cached_property
    def log(self) -> dict[int, int]:
        return {v: k for k, v in enumerate(self.antilog)}

    def element(self, value) -> "FieldElement":
        return FieldElement(self, value if isinstance(value, int) else value.bits)

    def elements(self):
        return (FieldElement(self, v) for v in range(self.order))

    # matrices ----------------------------------------------------------------
    @cached_property
    def A(self) -> BitMatrix:
        """Companion matrix of the primitive polynomial (multiplication by alpha)."""
        return self.mult_matrix(2 % self.prim_poly if self.m > 1 else 1)

    @cached_property
    def W(self) -> BitMatrix:
        m = self.m
        h = [self.trace(self.alpha_power(k)) for k in range(2 * m - 1)]
        return BitMatrix(tuple(sum(h[i + j] << j for j in range(m)) for i in range(m)), m)

    @cached_property
    def W_inv(self) -> BitMatrix:
        return inverse(self.W)

    @cached_property
    def R(self) -> BitMatrix:
        return BitMatrix(tuple(self.alpha_power(2 * i) for i in range(self.m)), self.m)

    @cached_property
    def R_inv(self) -> BitMatrix:
        return inverse(self.R)

    def R_power(self, i: int) -> BitMatrix:
        i %= self.m
        key = ("R", i)
        if key not in self._cache:
            self._cache[key] = BitMatrix(
                tuple(self.frobenius(1 << j, i) for j in range(self.m)), self.m)
        return self._cache[key]

    def mult_matrix(self, z: int) -> BitMatrix:
        """A_z: row j is alpha^j * z."""
        if isinstance(z, FieldElement):
            z = self._check(z)
        rows, x = [], z
        a = 2 % self.prim_poly if self.m > 1 else 1
        for _ in range(self.m):
            rows.append(x)
            x = self.mul(x, a)
        return BitMatrix(tuple(rows), self.m)

    def trace_bilinear(self, x: int, y: int) -> int:
        """x W y^T, which must equal Tr(xy)."""
        return parity((BitVector(self.m, x) @ self.W).bits & y)

    def _check(self, z: "FieldElement") -> int:
        if z.ctx is not self:
            raise FieldMismatchError("element belongs to a different field context")
        return z.value

    def __repr__(self) -> str:
        return f"FieldContext(m={self.m}, p(x)={poly_to_str(self.prim_poly)})"


@lru_cache(maxsize=None)
def make_context(m: int) -> FieldContext:
    if not 1 <= m <= MAX_DEGREE:
        raise ValueError(f"m must lie in [1, {MAX_DEGREE}], got {m}")
    return FieldContext(m, PRIMITIVE_POLYNOMIALS[m])


@dataclass(frozen=True)
class FieldElement:
    ctx: FieldContext
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.ctx.order:
            raise ValueError("field element out of range")

    @property
    def coeffs(self) -> BitVector:
        return BitVector(self.ctx.m, self.value)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx:
                raise FieldMismatchError("elements come from different fields")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        return FieldElement(self.ctx, self.value ^ self._other(other))

    __radd__ = __add__
    __sub__ = __add__

    def __mul__(self, other):
        return FieldElement(self.ctx, self.ctx.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.ctx, self.ctx.div(self.value, self._other(other)))

    def __pow__(self, e: int):
        return FieldElement(self.ctx, self.ctx.power(self.value, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.ctx, self.ctx.inv(self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __str__(self) -> str:
        if self.value == 0:
            return "0"
        if self.ctx.m <= LOG_TABLE_MAX_DEGREE:
            return f"a^{self.ctx.log[self.value]}"
        return hex(self.value)


def mult_matrix(ctx: FieldContext, z) -> BitMatrix:
    return ctx.mult_matrix(z)


def trace(ctx: FieldContext, x) -> int:
    if isinstance(x, FieldElement):
        x = ctx._check(x)
    return ctx.trace(x)


def parse_element(ctx: FieldContext, text: str) -> int:
    """Parse ``0``, ``a^k`` / ``alpha^k`` (powers of the primitive element),
    a hex literal, or a decimal packed-coefficient integer."""
    t = text.strip().lower()
    for prefix in ("alpha^", "a^"):
        if t.startswith(prefix):
            return ctx.alpha_power(int(t[len(prefix):]))
    if t in ("a", "alpha"):
        return ctx.alpha_power(1)
    value = int(t, 0)
    if not 0 <= value < ctx.order:
        raise ValueError(f"{text!r} is not an element of GF(2^{ctx.m})")
    return value


def format_element(ctx: FieldContext, x: int) -> str:
    return str(FieldElement(ctx, x))


@dataclass(frozen=True)
class FieldIdentityReport:
    m: int
    violations: dict[str, int]

    @property
    def passed(self) -> bool:
        return not any(self.violations.values())


def check_field_identities(ctx: FieldContext, W: BitMatrix | None = None) -> FieldIdentityReport:
    """Exhaustively check the field-matrix identities for ``A_z``, ``W``, ``R``.

    ``W`` may be overridden to test the checker itself.
    """
    W = ctx.W if W is None else W
    m, q = ctx.m, ctx.order
    Az = [ctx.mult_matrix(z) for z in range(q)]
    I = BitMatrix.identity(m)
    v = dict.fromkeys(["a_product", "b_sum", "c_symmetric", "d_frobenius", "e_trace_form"], 0)
    for z in range(q):
        if Az[z] @ W != W @ Az[z].T:
            v["c_symmetric"] += 1
        for x in range(q):
            if Az[z] @ Az[x] != Az[ctx.mul(x, z)] or Az[x] @ Az[z] != Az[ctx.mul(x, z)]:
                v["a_product"] += 1
            if Az[x] + Az[z] != Az[x ^ z]:
                v["b_sum"] += 1
    try:
        W_inv = inverse(W)
    except ValueError:
        W_inv = None
        v["e_trace_form"] += 1
    for i in range(m):
        Ri, Rmi = ctx.R_power(i), ctx.R_power(-i)
        if Ri @ Rmi != I:
            v["d_frobenius"] += 1
        for x in range(q):
            # R^i A_x^{2^i} = A_x R^i
            if Ri @ Az[ctx.frobenius(x, i)] != Az[x] @ Ri:
                v["d_frobenius"] += 1
            # R^i A_x^2 = A_x^{2^{1-i}} R^i
            if Ri @ Az[ctx.square(x)] != Az[ctx.frobenius(x, 1 - i)] @ Ri:
                v["d_frobenius"] += 1
            # R^{-i} A_x^{-2} = A_x^{-2^{1+i}} R^{-i}
            if x and Rmi @ Az[ctx.inv(ctx.square(x))] != Az[ctx.inv(ctx.frobenius(x, 1 + i))] @ Rmi:
                v["d_frobenius"] += 1
        if Ri @ W != W @ Rmi.T:
            v["e_trace_form"] += 1
        if W_inv is not None and W_inv @ Rmi @ W != Ri.T:
            v["e_trace_form"] += 1
    return FieldIdentityReport(m, v)
