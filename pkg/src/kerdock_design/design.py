"""The Kerdock symmetry group PSL(2, 2^m) as symplectic matrices, and the
unitary 2-design it generates together with the Pauli group.

Projective points are field elements (packed ints) or ``None`` for infinity.
Point ``z`` stands for the subgroup ``E([I | A_z^2 W])`` and infinity for
``E([0 | I])``.  Symplectic matrices act on the right, so the induced action on
points is a right action: ``act(F1 F2) = act(F2) o act(F1)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .circuit_synth import (CliffordCircuit, Factor, L_factor, T_factor, circuit_unitary,
                            factors_to_circuit, omega_factor, synthesize)
from .f2linalg import BitMatrix, BitVector, inverse
from .gf2m import FieldContext, format_element
from .pauli import PauliLabel, realize_dense
from .symplectic import L, SymplecticMatrix, T, omega

INF = None


class NotInSymmetryGroupError(ValueError):
    pass


@dataclass(frozen=True)
class PSLElement:
    """Moebius map z -> (a z' + b) / (c z' + d) with z' = z^(2^-i) and ad + bc = 1."""

    ctx: FieldContext
    a: int
    b: int
    c: int
    d: int
    i: int = 0

    def __post_init__(self):
        ctx = self.ctx
        for v in (self.a, self.b, self.c, self.d):
            if not 0 <= v < ctx.order:
                raise ValueError("coefficient outside the field")
        if ctx.mul(self.a, self.d) ^ ctx.mul(self.b, self.c) != 1:
            raise ValueError("coefficients violate ad + bc = 1")
        if not 0 <= self.i < ctx.m:
            raise ValueError("Frobenius index must lie in [0, m)")

    def __call__(self, z):
        return mobius(self, z)

    def compose(self, other: "PSLElement") -> "PSLElement":
        """Element acting as ``other`` after ``self`` (i = 0 only)."""
        if self.i or other.i:
            raise ValueError("composition implemented for i = 0")
        ctx, mul = self.ctx, self.ctx.mul
        # matrices act on column (z, 1): other * self
        a = mul(other.a, self.a) ^ mul(other.b, self.c)
        b = mul(other.a, self.b) ^ mul(other.b, self.d)
        c = mul(other.c, self.a) ^ mul(other.d, self.c)
        d = mul(other.c, self.b) ^ mul(other.d, self.d)
        return PSLElement(ctx, a, b, c, d)

    def __str__(self) -> str:
        f = lambda v: format_element(self.ctx, v)
        out = f"(a={f(self.a)}, b={f(self.b)}, c={f(self.c)}, d={f(self.d)}"
        return out + (f", i={self.i})" if self.i else ")")


def mobius(e: PSLElement, z):
    ctx = e.ctx
    if z is INF:
        return INF if e.c == 0 else ctx.div(e.a, e.c)
    zp = ctx.frobenius(z, -e.i)
    den = ctx.mul(e.c, zp) ^ e.d
    if den == 0:
        return INF
    return ctx.div(ctx.mul(e.a, zp) ^ e.b, den)


def group_order(m: int) -> int:
    n = 1 << m
    return (n + 1) * n * (n - 1)


def psl_element_by_index(ctx: FieldContext, k: int) -> PSLElement:
    """Bijection [0, N^3 - N) -> PSL(2, 2^m); the first N(N-1) indices have c = 0."""
    N = ctx.order
    if not 0 <= k < N ** 3 - N:
        raise ValueError("index out of range")
    if k < N * (N - 1):
        a, b = 1 + k // N, k % N
        return PSLElement(ctx, a, b, 0, ctx.inv(a))
    k -= N * (N - 1)
    c, a, d = 1 + k // (N * N), (k // N) % N, k % N
    b = ctx.div(ctx.mul(a, d) ^ 1, c)
    return PSLElement(ctx, a, b, c, d)


def psl_elements(ctx: FieldContext) -> Iterator[PSLElement]:
    for k in range(ctx.order ** 3 - ctx.order):
        yield psl_element_by_index(ctx, k)


# -- symplectic realization -----------------------------------------------------

def _sq(ctx: FieldContext, z: int) -> BitMatrix:
    return ctx.mult_matrix(ctx.square(z))


def enlarged_element(e: PSLElement, i: int | None = None) -> SymplecticMatrix:
    """[[R^-i A_d^2, R^-i A_b^2 W], [W^-1 R^-i A_c^2, (R^i)^T (A_a^2)^T]]."""
    ctx = e.ctx
    i = e.i if i is None else i
    W, Winv = ctx.W, ctx.W_inv
    Rmi = ctx.R_power(-i)
    F = BitMatrix.block([[Rmi @ _sq(ctx, e.d), Rmi @ _sq(ctx, e.b) @ W],
                         [Winv @ Rmi @ _sq(ctx, e.c), ctx.R_power(i).T @ _sq(ctx, e.a).T]])
    return SymplecticMatrix(ctx.m, F)


def psl_to_symplectic(e: PSLElement) -> SymplecticMatrix:
    """tau(e): the block form [[A_d^2, A_b^2 W], [W^-1 A_c^2, (A_a^2)^T]]."""
    if e.i:
        raise ValueError("use enlarged_element for a nonzero Frobenius index")
    return enlarged_element(e, 0)


def kerdock_factors(e: PSLElement) -> list[Factor]:
    """Elementary factors of tau(e), first factor applied first.

    c != 0: T_{A_{d/c}^2 W} L_{A_c^-2} (Omega L_{W^-1}) T_{A_{a/c}^2 W}, with
    Omega L_{W^-1} written as L_W Omega.  c = 0: L_{A_d^2} T_{A_{ab}^2 W}.
    Trivial factors are dropped.
    """
    if e.i:
        raise ValueError("factors implemented for i = 0")
    ctx = e.ctx
    W = ctx.W
    m = ctx.m
    if e.c == 0:
        fs = [L_factor(_sq(ctx, e.d)), T_factor(_sq(ctx, ctx.mul(e.a, e.b)) @ W)]
    else:
        fs = [T_factor(_sq(ctx, ctx.div(e.d, e.c)) @ W),
              L_factor(ctx.mult_matrix(ctx.inv(ctx.square(e.c)))),
              L_factor(W), omega_factor(m),
              T_factor(_sq(ctx, ctx.div(e.a, e.c)) @ W)]
    ident = BitMatrix.identity(m)
    return [f for f in fs
            if not (f.kind == "T" and f.matrix.is_zero()) and not (f.kind == "L" and f.matrix == ident)]


def sample_factors(ctx: FieldContext, alpha: int, beta: int, delta: int) -> list[Factor]:
    """T_{A_alpha W} L_{A_beta} (Omega L_{W^-1}) T_{A_delta W}, beta != 0."""
    if beta == 0:
        raise ValueError("beta must be nonzero")
    W = ctx.W
    fs = [T_factor(ctx.mult_matrix(alpha) @ W), L_factor(ctx.mult_matrix(beta)),
          L_factor(W), omega_factor(ctx.m), T_factor(ctx.mult_matrix(delta) @ W)]
    ident = BitMatrix.identity(ctx.m)
    return [f for f in fs
            if not (f.kind == "T" and f.matrix.is_zero()) and not (f.kind == "L" and f.matrix == ident)]


def factors_product(m: int, factors: Sequence[Factor]) -> SymplecticMatrix:
    F = SymplecticMatrix.identity(m)
    for f in factors:
        F = F @ f.symplectic()
    return F


def kerdock_circuit(e: PSLElement) -> CliffordCircuit:
    if e.i:
        return synthesize(enlarged_element(e))
    return factors_to_circuit(kerdock_factors(e), e.ctx.m)


def generators(ctx: FieldContext, enlarged: bool = False) -> list[SymplecticMatrix]:
    """T_{A_x^2 W}, L_{A_x^-1} (x != 0) and Omega L_{W^-1}; plus L_{R^-i} if enlarged."""
    W = ctx.W
    gens = [T(_sq(ctx, x) @ W) for x in range(1, ctx.order)]
    gens += [L(ctx.mult_matrix(ctx.inv(x))) for x in range(2, ctx.order)]
    gens.append(omega(ctx.m) @ L(ctx.W_inv))
    if enlarged:
        gens += [L(ctx.R_power(-i)) for i in range(1, ctx.m)]
    return gens


def group_closure(gens: Sequence[SymplecticMatrix], limit: int = 10 ** 6) -> set[tuple[int, ...]]:
    """Row tuples of every product of the generators (breadth-first)."""
    m = gens[0].m
    start = SymplecticMatrix.identity(m)
    seen = {start.F.rows}
    frontier = [start]
    while frontier:
        nxt = []
        for F in frontier:
            for g in gens:
                H = F @ g
                if H.F.rows not in seen:
                    seen.add(H.F.rows)
                    nxt.append(H)
                    if len(seen) > limit:
                        raise RuntimeError("closure exceeded the size limit")
        frontier = nxt
    return seen


def group_matrices(ctx: FieldContext, enlarged: bool = False) -> list[SymplecticMatrix]:
    """tau(e) for every element, in index order (times every Frobenius index if enlarged)."""
    W, Winv = ctx.W, ctx.W_inv
    N = ctx.order
    sq = [ctx.mult_matrix(ctx.square(z)) for z in range(N)]
    blocks = {
        "A": sq,
        "BW": [s @ W for s in sq],
        "WC": [Winv @ s for s in sq],
        "AT": [s.T for s in sq],
    }
    out = []
    for i in (range(ctx.m) if enlarged else (0,)):
        Rmi, RiT = ctx.R_power(-i), ctx.R_power(i).T
        for e in psl_elements(ctx):
            if i:
                F = BitMatrix.block([[Rmi @ blocks["A"][e.d], Rmi @ blocks["BW"][e.b]],
                                     [Winv @ Rmi @ sq[e.c], RiT @ blocks["AT"][e.a]]])
            else:
                F = BitMatrix.block([[blocks["A"][e.d], blocks["BW"][e.b]],
                                     [blocks["WC"][e.c], blocks["AT"][e.a]]])
            out.append(SymplecticMatrix._trusted(ctx.m, F))
    return out


# -- action on the projective line ------------------------------------------------

def subgroup_matrix(ctx: FieldContext, z) -> BitMatrix:
    """Generator matrix [I | A_z^2 W], or [0 | I] for infinity."""
    key = ("subgroup", z)
    if key not in ctx._cache:
        m = ctx.m
        if z is INF:
            G = BitMatrix.block([[BitMatrix.zeros(m, m), BitMatrix.identity(m)]])
        else:
            G = BitMatrix.block([[BitMatrix.identity(m), _sq(ctx, z) @ ctx.W]])
        ctx._cache[key] = G
    return ctx._cache[key]


def _kerdock_lookup(ctx: FieldContext) -> dict[tuple[int, ...], int]:
    """Rows of A_z^2 W -> z."""
    key = ("kerdock_lookup",)
    if key not in ctx._cache:
        ctx._cache[key] = {(_sq(ctx, z) @ ctx.W).rows: z for z in range(ctx.order)}
    return ctx._cache[key]


def point_of_subgroup(ctx: FieldContext, G: BitMatrix):
    """Inverse of ``subgroup_matrix`` on row spaces."""
    m = ctx.m
    X = G.submatrix(0, m, 0, m)
    Y = G.submatrix(0, m, m, 2 * m)
    if X.is_zero():
        if Y.rank() != m:
            raise NotInSymmetryGroupError("image is not a maximal isotropic subspace")
        return INF
    try:
        Xinv = inverse(X)
    except ValueError:
        raise NotInSymmetryGroupError("image subgroup is neither Kerdock nor Z_N") from None
    P = Xinv @ Y
    if ctx.m <= 16:
        z = _kerdock_lookup(ctx).get(P.rows)
        if z is None:
            raise NotInSymmetryGroupError("image subgroup is not in the Kerdock set")
        return z
    u = (P @ ctx.W_inv).rows[0]
    if ctx.mult_matrix(u) @ ctx.W != P:
        raise NotInSymmetryGroupError("image subgroup is not in the Kerdock set")
    return ctx.sqrt(u)


def action_on_subgroup(F: SymplecticMatrix, z, ctx: FieldContext):
    return point_of_subgroup(ctx, subgroup_matrix(ctx, z) @ F.F)


def projective_points(ctx: FieldContext) -> list:
    return [INF] + list(range(ctx.order))


# -- sampling -----------------------------------------------------------------------

@dataclass(frozen=True)
class DesignElement:
    element: PSLElement
    symplectic: SymplecticMatrix
    pauli: PauliLabel
    circuit: CliffordCircuit

    def full_circuit(self) -> CliffordCircuit:
        """Clifford part followed by the Pauli D(a, b) as X and Z layers."""
        from .circuit_synth import Gate
        m = self.symplectic.m
        gates = list(self.circuit.gates)
        zs = tuple(j for j in range(m) if (self.pauli.b >> j) & 1)
        xs = tuple(j for j in range(m) if (self.pauli.a >> j) & 1)
        # D(a,b) = X^a Z^b: Z acts first
        if zs:
            gates.append(Gate("Z", zs))
        if xs:
            gates.append(Gate("X", xs))
        return CliffordCircuit(m, tuple(gates))

    def to_json(self) -> dict:
        ctx = self.element.ctx
        e = self.element
        return {
            "m": ctx.m,
            "element": {k: format_element(ctx, getattr(e, k)) for k in "abcd"},
            "symplectic": self.symplectic.F.to_strings(),
            "pauli": str(self.pauli),
            "circuit": self.circuit.to_json(),
        }


def sample_group_element(ctx: FieldContext, rng: np.random.Generator) -> PSLElement:
    N = ctx.order
    return psl_element_by_index(ctx, int(rng.integers(0, N ** 3 - N)))


def sample_design_element(ctx: FieldContext, rng: np.random.Generator) -> DesignElement:
    """Uniform group element times a uniform Pauli D(a, b)."""
    N = ctx.order
    e = sample_group_element(ctx, rng)
    v = int(rng.integers(0, N * N))
    F = psl_to_symplectic(e)
    circ = kerdock_circuit(e)
    return DesignElement(e, F, PauliLabel.from_vector(v, ctx.m), circ)


# -- Heisenberg-Weyl graph ------------------------------------------------------------

def _commutation_matrix(m: int) -> np.ndarray:
    v = np.arange(1, 1 << (2 * m), dtype=np.int64)
    mask = (1 << m) - 1
    a, b = v & mask, v >> m
    x = (a[:, None] & b[None, :]) ^ (b[:, None] & a[None, :])
    par = np.zeros_like(x)
    while x.any():
        par ^= x & 1
        x >>= 1
    return par


@dataclass
class RegularityReport:
    m: int
    n: int
    t: set
    lam: set
    mu: set
    type1_edges: int
    type2_edges: int

    @property
    def expected(self) -> tuple[int, int, int, int]:
        N2 = 1 << (2 * self.m)
        return N2 - 1, N2 // 2 - 2, N2 // 4 - 3, N2 // 4 - 1

    @property
    def expected_edge_types(self) -> tuple[int, int]:
        N = 1 << self.m
        return (N + 1) * (N - 1) * (N - 2) // 2, (N * N - 1) * (N * N // 2 - N) // 2

    @property
    def passed(self) -> bool:
        n, t, lam, mu = self.expected
        return (self.n == n and self.t == {t} and self.lam == {lam} and self.mu == {mu}
                and (self.type1_edges, self.type2_edges) == self.expected_edge_types)

    def to_json(self) -> dict:
        return {"n": self.n, "t": sorted(self.t), "lambda": sorted(self.lam), "mu": sorted(self.mu),
                "type1_edges": self.type1_edges, "type2_edges": self.type2_edges,
                "expected": list(self.expected), "passed": self.passed}


def subgroup_index(ctx: FieldContext) -> np.ndarray:
    """For each nonzero vertex, the index of its maximal commutative subgroup
    (0..N-1 for Kerdock points z, N for Z_N)."""
    m, N = ctx.m, ctx.order
    out = np.full(N * N, -1, dtype=np.int64)
    for z in range(N):
        P = _sq(ctx, z) @ ctx.W
        for a in range(1, N):
            out[a | ((BitVector(m, a) @ P).bits << m)] = z
    for b in range(1, N):
        out[b << m] = N
    return out[1:]


def check_strong_regularity(m: int, ctx: FieldContext | None = None) -> RegularityReport:
    if m > 6:
        raise ValueError("graph check limited to m <= 6")
    from .gf2m import make_context
    ctx = make_context(m) if ctx is None else ctx
    adj = (_commutation_matrix(m) == 0)
    np.fill_diagonal(adj, False)
    A = adj.astype(np.float64)
    common = (A @ A).round().astype(np.int64)
    deg = adj.sum(1)
    off = ~np.eye(len(adj), dtype=bool)
    lam = set(np.unique(common[adj]).tolist())
    mu = set(np.unique(common[~adj & off]).tolist())
    sub = subgroup_index(ctx)
    same = sub[:, None] == sub[None, :]
    type1 = int((adj & same).sum() // 2)
    type2 = int((adj & ~same).sum() // 2)
    return RegularityReport(m, len(adj), set(np.unique(deg).tolist()), lam, mu, type1, type2)


# -- Pauli mixing ---------------------------------------------------------------------

def _images(F: SymplecticMatrix) -> np.ndarray:
    """v F for every v in F2^{2m}, as an int array indexed by v."""
    img = np.zeros(1, dtype=np.int64)
    for r in F.F.rows:
        img = np.concatenate([img, img ^ r])
    return img


@dataclass
class MixingReport:
    m: int
    group_order: int
    multiplicities: set
    edge_orbits: int = 0
    mixed_type_orbits: int = 0

    @property
    def expected_multiplicity(self) -> int:
        return self.group_order // ((1 << (2 * self.m)) - 1)

    @property
    def passed(self) -> bool:
        return self.multiplicities == {self.expected_multiplicity} and self.mixed_type_orbits == 0

    def to_json(self) -> dict:
        return {"group_order": self.group_order, "multiplicities": sorted(self.multiplicities),
                "expected": self.expected_multiplicity, "edge_orbits": self.edge_orbits,
                "mixed_type_orbits": self.mixed_type_orbits, "passed": self.passed}


def check_pauli_mixing(m: int, ctx: FieldContext | None = None, enlarged: bool = False,
                       edges: bool | None = None) -> MixingReport:
    """Orbit multiplicities of every vertex under the group, plus edge-orbit types."""
    if m > 5:
        raise ValueError("mixing check limited to m <= 5")
    from .gf2m import make_context
    ctx = make_context(m) if ctx is None else ctx
    mats = group_matrices(ctx, enlarged)
    n2 = 1 << (2 * m)
    counts = np.zeros(n2 * n2, dtype=np.int64)
    src = np.arange(n2, dtype=np.int64)
    all_images = []
    for F in mats:
        img = _images(F)
        all_images.append(img)
        counts += np.bincount(src * n2 + img, minlength=n2 * n2)
    counts = counts.reshape(n2, n2)[1:, 1:]
    rep = MixingReport(m, len(mats), set(np.unique(counts).tolist()))
    if edges is None:
        edges = m <= 3
    if edges:
        rep.edge_orbits, rep.mixed_type_orbits = _edge_orbits(ctx, np.array(all_images))
    return rep


def _edge_orbits(ctx: FieldContext, images: np.ndarray) -> tuple[int, int]:
    """Number of edge orbits and how many contain both edge types."""
    m = ctx.m
    n2 = 1 << (2 * m)
    sub = np.concatenate([[-1], subgroup_index(ctx)])
    comm = np.zeros((n2, n2), dtype=np.int64)
    comm[1:, 1:] = _commutation_matrix(m)
    seen = np.zeros((n2, n2), dtype=bool)
    orbits = mixed = 0
    for u in range(1, n2):
        for v in range(u + 1, n2):
            if comm[u, v] or seen[u, v]:
                continue
            iu, iv = images[:, u], images[:, v]
            lo, hi = np.minimum(iu, iv), np.maximum(iu, iv)
            seen[lo, hi] = True
            orbits += 1
            types = set((sub[lo] == sub[hi]).tolist())
            mixed += len(types) > 1
    return orbits, mixed


# -- dense lifts, frame potential and twirls -------------------------------------------

def clifford_lift(F: SymplecticMatrix) -> np.ndarray:
    if F.m > 6:
        raise ValueError("dense lifts limited to m <= 6")
    return circuit_unitary(synthesize(F))


def ensemble_unitaries(ctx: FieldContext, enlarged: bool = False) -> np.ndarray:
    """D(a, b) g for every group element g (one fixed lift each) and every Pauli."""
    if ctx.m > 3:
        raise ValueError("dense ensemble limited to m <= 3")
    lifts = []
    for i in (range(ctx.m) if enlarged else (0,)):
        for e in psl_elements(ctx):
            if i:
                e = PSLElement(ctx, e.a, e.b, e.c, e.d, i)
            lifts.append(circuit_unitary(kerdock_circuit(e)))
    paulis = [realize_dense(PauliLabel.from_vector(v, ctx.m)) for v in range(ctx.order ** 2)]
    return np.array([P @ U for U in lifts for P in paulis])


def frame_potential(unitaries: np.ndarray) -> float:
    """(1/|E|^2) sum |Tr(U^dag V)|^4."""
    V = unitaries.reshape(len(unitaries), -1)
    gram = V.conj() @ V.T
    return float(np.mean(np.abs(gram) ** 4))


def count_projectively_distinct(unitaries: np.ndarray, atol: float = 1e-9) -> int:
    N = unitaries.shape[1]
    V = unitaries.reshape(len(unitaries), -1)
    same = np.abs(np.abs(V.conj() @ V.T) - N) < atol
    seen = np.zeros(len(V), dtype=bool)
    count = 0
    for i in range(len(V)):
        if not seen[i]:
            count += 1
            seen |= same[i]
    return count


def swap_operator(N: int) -> np.ndarray:
    S = np.zeros((N * N, N * N))
    for i in range(N):
        for j in range(N):
            S[j * N + i, i * N + j] = 1
    return S


def haar_twirl(X: np.ndarray, N: int) -> np.ndarray:
    """Tr(X P+)/d+ P+ + Tr(X P-)/d- P-, with P+- = (I +- SWAP)/2."""
    S = swap_operator(N)
    I = np.eye(N * N)
    out = np.zeros_like(X, dtype=complex)
    for sign in (1, -1):
        Pr = (I + sign * S) / 2
        d = N * (N + sign) // 2
        if d:
            out += np.trace(X @ Pr) / d * Pr
    return out


def ensemble_twirl(X: np.ndarray, unitaries: np.ndarray) -> np.ndarray:
    UU = np.einsum("kij,kab->kiajb", unitaries, unitaries).reshape(len(unitaries), X.shape[0], X.shape[0])
    return np.mean(UU @ X @ UU.conj().transpose(0, 2, 1), axis=0)


def random_operator(dim: int, rng: np.random.Generator) -> np.ndarray:
    return rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))


def twirl_check(m: int, trials: int, rng: np.random.Generator,
                unitaries: np.ndarray | None = None) -> float:
    """Max entrywise deviation between ensemble and Haar twirls over random X."""
    if m > 2:
        raise ValueError("twirl check limited to m <= 2")
    from .gf2m import make_context
    U = ensemble_unitaries(make_context(m)) if unitaries is None else unitaries
    N = 1 << m
    worst = 0.0
    for _ in range(trials):
        X = random_operator(N * N, rng)
        worst = max(worst, float(np.max(np.abs(ensemble_twirl(X, U) - haar_twirl(X, N)))))
    return worst


@dataclass
class DesignReport:
    m: int
    regularity: RegularityReport | None = None
    mixing: MixingReport | None = None
    frame_potential: float | None = None
    twirl_deviation: float | None = None
    ensemble_size: int | None = None

    @property
    def passed(self) -> bool:
        ok = True
        if self.regularity is not None:
            ok &= self.regularity.passed
        if self.mixing is not None:
            ok &= self.mixing.passed
        if self.frame_potential is not None:
            ok &= abs(self.frame_potential - 2) < 1e-9
        if self.twirl_deviation is not None:
            ok &= self.twirl_deviation < 1e-9
        if self.ensemble_size is not None:
            N = 1 << self.m
            ok &= self.ensemble_size == N ** 5 - N ** 3
        return bool(ok)

    def to_json(self) -> dict:
        out = {"m": self.m}
        if self.regularity is not None:
            out["strong_regularity"] = self.regularity.to_json()
        if self.mixing is not None:
            out["pauli_mixing"] = self.mixing.to_json()
        if self.frame_potential is not None:
            out["frame_potential"] = round(self.frame_potential, 12)
        if self.twirl_deviation is not None:
            out["twirl_max_deviation"] = self.twirl_deviation
        if self.ensemble_size is not None:
            out["ensemble_size"] = self.ensemble_size
        out["passed"] = self.passed
        return out


def verify_design(m: int, rng: np.random.Generator, trials: int = 20) -> DesignReport:
    from .gf2m import make_context
    ctx = make_context(m)
    rep = DesignReport(m)
    if 2 <= m <= 6:
        rep.regularity = check_strong_regularity(m, ctx)
    if m <= 5:
        rep.mixing = check_pauli_mixing(m, ctx)
    if m <= 2:
        U = ensemble_unitaries(ctx)
        rep.frame_potential = frame_potential(U)
        rep.twirl_deviation = twirl_check(m, trials, rng, U)
        rep.ensemble_size = count_projectively_distinct(U)
    return rep
