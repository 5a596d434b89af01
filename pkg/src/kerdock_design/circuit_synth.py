"""Clifford circuits from binary symplectic matrices.

A circuit is an ordered gate list; gate ``g_1`` acts first.  Its symplectic
matrix is ``F_{g_1} F_{g_2} ...`` so that ``U E(v) U^dag = +-E(v F)``.
Qubit indices are 0-based in memory and 1-based in every serialized form.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .f2linalg import BitMatrix, inverse, rank_normal_form
from .pauli import DENSE_MAX_M, PauliLabel, realize_dense
from .symplectic import G, L, NotSymplecticError, SymplecticMatrix, T, is_symplectic, omega

GATE_KINDS = ("H", "P", "CZ", "CNOT", "Permute", "X", "Z")
SINGLE_QUBIT = ("H", "P", "X", "Z")


@dataclass(frozen=True)
class Gate:
    """One listing entry: ``targets`` are qubits for single-qubit kinds, the
    ``(control, target)`` pair for CNOT, the pair for CZ, or ``perm`` for Permute
    where new qubit ``i`` takes the old qubit ``perm[i]``."""

    kind: str
    targets: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate {self.kind!r}")
        object.__setattr__(self, "targets", tuple(int(t) for t in self.targets))
        if self.kind in ("CZ", "CNOT"):
            if len(self.targets) != 2 or self.targets[0] == self.targets[1]:
                raise ValueError(f"{self.kind} needs two distinct qubits")
        elif self.kind == "Permute":
            if sorted(self.targets) != list(range(len(self.targets))):
                raise ValueError("Permute needs a permutation of 0..m-1")
        elif not self.targets or len(set(self.targets)) != len(self.targets):
            raise ValueError(f"{self.kind} needs distinct targets")

    @property
    def count(self) -> int:
        if self.kind in SINGLE_QUBIT:
            return len(self.targets)
        if self.kind == "Permute":
            return int(self.targets != tuple(range(len(self.targets))))
        return 1

    def to_json(self) -> dict:
        return {"gate": self.kind, "targets": [t + 1 for t in self.targets]}

    @classmethod
    def from_json(cls, obj: dict) -> "Gate":
        return cls(obj["gate"], tuple(t - 1 for t in obj["targets"]))


@dataclass(frozen=True)
class CliffordCircuit:
    m: int
    gates: tuple[Gate, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            if g.kind == "Permute":
                if len(g.targets) != self.m:
                    raise ValueError("Permute length differs from qubit count")
            elif any(not 0 <= t < self.m for t in g.targets):
                raise ValueError(f"gate {g} addresses a qubit outside [1, {self.m}]")

    def __add__(self, other: "CliffordCircuit") -> "CliffordCircuit":
        if other.m != self.m:
            raise ValueError("circuits on different qubit counts")
        return CliffordCircuit(self.m, self.gates + other.gates)

    def __len__(self) -> int:
        return len(self.gates)

    def gate_count(self, include_h: bool = True) -> int:
        return sum(g.count for g in self.gates if include_h or g.kind != "H")

    def entry_count(self, include_h: bool = True) -> int:
        """Number of listing lines; a multi-target H or P line counts once."""
        return sum(1 for g in self.gates if (include_h or g.kind != "H") and g.count)

    def counts_by_kind(self) -> dict[str, int]:
        out = dict.fromkeys(GATE_KINDS, 0)
        for g in self.gates:
            out[g.kind] += g.count
        return {k: v for k, v in out.items() if v}

    def to_json(self) -> list[dict]:
        return [g.to_json() for g in self.gates]

    def dumps(self) -> str:
        return json.dumps({"m": self.m, "gates": self.to_json()})

    @classmethod
    def from_json(cls, m: int, gates: Sequence[dict]) -> "CliffordCircuit":
        return cls(m, tuple(Gate.from_json(g) for g in gates))

    def to_text(self) -> str:
        return "".join(f"{g.kind:<8} [{','.join(str(t + 1) for t in g.targets)}]\n"
                       for g in self.gates)

    @classmethod
    def from_text(cls, m: int, text: str) -> "CliffordCircuit":
        gates = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            kind, _, rest = line.partition(" ")
            kind = kind.strip("`'")
            idx = rest.strip().strip("[]")
            gates.append(Gate(kind, tuple(int(t) - 1 for t in idx.split(","))))
        return cls(m, tuple(gates))


# -- symplectic and Pauli action of gates ---------------------------------------

def gate_symplectic(g: Gate, m: int) -> SymplecticMatrix:
    if g.kind == "H":
        return _swap_ab(m, g.targets)
    if g.kind == "P":
        return T(BitMatrix(tuple((1 << i) if i in g.targets else 0 for i in range(m)), m))
    if g.kind == "CZ":
        j, k = g.targets
        rows = [0] * m
        rows[j] |= 1 << k
        rows[k] |= 1 << j
        return T(BitMatrix(tuple(rows), m))
    if g.kind == "CNOT":
        c, t = g.targets
        rows = [1 << i for i in range(m)]
        rows[c] |= 1 << t
        return L(BitMatrix(tuple(rows), m))
    if g.kind == "Permute":
        rows = [0] * m
        for i, p in enumerate(g.targets):
            rows[p] |= 1 << i
        return L(BitMatrix(tuple(rows), m))
    return SymplecticMatrix.identity(m)


def _swap_ab(m: int, qubits: Iterable[int]) -> SymplecticMatrix:
    qs = set(qubits)
    rows = []
    for i in range(2 * m):
        j = i % m
        if j in qs:
            rows.append(1 << (j + m) if i < m else 1 << j)
        else:
            rows.append(1 << i)
    return SymplecticMatrix(m, BitMatrix(tuple(rows), 2 * m))


def circuit_symplectic(c: CliffordCircuit) -> SymplecticMatrix:
    F = SymplecticMatrix.identity(c.m)
    for g in c.gates:
        F = F @ gate_symplectic(g, c.m)
    return F


def conjugate_label(p: PauliLabel, g: Gate) -> PauliLabel:
    """Exact label of ``g p g^dag`` including the phase."""
    a, b, ph = p.a, p.b, p.phase
    if g.kind == "H":
        for j in g.targets:
            aj, bj = (a >> j) & 1, (b >> j) & 1
            ph += 2 * (aj & bj)
            a = (a & ~(1 << j)) | (bj << j)
            b = (b & ~(1 << j)) | (aj << j)
    elif g.kind == "P":
        for j in g.targets:
            aj, bj = (a >> j) & 1, (b >> j) & 1
            ph += 2 * (aj & bj)
            b ^= aj << j
    elif g.kind == "CZ":
        j, k = g.targets
        aj, ak = (a >> j) & 1, (a >> k) & 1
        b2 = b ^ (ak << j) ^ (aj << k)
        ph += (a & b).bit_count() - (a & b2).bit_count() + 2 * (aj & ak)
        b = b2
    elif g.kind in ("CNOT", "Permute"):
        if g.kind == "CNOT":
            c, t = g.targets
            a ^= ((a >> c) & 1) << t
            b ^= ((b >> t) & 1) << c
        else:
            a = sum(((p.a >> src) & 1) << i for i, src in enumerate(g.targets))
            b = sum(((p.b >> src) & 1) << i for i, src in enumerate(g.targets))
        ph += (p.a & p.b).bit_count() - (a & b).bit_count()
    elif g.kind == "X":
        ph += 2 * sum((b >> j) & 1 for j in g.targets)
    elif g.kind == "Z":
        ph += 2 * sum((a >> j) & 1 for j in g.targets)
    return PauliLabel(p.m, a, b, ph)


def conjugate_by_circuit(p: PauliLabel, c: CliffordCircuit) -> PauliLabel:
    for g in c.gates:
        p = conjugate_label(p, g)
    return p


# -- dense realization ----------------------------------------------------------

def apply_gate_dense(g: Gate, psi: np.ndarray, m: int) -> np.ndarray:
    """Apply ``g`` to the rows of ``psi`` (shape (N, ...))."""
    x = np.arange(1 << m)
    out = psi.astype(complex, copy=True)
    if g.kind == "H":
        for j in g.targets:
            lo = x[(x >> j) & 1 == 0]
            hi = lo | (1 << j)
            p0, p1 = out[lo].copy(), out[hi].copy()
            out[lo] = (p0 + p1) / np.sqrt(2)
            out[hi] = (p0 - p1) / np.sqrt(2)
    elif g.kind == "P":
        for j in g.targets:
            out[(x >> j) & 1 == 1] *= 1j
    elif g.kind == "CZ":
        j, k = g.targets
        out[((x >> j) & (x >> k) & 1) == 1] *= -1
    elif g.kind == "Z":
        for j in g.targets:
            out[(x >> j) & 1 == 1] *= -1
    else:
        if g.kind == "X":
            mask = sum(1 << j for j in g.targets)
            dest = x ^ mask
        elif g.kind == "CNOT":
            c, t = g.targets
            dest = x ^ (((x >> c) & 1) << t)
        else:
            dest = np.zeros_like(x)
            for i, p in enumerate(g.targets):
                dest |= ((x >> p) & 1) << i
        new = np.empty_like(out)
        new[dest] = out
        out = new
    return out


def circuit_unitary(c: CliffordCircuit) -> np.ndarray:
    if c.m > DENSE_MAX_M:
        raise ValueError(f"dense unitaries limited to m <= {DENSE_MAX_M}")
    U = np.eye(1 << c.m, dtype=complex)
    for g in c.gates:
        U = apply_gate_dense(g, U, c.m)
    return U


def generator_labels(m: int) -> list[PauliLabel]:
    return ([PauliLabel(m, 1 << i, 0) for i in range(m)]
            + [PauliLabel(m, 0, 1 << i) for i in range(m)])


@dataclass
class ConjugationReport:
    m: int
    checked: int = 0
    wrong_label: int = 0
    wrong_phase: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.wrong_label == 0 and self.wrong_phase == 0


def verify_conjugation(c: CliffordCircuit, F: SymplecticMatrix | None = None,
                       atol: float = 1e-9) -> ConjugationReport:
    """Dense check that ``U E(v) U^dag = +-E(v F)`` for every generator, and that
    the sign equals the one predicted by exact label tracking."""
    F = circuit_symplectic(c) if F is None else F
    U = circuit_unitary(c)
    Ud = U.conj().T
    rep = ConjugationReport(c.m)
    mask = (1 << c.m) - 1
    for p in generator_labels(c.m):
        rep.checked += 1
        img = U @ realize_dense(p) @ Ud
        v = F.apply(p.a | (p.b << c.m))
        target = realize_dense(PauliLabel(c.m, v & mask, v >> c.m))
        if np.allclose(img, target, atol=atol):
            sign = 0
        elif np.allclose(img, -target, atol=atol):
            sign = 2
        else:
            rep.wrong_label += 1
            rep.failures.append(str(p))
            continue
        if conjugate_by_circuit(p, c).phase != sign:
            rep.wrong_phase += 1
            rep.failures.append(str(p))
    return rep


# -- elementary factors -----------------------------------------------------------

@dataclass(frozen=True)
class Factor:
    """One Table-I factor: ``kind`` in {"Omega", "L", "T", "G"}."""

    kind: str
    m: int
    matrix: BitMatrix | None = None
    t: int = 0

    def symplectic(self) -> SymplecticMatrix:
        if self.kind == "Omega":
            return omega(self.m)
        if self.kind == "L":
            return L(self.matrix)
        if self.kind == "T":
            return T(self.matrix)
        return G(self.m, self.t)

    def __str__(self) -> str:
        if self.kind == "Omega":
            return "Omega"
        if self.kind == "G":
            return f"G_{self.t}"
        return f"{self.kind}[" + "/".join(self.matrix.to_strings()) + "]"


def omega_factor(m: int) -> Factor:
    return Factor("Omega", m)


def L_factor(Q: BitMatrix) -> Factor:
    return Factor("L", Q.nrows, Q)


def T_factor(P: BitMatrix) -> Factor:
    return Factor("T", P.nrows, P)


def G_factor(m: int, t: int) -> Factor:
    if t == m:
        return omega_factor(m)
    return Factor("G", m, t=t)


def _is_trivial(f: Factor) -> bool:
    if f.kind == "L":
        return f.matrix == BitMatrix.identity(f.m)
    if f.kind == "T":
        return f.matrix.is_zero()
    if f.kind == "G":
        return f.t == 0
    return False


@dataclass(frozen=True)
class ElementaryFactorization:
    m: int
    factors: tuple[Factor, ...]

    def product(self) -> SymplecticMatrix:
        F = SymplecticMatrix.identity(self.m)
        for f in self.factors:
            F = F @ f.symplectic()
        return F

    def __len__(self) -> int:
        return len(self.factors)

    def __str__(self) -> str:
        return " * ".join(str(f) for f in self.factors) or "I"


def decompose(F: SymplecticMatrix | BitMatrix) -> ElementaryFactorization:
    """Write ``F = L_Q1 T_P1 G_r T_P2 L_Q2`` with trivial factors dropped.

    ``r`` is the rank of the lower-left block ``C``; ``G_m`` is reported as Omega.
    """
    if isinstance(F, BitMatrix):
        if F.nrows % 2 or not is_symplectic(F):
            raise NotSymplecticError("input is not symplectic")
        F = SymplecticMatrix(F.nrows // 2, F)
    m = F.m
    I = BitMatrix.identity(m)
    M1, M2, r = rank_normal_form(F.C)
    X = inverse(M1).T
    F1 = L(X) @ F @ L(M2)                         # lower-left block is diag(I_r, 0)
    D = F1.D
    d11 = D.submatrix(0, r, 0, r)
    d12 = D.submatrix(0, r, r, m)
    S1 = BitMatrix.block([[d11, d12], [d12.T, BitMatrix.zeros(m - r, m - r)]]) if 0 < r < m \
        else (D if r == m else BitMatrix.zeros(m, m))
    F2 = F1 @ T(S1)                               # lower-right block is diag(0, d22)
    d22 = F2.D.submatrix(r, m, r, m)
    Y2 = BitMatrix.block([[I.submatrix(0, r, 0, r), BitMatrix.zeros(r, m - r)],
                          [BitMatrix.zeros(m - r, r), d22.T]]) if 0 < r < m \
        else (I if r == m else d22.T)
    F3 = F2 @ L(Y2)                               # lower half equals that of G_r
    S2 = (F3 @ G(m, r)).B
    # F = L_{X^-1 Y2^-1} T_{Y2 S2 Y2^T} G_r T_{S1} L_{M2^-1}
    Y2inv = inverse(Y2)
    factors = [L_factor(inverse(X) @ Y2inv), T_factor(Y2 @ S2 @ Y2.T), G_factor(m, r),
               T_factor(S1), L_factor(inverse(M2))]
    out = ElementaryFactorization(m, tuple(f for f in factors if not _is_trivial(f)))
    if out.product().F != F.F:
        raise ArithmeticError("decomposition failed to reproduce the input")
    return out


# -- factor to gates --------------------------------------------------------------

def synthesize_L(Q: BitMatrix) -> list[Gate]:
    """Permutation followed by CNOTs realizing ``L_Q``.

    Rows of ``Q`` are reduced column by column, leftmost first, pivoting on the
    first row not yet used as a pivot: a forward pass clears the non-pivot rows,
    then a backward pass clears the rest.  Each row addition is one CNOT.
    """
    m = Q.nrows
    rows = list(Q.rows)
    used = [False] * m
    pivot_of = [0] * m
    ops = []
    for col in range(m):
        bit = 1 << col
        piv = next((i for i in range(m) if not used[i] and rows[i] & bit), None)
        if piv is None:
            raise ValueError("L_Q requires an invertible Q")
        used[piv] = True
        pivot_of[col] = piv
        for i in range(m):
            if not used[i] and rows[i] & bit:
                rows[i] ^= rows[piv]
                ops.append((piv, i))
    for col in reversed(range(m)):
        piv = pivot_of[col]
        for i in range(m):
            if i != piv and rows[i] >> col & 1:
                rows[i] ^= rows[piv]
                ops.append((piv, i))
    # E_k ... E_1 Q = Pi with Pi[pivot_of[j], j] = 1, so Q = Pi E'_1 ... E'_k where
    # E'_i is E_i with qubits relabelled through Pi.
    col_of = [0] * m
    for j, r in enumerate(pivot_of):
        col_of[r] = j
    gates = []
    if pivot_of != list(range(m)):
        gates.append(Gate("Permute", tuple(pivot_of)))
    gates.extend(Gate("CNOT", (col_of[t], col_of[c])) for c, t in ops)
    return gates


def synthesize_T(P: BitMatrix) -> list[Gate]:
    m = P.nrows
    diag = tuple(j for j in range(m) if P[j, j])
    gates = [Gate("P", diag)] if diag else []
    gates.extend(Gate("CZ", (j, k)) for j in range(m) for k in range(j + 1, m) if P[j, k])
    return gates


def factor_to_gates(f: Factor) -> CliffordCircuit:
    if f.kind == "Omega":
        gates = [Gate("H", tuple(range(f.m)))]
    elif f.kind == "G":
        gates = [Gate("H", tuple(range(f.t)))] if f.t else []
    elif f.kind == "L":
        gates = synthesize_L(f.matrix)
    else:
        gates = synthesize_T(f.matrix)
    return CliffordCircuit(f.m, tuple(gates))


def factors_to_circuit(fz: ElementaryFactorization | Sequence[Factor], m: int | None = None) -> CliffordCircuit:
    factors = fz.factors if isinstance(fz, ElementaryFactorization) else tuple(fz)
    m = fz.m if isinstance(fz, ElementaryFactorization) else (m if m is not None else factors[0].m)
    out = CliffordCircuit(m)
    for f in factors:
        out = out + factor_to_gates(f)
    return out


def synthesize(F: SymplecticMatrix | BitMatrix) -> CliffordCircuit:
    return factors_to_circuit(decompose(F))


def T_gate_count(P: BitMatrix) -> int:
    """Phase gates plus CZ gates: diagonal ones plus strictly-upper ones."""
    return sum((r >> j).bit_count() for j, r in enumerate(P.rows))


def T_entry_count(P: BitMatrix) -> int:
    """Listing lines for ``T_P``: one P line if the diagonal is nonzero, one per CZ."""
    diag = any((r >> j) & 1 for j, r in enumerate(P.rows))
    return int(diag) + sum((r >> (j + 1)).bit_count() for j, r in enumerate(P.rows))


def L_gate_count(Q: BitMatrix) -> int:
    return sum(g.count for g in synthesize_L(Q))


# -- worst-case gate complexity of the Kerdock generators ------------------------

# Published worst-case counts for m = 1..16, reproduced for comparison.
REFERENCE_T = (1, 2, 4, 6, 9, 14, 18, 25, 29, 37, 46, 57, 67, 78, 90, 103)
REFERENCE_L_A = (0, 2, 6, 11, 14, 24, 28, 42, 51, 64, 85, 93, 117, 127, 161, 177)
REFERENCE_L_W_INV = (0, 2, 1, 3, 14, 3, 5, 31, 26, 15, 47, 63, 77, 33, 1, 53)


@dataclass(frozen=True)
class SweepRow:
    m: int
    prim_poly: int
    T_worst: int
    T_worst_gates: int
    L_A_worst: int
    L_W_inv: int
    W_is_permutation: bool

    def reference(self) -> tuple[int | None, int | None, int | None]:
        if 1 <= self.m <= len(REFERENCE_T):
            i = self.m - 1
            return REFERENCE_T[i], REFERENCE_L_A[i], REFERENCE_L_W_INV[i]
        return None, None, None


SWEEP_HEADER = ("m", "prim_poly", "T_worst", "T_worst_ref", "T_worst_gates",
                "L_A_worst", "L_A_worst_ref", "L_W_inv", "L_W_inv_ref", "W_is_permutation")


def sweep_row(m: int, ctx=None, include_L_A: bool = True) -> SweepRow:
    """Worst case over alpha of T_{A_alpha W}, over beta != 0 of L_{A_beta}, and L_{W^-1}.

    ``T_worst`` counts listing lines (the form used by the reference counts);
    ``T_worst_gates`` counts individual P and CZ gates.  H layers are excluded.
    """
    from .gf2m import make_context
    ctx = make_context(m) if ctx is None else ctx
    W = ctx.W
    t_entries = t_gates = 0
    l_worst = -1
    for z in range(ctx.order):
        Az = ctx.mult_matrix(z)
        P = Az @ W
        t_entries = max(t_entries, T_entry_count(P))
        t_gates = max(t_gates, T_gate_count(P))
        if include_L_A and z:
            l_worst = max(l_worst, L_gate_count(Az))
    return SweepRow(m, ctx.prim_poly, t_entries, t_gates, l_worst,
                    L_gate_count(ctx.W_inv), W.is_permutation())


def gate_complexity_sweep(m_max: int, m_min: int = 1, include_L_A: bool = True,
                          workers: int = 1) -> list[SweepRow]:
    if not 1 <= m_min <= m_max <= 32:
        raise ValueError("need 1 <= m_min <= m_max <= 32")
    ms = list(range(m_min, m_max + 1))
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor
        from functools import partial
        with ProcessPoolExecutor(workers) as pool:
            return list(pool.map(partial(sweep_row, include_L_A=include_L_A), ms))
    return [sweep_row(m, include_L_A=include_L_A) for m in ms]


def sweep_csv_rows(rows: Sequence[SweepRow]) -> list[list]:
    out = []
    for r in rows:
        t_ref, l_ref, w_ref = r.reference()
        out.append([r.m, hex(r.prim_poly), r.T_worst, "" if t_ref is None else t_ref,
                    r.T_worst_gates, "" if r.L_A_worst < 0 else r.L_A_worst,
                    "" if l_ref is None else l_ref, r.L_W_inv, "" if w_ref is None else w_ref,
                    int(r.W_is_permutation)])
    return out
