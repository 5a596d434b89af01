"""Physical circuits for logical Clifford operators on an [[m, m-k]] stabilizer code.

A logical circuit on the ``n = m - k`` protected qubits fixes the images of the
logical Paulis.  Together with ``s -> s`` for the stabilizer generators these are
linear constraints on the physical symplectic matrix.  Completing them with
destabilizers gives one solution ``F0``; the others are ``F0 Z_h`` for
transvections ``Z_h`` with ``h`` in the stabilizer span, one per entry of a
symmetric k x k matrix, so there are exactly ``2^{k(k+1)/2}`` solutions.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .circuit_synth import (CliffordCircuit, Gate, circuit_unitary, conjugate_by_circuit,
                            generator_labels, synthesize)
from .f2linalg import BitMatrix, BitVector, InconsistentSystemError, solve_affine
from .gf2m import make_context
from .pauli import (CommutationError, PauliLabel, check_generators, multiply, realize_dense,
                    symplectic_inner_bits)
from .symplectic import SymplecticMatrix, is_symplectic, omega_matrix, transvection

LOGICAL_DENSE_MAX_M = 8


class InconsistentConstraintsError(ValueError):
    pass


class SignFixError(ValueError):
    pass


@dataclass(frozen=True)
class StabilizerCode:
    m: int
    stabilizers: tuple[PauliLabel, ...]
    logical_x: tuple[PauliLabel, ...]
    logical_z: tuple[PauliLabel, ...]

    def __post_init__(self):
        labels = self.stabilizers + self.logical_x + self.logical_z
        if any(p.m != self.m for p in labels):
            raise ValueError("all generators must act on m qubits")
        if len(self.logical_x) != len(self.logical_z):
            raise ValueError("logical X and Z lists differ in length")
        if self.k + self.n != self.m:
            raise ValueError("need k stabilizers and m - k logical pairs")
        if any(not p.is_hermitian for p in labels):
            raise ValueError("generators must be Hermitian")
        if self.k:
            check_generators(self.stabilizers)
        m = self.m
        ip = lambda p, q: symplectic_inner_bits(p.vector.bits, q.vector.bits, m)
        for s in self.stabilizers:
            if any(ip(s, q) for q in self.logical_x + self.logical_z):
                raise CommutationError("logical operators must commute with the stabilizers")
        for i, x in enumerate(self.logical_x):
            for j, z in enumerate(self.logical_z):
                if ip(x, z) != (i == j):
                    raise CommutationError("logical X_i and Z_j must pair as delta_ij")
            for x2 in self.logical_x[i + 1:]:
                if ip(x, x2):
                    raise CommutationError("logical X operators must commute")
        for i, z in enumerate(self.logical_z):
            for z2 in self.logical_z[i + 1:]:
                if ip(z, z2):
                    raise CommutationError("logical Z operators must commute")

    @property
    def k(self) -> int:
        return len(self.stabilizers)

    @property
    def n(self) -> int:
        return len(self.logical_x)

    def logical_label(self, p: PauliLabel) -> PauliLabel:
        """Physical label of the logical ``i^phase E(a, b) = i^{phase + a.b} X(a) Z(b)``."""
        if p.m != self.n:
            raise ValueError("logical label acts on the wrong number of qubits")
        out = PauliLabel(self.m, 0, 0, p.phase + (p.a & p.b).bit_count())
        for i in range(self.n):
            if (p.a >> i) & 1:
                out = multiply(out, self.logical_x[i])
        for i in range(self.n):
            if (p.b >> i) & 1:
                out = multiply(out, self.logical_z[i])
        return out

    def logical_coordinates(self, v: int) -> int:
        """Packed logical ``[a | b]`` of a physical vector in the normalizer,
        with ``a_i = <v, Z_i>`` and ``b_i = <v, X_i>``."""
        m, n = self.m, self.n
        a = b = 0
        for i in range(n):
            a |= symplectic_inner_bits(v, self.logical_z[i].vector.bits, m) << i
            b |= symplectic_inner_bits(v, self.logical_x[i].vector.bits, m) << i
        return a | (b << n)

    def to_text(self) -> str:
        lines = [f"stabilizer {s}" for s in self.stabilizers]
        lines += [f"logical_x {x}" for x in self.logical_x]
        lines += [f"logical_z {z}" for z in self.logical_z]
        return "\n".join(lines) + "\n"


def parse_code(text: str) -> StabilizerCode:
    """Lines ``stabilizer|logical_x|logical_z <signed E(a|b)>``; ``#`` starts a comment."""
    groups: dict[str, list[PauliLabel]] = {"stabilizer": [], "logical_x": [], "logical_z": []}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 1)
        if len(parts) != 2 or parts[0] not in groups:
            raise ValueError(f"line {lineno}: expected '<stabilizer|logical_x|logical_z> E(a|b)'")
        groups[parts[0]].append(PauliLabel.parse(parts[1]))
    labels = [p for g in groups.values() for p in g]
    if not labels:
        raise ValueError("code file lists no generators")
    return StabilizerCode(labels[0].m, tuple(groups["stabilizer"]),
                          tuple(groups["logical_x"]), tuple(groups["logical_z"]))


def load_code(path: str | os.PathLike) -> StabilizerCode:
    with open(path) as fh:
        return parse_code(fh.read())


def code_642() -> StabilizerCode:
    """The [[6, 4, 2]] code with stabilizers X^6, Z^6."""
    P = PauliLabel.parse
    return StabilizerCode(
        6, (P("E(111111|000000)"), P("E(000000|111111)")),
        tuple(P(f"E({x}|000000)") for x in ("110000", "101000", "100100", "100010")),
        tuple(P(f"E(000000|{z})") for z in ("010001", "001001", "000101", "000011")))


# -- constraints ----------------------------------------------------------------------

def logical_action(circuit: CliffordCircuit) -> list[tuple[PauliLabel, PauliLabel]]:
    """``(P, g P g^dag)`` for P = X_1..X_n, Z_1..Z_n, images with exact phases."""
    return [(p, conjugate_by_circuit(p, circuit)) for p in generator_labels(circuit.m)]


@dataclass(frozen=True)
class LogicalConstraintSet:
    """Required images, in the order X_1..X_n, S_1..S_k, Z_1..Z_n."""

    pairs: tuple[tuple[PauliLabel, PauliLabel], ...]

    def __len__(self) -> int:
        return len(self.pairs)


def logical_constraints(code: StabilizerCode,
                        table: Sequence[tuple[PauliLabel, PauliLabel]]) -> LogicalConstraintSet:
    """Physical constraints from a logical conjugation table, plus ``S_j -> S_j``."""
    n = code.n
    if len(table) != 2 * n:
        raise ValueError("conjugation table must list X_1..X_n, Z_1..Z_n")
    phys = [(code.logical_label(p), code.logical_label(q)) for p, q in table]
    pairs = phys[:n] + [(s, s) for s in code.stabilizers] + phys[n:]
    return LogicalConstraintSet(tuple(pairs))


def _destabilizers(m: int, fixed: Sequence[int], stabs: Sequence[int]) -> list[int]:
    """Vectors d_j with <d_j, s_i> = delta_ij, orthogonal to ``fixed`` and to each other."""
    n2 = 2 * m
    om = omega_matrix(m)
    # columns: Omega-images so that x . column = <x, v>
    cols = [BitVector(n2, v) @ om for v in list(stabs) + list(fixed)]
    A = BitMatrix.from_vectors(cols).T
    out: list[int] = []
    for j in range(len(stabs)):
        y = BitVector(A.cols, 1 << j)
        try:
            out.append(solve_affine(A, y).particular.bits)
        except InconsistentSystemError as exc:
            raise InconsistentConstraintsError("constraints admit no destabilizer") from exc
    for j in range(len(out)):
        for i in range(j):
            if symplectic_inner_bits(out[i], out[j], m):
                out[j] ^= stabs[i]
    return out


def _basis_matrix(m: int, xs, ss, zs, ds) -> BitMatrix:
    return BitMatrix(tuple(list(xs) + list(ss) + list(zs) + list(ds)), 2 * m)


def _symmetric_masks(k: int) -> list[tuple[tuple[int, int], ...]]:
    """All symmetric k x k patterns as upper-triangular entry lists, in counting order."""
    entries = [(j, l) for j in range(k) for l in range(j, k)]
    return [tuple(e for t, e in enumerate(entries) if (mask >> t) & 1)
            for mask in range(1 << len(entries))]


def solve_symplectic(code: StabilizerCode, constraints: LogicalConstraintSet) -> list[SymplecticMatrix]:
    """All 2^{k(k+1)/2} symplectic F meeting the constraints, via stabilizer transvections."""
    m, n, k = code.m, code.n, code.k
    if len(constraints) != 2 * n + k:
        raise ValueError("constraint set does not match the code")
    src = [p.vector.bits for p, _ in constraints.pairs]
    dst = [q.vector.bits for _, q in constraints.pairs]
    for i in range(len(src)):
        for j in range(i + 1, len(src)):
            if symplectic_inner_bits(src[i], src[j], m) != symplectic_inner_bits(dst[i], dst[j], m):
                raise InconsistentConstraintsError("required images do not preserve commutation")
    xs_in, ss_in, zs_in = src[:n], src[n:n + k], src[n + k:]
    xs_out, ss_out, zs_out = dst[:n], dst[n:n + k], dst[n + k:]
    ds_in = _destabilizers(m, xs_in + zs_in, ss_in)
    ds_out = _destabilizers(m, xs_out + zs_out, ss_out)
    B_in = _basis_matrix(m, xs_in, ss_in, zs_in, ds_in)
    B_out = _basis_matrix(m, xs_out, ss_out, zs_out, ds_out)
    if not (is_symplectic(B_in) and is_symplectic(B_out)):
        raise InconsistentConstraintsError("constraints do not extend to a symplectic basis")
    F0 = SymplecticMatrix(m, B_in.inverse() @ B_out)
    solutions = []
    for entries in _symmetric_masks(k):
        F = F0
        diag = [0] * k
        for j, l in entries:
            if j != l:
                F = F @ transvection(BitVector(2 * m, ss_out[j] ^ ss_out[l]))
                diag[j] ^= 1
                diag[l] ^= 1
        want = {j for j, l in entries if j == l}
        for j in range(k):
            if diag[j] != (j in want):
                F = F @ transvection(BitVector(2 * m, ss_out[j]))
        solutions.append(F)
    return solutions


# -- sign fixing and synthesis ----------------------------------------------------------

def sign_violations(circuit: CliffordCircuit, constraints: LogicalConstraintSet) -> list[int]:
    """1 where ``g P g^dag = -target``; raises when a label itself is wrong."""
    out = []
    for p, q in constraints.pairs:
        img = conjugate_by_circuit(p, circuit)
        if (img.a, img.b) != (q.a, q.b) or (img.phase - q.phase) % 2:
            raise InconsistentConstraintsError(f"circuit maps {p} to {img}, expected {q}")
        out.append(((img.phase - q.phase) % 4) // 2)
    return out


def sign_fix_pauli(m: int, constraints: LogicalConstraintSet, violations: Sequence[int]) -> PauliLabel:
    """Minimum-weight E(c) anticommuting exactly with the violated targets."""
    targets = [q.vector for _, q in constraints.pairs]
    om = omega_matrix(m)
    A = BitMatrix.from_vectors([t @ om for t in targets]).T
    y = BitVector(len(targets), sum(v << r for r, v in enumerate(violations)))
    try:
        sols = solve_affine(A, y)
    except InconsistentSystemError as exc:
        raise SignFixError("no Pauli fixes the sign violations") from exc
    mask = (1 << m) - 1
    best = min(sols, key=lambda c: (((c.bits & mask) | (c.bits >> m)).bit_count(),
                                    (c.bits & mask).bit_count() + (c.bits >> m).bit_count(),
                                    c.bits))
    return PauliLabel.from_vector(best, m)


def pauli_gates(p: PauliLabel) -> list[Gate]:
    """X^a Z^b as a Z layer followed by an X layer."""
    zs = tuple(j for j in range(p.m) if (p.b >> j) & 1)
    xs = tuple(j for j in range(p.m) if (p.a >> j) & 1)
    return ([Gate("Z", zs)] if zs else []) + ([Gate("X", xs)] if xs else [])


@dataclass
class LogicalSynthesisResult:
    code: StabilizerCode
    constraints: LogicalConstraintSet
    solutions: list[SymplecticMatrix]
    chosen: int
    symplectic: SymplecticMatrix
    circuit: CliffordCircuit
    correction: PauliLabel
    gate_counts: list[int] = field(default_factory=list)

    @property
    def full_circuit(self) -> CliffordCircuit:
        return CliffordCircuit(self.code.m, tuple(self.circuit.gates) + tuple(pauli_gates(self.correction)))

    def to_json(self) -> dict:
        return {
            "m": self.code.m,
            "k": self.code.k,
            "solutions": len(self.solutions),
            "chosen": self.chosen,
            "gate_counts": self.gate_counts,
            "symplectic": self.symplectic.F.to_strings(),
            "correction": str(self.correction),
            "circuit": self.full_circuit.to_json(),
            "constraints": [[str(p), str(q)] for p, q in self.constraints.pairs],
        }


def synthesize_logical(code: StabilizerCode, logical_circuit: CliffordCircuit) -> LogicalSynthesisResult:
    """Minimum-gate-count physical circuit (first in enumeration order on ties)."""
    if logical_circuit.m != code.n:
        raise ValueError(f"logical circuit acts on {logical_circuit.m} qubits, code protects {code.n}")
    cons = logical_constraints(code, logical_action(logical_circuit))
    sols = solve_symplectic(code, cons)
    best = None
    counts = []
    for idx, F in enumerate(sols):
        circ = synthesize(F)
        fix = sign_fix_pauli(code.m, cons, sign_violations(circ, cons))
        total = circ.gate_count() + sum(g.count for g in pauli_gates(fix))
        counts.append(total)
        if best is None or total < best[0]:
            best = (total, idx, F, circ, fix)
    _, idx, F, circ, fix = best
    return LogicalSynthesisResult(code, cons, sols, idx, F, circ, fix, counts)


# -- verification -----------------------------------------------------------------------

@dataclass
class LogicalVerification:
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def verify_logical_dense(result: LogicalSynthesisResult, atol: float = 1e-9) -> LogicalVerification:
    """Dense check of ``U P U^dag = target`` with signs for every constraint."""
    m = result.code.m
    if m > LOGICAL_DENSE_MAX_M:
        raise ValueError(f"dense verification limited to m <= {LOGICAL_DENSE_MAX_M}")
    U = circuit_unitary(result.full_circuit)
    Ud = U.conj().T
    rep = LogicalVerification()
    for p, q in result.constraints.pairs:
        rep.checked += 1
        if not np.allclose(U @ realize_dense(p) @ Ud, realize_dense(q), atol=atol):
            rep.failures.append(f"{p} -> expected {q}")
    return rep


def verify_logical_labels(result: LogicalSynthesisResult) -> LogicalVerification:
    """Same contract as the dense check, by exact label tracking."""
    rep = LogicalVerification()
    full = result.full_circuit
    for p, q in result.constraints.pairs:
        rep.checked += 1
        if conjugate_by_circuit(p, full) != q:
            rep.failures.append(f"{p} -> expected {q}")
    return rep


# -- Kerdock design on the logical qubits ---------------------------------------------------

@dataclass
class SweepSummary:
    elements: int = 0
    failures: list[str] = field(default_factory=list)
    solution_counts: dict[int, int] = field(default_factory=dict)
    total_gates: int = 0
    images: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"elements": self.elements, "failures": self.failures,
                "solution_counts": {str(k): v for k, v in sorted(self.solution_counts.items())},
                "mean_gate_count": self.total_gates / max(self.elements, 1),
                "passed": self.passed}


def _sweep_chunk(args) -> SweepSummary:
    code_text, m_logical, indices, dense = args
    from .design import psl_element_by_index, kerdock_circuit
    code = parse_code(code_text)
    ctx = make_context(m_logical)
    expected = 1 << (code.k * (code.k + 1) // 2)
    out = SweepSummary()
    mask = (1 << (2 * code.n)) - 1
    for idx in indices:
        e = psl_element_by_index(ctx, idx)
        out.elements += 1
        try:
            res = synthesize_logical(code, kerdock_circuit(e))
        except ValueError as exc:
            out.failures.append(f"{idx}: {exc}")
            continue
        ns = len(res.solutions)
        out.solution_counts[ns] = out.solution_counts.get(ns, 0) + 1
        rep = verify_logical_dense(res) if dense else verify_logical_labels(res)
        if ns != expected or not rep.passed:
            out.failures.append(f"{idx}: solutions={ns} " + "; ".join(rep.failures))
        out.total_gates += res.full_circuit.gate_count()
        # logical image of every nonzero logical vector
        imgs = []
        for v in range(1, mask + 1):
            phys = code.logical_label(PauliLabel.from_vector(v, code.n)).vector.bits
            imgs.append(code.logical_coordinates(res.symplectic.apply(phys)))
        out.images.append(tuple(imgs))
    return out


def logical_design_sweep(code: StabilizerCode, m_logical: int, indices: Sequence[int] | None = None,
                         dense: bool = True, workers: int = 1, chunks: int = 64) -> SweepSummary:
    """Synthesize and verify every listed group element (all of them by default)."""
    if m_logical != code.n:
        raise ValueError("m_logical must equal the number of logical qubits")
    N = 1 << m_logical
    indices = list(range(N ** 3 - N)) if indices is None else list(indices)
    text = code.to_text()
    parts = [indices[i::chunks] for i in range(chunks)]
    parts = [p for p in parts if p]
    jobs = [(text, m_logical, p, dense) for p in parts]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sweep_chunk, jobs))
    else:
        results = [_sweep_chunk(j) for j in jobs]
    total = SweepSummary()
    for r in results:
        total.elements += r.elements
        total.failures += r.failures
        total.total_gates += r.total_gates
        total.images += r.images
        for k, v in r.solution_counts.items():
            total.solution_counts[k] = total.solution_counts.get(k, 0) + v
    total.failures.sort()
    return total


@dataclass
class LogicalMixingReport:
    n: int
    ensemble: int
    multiplicities: dict[int, set[int]]

    @property
    def expected(self) -> int:
        return self.ensemble // ((1 << (2 * self.n)) - 1)

    @property
    def passed(self) -> bool:
        return all(s == {self.expected} for s in self.multiplicities.values())

    def to_json(self) -> dict:
        return {"n": self.n, "ensemble": self.ensemble, "expected_multiplicity": self.expected,
                "multiplicities": sorted({x for s in self.multiplicities.values() for x in s}),
                "passed": self.passed}


def logical_pauli_mixing(n: int, images: Sequence[Sequence[int]]) -> LogicalMixingReport:
    """For each logical vertex, the count of ensemble members sending it to each vertex."""
    arr = np.asarray(images, dtype=np.int64)           # (ensemble, vertices)
    nv = (1 << (2 * n)) - 1
    mult: dict[int, set[int]] = {}
    for v in range(nv):
        counts = np.bincount(arr[:, v], minlength=nv + 1)[1:]
        mult[v + 1] = set(int(c) for c in counts)
    return LogicalMixingReport(n, len(arr), mult)

