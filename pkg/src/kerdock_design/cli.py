"""Command-line entry point: ``kerdock-design <group> <command> [options]``.

Exit status: 0 success, 1 a verification failed, 2 invalid arguments.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Sequence

import numpy as np

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
THREADS_ENV = "KERDOCK_THREADS"


class UsageError(Exception):
    pass


def default_threads() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


# -- helpers ------------------------------------------------------------------------

def _context(m: int):
    from .gf2m import make_context
    if not 1 <= m <= 32:
        raise UsageError("--m must lie in [1, 32]")
    return make_context(m)


def _parse_psl(ctx, text: str):
    from .design import PSLElement
    from .gf2m import parse_element
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) not in (4, 5):
        raise UsageError("--element expects a,b,c,d[,i]")
    a, b, c, d = (parse_element(ctx, p) for p in parts[:4])
    i = int(parts[4]) if len(parts) == 5 else 0
    try:
        return PSLElement(ctx, a, b, c, d, i)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _emit(args, text: str) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _status(passed: bool) -> int:
    return EXIT_OK if passed else EXIT_FAILED


# -- field ----------------------------------------------------------------------------

def cmd_field_dump(args) -> int:
    from .gf2m import check_field_identities, poly_to_str
    ctx = _context(args.m)
    report = check_field_identities(ctx) if ctx.m <= 8 else None
    out = {
        "m": ctx.m,
        "prim_poly": hex(ctx.prim_poly),
        "prim_poly_str": poly_to_str(ctx.prim_poly),
        "A": ctx.A.to_strings(),
        "W": ctx.W.to_strings(),
        "W_inv": ctx.W_inv.to_strings(),
        "R": ctx.R.to_strings(),
        "R_inv": ctx.R_inv.to_strings(),
    }
    if report is not None:
        out["field_identities"] = {"violations": report.violations, "passed": report.passed}
    if args.format == "text":
        lines = [f"m = {ctx.m}", f"p(x) = {out['prim_poly_str']}"]
        for key in ("A", "W", "W_inv", "R", "R_inv"):
            lines += [f"{key}:"] + out[key]
        if report is not None:
            lines.append(f"field identities passed: {report.passed}")
        _emit(args, "\n".join(lines) + "\n")
    else:
        _emit(args, _dump_json(out))
    return _status(report is None or report.passed)


# -- kerdock ----------------------------------------------------------------------------

def cmd_kerdock_wdist(args) -> int:
    from .kerdock_codes import closed_form_distribution, weight_distribution
    ctx = _context(args.m)
    try:
        wd = weight_distribution(ctx, args.r)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(args, json.dumps(wd.to_json()) + "\n")
    if args.r == 0 and ctx.m % 2 == 1:
        return _status(wd.counts == closed_form_distribution(ctx.m))
    return _status(wd.is_symmetric())


def cmd_kerdock_codeword(args) -> int:
    from .gf2m import parse_element
    from .kerdock_codes import DGMatrixSet, codeword, gray_map, lee_weight
    ctx = _context(args.m)
    z = tuple(parse_element(ctx, t) for t in args.z.split(","))
    try:
        P = DGMatrixSet(ctx, len(z) - 1)[z]
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    w = int(args.w, 0)
    if not 0 <= w < ctx.order:
        raise UsageError("--w must be an m-bit vector")
    c = codeword(ctx, P, w, args.kappa)
    out = {"m": ctx.m, "P": P.to_strings(), "w": w, "kappa": args.kappa % 4,
           "z4": "".join(str(int(v)) for v in c.entries),
           "gray": str(gray_map(c)), "lee_weight": lee_weight(c)}
    _emit(args, _dump_json(out))
    return EXIT_OK


# -- mub -------------------------------------------------------------------------------

def cmd_mub_check(args) -> int:
    from .mub import MUB_MAX_M, check_mubs
    if args.m > MUB_MAX_M:
        raise UsageError(f"--m must be <= {MUB_MAX_M}")
    rep = check_mubs(_context(args.m))
    _emit(args, _dump_json(rep.to_json()))
    return _status(rep.passed)


# -- design ------------------------------------------------------------------------------

def cmd_design_sample(args) -> int:
    from .design import sample_design_element
    ctx = _context(args.m)
    if args.count < 1:
        raise UsageError("--count must be positive")
    rng = np.random.default_rng(args.seed)
    samples = [sample_design_element(ctx, rng) for _ in range(args.count)]
    if args.format == "text":
        chunks = []
        for s in samples:
            chunks.append(f"# element {s.element} pauli {s.pauli}\n" + s.full_circuit().to_text())
        _emit(args, "\n".join(chunks))
    else:
        _emit(args, "".join(json.dumps(s.to_json(), separators=(",", ":")) + "\n" for s in samples))
    return EXIT_OK


def cmd_design_verify(args) -> int:
    from .design import verify_design
    if not 1 <= args.m <= 5:
        raise UsageError("--m must lie in [1, 5]")
    rep = verify_design(args.m, np.random.default_rng(args.seed), trials=args.trials)
    _emit(args, _dump_json(rep.to_json()))
    return _status(rep.passed)


# -- circuit ---------------------------------------------------------------------------------

def cmd_circuit_synth(args) -> int:
    from .circuit_synth import decompose, factors_to_circuit, verify_conjugation
    from .design import enlarged_element, kerdock_circuit
    from .f2linalg import BitMatrix
    from .symplectic import NotSymplecticError, SymplecticMatrix
    if (args.element is None) == (args.matrix is None):
        raise UsageError("give exactly one of --element or --matrix")
    if args.element is not None:
        if args.m is None:
            raise UsageError("--element requires --m")
        ctx = _context(args.m)
        e = _parse_psl(ctx, args.element)
        F = enlarged_element(e)
        circ = kerdock_circuit(e)
        factors = None
    else:
        with open(args.matrix) as fh:
            M = BitMatrix.from_text(fh.read())
        if M.nrows != M.cols or M.nrows % 2:
            raise UsageError("matrix must be square with even size")
        if args.m is not None and M.nrows != 2 * args.m:
            raise UsageError(f"matrix has {M.nrows} rows, expected 2m = {2 * args.m}")
        try:
            F = SymplecticMatrix(M.nrows // 2, M)
        except NotSymplecticError as exc:
            raise UsageError(str(exc)) from exc
        fz = decompose(F)
        circ = factors_to_circuit(fz)
        factors = [str(f) for f in fz.factors]
    passed = True
    report = None
    if args.verify:
        if F.m > 8:
            raise UsageError("--verify supports m <= 8")
        report = verify_conjugation(circ, F)
        passed = report.passed
    if args.format == "text":
        _emit(args, circ.to_text())
    else:
        out = {"m": F.m, "symplectic": F.F.to_strings(), "circuit": circ.to_json(),
               "gate_count": circ.gate_count(), "counts_by_kind": circ.counts_by_kind()}
        if factors is not None:
            out["factors"] = factors
        if report is not None:
            out["verified"] = report.passed
        _emit(args, _dump_json(out))
    return _status(passed)


def cmd_circuit_sweep(args) -> int:
    from .circuit_synth import SWEEP_HEADER, gate_complexity_sweep, sweep_csv_rows
    try:
        rows = gate_complexity_sweep(args.m_max, args.m_min, include_L_A=not args.skip_la,
                                     workers=args.threads)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.format == "json":
        out = [dict(zip(SWEEP_HEADER, r)) for r in sweep_csv_rows(rows)]
        _emit(args, _dump_json(out))
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(SWEEP_HEADER)
        w.writerows(sweep_csv_rows(rows))
        _emit(args, buf.getvalue())
    return EXIT_OK


# -- logical -----------------------------------------------------------------------------------

def _load_code(path: str):
    from .logical_synth import load_code
    try:
        return load_code(path)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot load code file: {exc}") from exc


def cmd_logical_synth(args) -> int:
    from .design import kerdock_circuit
    from .logical_synth import LOGICAL_DENSE_MAX_M, synthesize_logical, verify_logical_dense, verify_logical_labels
    code = _load_code(args.code)
    if args.m_logical != code.n:
        raise UsageError(f"--m-logical {args.m_logical} but the code protects {code.n} qubits")
    ctx = _context(args.m_logical)
    e = _parse_psl(ctx, args.element)
    res = synthesize_logical(code, kerdock_circuit(e))
    rep = verify_logical_dense(res) if code.m <= LOGICAL_DENSE_MAX_M else verify_logical_labels(res)
    if args.format == "text":
        _emit(args, res.full_circuit.to_text())
    else:
        out = res.to_json()
        out["element"] = str(e)
        out["verified"] = rep.passed
        _emit(args, _dump_json(out))
    return _status(rep.passed)


def cmd_logical_sweep(args) -> int:
    from .logical_synth import logical_design_sweep, logical_pauli_mixing
    code = _load_code(args.code)
    if args.m_logical != code.n:
        raise UsageError(f"--m-logical {args.m_logical} but the code protects {code.n} qubits")
    summary = logical_design_sweep(code, args.m_logical, dense=not args.labels_only,
                                   workers=args.threads)
    mixing = logical_pauli_mixing(code.n, summary.images)
    out = summary.to_json()
    out["logical_pauli_mixing"] = mixing.to_json()
    out["passed"] = summary.passed and mixing.passed
    _emit(args, _dump_json(out))
    return _status(out["passed"])


# -- parser ---------------------------------------------------------------------------------------

def _common(p: argparse.ArgumentParser, formats: Sequence[str]) -> None:
    p.add_argument("--format", "--out", dest="format", type=str.lower, choices=formats,
                   default=formats[0])
    p.add_argument("-o", "--output", help="write to this path instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kerdock-design",
                                     description="Kerdock codes, MUBs and the Kerdock unitary 2-design")
    groups = parser.add_subparsers(dest="group", required=True)

    field = groups.add_parser("field").add_subparsers(dest="command", required=True)
    p = field.add_parser("dump", help="field matrices A, W, R and identity checks")
    p.add_argument("--m", type=int, required=True)
    _common(p, ("json", "text"))
    p.set_defaults(func=cmd_field_dump)

    kerdock = groups.add_parser("kerdock").add_subparsers(dest="command", required=True)
    p = kerdock.add_parser("wdist", help="brute-force Lee/Hamming weight distribution")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=int, default=0)
    _common(p, ("json",))
    p.set_defaults(func=cmd_kerdock_wdist)
    p = kerdock.add_parser("codeword", help="one Z4 codeword and its Gray image")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--z", required=True, help="z0[,z1,...] field elements selecting P")
    p.add_argument("--w", default="0", help="linear part as an integer")
    p.add_argument("--kappa", type=int, default=0)
    _common(p, ("json",))
    p.set_defaults(func=cmd_kerdock_codeword)

    mub = groups.add_parser("mub").add_subparsers(dest="command", required=True)
    p = mub.add_parser("check", help="orthonormality, unbiasedness and partition checks")
    p.add_argument("--m", type=int, required=True)
    _common(p, ("json",))
    p.set_defaults(func=cmd_mub_check)

    design = groups.add_parser("design").add_subparsers(dest="command", required=True)
    p = design.add_parser("sample", help="uniform elements of the design as circuits")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, required=True)
    _common(p, ("jsonl", "text"))
    p.set_defaults(func=cmd_design_sample)
    p = design.add_parser("verify", help="regularity, mixing, frame potential and twirl checks")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seed", type=int, default=0, help="seed for the random twirl test operators")
    p.add_argument("--trials", type=int, default=20)
    _common(p, ("json",))
    p.set_defaults(func=cmd_design_verify)

    circuit = groups.add_parser("circuit").add_subparsers(dest="command", required=True)
    p = circuit.add_parser("synth", help="Clifford circuit for a group element or symplectic matrix")
    p.add_argument("--m", type=int)
    p.add_argument("--element", help="a,b,c,d[,i] with ad + bc = 1")
    p.add_argument("--matrix", help="file with 2m rows of 0/1 strings")
    p.add_argument("--verify", action="store_true", help="dense conjugation check")
    _common(p, ("json", "text"))
    p.set_defaults(func=cmd_circuit_synth)
    p = circuit.add_parser("sweep", help="worst-case gate counts per m as CSV")
    p.add_argument("--m-max", "--mmax", dest="m_max", type=int, default=16)
    p.add_argument("--m-min", "--mmin", dest="m_min", type=int, default=1)
    p.add_argument("--skip-la", action="store_true", help="omit the L_{A_beta} column")
    p.add_argument("--threads", type=int, default=default_threads())
    _common(p, ("csv", "json"))
    p.set_defaults(func=cmd_circuit_sweep)

    logical = groups.add_parser("logical").add_subparsers(dest="command", required=True)
    p = logical.add_parser("synth", help="physical circuit for one group element on a code")
    p.add_argument("--code", required=True)
    p.add_argument("--m-logical", type=int, required=True)
    p.add_argument("--element", required=True, help="a,b,c,d[,i] with ad + bc = 1")
    _common(p, ("json", "text"))
    p.set_defaults(func=cmd_logical_synth)
    p = logical.add_parser("sweep", help="synthesize and verify every group element")
    p.add_argument("--code", required=True)
    p.add_argument("--m-logical", type=int, required=True)
    p.add_argument("--labels-only", action="store_true", help="skip dense verification")
    p.add_argument("--threads", type=int, default=default_threads())
    _common(p, ("json",))
    p.set_defaults(func=cmd_logical_sweep)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "threads", 1) < 1:
        print("error: --threads must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
