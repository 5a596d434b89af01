from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path


from kerdock_design.cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, main

DATA = Path(__file__).resolve().parents[1] / "data" / "code_6_4_2.txt"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_wdist_m3(capsys):
    code, out = run(capsys, "kerdock", "wdist", "--m", "3")
    assert code == EXIT_OK
    assert {int(k): v for k, v in json.loads(out).items()} == {0: 1, 6: 112, 8: 30, 10: 112, 16: 1}


def test_design_verify_m2(capsys):
    code, out = run(capsys, "design", "verify", "--m", "2")
    rep = json.loads(out)
    assert code == EXIT_OK
    assert abs(rep["frame_potential"] - 2.0) < 1e-9
    assert rep["passed"]


def test_design_sample_deterministic(capsys):
    _, a = run(capsys, "design", "sample", "--m", "4", "--count", "1", "--seed", "7")
    _, b = run(capsys, "design", "sample", "--m", "4", "--count", "1", "--seed", "7")
    assert a == b
    lines = a.strip().splitlines()
    assert len(lines) == 1
    assert set(json.loads(lines[0])) == {"m", "element", "symplectic", "pauli", "circuit"}


def test_seed_required(capsys):
    assert main(["design", "sample", "--m", "2"]) == EXIT_USAGE


def test_bad_arguments(capsys):
    assert main(["field", "dump", "--m", "0"]) == EXIT_USAGE
    assert main(["logical", "synth", "--code", str(DATA), "--m-logical", "4",
                 "--element", "1,1,1,1"]) == EXIT_USAGE
    assert main(["logical", "synth", "--code", "/nonexistent", "--m-logical", "4",
                 "--element", "1,0,0,1"]) == EXIT_USAGE
    assert main(["circuit", "synth", "--m", "2"]) == EXIT_USAGE
    assert main(["nosuch"]) == EXIT_USAGE


def test_field_dump(capsys):
    code, out = run(capsys, "field", "dump", "--m", "4")
    js = json.loads(out)
    assert code == EXIT_OK
    assert js["prim_poly"] == "0x13"
    assert js["W"] == ["0001", "0010", "0100", "1001"]
    assert js["field_identities"]["passed"]


def test_codeword(capsys):
    code, out = run(capsys, "kerdock", "codeword", "--m", "3", "--z", "0", "--w", "0", "--kappa", "2")
    js = json.loads(out)
    assert js["z4"] == "2" * 8 and js["gray"] == "1" * 16 and js["lee_weight"] == 16


def test_mub_check(capsys):
    code, out = run(capsys, "mub", "check", "--m", "3")
    assert code == EXIT_OK and json.loads(out)["passed"]


def test_circuit_synth_element(capsys):
    code, out = run(capsys, "circuit", "synth", "--m", "4", "--element", "a^3,a^8,a^7,0",
                    "--format", "text", "--verify")
    assert code == EXIT_OK
    assert out.splitlines()[0].split() == ["Permute", "[4,1,2,3]"]


def test_circuit_synth_matrix(capsys, tmp_path):
    f = tmp_path / "F.txt"
    f.write_text("0010\n0101\n1101\n0011\n")
    code, out = run(capsys, "circuit", "synth", "--matrix", str(f), "--verify")
    assert code == EXIT_OK
    assert json.loads(out)["verified"]
    f.write_text("11\n11\n")
    assert main(["circuit", "synth", "--matrix", str(f)]) == EXIT_USAGE


def test_circuit_sweep_csv(capsys):
    code, out = run(capsys, "circuit", "sweep", "--mmax", "4", "--out", "CSV", "--threads", "1")
    rows = out.strip().splitlines()
    assert rows[0].startswith("m,prim_poly,T_worst")
    assert rows[4].split(",")[:4] == ["4", "0x13", "6", "6"]


def test_logical_synth(capsys):
    code, out = run(capsys, "logical", "synth", "--code", str(DATA), "--m-logical", "4",
                    "--element", "a^3,a^8,a^7,0", "--out", "json")
    js = json.loads(out)
    assert code == EXIT_OK
    assert js["solutions"] == 8 and js["verified"]


def test_output_file(tmp_path, capsys):
    out = tmp_path / "w.json"
    assert main(["kerdock", "wdist", "--m", "3", "-o", str(out)]) == EXIT_OK
    assert json.loads(out.read_text())["16"] == 1


def test_verification_failure_exit_code(monkeypatch, capsys):
    import kerdock_design.mub as mub
    orig = mub.check_mubs

    def broken(ctx, dense_eigen_check=None):
        rep = orig(ctx, dense_eigen_check)
        rep.unbiased_failures = 1
        return rep
    monkeypatch.setattr(mub, "check_mubs", broken)
    assert main(["mub", "check", "--m", "2"]) == EXIT_FAILED


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "kerdock_design", "kerdock", "wdist", "--m", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["8"] == 30


def test_threads_env(monkeypatch):
    from kerdock_design.cli import default_threads
    monkeypatch.setenv("KERDOCK_THREADS", "3")
    assert default_threads() == 3
