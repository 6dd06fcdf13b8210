import json
import subprocess
import sys

import pytest

from braidrep.cli import EXIT_MATH, EXIT_OK, EXIT_USAGE, main
from braidrep.rep import build_phi_m
from braidrep.serialize import representation_to_json


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def qfile(tmp_path):
    p = tmp_path / "q.json"
    p.write_text(json.dumps({"0,0": "1", "0,1": "t", "1,0": "1", "1,1": "1"}))
    return str(p)


def test_build_json_phi_5_3(capsys):
    code, out, _ = run(capsys, "build", "--n", "5", "--m", "3", "--format", "json")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert len(doc["basis"]) == 10 and len(doc["generators"]) == 4
    assert doc["relations"]["passed"] and doc["relations"]["failures"] == []


def test_build_explicit_seed(capsys, qfile):
    code, out, _ = run(capsys, "build", "--seed", "1,0,0", "--qtable", qfile)
    assert code == EXIT_OK
    assert "dim = 3" in out and "all" in out


def test_build_csv(capsys):
    code, out, _ = run(capsys, "build", "--n", "3", "--m", "1", "--format", "csv")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "# tau_1"
    assert out.count("# tau_") == 2


def test_round_trip_via_file(capsys, tmp_path):
    path = tmp_path / "rep.json"
    assert main(["build", "--n", "5", "--m", "2", "--format", "json", "--out", str(path)]) == EXIT_OK
    code, out, _ = run(capsys, "build", "--load", str(path), "--format", "json")
    assert code == EXIT_OK
    first = json.loads(path.read_text())
    assert json.loads(out) == first


def test_corrupted_generators_exit_2(capsys, tmp_path):
    doc = representation_to_json(build_phi_m(4, 2))
    doc["generators"][1]["perm"][0], doc["generators"][1]["perm"][1] = (
        doc["generators"][1]["perm"][1], doc["generators"][1]["perm"][0])
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "build", "--load", str(path), "--format", "json")
    assert code == EXIT_MATH
    failures = json.loads(out)["relations"]["failures"]
    assert failures and all("witness" in f for f in failures)


def test_no_verify_skips_relations(capsys, tmp_path):
    doc = representation_to_json(build_phi_m(4, 2))
    doc["generators"][0]["scale"][0] = "t^5"
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, _, _ = run(capsys, "build", "--load", str(path), "--no-verify")
    assert code == EXIT_OK


@pytest.mark.parametrize("argv", [
    ["build"],
    ["build", "--n", "5"],
    ["build", "--n", "5", "--m", "3", "--seed", "1,0"],
    ["build", "--seed", "1,0,0"],
    ["build", "--n", "5", "--m", "7"],
    ["build", "--load", "/nonexistent/rep.json"],
    ["build", "--n", "4", "--m", "2", "--golden-check"],
    ["analyze", "--n", "4", "--m", "2", "--t", "2.5"],
    ["word", "--n", "3", "--m", "1", "1 5"],
    ["word", "--n", "3", "--m", "1", "0"],
    ["sweep", "--n", "2"],
    ["frobnicate"],
])
def test_usage_errors_exit_1(capsys, argv):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    _, err = capsys.readouterr()
    assert code == EXIT_USAGE
    assert "error" in err


def test_zero_qtable_entry_rejected(capsys, tmp_path):
    p = tmp_path / "q.json"
    p.write_text(json.dumps({"0,1": "0", "1,0": "1", "0,0": "1", "1,1": "1"}))
    code, _, err = run(capsys, "build", "--seed", "1,0,0", "--qtable", str(p))
    assert code == EXIT_USAGE
    assert "(0, 1)" in err or "0,1" in err


def test_missing_qtable_entry_rejected(capsys, tmp_path):
    p = tmp_path / "q.json"
    p.write_text(json.dumps({"0,1": "t"}))
    code, _, err = run(capsys, "build", "--seed", "1,0,0", "--qtable", str(p))
    assert code == EXIT_USAGE


def test_word_parse_error_has_position(capsys):
    code, _, err = run(capsys, "word", "--n", "3", "--m", "1", "1 2 x")
    assert code == EXIT_USAGE
    assert "position" in err


def test_word_identity(capsys):
    code, out, _ = run(capsys, "word", "--n", "5", "--m", "3", "1 2 1 -2 -1 -2")
    assert code == EXIT_OK
    assert "result: identity" in out


def test_word_evaluated_at_t(capsys):
    code, out, _ = run(capsys, "word", "--n", "5", "--m", "3", "1", "--t", "2", "--format", "json", "--dense")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["t"] == "2"
    rep = build_phi_m(5, 3)
    expected = [[str(v) for v in row] for row in rep.generator(1).specialize(2).to_dense().rows()]
    assert doc["dense"] == expected
    assert set(doc["scale"]) == {"1", "2"}


def test_word_two_generators(capsys):
    code, out, _ = run(capsys, "word", "--n", "3", "--m", "1", "1 2", "--format", "json")
    doc = json.loads(out)
    # tau_1 tau_2 on (0,0,1),(0,1,0),(1,0,0): hand-composed
    assert doc["perm"] == [2, 0, 1]
    assert doc["scale"] == ["t^2", "t", "t"]


def test_analyze_5_3(capsys):
    code, out, _ = run(capsys, "analyze", "--n", "5", "--m", "3")
    assert code == EXIT_OK
    assert "verdict: irreducible" in out
    assert "corank 6 = closed-form 6" in out


def test_analyze_balanced_reports_witness(capsys):
    code, out, _ = run(capsys, "analyze", "--n", "4", "--m", "2", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["verdict"] == "reducible" and doc["commutant_dim"] == 2
    assert doc["witness"]["kind"] == "complement_symmetric"


def test_analyze_m1_standard_note(capsys):
    code, out, _ = run(capsys, "analyze", "--n", "6", "--m", "1")
    assert code == EXIT_OK
    assert "corank 2" in out
    assert "intertwiner with the standard representation: pass" in out


def test_golden_check(capsys):
    code, out, _ = run(capsys, "golden-check")
    assert code == EXIT_OK and "match" in out
    code, out, _ = run(capsys, "build", "--n", "5", "--m", "3", "--golden-check", "--format", "json")
    assert code == EXIT_OK and json.loads(out)["golden_check"]["passed"]


def test_golden_mismatch_exit_2(capsys, monkeypatch):
    import braidrep.golden as golden

    real = golden.load_fixture

    def tampered():
        data = real()
        data["generators"]["2"][0] = data["generators"]["2"][0].replace("t", "t^2", 1)
        return data

    monkeypatch.setattr(golden, "load_fixture", tampered)
    code, out, _ = run(capsys, "golden-check", "--format", "json")
    assert code == EXIT_MATH
    assert json.loads(out)["mismatched_rows"] == {"2": [1]}


def test_sweep_n5(capsys):
    code, out, _ = run(capsys, "sweep", "--n", "5")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "n,m,dim,corank_measured,corank_closed_form,verdict"
    assert "5,3,10,6,6,irreducible" in lines


def test_sweep_n3_m1(capsys):
    code, out, _ = run(capsys, "sweep", "--n", "3", "--m", "1")
    assert out.splitlines()[1:] == ["3,1,3,2,2,irreducible"]


def test_sweep_rows_measured_equal_closed_form(capsys):
    code, out, _ = run(capsys, "sweep", "--n-min", "3", "--n-max", "7", "--format", "json")
    rows = json.loads(out)
    assert len(rows) == sum(n - 1 for n in range(3, 8))
    assert all(r["corank_measured"] == r["corank_closed_form"] for r in rows)


def test_sweep_parallel_matches_serial(capsys):
    _, serial, _ = run(capsys, "sweep", "--n-max", "6")
    _, parallel, _ = run(capsys, "sweep", "--n-max", "6", "--jobs", "3")
    assert serial == parallel


def test_sweep_timing_column(capsys):
    _, out, _ = run(capsys, "sweep", "--n", "3", "--timing")
    assert out.splitlines()[0].endswith(",wall_time")


@pytest.mark.parametrize("argv", [
    ["analyze", "--n", "5", "--m", "2", "--format", "json"],
    ["build", "--n", "4", "--m", "1", "--format", "json"],
    ["sweep", "--n-max", "5"],
])
def test_deterministic_output(capsys, argv):
    _, a, _ = run(capsys, *argv, "--rng-seed", "11")
    _, b, _ = run(capsys, *argv, "--rng-seed", "11")
    assert a == b


def test_env_seed_overrides_flag(capsys, monkeypatch):
    argv = ["analyze", "--n", "5", "--m", "2", "--format", "json"]
    _, flag7, _ = run(capsys, *argv, "--rng-seed", "7")
    _, flag8, _ = run(capsys, *argv, "--rng-seed", "8")
    assert flag7 != flag8  # evaluation points differ
    monkeypatch.setenv("BRAIDREP_SEED", "7")
    _, env7, _ = run(capsys, *argv, "--rng-seed", "8")
    assert env7 == flag7


def test_env_seed_must_be_integer(capsys, monkeypatch):
    monkeypatch.setenv("BRAIDREP_SEED", "abc")
    code, _, err = run(capsys, "sweep", "--n", "3")
    assert code == EXIT_USAGE and "BRAIDREP_SEED" in err


def test_help_documents_formats():
    out = subprocess.run([sys.executable, "-m", "braidrep", "build", "--help"],
                         capture_output=True, text=True, check=True).stdout
    assert "{text,json,csv}" in out and "--qtable" in out


def test_module_entry_point_exit_code():
    proc = subprocess.run([sys.executable, "-m", "braidrep", "word", "--n", "3", "--m", "1", "1 ?"],
                          capture_output=True, text=True)
    assert proc.returncode == EXIT_USAGE
