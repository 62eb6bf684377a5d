import csv
import json

import pytest

from sl2forms.cli import main, parse_field_list, parse_quaternions
from sl2forms.fields import BinaryField, PrimeField, Rationals
from sl2forms.cli import parse_field


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_field_specs():
    assert isinstance(parse_field("Q"), Rationals)
    assert parse_field("Fp:7") == PrimeField(7)
    assert parse_field("F2e:3") == BinaryField(3)
    assert parse_field_list("Q,Fp:3..7,F2e:1..2") == \
        ["Q", "Fp:3", "Fp:5", "Fp:7", "F2e:1", "F2e:2"]
    assert parse_quaternions("-1,-1;2,3") == [(-1, -1), (2, 3)]


def test_verify_thm_b_outputs(tmp_path, capsys):
    jpath = tmp_path / "r.json"
    cpath = tmp_path / "r.csv"
    fdir = tmp_path / "figs"
    code, out, _ = run(["verify", "thm-b", "--n-max", "12", "--fields", "Q,Fp:3..5",
                        "--json", str(jpath), "--csv", str(cpath),
                        "--figures", str(fdir)], capsys)
    assert code == 0
    data = json.loads(jpath.read_text())
    assert data["summary"]["failures"] == 0
    assert data["summary"]["cases"] == 6 * 3
    assert all(c["verdict"] == "pass" for c in data["cases"])
    assert {"case", "inputs", "expected", "computed"} <= set(data["cases"][0])
    with open(cpath) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["case", "inputs", "expected", "computed", "verdict"]
    assert len(rows) == 1 + data["summary"]["cases"]
    pngs = list(fdir.glob("*.png"))
    assert len(pngs) == 1 and pngs[0].stat().st_size > 0
    assert "18/18 passed" in out


def test_verify_is_deterministic_and_parallel_agrees(tmp_path, capsys):
    paths = [tmp_path / f"r{i}.json" for i in range(3)]
    jobs = ["1", "1", "2"]
    for p, j in zip(paths, jobs):
        code, _, _ = run(["verify", "lemmas", "--n-max", "30", "--p-max", "7",
                          "--parity-n-max", "40", "--jobs", j,
                          "--json", str(p)], capsys)
        assert code == 0

    def stable(path):
        d = json.loads(path.read_text())
        d.pop("wall_time")
        d["config"].pop("jobs")
        return d

    assert stable(paths[0]) == stable(paths[1]) == stable(paths[2])


def test_verify_char2(capsys):
    code, out, _ = run(["verify", "char2", "--n-max", "8",
                        "--fields", "F2e:1..2"], capsys)
    assert code == 0
    assert "passed" in out


def test_verify_thm_a_quick(capsys):
    code, _, _ = run(["verify", "thm-a", "--n-max", "8", "--n-max-twist", "4",
                      "--quaternions=-1,-1"], capsys)
    assert code == 0


def test_classify_over_q(capsys):
    code, out, _ = run(["classify", "--form", "<1,15,0,-6>"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["dim"] == 4 and data["radical"] == 1
    assert data["signature"] == [2, 1] and data["disc"] == "-10"


def test_classify_over_fp(capsys):
    code, out, _ = run(["classify", "--form", "<1,3>", "--field", "Fp:7"], capsys)
    assert code == 0
    assert json.loads(out) == {"dim": 2, "radical": 0, "disc_square": False}


def test_classify_char2(capsys):
    code, out, _ = run(["classify", "--form", "<1,1,3>", "--field", "F2e:2"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data == {"zeros": 2, "pairs": 0, "quasilinear": 1, "arf": None}


def test_form_subcommand(capsys):
    code, out, _ = run(["form", "phi-even", "--n", "16"], capsys)
    assert code == 0
    assert out.strip() == "<1,120,1820,8008>"
    code, out, _ = run(["form", "thm-b-rhs", "--n", "6"], capsys)
    assert code == 0
    assert out.strip() == "<40,6>"


def test_invariant_space_subcommand(capsys):
    code, out, _ = run(["invariant-space", "--n", "4", "--field", "Fp:7"], capsys)
    assert code == 0
    assert json.loads(out)["dimension"] == 1
    code, out, _ = run(["invariant-space", "--n", "4", "--field", "F2e:1"], capsys)
    assert code == 0
    assert json.loads(out) == {"dimension": 1}


def test_usage_errors_exit_2(capsys):
    code, _, err = run(["classify", "--form", "<1,2>", "--field", "Fp:many"], capsys)
    assert code == 2
    assert "error" in err
    code, _, err = run(["verify", "thm-b", "--n-max", "4", "--fields", "Zp:3"], capsys)
    assert code == 2


def test_failure_exit_code_is_1(tmp_path, capsys, monkeypatch):
    # Force a failing case by breaking the expected classification.
    import sl2forms.cli as cli_mod
    from sl2forms.report import CaseRecord

    def bad_case(payload):
        return CaseRecord("forced", {"n": 0}, "x", "y", False)

    monkeypatch.setitem(cli_mod._WORKERS, "thm-b", bad_case)
    code, out, _ = run(["verify", "thm-b", "--n-max", "2", "--fields", "Q"], capsys)
    assert code == 1
    assert "FAIL forced" in out


def test_toml_config(tmp_path, capsys):
    cfg = tmp_path / "cfg.toml"
    cfg.write_text('n-max = 8\nfields = "Q"\n')
    jpath = tmp_path / "out.json"
    code, _, _ = run(["verify", "thm-b", "--config", str(cfg),
                      "--json", str(jpath)], capsys)
    assert code == 0
    data = json.loads(jpath.read_text())
    assert data["summary"]["cases"] == 4  # n in {2,4,6,8} over Q only
