import json
import math

import pytest

from qkernel.cli import main


def test_list_contains_registry_ids(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    assert "rogers_6phi5" in out
    assert "nassrallah_rahman" in out
    assert "params(" in out


def test_list_json(capsys):
    assert main(["list", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    ids = [e["id"] for e in doc]
    assert "qhahn_orthogonality" in ids


def test_check_json_schema_and_exit(tmp_path):
    out = tmp_path / "report.json"
    rc = main([
        "check", "rogers_6phi5",
        "--alpha", "0.3", "--a", "0.7", "--b", "0.9", "--c", "1.1", "--q", "0.5",
        "--format", "json", "--deterministic", "--output", str(out),
    ])
    assert rc == 0
    doc = json.loads(out.read_text())
    assert doc["id"] == "rogers_6phi5"
    assert doc["status"] == "pass"
    assert doc["rel_err"] <= 1e-10
    assert set(doc["params"]) == {"alpha", "a", "b", "c", "q"}
    for key in ("lhs", "rhs"):
        assert set(doc[key]) == {"re", "im"}
    assert "terms" in doc["diagnostics"]
    assert "nodes" in doc["diagnostics"]
    assert "timestamp" not in doc


def test_check_unknown_identity_exit2(capsys):
    assert main(["check", "not_a_thing"]) == 2


def test_check_unknown_parameter_exit2(capsys):
    rc = main(["check", "q_gauss", "--zz", "0.3"])
    assert rc == 2
    assert "unknown parameter" in capsys.readouterr().err


def test_check_bad_value_exit2(capsys):
    assert main(["check", "q_gauss", "--a", "wat"]) == 2
    assert main(["check", "q_gauss", "--a", "inf"]) == 2


def test_check_samples_missing_params(tmp_path):
    out = tmp_path / "r.json"
    rc = main(["check", "q_gauss", "--seed", "7", "--format", "json",
               "--deterministic", "--output", str(out)])
    assert rc == 0
    doc = json.loads(out.read_text())
    assert doc["status"] == "pass"


def test_check_complex_literal(tmp_path):
    out = tmp_path / "r.json"
    rc = main(["check", "q_gauss", "--a", "0.3+0.0i", "--b", "0.4", "--c", "0.5",
               "--q", "0.5", "--format", "json", "--deterministic",
               "--output", str(out)])
    assert rc == 0


def test_suite_csv_shape_and_determinism(tmp_path):
    f1, f2 = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["suite", "--ids", "theta_phi_product,q_gauss", "--draws", "2",
            "--seed", "42", "--format", "csv", "--deterministic"]
    assert main(args + ["--output", str(f1)]) == 0
    assert main(args + ["--output", str(f2)]) == 0
    text = f1.read_text()
    lines = text.strip().splitlines()
    assert lines[0] == "id,draw,rel_err,abs_err,status"
    # theta has 3 pinned + 2 draws, q_gauss has 1 pinned + 2 draws
    assert len(lines) == 1 + 5 + 3
    assert f1.read_bytes() == f2.read_bytes()


def test_suite_tol_override_fails(tmp_path):
    rc = main(["suite", "--ids", "q_gauss", "--draws", "1", "--seed", "42",
               "--tol", "1e-30", "--format", "csv",
               "--output", str(tmp_path / "x.csv")])
    assert rc == 1


def test_suite_unknown_id_exit2():
    assert main(["suite", "--ids", "bogus"]) == 2


def test_env_seed_fallback(tmp_path, monkeypatch):
    monkeypatch.setenv("QKERNEL_SEED", "123")
    out = tmp_path / "r.json"
    rc = main(["check", "q_gauss", "--format", "json", "--deterministic",
               "--output", str(out)])
    assert rc == 0
    doc = json.loads(out.read_text())
    # the sampled draw must match an explicit --seed 123 run
    out2 = tmp_path / "r2.json"
    main(["check", "q_gauss", "--seed", "123", "--format", "json",
          "--deterministic", "--output", str(out2)])
    assert out.read_text() == out2.read_text()


class TestEval:
    def test_poch_finite(self, capsys):
        assert main(["eval", "poch", "--a", "0.5", "--q", "0.5", "--n", "2"]) == 0
        assert capsys.readouterr().out.startswith("0.375")

    def test_poch_infinite(self, capsys):
        assert main(["eval", "poch", "--a", "0.5", "--q", "0.5"]) == 0
        out = capsys.readouterr().out
        assert abs(float(out.split("+")[0]) - 0.2887880950866024) < 1e-12

    def test_phi(self, capsys):
        rc = main(["eval", "phi", "--num", "2.5,1.6666666666666667", "--den", "0.71",
                   "--q", "0.5", "--z", "0.1704"])
        assert rc == 0

    def test_qint_power(self, capsys):
        assert main(["eval", "qint", "--power", "1", "--a", "0", "--b", "1",
                     "--q", "0.5"]) == 0
        out = capsys.readouterr().out
        assert abs(float(out.split("+")[0]) - 2.0 / 3.0) < 1e-12

    def test_aw_poly_json(self, capsys):
        rc = main(["eval", "aw", "--n", "2", "--a", "0.3", "--b", "0.4", "--c", "0.2",
                   "--d", "0.1", "--theta", "0.9", "--q", "0.5", "--format", "json"])
        assert rc == 0
        doc = json.loads(capsys.readouterr().out)
        assert math.isfinite(doc["value"]["re"])

    def test_missing_param_exit2(self, capsys):
        assert main(["eval", "poch", "--a", "0.5"]) == 2
