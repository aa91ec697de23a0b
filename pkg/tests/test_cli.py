import csv
import json
from importlib import resources

import jsonschema
import pytest

from tailcord.cli import main

SMALL = ["--n", "300", "--replicates", "40", "--seed", "17"]


def _rows(path):
    with open(path) as fh:
        return list(csv.reader(fh))


def test_simulate_rows_and_determinism(tmp_path):
    out = tmp_path / "a"
    assert main(["simulate", "--replicates", "2", "--k-list", "1", "--n", "100",
                 "--output-dir", str(out)]) == 0
    rows = _rows(out / "replicates.csv")
    assert rows[0] == ["replicate", "k", "v1", "v2"]
    assert len(rows) == 3
    first = (out / "replicates.csv").read_bytes()
    assert main(["simulate", "--replicates", "2", "--k-list", "1", "--n", "100",
                 "--output-dir", str(out), "--threads", "3"]) == 0
    assert (out / "replicates.csv").read_bytes() == first


def test_threads_env_fallback(tmp_path, monkeypatch):
    monkeypatch.setenv("TAILCORD_THREADS", "4")
    assert main(["simulate", *SMALL, "--k-list", "1,5", "--output-dir", str(tmp_path / "e")]) == 0
    assert main(["simulate", *SMALL, "--k-list", "1,5", "--output-dir", str(tmp_path / "f"),
                 "--threads", "1"]) == 0
    assert ((tmp_path / "e" / "replicates.csv").read_bytes()
            == (tmp_path / "f" / "replicates.csv").read_bytes())


def test_limit_surface_grid_and_corner(tmp_path):
    out = tmp_path / "l"
    assert main(["limit-surface", "--grid", "1,1e6,1,1e6,5", "--abs-tol", "1e-13",
                 "--rel-tol", "1e-12", "--output-dir", str(out)]) == 0
    rows = _rows(out / "limit_cdf.csv")
    assert rows[0] == ["v1", "v2", "cdf", "quad_error"]
    assert len(rows) == 26
    corner = [r for r in rows[1:] if float(r[0]) == 1e6 and float(r[1]) == 1e6][0]
    assert abs(float(corner[2]) - 1.0) <= 1e-6


def test_limit_surface_flags_failures(tmp_path):
    code = main(["limit-surface", "--grid", "1,50,1,50,2", "--abs-tol", "1e-16",
                 "--rel-tol", "1e-16", "--max-subdivisions", "2", "--output-dir", str(tmp_path)])
    assert code == 1
    rows = _rows(tmp_path / "limit_cdf.csv")
    assert len(rows) == 5 and all(r[3] == "-1.0" for r in rows[1:])


def test_limit_surface_rejects_gaussian(tmp_path):
    assert main(["limit-surface", "--family", "gaussian", "--grid", "1,2,1,2,2",
                 "--output-dir", str(tmp_path)]) != 0


def test_finite_oracle(tmp_path):
    assert main(["finite-oracle", "--n", "50", "--k-list", "5", "--grid", "0.1,5,0.1,5,3",
                 "--output-dir", str(tmp_path)]) == 0
    rows = _rows(tmp_path / "oracle_cdf.csv")
    assert len(rows) == 10 and rows[0] == ["v1", "v2", "cdf", "quad_error"]


def test_validate_self_and_schema(tmp_path, capsys):
    assert main(["validate", *SMALL, "--k-list", "1", "--surface", "self",
                 "--output-dir", str(tmp_path)]) == 0
    assert "max_abs_error=0.0" in capsys.readouterr().out
    report = json.loads((tmp_path / "report.json").read_text())
    schema = json.loads(resources.files("tailcord").joinpath("schemas/report.schema.json").read_text())
    jsonschema.validate(report, schema)
    rows = _rows(tmp_path / "errors.csv")
    assert rows[0] == ["v1", "v2", "empirical", "theoretical", "abs_error"] and len(rows) == 41


def test_ksweep_single_k_equals_validate(tmp_path):
    assert main(["validate", *SMALL, "--k-list", "1", "--output-dir", str(tmp_path / "v")]) == 0
    assert main(["ksweep", *SMALL, "--k-list", "1", "--output-dir", str(tmp_path / "k")]) == 0
    report = json.loads((tmp_path / "v" / "report.json").read_text())
    rows = _rows(tmp_path / "k" / "ksweep.csv")
    assert rows[0] == ["k", "v1_median", "v2_median", "v2_q90", "max_abs_error"]
    assert float(rows[1][4]) == report["max_abs_error"]


def test_ksweep_monotone_and_deterministic(tmp_path):
    args = ["ksweep", "--n", "2000", "--replicates", "30", "--k-list", "1,50,500"]
    assert main([*args, "--output-dir", str(tmp_path / "a")]) == 0
    assert main([*args, "--output-dir", str(tmp_path / "b"), "--threads", "2"]) == 0
    a = (tmp_path / "a" / "ksweep.csv").read_bytes()
    assert a == (tmp_path / "b" / "ksweep.csv").read_bytes()
    med = [float(r[2]) for r in _rows(tmp_path / "a" / "ksweep.csv")[1:]]
    assert med[0] > med[1] > med[2]


def test_gaussian_tables(tmp_path):
    out = tmp_path / "g"
    assert main(["gaussian", "--family", "gaussian", "--rho", "0.5", "--n-list", "100000",
                 "--y-grid", "2", "--samples", "1000", "--output-dir", str(out)]) == 0
    norm = _rows(out / "norming.csv")
    assert norm[0] == ["n", "rho", "a_n", "b_n", "a_tilde_n", "b_tilde_n", "a_tilde_nE", "b_tilde_nE"]
    assert abs(float(norm[1][3]) - 4.28019) < 1e-4
    tail = _rows(out / "gauss_tail.csv")
    assert tail[0] == ["y", "empirical", "limit", "mills", "rel_gap"]
    assert abs(float(tail[1][2]) - 0.12098) < 1e-5


def test_gaussian_empty_grid(tmp_path):
    assert main(["gaussian", "--family", "gaussian", "--y-grid", "",
                 "--output-dir", str(tmp_path)]) == 0
    assert (tmp_path / "norming.csv").exists() and not (tmp_path / "gauss_tail.csv").exists()


def test_config_file_and_override(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"model": {"family": "logistic", "gamma": 0.5}, "n": 200,
                               "replicates": 3, "k_list": [2], "seed": 9}))
    assert main(["simulate", "--config", str(cfg), "--replicates", "4",
                 "--output-dir", str(tmp_path)]) == 0
    rows = _rows(tmp_path / "replicates.csv")
    assert len(rows) == 5 and {r[1] for r in rows[1:]} == {"2"}


@pytest.mark.parametrize("bad", [["--k-list", "0"], ["--family", "logistic", "--gamma", "2"],
                                 ["--grid", "1,2,3"], ["--seed", "-1"]])
def test_invalid_config(tmp_path, bad):
    assert main(["simulate", "--n", "50", *bad, "--output-dir", str(tmp_path)]) == 2
