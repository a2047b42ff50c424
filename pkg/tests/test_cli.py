import csv
import io
import json

import mpmath as mp
import pytest

from hgtoda import cli


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_hgf_gauss_against_mpmath(capsys):
    code, out, _ = run(["eval-hgf", "--preset", "gauss", "--a", "0.4", "--b", "0.5", "--c", "1.7",
                        "--points", "0.1,0.3,0.5"], capsys)
    rep = json.loads(out)
    assert code == 0
    assert len(rep["rows"]) == 3
    for row in rep["rows"]:
        x = row["x"][0]
        ref = float(mp.beta(0.4, 1.3) * mp.hyp2f1(0.4, 0.5, 1.7, x))
        assert abs(row["value"][0] - ref) <= 1e-8 * ref
        assert row["oracle_residual"] <= 1e-8
    assert rep["summary"]["checks"] == rep["summary"]["passed"] == 3
    assert set(rep) == {"command", "config_echo", "rows", "summary", "versions"}


def test_eval_hgf_empty_points(capsys):
    code, out, _ = run(["eval-hgf", "--points", ""], capsys)
    assert code == 0
    assert json.loads(out)["rows"] == []


def test_eval_hgf_bessel_domain_error(capsys):
    code, out, err = run(["eval-hgf", "--preset", "bessel", "--points=-0.5"], capsys)
    assert code == 2
    assert out == ""
    assert "Re x in (0, 3)" in err


def test_eval_hgf_explicit_slice(capsys):
    code, out, _ = run(["eval-hgf", "--partition", "2,2", "--alpha", "0.7,1,-2.7,1",
                        "--points", "1,0.8,-0.5,0.6;1.1,0.8,-0.5,0.6"], capsys)
    rep = json.loads(out)
    assert code == 0 and len(rep["rows"]) == 2
    assert rep["config_echo"]["preset"] is None


def test_eval_hgf_bad_alpha_sum(capsys):
    code, _, err = run(["eval-hgf", "--partition", "2,2", "--alpha", "0.7,1,2.7,1", "--points", "1,0.8,-0.5,0.6"],
                       capsys)
    assert code == 2 and "-2" in err


def test_tau_gauss_rows_and_residuals(capsys):
    code, out, _ = run(["tau", "--preset", "gauss", "--m-range=-2,2"], capsys)
    rep = json.loads(out)
    assert code == 0
    assert len(rep["rows"]) == 15
    assert all(r["thde_residual"] <= 1e-6 for r in rep["rows"])
    assert {"C_m", "t_m", "g_m", "F", "tau"} <= set(rep["rows"][0])


def test_tau_single_m_has_no_residual(capsys):
    code, out, _ = run(["tau", "--m-range", "0,0"], capsys)
    rep = json.loads(out)
    assert code == 0
    assert all(r["thde_residual"] is None for r in rep["rows"])
    assert rep["summary"]["checks"] == 0


def test_tau_kummer(capsys):
    code, out, _ = run(["tau", "--preset", "kummer"], capsys)
    rep = json.loads(out)
    assert code == 0
    assert rep["summary"]["checks"] == rep["summary"]["passed"] == 15


@pytest.mark.filterwarnings("ignore:block 3")
def test_tau_resonance_names_m(capsys):
    code, _, err = run(["tau", "--partition", "1,1,1,1", "--alpha=-1.2,-0.3,0.5,-1.0", "--pair", "2,3",
                        "--points", "0,1,2.3,-1.4"], capsys)
    assert code == 2 and "m = " in err


def test_laplace_trace_epd(capsys):
    code, out, _ = run(["laplace-trace", "--family", "epd"], capsys)
    rep = json.loads(out)
    assert code == 0
    assert [r["n"] for r in rep["rows"]] == list(range(-3, 4))
    assert all(r["coefficient_residual"] <= 1e-9 for r in rep["rows"])


def test_laplace_trace_doubly_confluent_rows_identical(capsys):
    _, out, _ = run(["laplace-trace", "--family", "doubly-confluent"], capsys)
    rows = json.loads(out)["rows"]
    first = (rows[0]["a_engine"], rows[0]["c_engine"])
    for r in rows:
        assert r["a_engine"] == pytest.approx(first[0], abs=1e-12)
        assert r["c_engine"] == pytest.approx(first[1], abs=1e-12)


def test_laplace_trace_budget_rejection_is_deterministic(capsys):
    msgs = [run(["laplace-trace", "--n-range=-6,6"], capsys) for _ in range(2)]
    assert msgs[0] == msgs[1]
    assert msgs[0][0] == 2
    assert "base jet order >= 14, got 12" in msgs[0][2]


def test_verify_subset(capsys):
    code, out, _ = run(["verify", "--suite", "jets"], capsys)
    rep = json.loads(out)
    assert code == 0
    assert rep["rows"] and all(r["suite"] == "jets" for r in rep["rows"])
    assert [r["id"] for r in rep["rows"]] == sorted(r["id"] for r in rep["rows"])
    assert all("threshold" in r for r in rep["rows"])


def test_verify_unknown_suite(capsys):
    code, _, err = run(["verify", "--suite", "nope"], capsys)
    assert code == 2 and "unknown suite" in err


def test_config_precedence(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"family": "confluent", "n_range": [-1, 1], "tol": 1e-3}))
    _, out, _ = run(["laplace-trace", "--config", str(cfg), "--n-range=-2,2"], capsys)
    echo = json.loads(out)["config_echo"]
    assert echo["family"] == "confluent"
    assert echo["n_range"] == [-2, 2]
    assert echo["tol"] == 1e-3


def test_config_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"famly": "epd"}))
    code, _, err = run(["laplace-trace", "--config", str(cfg)], capsys)
    assert code == 2 and "famly" in err


def test_csv_uses_re_im_pairs(capsys):
    _, out, _ = run(["eval-hgf", "--points", "0.2", "--format", "csv"], capsys)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 1
    assert {"x_re", "x_im", "value_re", "value_im", "oracle_threshold"} <= set(rows[0])


def test_out_file(tmp_path, capsys):
    target = tmp_path / "r.json"
    code, out, _ = run(["laplace-trace", "--out", str(target)], capsys)
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["command"] == "laplace-trace"
