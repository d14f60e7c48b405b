import json
import math

import oracles
from spinring.cli import main

SQRT2 = math.sqrt(2.0)


def read_csv(path):
    lines = [l for l in path.read_text().splitlines() if not l.startswith("#")]
    header = lines[0].split(",")
    rows = []
    for line in lines[1:]:
        row = {}
        for key, cell in zip(header, line.split(",")):
            try:
                row[key] = float(cell)
            except ValueError:
                row[key] = cell
        rows.append(row)
    return header, rows


def test_sweep_default_witness_near_critical_point(tmp_path):
    out = tmp_path / "sweep.csv"
    assert main(["sweep", "--out", str(out), "--steps", "200"]) == 0
    header, rows = read_csv(out)
    assert header[:9] == ["beta", "a0", "w2", "s3_pure", "s3_noisy",
                          "ds3_dbeta", "tau3", "n3_pure", "n3_noisy"]
    assert len(rows) == 200
    row = min(rows, key=lambda r: abs(r["beta"] + 1.0))
    assert abs(row["w2"] + 1.0 / 6.0) < 1e-5
    # noisy column factorizes through p(beta)
    for r in rows[::40]:
        assert abs(r["s3_noisy"] - oracles.noise_p(r["beta"]) * r["s3_pure"]) < 1e-10
        assert abs(r["a0"] - oracles.a0_of_beta(r["beta"])) < 1e-10


def test_sweep_noise_off_ghz_limit(tmp_path):
    out = tmp_path / "sweep.csv"
    assert main(["sweep", "--no-noise", "--out", str(out), "--steps", "50"]) == 0
    _, rows = read_csv(out)
    last = rows[-1]
    assert abs(last["s3_pure"] - 5.657) < 1e-3
    assert last["s3_noisy"] == last["s3_pure"]


def test_sweep_with_counts_adds_estimator_columns(tmp_path):
    out = tmp_path / "sweep.csv"
    assert main(["sweep", "--steps", "6", "--counts", "400",
                 "--out", str(out)]) == 0
    header, rows = read_csv(out)
    assert header[-2:] == ["s3_hat", "sigma"]
    for r in rows:
        assert abs(r["s3_hat"] - r["s3_noisy"]) <= 5.0 * r["sigma"]


def test_sweep_rejects_two_steps(tmp_path):
    out = tmp_path / "sweep.csv"
    assert main(["sweep", "--steps", "2", "--out", str(out)]) == 2


def test_sweep_rejects_bad_range(tmp_path):
    assert main(["sweep", "--beta-min", "-3.0",
                 "--out", str(tmp_path / "s.csv")]) == 2


def test_csv_and_json_carry_identical_numbers(tmp_path):
    csv_path = tmp_path / "sweep.csv"
    json_path = tmp_path / "sweep.json"
    args = ["sweep", "--steps", "25", "--seed", "7"]
    assert main(args + ["--out", str(csv_path), "--format", "csv"]) == 0
    assert main(args + ["--out", str(json_path), "--format", "json"]) == 0
    _, csv_rows = read_csv(csv_path)
    doc = json.loads(json_path.read_text())
    assert len(doc["records"]) == len(csv_rows)
    for jrow, crow in zip(doc["records"], csv_rows):
        for key, val in jrow.items():
            if isinstance(val, float):
                assert crow[key] == val
    assert doc["config"]["steps"] == 25


def test_output_embeds_config_and_version(tmp_path):
    out = tmp_path / "sweep.csv"
    assert main(["sweep", "--steps", "10", "--out", str(out)]) == 0
    text = out.read_text()
    assert text.startswith("# spinring ")
    cfg_line = [l for l in text.splitlines() if l.startswith("# config:")][0]
    cfg = json.loads(cfg_line.removeprefix("# config:"))
    assert cfg["steps"] == 10
    assert cfg["source"]["eta_hh"] == 0.58


def test_config_file_and_overrides(tmp_path):
    cfg_path = tmp_path / "run.json"
    cfg_path.write_text(json.dumps({"steps": 12, "noise": False}))
    out = tmp_path / "sweep.csv"
    assert main(["sweep", "--config", str(cfg_path), "--steps", "15",
                 "--out", str(out)]) == 0
    _, rows = read_csv(out)
    assert len(rows) == 15


def test_config_file_rejects_unknown_keys(tmp_path):
    cfg_path = tmp_path / "run.json"
    cfg_path.write_text(json.dumps({"stepz": 12}))
    assert main(["sweep", "--config", str(cfg_path),
                 "--out", str(tmp_path / "s.csv")]) == 2


def test_table_default_rows(tmp_path):
    out = tmp_path / "table.csv"
    assert main(["table", "--out", str(out)]) == 0
    _, rows = read_csv(out)
    assert len(rows) == 7
    by_s3 = {round(r["s3_exp"], 2): r for r in rows}
    assert abs(by_s3[4.83]["n3"] - 0.8299) < 2e-3
    assert 0.36 <= by_s3[2.98]["n3"] <= 0.46
    assert 0.21 <= by_s3[2.18]["n3"] <= 0.31
    assert by_s3[4.89]["flag"] == "non-monotone"
    assert by_s3[4.83]["flag"] == ""
    for r in rows:
        assert r["n3_lo"] <= r["n3"] <= r["n3_hi"]


def test_table_flags_unsolvable_value(tmp_path):
    out = tmp_path / "table.csv"
    assert main(["table", "--values", "10", "--out", str(out)]) == 0
    _, rows = read_csv(out)
    assert rows[0]["flag"] == "clamped-above-max"
    assert abs(rows[0]["beta"] + 1e-6) < 1e-9


def test_table_flags_below_range(tmp_path):
    out = tmp_path / "table.csv"
    assert main(["table", "--values", "1.0:0.0", "--out", str(out)]) == 0
    _, rows = read_csv(out)
    assert rows[0]["flag"] == "clamped-below-min"
    assert rows[0]["beta"] == -2.0


def test_optimize_report(tmp_path, capsys):
    assert main(["optimize", "--beta=-1e-6"]) == 0
    report = capsys.readouterr().out
    optimal = [l for l in report.splitlines() if l.startswith("optimal |S3|")][0]
    assert abs(float(optimal.split(":")[1]) - 4.0 * SQRT2) < 1e-6


def test_optimize_dominates_defaults(capsys):
    for beta in ("-1.0", "-2.0"):
        assert main(["optimize", "--beta", beta]) == 0
        report = capsys.readouterr().out
        default = float([l for l in report.splitlines()
                         if l.startswith("default |S3|")][0].split(":")[1])
        optimal = float([l for l in report.splitlines()
                         if l.startswith("optimal |S3|")][0].split(":")[1])
        assert optimal >= default - 1e-8


def test_optimize_requires_beta():
    assert main(["optimize"]) == 2


def test_optimize_rejects_out_of_range_beta():
    assert main(["optimize", "--beta", "0.5"]) == 3


def test_montecarlo_deterministic(tmp_path):
    out = tmp_path / "mc.csv"
    args = ["montecarlo", "--steps", "5", "--counts", "500", "--trials", "1",
            "--seed", "21", "--out", str(out)]
    assert main(args) == 0
    first = out.read_bytes()
    assert main(args) == 0
    assert out.read_bytes() == first


def test_montecarlo_unbiased_at_large_counts(tmp_path):
    out = tmp_path / "mc.csv"
    assert main(["montecarlo", "--beta-min", "-0.36", "--beta-max", "-0.34",
                 "--steps", "3", "--counts", "1000000", "--trials", "2",
                 "--out", str(out)]) == 0
    _, rows = read_csv(out)
    for r in rows:
        assert abs(r["s3_hat_mean"] - r["s3_true"]) <= 3.0 * r["sigma_mean"]
        assert abs(r["s3_true"] - oracles.noisy_s3(r["beta"])) < 1e-9


def test_montecarlo_sigma_magnitudes_at_default_counts(tmp_path):
    out = tmp_path / "mc.csv"
    assert main(["montecarlo", "--steps", "9", "--counts", "200",
                 "--trials", "30", "--out", str(out)]) == 0
    _, rows = read_csv(out)
    sigmas = [r["sigma_mean"] for r in rows]
    assert 0.05 <= min(sigmas) and max(sigmas) <= 0.2


def test_montecarlo_defaults_to_error_matching_counts(tmp_path):
    out = tmp_path / "mc.csv"
    assert main(["montecarlo", "--steps", "5", "--trials", "10",
                 "--out", str(out)]) == 0
    _, rows = read_csv(out)
    assert all(0.05 <= r["sigma_mean"] <= 0.2 for r in rows)


def test_plot_renders_figures(tmp_path):
    out = tmp_path / "sweep.csv"
    assert main(["sweep", "--steps", "12", "--out", str(out), "--plot"]) == 0
    for suffix in ("_curves.png", "_measures.png"):
        fig = tmp_path / ("sweep" + suffix)
        assert fig.exists() and fig.stat().st_size > 0
    out = tmp_path / "table.csv"
    assert main(["table", "--out", str(out), "--plot"]) == 0
    assert (tmp_path / "table_table.png").stat().st_size > 0
    out = tmp_path / "mc.csv"
    assert main(["montecarlo", "--steps", "4", "--counts", "200",
                 "--trials", "3", "--out", str(out), "--plot"]) == 0
    assert (tmp_path / "mc_montecarlo.png").stat().st_size > 0


def test_version_flag(capsys):
    assert main(["--version"]) == 0
    assert capsys.readouterr().out.strip()
