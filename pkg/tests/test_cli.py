"""CLI surface: schema, exit codes, determinism, failure annotation."""

import csv
import io
import math
import subprocess
import sys

import pytest

from hoytsense import average, cli
from hoytsense.specfun import ConvergenceError

HEADER = "snr_db,q,u,metric,method,value,est_error"


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_rows(out):
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == HEADER.split(",")
    return rows[1:]


def test_point_fading_average_example(capsys):
    code, out, _ = run_cli(capsys, "point", "--metric", "auc", "--u", "1",
                           "--q", "0.5", "--snr-db", "10")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == HEADER
    row = lines[1].split(",")
    assert row[3] == "auc" and row[4] == "closed_integer"
    assert float(row[5]) == pytest.approx(0.903774955135062372582, abs=1e-12)


def test_point_false_alarm_example(capsys):
    code, out, _ = run_cli(capsys, "point", "--metric", "pf", "--u", "5",
                           "--lambda", "10")
    assert code == 0
    row = parse_rows(out)[0]
    assert float(row[5]) == pytest.approx(0.4404933, abs=1e-7)
    assert row[0] == "nan" and row[1] == "nan"   # no snr/q in play


def test_point_zero_snr_limit(capsys):
    code, out, _ = run_cli(capsys, "point", "--metric", "auc", "--u", "3",
                           "--q", "0.4", "--snr-db", "-inf")
    assert code == 0
    row = parse_rows(out)[0]
    assert float(row[5]) == 0.5
    code, out, _ = run_cli(capsys, "point", "--metric", "cauc", "--u", "3",
                           "--q", "0.4", "--snr-db", "-inf")
    assert float(parse_rows(out)[0][5]) == 0.5


def test_point_detector_metrics_without_fading(capsys):
    code, out, _ = run_cli(capsys, "point", "--metric", "pd", "--u", "2.5",
                           "--snr-db", "0", "--lambda", "4.41")
    assert code == 0
    row = parse_rows(out)[0]
    # snr-db 0 means snr = 1 (linear); Marcum value, not an average
    from hoytsense.detector import DetectorConfig, pd
    assert float(row[5]) == pytest.approx(pd(DetectorConfig(2.5), 1.0, 4.41),
                                          abs=1e-12)


def test_point_usage_errors(capsys):
    assert run_cli(capsys, "point", "--metric", "pd", "--u", "2",
                   "--snr-db", "3")[0] == 2          # missing --lambda
    assert run_cli(capsys, "point", "--metric", "auc", "--u", "2")[0] == 2
    assert run_cli(capsys, "point", "--metric", "auc", "--u", "2",
                   "--q", "1.5", "--snr-db", "3")[0] == 2
    assert run_cli(capsys, "point", "--metric", "auc", "--u", "-1",
                   "--q", "0.5", "--snr-db", "3")[0] == 2


def test_sweep_grid_shape_and_order(capsys):
    code, out, _ = run_cli(capsys, "sweep", "--metric", "auc", "--u", "5",
                           "--q", "0.1,0.3,0.5,0.75,1.0",
                           "--snr-db", "-5:30:1")
    assert code == 0
    rows = parse_rows(out)
    assert len(rows) == 180
    # q outer, snr ascending within each q block
    qs = [row[1] for row in rows]
    assert qs == sorted(qs, key=float)
    for i in range(0, 180, 36):
        block = [float(r[0]) for r in rows[i:i + 36]]
        assert block == sorted(block)
        assert block[0] == -5.0 and block[-1] == 30.0
        assert len({r[1] for r in rows[i:i + 36]}) == 1
    # curves strictly rise with mean SNR
    for i in range(0, 180, 36):
        vals = [float(r[5]) for r in rows[i:i + 36]]
        assert all(y > x for x, y in zip(vals, vals[1:]))
        assert all(0.0 <= v <= 1.0 for v in vals)


def test_sweep_complement_and_determinism(capsys):
    args = ("sweep", "--metric", "auc", "--u", "2.5", "--q", "0.3,1.0",
            "--snr-db", "0:20:5")
    code1, out1, _ = run_cli(capsys, *args)
    code2, out2, _ = run_cli(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2                      # byte-identical, non-MC route
    code3, out3, _ = run_cli(capsys, "sweep", "--metric", "cauc", "--u", "2.5",
                             "--q", "0.3,1.0", "--snr-db", "0:20:5")
    assert code3 == 0
    for a, c in zip(parse_rows(out1), parse_rows(out3)):
        assert float(a[5]) + float(c[5]) == pytest.approx(1.0, abs=1e-16)
        assert c[3] == "cauc"


def test_sweep_mc_seeded_determinism(capsys):
    args = ("sweep", "--method", "mc", "--metric", "auc", "--u", "5",
            "--q", "0.5", "--snr-db", "0:10:5", "--trials", "30000",
            "--seed", "42")
    code1, out1, _ = run_cli(capsys, *args)
    code2, out2, _ = run_cli(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    # a different seed must change the estimates
    code3, out3, _ = run_cli(capsys, *args[:-1], "43")
    assert out3 != out1
    for row in parse_rows(out1):
        assert row[4] == "monte_carlo"
        assert float(row[6]) > 0.0


def test_sweep_method_all_expands_routes(capsys):
    code, out, _ = run_cli(capsys, "sweep", "--method", "all", "--metric",
                           "auc", "--u", "2", "--q", "0.5", "--snr-db", "10",
                           "--trials", "30000", "--seed", "1")
    assert code == 0
    rows = parse_rows(out)
    assert [r[4] for r in rows] == ["closed_integer", "quadrature",
                                    "monte_carlo"]
    vals = [float(r[5]) for r in rows]
    assert max(vals) - min(vals) < 0.01


def test_sweep_fractional_u_high_snr_autobudget(capsys):
    # the series needs tens of thousands of terms at 30 dB; the sweep must
    # size its own budget rather than die on the default policy
    code, out, _ = run_cli(capsys, "sweep", "--metric", "auc", "--u", "2.5",
                           "--q", "0.1", "--snr-db", "30")
    assert code == 0
    row = parse_rows(out)[0]
    assert row[4] == "closed_series"
    assert 0.97 < float(row[5]) < 1.0


def test_sweep_pd_pf_with_threshold(capsys):
    code, out, _ = run_cli(capsys, "sweep", "--metric", "pd", "--u", "5",
                           "--q", "0.5", "--snr-db", "0:10:10",
                           "--lambda", "15")
    assert code == 0
    rows = parse_rows(out)
    assert all(r[3] == "pd" and r[4] == "quadrature" for r in rows)
    assert float(rows[1][5]) > float(rows[0][5])
    code, out, _ = run_cli(capsys, "sweep", "--metric", "pf", "--u", "5",
                           "--q", "0.5", "--snr-db", "0:10:10",
                           "--lambda", "15")
    rows = parse_rows(out)
    # false alarm ignores the channel: identical value on every row
    assert len({r[5] for r in rows}) == 1


def test_sweep_usage_errors(capsys):
    base = ("sweep", "--u", "5", "--q", "0.5")
    assert run_cli(capsys, *base, "--snr-db", "0:10:-1")[0] == 2
    assert run_cli(capsys, *base, "--snr-db", "10:0:1")[0] == 2
    assert run_cli(capsys, *base, "--snr-db", "0:10")[0] == 2
    assert run_cli(capsys, *base, "--snr-db", "0:10:1", "--metric", "roc")[0] == 2
    assert run_cli(capsys, "sweep", "--u", "5", "--q", "0,0.5",
                   "--snr-db", "0:10:1")[0] == 2
    assert run_cli(capsys, "sweep", "--u", "5", "--q", "0.5",
                   "--snr-db", "-inf:10:1")[0] == 2
    assert run_cli(capsys, *base, "--snr-db", "0:10:1",
                   "--metric", "pd", "--method", "closed",
                   "--lambda", "3")[0] == 2         # no closed avg pd exists
    assert run_cli(capsys, *base, "--snr-db", "0:10:1", "--trials", "0")[0] == 2


def test_sweep_annotates_failed_rows(capsys, monkeypatch):
    def boom(*args, **kwargs):
        raise ConvergenceError("synthetic failure")

    monkeypatch.setattr(average, "avg_auc_quadrature", boom)
    code, out, err = run_cli(capsys, "sweep", "--metric", "auc", "--method",
                             "quadrature", "--u", "2", "--q", "0.5",
                             "--snr-db", "0:5:5")
    assert code == 3
    rows = parse_rows(out)
    assert len(rows) == 2
    for row in rows:
        assert row[5] == "nan"
        assert row[6] == "inf"
    assert "synthetic failure" in err


def test_roc_pairs_schema(capsys):
    code, out, _ = run_cli(capsys, "roc", "--u", "5", "--q", "0.5",
                           "--snr-db", "10", "--points", "5")
    assert code == 0
    rows = parse_rows(out)
    assert len(rows) == 10
    assert [r[3] for r in rows] == ["pf", "pd"] * 5
    pfs = [float(r[5]) for r in rows[0::2]]
    pds = [float(r[5]) for r in rows[1::2]]
    assert pfs == sorted(pfs)
    assert pds == sorted(pds)
    assert pds[-1] > 0.999
    assert run_cli(capsys, "roc", "--u", "5", "--q", "0.5", "--snr-db", "10",
                   "--points", "1")[0] == 2


def test_validate_subcommand(capsys):
    code, out, _ = run_cli(capsys, "validate", "--suite", "specfun")
    assert code == 0
    assert "PASS" in out and "FAIL" not in out
    assert "8/8 checks passed" in out
    assert run_cli(capsys, "validate", "--suite", "bogus")[0] == 2


def test_out_file_uses_lf_and_utf8(tmp_path, capsys):
    target = tmp_path / "rows.csv"
    code, out, _ = run_cli(capsys, "sweep", "--metric", "auc", "--u", "2",
                           "--q", "0.5", "--snr-db", "0:5:5",
                           "--out", str(target))
    assert code == 0
    assert out == ""                          # everything went to the file
    raw = target.read_bytes()
    assert b"\r" not in raw
    assert raw.decode("utf-8").splitlines()[0] == HEADER
    assert raw.endswith(b"\n")


def test_console_entry_point_runs():
    # exercise the installed module entry (same path the console script uses)
    proc = subprocess.run(
        [sys.executable, "-m", "hoytsense.cli", "point", "--metric", "auc",
         "--u", "2", "--q", "1", "--snr-db", "0"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == HEADER


def test_invalid_subcommand_exits_2(capsys):
    assert cli.main(["frobnicate"]) == 2
    assert cli.main([]) == 2
