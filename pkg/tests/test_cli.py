import csv
import json
import subprocess
import sys

import pytest

from rrdps import bounds as bnd
from rrdps.cli import main, parse_int_list, round12


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def json_lines(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def test_bounds_zero_noise(capsys):
    code, out, _ = run(capsys, "bounds", "--d", "5", "--beta", "0", "--json")
    rec = json_lines(out)[0]
    assert code == 0
    for key in ("statdist_leak", "i_ae", "minentropy_leak", "accessible_info"):
        assert rec[key] == 0


def test_bounds_saturation_points(capsys):
    code, out, _ = run(capsys, "bounds", "--d", "10", "--beta", "0.5", "--json")
    rec = json_lines(out)[0]
    assert rec["beta_sat"] == round12(2 / 9)
    assert all(rec["saturated"].values())
    code, out, _ = run(capsys, "bounds", "--d", "5", "--beta", "0.5", "--json")
    assert json_lines(out)[0]["i_ae"] == pytest.approx(0.4650, abs=1e-4)


def test_bounds_table(capsys):
    code, out, _ = run(capsys, "bounds", "--d", "10", "--beta", "0.5")
    assert code == 0
    assert "0.222222222222" in out
    assert "von Neumann" in out and "min-entropy" in out


def test_invalid_arguments_exit_2(capsys):
    assert run(capsys, "bounds", "--d", "2", "--beta", "0.1")[0] == 2
    assert run(capsys, "bounds", "--d", "5", "--beta", "0.7")[0] == 2
    assert run(capsys, "sweep", "--step", "0")[0] == 2
    assert run(capsys, "verify", "--suite", "nope")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["bounds", "--d", "five", "--beta", "0.1"])
    assert exc.value.code == 2


def test_unwritable_output_exit_2(capsys, tmp_path):
    bad = tmp_path / "missing" / "x.csv"
    code, _, err = run(capsys, "sweep", "--d", "5", "--out", str(bad))
    assert code == 2 and "cannot write" in err


def test_sweep_csv(tmp_path, capsys):
    out = tmp_path / "s.csv"
    assert run(capsys, "sweep", "--d", "5,10", "--step", "0.05", "--out", str(out))[0] == 0
    raw = out.read_bytes()
    assert raw.startswith(b"# rrdps sweep schema=v1 version=0.1.0\r\n")
    assert raw.count(b"\r\n") == 2 + 2 * 11
    rows = list(csv.DictReader(line for line in raw.decode().splitlines()[1:]))
    assert [float(r["beta"]) for r in rows[:3]] == [0.0, 0.05, 0.1]
    r = rows[11 + 1]
    assert float(r["i_ae"]) == pytest.approx(bnd.i_ae(0.05, 10), rel=1e-11)


def test_sweep_is_bit_stable(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        run(capsys, "sweep", "--d", "3-4", "--step", "0.1", "--out", str(path))
    assert a.read_bytes() == b.read_bytes()


def test_sweep_d16_sharper_than_earlier_bound(capsys):
    code, out, _ = run(capsys, "sweep", "--d", "16", "--step", "0.01", "--json")
    for rec in json_lines(out):
        assert rec["i_ae"] <= rec["sk2017"] + 1e-12


def test_saturation_crossing(capsys):
    code, out, _ = run(capsys, "saturation", "--d", "3-30", "--json")
    rows = json_lines(out)
    assert [r["d"] for r in rows] == list(range(3, 31))
    below = [r["d"] for r in rows if r["statdist_saturated"] < r["syk"]]
    assert below == list(range(3, 23))


def test_saturation_csv_header(capsys):
    code, out, _ = run(capsys, "saturation", "--d", "5")
    lines = out.splitlines()
    assert lines[0].startswith("# rrdps saturation schema=v1")
    assert lines[1].split(",")[:4] == ["d", "beta_star", "beta_zero", "beta_sat"]


def test_rate(capsys):
    code, out, _ = run(capsys, "rate", "--n", "1000000", "--epsilon", "2e-20",
                       "--d", "5", "--beta", "0", "--json")
    rec = json_lines(out)[0]
    assert code == 0
    assert rec["ell"] == 999869
    assert rec["distance_bound"] <= 1e-20


def test_rate_table_reports_no_key(capsys):
    code, out, _ = run(capsys, "rate", "--n", "100", "--epsilon", "1e-10",
                       "--d", "3", "--beta", "0.5")
    assert code == 0 and "no extractable key" in out


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "protocol", "--d", "3", "--draws", "2")
    assert code == 0 and "verification passed" in out
    code, out, _ = run(capsys, "verify", "--suite", "spectrum", "--d", "3",
                       "--draws", "2", "--tol", "0")
    assert code == 1 and "FAIL" in out


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "bounds", "--d", "3", "--draws", "2",
                       "--json")
    rec = json_lines(out)[0]
    assert rec["passed"] and rec["suites"][0]["suite"] == "bounds"


def test_simulate_reproducible(capsys):
    args = ("simulate", "--d", "4", "--beta", "0.1", "--rounds", "20000", "--seed", "7")
    first = run(capsys, *args)[1]
    second = run(capsys, *args)[1]
    assert first == second
    assert "eve success" in first
    rec = json_lines(run(capsys, *args, "--json")[1])[0]
    assert rec["eve_success_target"] == pytest.approx(0.764575131106, abs=1e-12)
    assert abs(rec["ber"] - 0.1) < 4 * rec["ber_se"]


def test_compare(capsys):
    code, out, _ = run(capsys, "compare", "--d", "16", "--beta", "0.1", "--json")
    rec = json_lines(out)[0]
    assert rec["i_ae"] <= rec["sk2017"]
    assert rec["intercept_resend_lower"] < rec["i_ae"]


def test_parse_int_list():
    assert parse_int_list("5") == [5]
    assert parse_int_list("3,4, 7") == [3, 4, 7]
    assert parse_int_list("3-6") == [3, 4, 5, 6]


def test_round12_round_trips():
    rec = round12({"x": 1 / 3, "y": [2 / 3, 7], "z": True})
    again = json.loads(json.dumps(rec))
    assert again == rec and again["x"] == 0.333333333333


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "rrdps.cli", "--version"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "0.1.0" in proc.stdout


def test_verify_all_suites_default_draws(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "all", "--d", "3,4,5")
    assert code == 0, [line for line in out.splitlines() if line.startswith("FAIL")]
