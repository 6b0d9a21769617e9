import csv
import io
import json

import pytest

from casimir_cooling.cli import EXIT_CONFIG, EXIT_IO, EXIT_OK, EXIT_UNSTABLE, main
from casimir_cooling.params import thermal_occupation


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_simulate_fig2(capsys):
    code, out, _ = run(capsys, "simulate", "--scenario", "fig2", "--set", "theta_over_nu=1.0", "--set", "g=-6.5e3")
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["m_eff"][0] < 10
    assert rep["stability"]["stable"]
    assert rep["entanglement"]["m1_ph"]["logneg"] > 0
    assert rep["meta"]["preset"] == "fig2"


def test_simulate_decoupled(capsys):
    code, out, _ = run(capsys, "simulate", "--scenario", "fig2", "--set", "g=0")
    rep = json.loads(out)
    assert code == EXIT_OK
    assert rep["m_eff"][0] == pytest.approx(thermal_occupation(2e6, 0.01), rel=1e-9)
    assert rep["entanglement"]["m1_ph"]["logneg"] == 0.0


def test_simulate_unstable_exit_code(capsys):
    code, out, err = run(capsys, "simulate", "--scenario", "fig2", "--set", "theta_over_nu=-1", "--set", "g=-1e7")
    assert code == EXIT_UNSTABLE
    assert json.loads(out)["stability"]["stable"] is False
    assert "no steady state" in err


def test_malformed_config_produces_no_output(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{ not json")
    target = tmp_path / "out.csv"
    code, out, err = run(capsys, "sweep", "--config", str(bad), "--output", str(target))
    assert code == EXIT_CONFIG
    assert out == "" and not target.exists()
    assert "line 1" in err


def test_unknown_override_key(capsys):
    code, out, err = run(capsys, "simulate", "--scenario", "fig2", "--set", "foo=1")
    assert code == EXIT_CONFIG and out == ""


def test_sweep_csv_header_and_rows(capsys):
    code, out, _ = run(capsys, "sweep", "--scenario", "fig3", "--set", "sweep.num=11")
    assert code == EXIT_OK
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["axis_value", "stable", "decay_rate_hz", "m_eff_1", "eta_minus_m1_ph", "logneg_m1_ph"]
    assert len(rows) == 12
    mid = rows[6]
    assert float(mid[0]) == 1.0 and mid[1] == "true" and float(mid[5]) > 0


def test_sweep_unstable_cells_empty(capsys):
    code, out, _ = run(
        capsys, "sweep", "--scenario", "fig3", "--set", "sweep.axis=coupling", "--set", "theta_over_nu=-1",
        "--set", "sweep.grid=[-1e7]",
    )
    assert code == EXIT_OK
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[1][1] == "false" and rows[1][2:] == ["", "", "", ""]


def test_sweep_json(capsys):
    code, out, _ = run(capsys, "sweep", "--scenario", "fig4", "--set", "sweep.num=3", "--format", "json")
    payload = json.loads(out)
    assert code == EXIT_OK
    assert payload["meta"]["provenance"].startswith("Fig. 4")
    assert payload["meta"]["config"]["modes"][1]["nu"] == pytest.approx(1.98e6)
    assert list(payload["rows"][0]) == payload["meta"]["columns"]
    assert payload["meta"]["columns"][-2:] == ["eta_minus_m1_m2", "logneg_m1_m2"]


def test_sweep_all_curves(capsys, tmp_path):
    target = tmp_path / "fig2.csv"
    code, _, _ = run(capsys, "sweep", "--scenario", "fig2", "--curve", "all", "--set", "sweep.num=3", "--output", str(target))
    assert code == EXIT_OK
    assert sorted(p.name for p in tmp_path.iterdir()) == sorted(
        f"fig2_{c}.csv" for c in ("g-6.5k", "g-5k", "g0", "g-6.5k_T0.1")
    )


def test_density_sweep_has_outer_column(capsys):
    code, out, _ = run(capsys, "sweep", "--scenario", "figB_density", "--set", "sweep.num=3", "--set", "sweep.outer.num=2")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == EXIT_OK
    assert rows[0][:2] == ["outer_value", "axis_value"] and len(rows) == 7


def test_output_io_error(capsys, tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    code, _, err = run(capsys, "simulate", "--scenario", "fig2", "--output", str(blocker / "x.json"))
    assert code == EXIT_IO and "cannot write" in err


def test_check_stability(capsys):
    code, out, _ = run(capsys, "check-stability", "--scenario", "fig2", "--format", "csv")
    assert code == EXIT_OK
    assert "spectral: true" in out and "routh_hurwitz: true" in out


def test_check_stability_multimode(capsys):
    code, out, _ = run(capsys, "check-stability", "--scenario", "fig4")
    rep = json.loads(out)
    assert code == EXIT_OK
    assert rep["routh_hurwitz_stable"] is None and rep["spectral_stable"] in (True, False)


def test_dump_matrices(capsys):
    code, out, _ = run(capsys, "dump-matrices", "--scenario", "fig2")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "# ordering: q1,p1,X,Y"
    assert "# covariance" in out and "# drift" in out


def test_scenario_listing(capsys):
    code, out, _ = run(capsys, "scenario")
    assert code == EXIT_OK and "fig5" in out
    code, out, _ = run(capsys, "scenario", "fig5")
    assert json.loads(out)["atoms"]["rabi"] == 17.5e6
    code, _, _ = run(capsys, "scenario", "nope")
    assert code == EXIT_CONFIG
