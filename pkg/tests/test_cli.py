import json
from pathlib import Path

import numpy as np
import pytest

from iontherm.cli import main, parse_config
from iontherm.errors import ConfigError

REPO = Path(__file__).resolve().parents[1]
FIG1 = REPO / "configs" / "fig1.ini"
SWEEP_DTH = REPO / "configs" / "sweep_dtheta.ini"
SWEEP_R = REPO / "configs" / "sweep_r.ini"

TWO_PI = 2 * np.pi


def read_csv(path):
    """Parse one of our CSVs: '#' provenance lines, header row, float cells."""
    header, rows = None, []
    for line in path.read_text().splitlines():
        if line.startswith("#"):
            continue
        cells = line.split(",")
        if header is None:
            header = cells
            continue
        rows.append([float(c) if c else np.nan for c in cells])
    return header, np.array(rows)


def small_overrides(n=41, engines="analytic numeric", cutoff=3):
    return [f"run.n_points={n}", f"run.engines={engines}", f"run.cutoff={cutoff}"]


# ---------------------------------------------------------------- params

def test_params_reproduces_quoted_couplings(tmp_path, capsys):
    rc = main(["params", "--config", str(FIG1), "--out", str(tmp_path)])
    assert rc == 0
    payload = json.loads((tmp_path / "params.json").read_text())
    assert abs(payload["J12"] - 191.17) / 191.17 < 5e-3
    assert payload["J12"] == payload["J21"]
    assert abs(payload["V_plus"] - 382.34) / 382.34 < 5e-3
    assert payload["V_minus"] == 0.0
    assert np.isclose(payload["Omega_eff"], payload["J"], rtol=1e-12)
    out = capsys.readouterr().out
    assert "J12" in out and "Omega_eff" in out


def test_params_resonant_drive_exits_2(tmp_path, capsys):
    rc = main(["params", "--config", str(FIG1), "--out", str(tmp_path),
               "--override", "trap.delta=3.5838e6 Hz_cyclic"])
    assert rc == 2
    assert "resonant" in capsys.readouterr().err.lower()


def test_params_unit_equivalence(tmp_path, capsys):
    out_a = tmp_path / "cyclic"
    out_b = tmp_path / "angular"
    assert main(["params", "--config", str(FIG1), "--out", str(out_a)]) == 0
    stdout_a = capsys.readouterr().out
    text = FIG1.read_text()
    for key, value in [("omega_e", 12.643e9), ("mode1", 3.5838e6), ("mode2", 3.5305e6),
                       ("delta", 3.5571e6), ("rabi1", 300e3), ("rabi2", 300e3)]:
        old = next(line for line in text.splitlines() if line.startswith(f"{key} ="))
        text = text.replace(old, f"{key} = {value * TWO_PI!r} rad_per_s")
    alt = tmp_path / "fig1_rad.ini"
    alt.write_text(text)
    assert main(["params", "--config", str(alt), "--out", str(out_b)]) == 0
    stdout_b = capsys.readouterr().out
    assert stdout_a == stdout_b
    assert (out_a / "params.json").read_bytes() == (out_b / "params.json").read_bytes()


# ---------------------------------------------------------------- config validation

def test_unknown_key_rejected(tmp_path):
    bad = FIG1.read_text().replace("[run]", "[run]\nbogus_key = 1")
    with pytest.raises(ConfigError, match="bogus_key"):
        parse_config(bad)


def test_bare_frequency_rejected():
    bad = FIG1.read_text().replace("delta = 3.5571e6 Hz_cyclic", "delta = 3.5571e6")
    with pytest.raises(ConfigError, match="bare numbers"):
        parse_config(bad)


def test_unknown_unit_rejected():
    bad = FIG1.read_text().replace("3.5571e6 Hz_cyclic", "3.5571e6 GHz")
    with pytest.raises(ConfigError, match="unknown frequency unit"):
        parse_config(bad)


def test_config_error_exit_code(tmp_path, capsys):
    cfg = tmp_path / "broken.ini"
    cfg.write_text(FIG1.read_text().replace("T1 = 0.265 K", ""))
    rc = main(["validate-state", "--config", str(cfg), "--out", str(tmp_path)])
    assert rc == 1
    assert "config error" in capsys.readouterr().err


def test_gamma_thermal_section(tmp_path):
    text = FIG1.read_text().replace("T1 = 0.265 K", "gamma1 = 1.0").replace(
        "T2 = 0.255 K", "gamma2 = 2.0")
    config = parse_config(text)
    assert config.thermal.gamma1 == 1.0 and config.thermal.gamma2 == 2.0
    with pytest.raises(ConfigError, match="exactly one"):
        parse_config(FIG1.read_text().replace("T1 = 0.265 K", "gamma1 = 1.0"))


def test_omega_drive_instead_of_delta():
    text = FIG1.read_text().replace("delta = 3.5571e6 Hz_cyclic",
                                    f"omega_drive = {12.643e9 - 3.5571e6!r} Hz_cyclic")
    config = parse_config(text)
    np.testing.assert_allclose(config.trap.delta, TWO_PI * 3.5571e6, rtol=1e-9)
    with pytest.raises(ConfigError, match="not both"):
        parse_config(FIG1.read_text().replace(
            "rabi1 = 300e3 Hz_cyclic",
            "rabi1 = 300e3 Hz_cyclic\nomega_drive = 12.639e9 Hz_cyclic"))


def test_per_element_lamb_dicke_keys():
    text = FIG1.read_text().replace(
        "eta = 0.049",
        "eta11 = 0.01\neta12 = 0.02\neta21 = 0.03\neta22 = 0.04")
    config = parse_config(text)
    np.testing.assert_array_equal(config.trap.lamb_dicke,
                                  [[0.01, 0.02], [0.03, 0.04]])
    with pytest.raises(ConfigError, match="Lamb-Dicke"):
        parse_config(FIG1.read_text().replace("eta = 0.049", "eta11 = 0.01"))


def test_alpha_theta_in_degrees():
    text = FIG1.read_text().replace("alpha_theta_rad = 0", "alpha_theta_deg = 90")
    config = parse_config(text)
    np.testing.assert_allclose(config.thermal.alpha_theta, np.pi / 2, rtol=1e-12)


def test_explicit_t_end_seconds(tmp_path):
    argv = ["evolve", "--config", str(FIG1), "--out", str(tmp_path),
            "--override", "run.t_end=0.001 s", "--override", "run.n_points=5",
            "--override", "run.engines=analytic"]
    assert main(argv) == 0
    _, rows = read_csv(tmp_path / "evolve_analytic.csv")
    np.testing.assert_allclose(rows[-1, 0], 1e-3, rtol=1e-15)


# ---------------------------------------------------------------- evolve

def test_evolve_outputs_and_determinism(tmp_path, capsys):
    out1, out2 = tmp_path / "a", tmp_path / "b"
    argv = ["evolve", "--config", str(FIG1)]
    for extra in small_overrides():
        argv += ["--override", extra]
    assert main(argv + ["--out", str(out1)]) == 0
    assert main(argv + ["--out", str(out2)]) == 0
    for name in ("evolve_analytic.csv", "evolve_numeric.csv"):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()

    header, rows_a = read_csv(out1 / "evolve_analytic.csv")
    _, rows_n = read_csv(out1 / "evolve_numeric.csv")
    cols = {name: k for k, name in enumerate(header)}
    assert header[:6] == ["t_s", "two_Omega_t_rad", "Q1_norm", "Q2_norm",
                          "Q12_norm", "flux_norm"]
    # identical time columns across engines
    np.testing.assert_array_equal(rows_a[:, cols["t_s"]], rows_n[:, cols["t_s"]])
    # first analytic row: Q1_norm = 1 - tanh(Gamma1), window end 2 Omega t = pi/2
    np.testing.assert_allclose(rows_a[0, cols["Q1_norm"]], 0.18396059120415975,
                               rtol=1e-10)
    np.testing.assert_allclose(rows_a[-1, cols["two_Omega_t_rad"]], np.pi / 2,
                               rtol=1e-12)
    # analytic engine leaves phonon columns empty; numeric fills them
    assert np.isnan(rows_a[0, cols["n1"]]) and np.isfinite(rows_n[0, cols["n1"]])
    assert np.isfinite(rows_n[:, cols["top_fock_pop"]]).all()


# ---------------------------------------------------------------- sweep

def test_sweep_delta_theta_columns(tmp_path):
    argv = ["sweep", "--config", str(SWEEP_DTH), "--out", str(tmp_path),
            "--override", "sweep.n_steps=3", "--override", "run.n_points=21"]
    assert main(argv) == 0
    _, rows = read_csv(tmp_path / "sweep_delta_theta.csv")
    values = rows[:, 0]
    flux = rows[:, 2]
    n_t = 21
    assert rows.shape[0] == 3 * n_t
    col = {v: flux[values == v] for v in (-np.pi, 0.0, np.pi)}
    # antisymmetry around the baseline: f(dth) + f(-dth) = 2 f(0)
    np.testing.assert_allclose(col[-np.pi] + col[np.pi], 2 * col[0.0], atol=1e-9)
    assert rows[:, 3].all()  # every delta_theta point keeps a valid state
    # the dtheta = 0 column is the uncorrelated baseline
    from iontherm import analytic_trajectory, yb_thermal, yb_trap
    from iontherm.dynamics import TimeGrid
    ts = rows[values == 0.0][:, 1]
    base = analytic_trajectory(yb_trap(), yb_thermal(),
                               TimeGrid(ts[0], ts[-1], n_t))
    np.testing.assert_allclose(col[0.0], base.flux_norm, atol=1e-12)


def test_sweep_r_baseline_and_validity(tmp_path):
    argv = ["sweep", "--config", str(SWEEP_R), "--out", str(tmp_path),
            "--override", "sweep.n_steps=11", "--override", "run.n_points=21"]
    assert main(argv) == 0
    _, rows = read_csv(tmp_path / "sweep_r.csv")
    values, flux, valid = rows[:, 0], rows[:, 2], rows[:, 3]
    r0 = flux[values == 0.0]
    assert valid[values <= 0.08].all()
    assert not valid[values >= 0.1].any()
    # r = 0 column is the baseline: matches the analytic trajectory flux
    from iontherm import analytic_trajectory, yb_thermal, yb_trap
    from iontherm.dynamics import TimeGrid
    trap = yb_trap()
    grid = TimeGrid(0.0, rows[rows[:, 0] == 0.0][-1, 1], 21)
    base = analytic_trajectory(trap, yb_thermal(), grid)
    np.testing.assert_allclose(r0, base.flux_norm, atol=1e-12)


def test_sweep_requires_section(tmp_path, capsys):
    rc = main(["sweep", "--config", str(FIG1), "--out", str(tmp_path)])
    assert rc == 1


# ---------------------------------------------------------------- compare

def test_compare_zero_tolerance_fails(tmp_path):
    argv = ["compare", "--config", str(FIG1), "--out", str(tmp_path),
            "--tolerance", "0"]
    for extra in small_overrides(n=11):
        argv += ["--override", extra]
    assert main(argv) == 3
    payload = json.loads((tmp_path / "compare.json").read_text())
    assert payload["pass"] is False
    assert set(payload["max_abs_deviation"]) == {"q1", "q2", "q12", "flux"}
    assert payload["gated_observables"] == ["q1", "q2"]


def test_compare_loose_tolerance_passes(tmp_path):
    # a tolerance above the measured frame deviation gates green
    argv = ["compare", "--config", str(FIG1), "--out", str(tmp_path),
            "--tolerance", "10"]
    for extra in small_overrides(n=11):
        argv += ["--override", extra]
    assert main(argv) == 0
    assert json.loads((tmp_path / "compare.json").read_text())["pass"] is True


def test_compare_requires_both_engines(tmp_path, capsys):
    argv = ["compare", "--config", str(FIG1), "--out", str(tmp_path),
            "--override", "run.engines=analytic"]
    assert main(argv) == 1


def test_compare_rejects_mismatched_grids(tmp_path, capsys):
    argv = ["compare", "--config", str(FIG1), "--out", str(tmp_path),
            "--override", "run.n_points_analytic=11",
            "--override", "run.n_points_numeric=21",
            "--override", "run.cutoff=2"]
    assert main(argv) == 1
    assert "identical grids" in capsys.readouterr().err


# ---------------------------------------------------------------- validate-state

def test_validate_state_reports_psd(tmp_path, capsys):
    rc = main(["validate-state", "--config", str(FIG1), "--out", str(tmp_path)])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["psd"] is True
    np.testing.assert_allclose(payload["trace"], 1.0, atol=1e-14)
    assert payload["reference_bound_value"] < 0
    assert payload["reference_bound_satisfied"] is False
    assert (tmp_path / "state_report.json").exists()
