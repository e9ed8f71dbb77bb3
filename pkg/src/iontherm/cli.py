"""Command-line front end: config ingestion, subcommands and CSV/JSON emission.

Config files are INI-style (configparser).  Every frequency value must carry an
explicit unit token, either ``Hz_cyclic`` (converted by 2 pi on load) or
``rad_per_s``; angles carry ``rad`` or ``deg``; temperatures ``K``; times ``s``.
Unknown sections or keys are rejected.  Output is a pure function of the config
and flags: rerunning a command reproduces every file byte for byte.

Exit codes: 0 success, 1 config error, 2 engine/precondition error,
3 comparison failure.
"""

import argparse
import configparser
import io
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .analytic import AnalyticContext, validity_window
from .dynamics import TimeGrid
from .errors import ConfigError, IonthermError
from .experiment import (Scenario, SweepSpec, compare_trajectories, run_fig2,
                         run_scenario)
from .hilbert import FockCutoff
from .model import TrapParams, derive_couplings
from .states import ThermalSpec, build_rho_s0, validate_state

TWO_PI = 2.0 * np.pi

_FREQ_UNITS = {"Hz_cyclic": TWO_PI, "rad_per_s": 1.0}
_ANGLE_UNITS = {"rad": 1.0, "deg": np.pi / 180.0}

_KNOWN_KEYS = {
    "trap": {"omega_e", "delta", "omega_drive", "mode1", "mode2", "rabi1", "rabi2",
             "eta", "eta11", "eta12", "eta21", "eta22", "phi1", "phi2"},
    "thermal": {"T1", "T2", "gamma1", "gamma2", "alpha_r", "alpha_theta_rad",
                "alpha_theta_deg"},
    "run": {"cutoff", "t_start", "t_end", "n_points", "n_points_analytic",
            "n_points_numeric", "engines", "tolerance"},
    "sweep": {"axis", "start", "stop", "n_steps", "fixed_r", "fixed_delta_theta"},
    "output": {"directory", "formats"},
}


def _parse_unit_value(raw: str, units: dict, kind: str, key: str) -> float:
    parts = raw.split()
    if len(parts) != 2:
        raise ConfigError(f"{key}: expected '<value> <unit>' with unit in "
                          f"{sorted(units)}, got {raw!r} (bare numbers are rejected)")
    value, unit = parts
    if unit not in units:
        raise ConfigError(f"{key}: unknown {kind} unit {unit!r}; expected {sorted(units)}")
    try:
        return float(value) * units[unit]
    except ValueError:
        raise ConfigError(f"{key}: cannot parse number {value!r}")


def _parse_float(raw: str, key: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"{key}: cannot parse number {raw!r}")


def _parse_int(raw: str, key: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{key}: cannot parse integer {raw!r}")


@dataclass
class RunSettings:
    cutoff: FockCutoff = field(default_factory=FockCutoff)
    t_start: float = 0.0
    t_end: float = None          # None -> validity window
    n_points: int = 201
    n_points_analytic: int = None
    n_points_numeric: int = None
    engines: tuple = ("analytic", "numeric")
    tolerance: float = 0.05


@dataclass
class OutputSettings:
    directory: str = "out"
    formats: tuple = ("csv", "json")


@dataclass
class Config:
    trap: TrapParams
    thermal: ThermalSpec
    run: RunSettings
    output: OutputSettings
    sweep: SweepSpec = None
    raw: dict = field(default_factory=dict)


def _read_sections(text: str) -> dict:
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str  # keep key case (T1 vs t1)
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse config: {exc}")
    sections = {}
    for name in parser.sections():
        if name not in _KNOWN_KEYS:
            raise ConfigError(f"unknown section [{name}]; expected {sorted(_KNOWN_KEYS)}")
        sections[name] = dict(parser.items(name))
        unknown = set(sections[name]) - _KNOWN_KEYS[name]
        if unknown:
            raise ConfigError(f"unknown key(s) in [{name}]: {sorted(unknown)}")
    for required in ("trap", "thermal"):
        if required not in sections:
            raise ConfigError(f"missing required section [{required}]")
    return sections


def apply_overrides(sections: dict, overrides) -> dict:
    """Apply repeatable --override section.key=value entries to the raw map."""
    for item in overrides or ():
        head, sep, value = item.partition("=")
        if not sep:
            raise ConfigError(f"override {item!r} is not of the form section.key=value")
        section, dot, key = head.partition(".")
        if not dot:
            raise ConfigError(f"override key {head!r} must be section.key")
        if section not in _KNOWN_KEYS:
            raise ConfigError(f"override targets unknown section [{section}]")
        if key not in _KNOWN_KEYS[section]:
            raise ConfigError(f"override targets unknown key {key!r} in [{section}]")
        sections.setdefault(section, {})[key] = value
    return sections


def _build_trap(sec: dict) -> TrapParams:
    for req in ("omega_e", "mode1", "mode2", "rabi1", "rabi2"):
        if req not in sec:
            raise ConfigError(f"[trap] missing required key {req!r}")
    freq = lambda key: _parse_unit_value(sec[key], _FREQ_UNITS, "frequency", f"trap.{key}")
    if "eta" in sec:
        if not {"eta11", "eta12", "eta21", "eta22"}.isdisjoint(sec):
            raise ConfigError("[trap] give either scalar eta or the four eta_jm, not both")
        eta = np.full((2, 2), _parse_float(sec["eta"], "trap.eta"))
    else:
        try:
            eta = np.array([[_parse_float(sec[f"eta{j}{m}"], f"trap.eta{j}{m}")
                             for m in (1, 2)] for j in (1, 2)])
        except KeyError as exc:
            raise ConfigError(f"[trap] missing Lamb-Dicke key {exc}")
    if "delta" in sec and "omega_drive" in sec:
        raise ConfigError("[trap] give either delta or omega_drive, not both")
    if "delta" not in sec and "omega_drive" not in sec:
        raise ConfigError("[trap] one of delta / omega_drive is required")
    angle = lambda key: _parse_unit_value(sec.get(key, "0 rad"), _ANGLE_UNITS,
                                          "angle", f"trap.{key}")
    kwargs = dict(
        omega_e=freq("omega_e"),
        mode_freqs=(freq("mode1"), freq("mode2")),
        rabi=(freq("rabi1"), freq("rabi2")),
        lamb_dicke=eta,
        phases=(angle("phi1"), angle("phi2")),
    )
    if "delta" in sec:
        kwargs["delta"] = freq("delta")
    else:
        kwargs["omega_drive"] = freq("omega_drive")
    return TrapParams(**kwargs)


def _build_thermal(sec: dict, omega_e: float) -> ThermalSpec:
    has_t = "T1" in sec or "T2" in sec
    has_g = "gamma1" in sec or "gamma2" in sec
    if has_t == has_g:
        raise ConfigError("[thermal] give exactly one of (T1, T2) or (gamma1, gamma2)")
    if "alpha_theta_rad" in sec and "alpha_theta_deg" in sec:
        raise ConfigError("[thermal] give alpha_theta_rad or alpha_theta_deg, not both")
    theta = 0.0
    if "alpha_theta_rad" in sec:
        theta = _parse_float(sec["alpha_theta_rad"], "thermal.alpha_theta_rad")
    elif "alpha_theta_deg" in sec:
        theta = np.deg2rad(_parse_float(sec["alpha_theta_deg"], "thermal.alpha_theta_deg"))
    alpha_r = _parse_float(sec.get("alpha_r", "0"), "thermal.alpha_r")
    if has_t:
        if "T1" not in sec or "T2" not in sec:
            raise ConfigError("[thermal] both T1 and T2 are required")
        t1 = _parse_unit_value(sec["T1"], {"K": 1.0}, "temperature", "thermal.T1")
        t2 = _parse_unit_value(sec["T2"], {"K": 1.0}, "temperature", "thermal.T2")
        return ThermalSpec.from_temperatures(omega_e, t1, t2, alpha_r, theta)
    if "gamma1" not in sec or "gamma2" not in sec:
        raise ConfigError("[thermal] both gamma1 and gamma2 are required")
    return ThermalSpec(_parse_float(sec["gamma1"], "thermal.gamma1"),
                       _parse_float(sec["gamma2"], "thermal.gamma2"), alpha_r, theta)


def _build_run(sec: dict) -> RunSettings:
    rs = RunSettings()
    if "cutoff" in sec:
        rs.cutoff = FockCutoff(_parse_int(sec["cutoff"], "run.cutoff"))
    if "t_start" in sec:
        rs.t_start = _parse_unit_value(sec["t_start"], {"s": 1.0}, "time", "run.t_start")
    if "t_end" in sec and sec["t_end"] != "auto":
        rs.t_end = _parse_unit_value(sec["t_end"], {"s": 1.0}, "time", "run.t_end")
    if "n_points" in sec:
        rs.n_points = _parse_int(sec["n_points"], "run.n_points")
    for key in ("n_points_analytic", "n_points_numeric"):
        if key in sec:
            setattr(rs, key, _parse_int(sec[key], f"run.{key}"))
    if "engines" in sec:
        engines = tuple(sec["engines"].split())
        for e in engines:
            if e not in ("analytic", "numeric"):
                raise ConfigError(f"run.engines: unknown engine {e!r}")
        if not engines:
            raise ConfigError("run.engines: at least one engine required")
        rs.engines = engines
    if "tolerance" in sec:
        rs.tolerance = _parse_float(sec["tolerance"], "run.tolerance")
    return rs


def _build_sweep(sec: dict) -> SweepSpec:
    for req in ("axis", "start", "stop"):
        if req not in sec:
            raise ConfigError(f"[sweep] missing required key {req!r}")
    axis = sec["axis"]
    if axis not in ("r", "delta_theta"):
        raise ConfigError(f"sweep.axis must be 'r' or 'delta_theta', got {axis!r}")
    return SweepSpec(axis=axis,
                     start=_parse_float(sec["start"], "sweep.start"),
                     stop=_parse_float(sec["stop"], "sweep.stop"),
                     n_steps=_parse_int(sec.get("n_steps", "101"), "sweep.n_steps"))


def parse_config(text: str, overrides=None) -> Config:
    """Parse and validate a config document (fail-closed)."""
    sections = apply_overrides(_read_sections(text), overrides)
    trap = _build_trap(sections["trap"])
    thermal = _build_thermal(sections["thermal"], trap.omega_e)
    run = _build_run(sections.get("run", {}))
    out_sec = sections.get("output", {})
    formats = tuple(out_sec.get("formats", "csv json").split())
    for f in formats:
        if f not in ("csv", "json"):
            raise ConfigError(f"output.formats: unknown format {f!r}")
    output = OutputSettings(directory=out_sec.get("directory", "out"), formats=formats)
    sweep = _build_sweep(sections["sweep"]) if "sweep" in sections else None
    return Config(trap=trap, thermal=thermal, run=run, output=output, sweep=sweep,
                  raw=sections)


def load_config(path: str, overrides=None) -> Config:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}")
    return parse_config(text, overrides)


# ---------------------------------------------------------------- output


def _fmt(x) -> str:
    """17 significant digits: round-trip exact for doubles, deterministic."""
    if x is None:
        return ""
    return f"{x:.17g}"


def _provenance_lines(config: Config) -> list:
    lines = ["# iontherm run"]
    for section in sorted(config.raw):
        for key in sorted(config.raw[section]):
            lines.append(f"# {section}.{key} = {config.raw[section][key]}")
    return lines


def _write_csv(path: Path, header_cols, rows, provenance) -> None:
    buf = io.StringIO()
    for line in provenance:
        buf.write(line + "\n")
    buf.write(",".join(header_cols) + "\n")
    for row in rows:
        buf.write(",".join(_fmt(v) if not isinstance(v, str) else v for v in row) + "\n")
    path.write_text(buf.getvalue())


def _grids(config: Config, ctx: AnalyticContext) -> dict:
    t_end = config.run.t_end if config.run.t_end is not None else validity_window(ctx)
    grids = {}
    for engine in config.run.engines:
        n = getattr(config.run, f"n_points_{engine}") or config.run.n_points
        grids[engine] = TimeGrid(config.run.t_start, t_end, n)
    return grids


def _context(config: Config) -> AnalyticContext:
    c = derive_couplings(config.trap)
    return AnalyticContext.from_couplings(c, config.thermal, config.trap.omega_e)


# ---------------------------------------------------------------- subcommands


def cmd_params(config: Config, out_dir: Path) -> int:
    c = derive_couplings(config.trap)
    ctx = _context(config)
    t_max = validity_window(ctx) if ctx.omega_eff > 0 else float("nan")
    print("trap parameters (rad/s):")
    print(f"  omega_e     = {_fmt(config.trap.omega_e)}")
    print(f"  delta       = {_fmt(config.trap.delta)}")
    print(f"  mode_freqs  = {_fmt(config.trap.mode_freqs[0])}, {_fmt(config.trap.mode_freqs[1])}")
    print(f"  rabi        = {_fmt(config.trap.rabi[0])}, {_fmt(config.trap.rabi[1])}")
    print(f"  eta         = {config.trap.lamb_dicke.tolist()}")
    print(f"  phases      = {_fmt(config.trap.phases[0])}, {_fmt(config.trap.phases[1])} rad")
    print("derived couplings:")
    print(f"  g[m,j]      = {c.g.tolist()}")
    print(f"  V[j,m]      = {c.v.tolist()} rad/s")
    print(f"  J12, J21    = {_fmt(c.j12)}, {_fmt(c.j21)} rad/s")
    print(f"  J = J12+J21 = {_fmt(c.j_total)} rad/s")
    print(f"  V+, V-      = {_fmt(c.v_plus)}, {_fmt(c.v_minus)} rad/s")
    print(f"  Omega_eff   = {_fmt(c.omega_eff)} rad/s")
    print(f"  delta_phi   = {_fmt(c.delta_phi)} rad")
    print(f"  t_max       = {_fmt(t_max)} s  (2 Omega t = pi/2)")
    notes = []
    if np.any(config.trap.lamb_dicke > 0.3):
        notes.append("Lamb-Dicke factor above 0.3: first-order coupling unreliable")
    for j in range(2):
        for m in range(2):
            det = config.trap.delta - config.trap.mode_freqs[m]
            coup = config.trap.rabi[j] * config.trap.lamb_dicke[j, m]
            if coup >= abs(det):
                notes.append(f"dispersive condition violated for ion {j + 1}, "
                             f"mode {m + 1}: Omega*eta >= |delta - omega_m|")
    print("validity warnings:" if notes else "validity warnings: none")
    for note in notes:
        print(f"  - {note}")
    if "json" in config.output.formats:
        out_dir.mkdir(parents=True, exist_ok=True)
        payload = {
            "g": c.g.tolist(), "V": c.v.tolist(),
            "J12": c.j12, "J21": c.j21, "J": c.j_total,
            "V_plus": c.v_plus, "V_minus": c.v_minus,
            "Omega_eff": c.omega_eff, "delta_phi": c.delta_phi, "t_max": t_max,
        }
        (out_dir / "params.json").write_text(json.dumps(payload, indent=2, sort_keys=True))
    return 0


_EVOLVE_COLS = ["t_s", "two_Omega_t_rad", "Q1_norm", "Q2_norm", "Q12_norm",
                "flux_norm", "Q1_J", "Q2_J", "n1", "n2", "top_fock_pop"]


def cmd_evolve(config: Config, out_dir: Path) -> int:
    ctx = _context(config)
    grids = _grids(config, ctx)
    out_dir.mkdir(parents=True, exist_ok=True)
    for engine, grid in grids.items():
        s = Scenario(name=engine, trap=config.trap, thermal=config.thermal,
                     grid=grid, cutoff=config.run.cutoff, engines=(engine,))
        traj = run_scenario(s)[engine]
        ts = grid.times()
        rows = []
        for k in range(len(ts)):
            rows.append([
                ts[k], 2 * ctx.omega_eff * ts[k],
                traj.q1_norm[k], traj.q2_norm[k], traj.q12_norm[k],
                traj.flux_norm[k],
                traj.q1[k], traj.q2[k],
                traj.n1[k] if traj.n1 is not None else None,
                traj.n2[k] if traj.n2 is not None else None,
                traj.top_fock[k] if traj.top_fock is not None else None,
            ])
        _write_csv(out_dir / f"evolve_{engine}.csv", _EVOLVE_COLS, rows,
                   _provenance_lines(config) + [f"# engine = {engine}"])
        print(f"wrote {out_dir / f'evolve_{engine}.csv'}")
    return 0


def cmd_sweep(config: Config, out_dir: Path) -> int:
    if config.sweep is None:
        raise ConfigError("sweep command requires a [sweep] section")
    sec = config.raw.get("sweep", {})
    fixed_r = _parse_float(sec.get("fixed_r", "0.05"), "sweep.fixed_r")
    fixed_dth = _parse_float(sec.get("fixed_delta_theta", str(-np.pi / 2)),
                             "sweep.fixed_delta_theta")
    result = run_fig2(config.sweep.axis, trap=config.trap, fixed_r=fixed_r,
                      fixed_delta_theta=fixed_dth, sweep=config.sweep,
                      n_t=config.run.n_points, thermal_base=config.thermal)
    rows = []
    for i, val in enumerate(result.axis_values):
        for k, t in enumerate(result.t):
            rows.append([val, t, result.flux_norm[i, k],
                         "1" if result.state_valid[i] else "0"])
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"sweep_{config.sweep.axis}.csv"
    _write_csv(path, ["axis_value", "t_s", "flux_norm", "state_valid"], rows,
               _provenance_lines(config) + [f"# axis = {config.sweep.axis}"])
    print(f"wrote {path}")
    return 0


def cmd_compare(config: Config, out_dir: Path, tolerance: float = None) -> int:
    if set(config.run.engines) != {"analytic", "numeric"}:
        raise ConfigError("compare requires engines = analytic numeric")
    ctx = _context(config)
    grids = _grids(config, ctx)
    if grids["analytic"] != grids["numeric"]:
        raise ConfigError("compare requires identical grids for both engines")
    tol = tolerance if tolerance is not None else config.run.tolerance
    s = Scenario(name="compare", trap=config.trap, thermal=config.thermal,
                 grid=grids["analytic"], cutoff=config.run.cutoff,
                 engines=("analytic", "numeric"))
    trajs = run_scenario(s)
    report = compare_trajectories(trajs["analytic"], trajs["numeric"], tol)
    payload = report.to_dict()
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "compare.json").write_text(json.dumps(payload, indent=2, sort_keys=True))
    verdict = "PASS" if report.passed else "FAIL"
    worst = max(payload["max_abs_deviation"][g] for g in ("q1", "q2"))
    print(f"compare: {verdict}  (max gated deviation {worst:.6g} vs tolerance {tol:g} "
          f"in units of hbar*omega_e/2); report at {out_dir / 'compare.json'}")
    return 0 if report.passed else 3


def cmd_validate_state(config: Config, out_dir: Path) -> int:
    rho = build_rho_s0(config.thermal)
    report = validate_state(rho, config.thermal)
    payload = {
        "trace": report.trace,
        "min_eigenvalue": report.min_eigenvalue,
        "psd": report.psd,
        "reference_bound_value": report.reference_bound_value,
        "reference_bound_satisfied": report.reference_bound_satisfied,
    }
    print(json.dumps(payload, indent=2, sort_keys=True))
    if "json" in config.output.formats:
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / "state_report.json").write_text(json.dumps(payload, indent=2,
                                                              sort_keys=True))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="iontherm",
        description="Two-trapped-ion heat-flow simulator: derived couplings, "
                    "closed-form and full Fock-space evolution, sweeps and comparisons.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
            ("params", "echo trap inputs and derived couplings"),
            ("evolve", "write trajectory CSV per engine"),
            ("sweep", "write a flux surface CSV over r or delta_theta"),
            ("compare", "run both engines and gate deviations against a tolerance"),
            ("validate-state", "report trace/PSD validity of the prepared state")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="path to the INI config file")
        p.add_argument("--out", default=None, help="output directory (default from config)")
        p.add_argument("--override", action="append", default=[],
                       metavar="SECTION.KEY=VALUE", help="override a config entry")
        if name == "compare":
            p.add_argument("--tolerance", type=float, default=None,
                           help="gate tolerance in units of hbar*omega_e/2")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config, args.override)
        out_dir = Path(args.out) if args.out else Path(config.output.directory)
        if args.command == "params":
            return cmd_params(config, out_dir)
        if args.command == "evolve":
            return cmd_evolve(config, out_dir)
        if args.command == "sweep":
            return cmd_sweep(config, out_dir)
        if args.command == "compare":
            return cmd_compare(config, out_dir, args.tolerance)
        if args.command == "validate-state":
            return cmd_validate_state(config, out_dir)
        raise ConfigError(f"unknown command {args.command!r}")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except IonthermError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
