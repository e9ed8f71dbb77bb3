"""Named scenario runs: the bundled Yb operating point, engine comparisons,
flux sweep surfaces and the correlation threshold for flow reversal."""

from dataclasses import dataclass, field

import numpy as np

from .analytic import AnalyticContext, heat_flux, q1, q12, q2, validity_window
from .dynamics import TimeGrid, Trajectory, run_numeric_trajectory
from .errors import NoReversalPossible
from .hilbert import FockCutoff
from .model import TrapParams, derive_couplings
from .states import ThermalSpec, alpha_psd_limit

TWO_PI = 2.0 * np.pi

# Bundled Yb operating point (angular frequencies).
YB_OMEGA_E = TWO_PI * 12.643e9
YB_MODE_FREQS = (TWO_PI * 3.5838e6, TWO_PI * 3.5305e6)
YB_DELTA = TWO_PI * 3.5571e6
YB_RABI = (TWO_PI * 300e3, TWO_PI * 300e3)
YB_ETA = 0.049
YB_PHASES = (-np.pi / 2, 0.0)      # delta_phi = -pi/2
YB_T1 = 0.265                      # K
YB_T2 = 0.255                      # K


def yb_trap() -> TrapParams:
    """Trap parameters of the bundled Yb operating point."""
    return TrapParams(omega_e=YB_OMEGA_E, mode_freqs=YB_MODE_FREQS, rabi=YB_RABI,
                      lamb_dicke=YB_ETA, phases=YB_PHASES, delta=YB_DELTA)


def yb_thermal(alpha_r: float = 0.0, alpha_theta: float = 0.0) -> ThermalSpec:
    """Thermal spins at 265 mK / 255 mK with an optional coherence."""
    return ThermalSpec.from_temperatures(YB_OMEGA_E, YB_T1, YB_T2, alpha_r, alpha_theta)


def default_grid(trap: TrapParams, n_points: int = 201) -> TimeGrid:
    """Grid over the trusted window [0, pi / (4 omega_eff)]."""
    c = derive_couplings(trap)
    ctx = AnalyticContext.from_couplings(c, ThermalSpec(1.0, 1.0), trap.omega_e)
    return TimeGrid(0.0, validity_window(ctx), n_points)


@dataclass
class SweepSpec:
    """One swept axis: 'r' or 'delta_theta', inclusive range, step count."""

    axis: str
    start: float
    stop: float
    n_steps: int = 101

    def __post_init__(self):
        if self.axis not in ("r", "delta_theta"):
            raise ValueError(f"sweep axis must be 'r' or 'delta_theta', got {self.axis!r}")
        if self.n_steps < 1:
            raise ValueError("n_steps must be >= 1")

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.n_steps)


@dataclass
class Scenario:
    """A runnable configuration: trap + thermal preparation + run controls."""

    name: str
    trap: TrapParams
    thermal: ThermalSpec
    grid: TimeGrid = None
    cutoff: FockCutoff = field(default_factory=FockCutoff)
    engines: tuple = ("analytic", "numeric")
    sweep: SweepSpec = None

    def __post_init__(self):
        if self.grid is None:
            self.grid = default_grid(self.trap)
        for e in self.engines:
            if e not in ("analytic", "numeric"):
                raise ValueError(f"unknown engine {e!r}")


def analytic_trajectory(trap: TrapParams, thermal: ThermalSpec, grid: TimeGrid) -> Trajectory:
    """Closed-form trajectory of the effective spin model."""
    c = derive_couplings(trap)
    ctx = AnalyticContext.from_couplings(c, thermal, trap.omega_e)
    ts = grid.times()
    return Trajectory(
        engine="analytic", grid=grid, omega_e=trap.omega_e,
        q1=q1(ctx, ts), q2=q2(ctx, ts), q12=q12(ctx, ts), flux=heat_flux(ctx, ts),
        params={"gamma1": thermal.gamma1, "gamma2": thermal.gamma2,
                "alpha_r": thermal.alpha_r, "alpha_theta": thermal.alpha_theta},
    )


def run_scenario(s: Scenario) -> dict:
    """Run the requested engines; returns {engine: Trajectory}."""
    out = {}
    if "analytic" in s.engines:
        out["analytic"] = analytic_trajectory(s.trap, s.thermal, s.grid)
    if "numeric" in s.engines:
        out["numeric"] = run_numeric_trajectory(s.trap, s.thermal, s.grid, s.cutoff)
    return out


@dataclass
class ComparisonReport:
    """Engine-vs-engine deviations in units of hbar omega_e / 2.

    `deviations` maps observable name to (max |analytic - numeric|, time of max).
    Only the observables in `gated` count toward `passed`; flux is reported in
    (hbar omega_e / 2) / s and never gated by default.
    """

    tolerance: float
    gated: tuple
    deviations: dict
    passed: bool

    def to_dict(self) -> dict:
        return {
            "tolerance": self.tolerance,
            "gated_observables": list(self.gated),
            "max_abs_deviation": {k: v[0] for k, v in self.deviations.items()},
            "at_time": {k: v[1] for k, v in self.deviations.items()},
            "pass": self.passed,
        }


def compare_trajectories(a: Trajectory, b: Trajectory, tolerance: float,
                         gated: tuple = ("q1", "q2")) -> ComparisonReport:
    """Maximum pointwise deviation per observable between two same-grid runs."""
    if a.grid != b.grid:
        raise ValueError("trajectories must share one time grid")
    ts = a.grid.times()
    devs = {}
    for name in ("q1", "q2", "q12"):
        d = np.abs(getattr(a, f"{name}_norm") - getattr(b, f"{name}_norm"))
        k = int(np.argmax(d))
        devs[name] = (float(d[k]), float(ts[k]))
    if a.flux is not None and b.flux is not None:
        d = np.abs(a.flux_norm - b.flux_norm)
        k = int(np.argmax(d))
        devs["flux"] = (float(d[k]), float(ts[k]))
    passed = all(devs[g][0] <= tolerance for g in gated)
    return ComparisonReport(tolerance=tolerance, gated=gated, deviations=devs, passed=passed)


@dataclass
class Fig1Case:
    """One correlation amplitude of the two-engine comparison run."""

    alpha_r: float
    analytic: Trajectory
    numeric: Trajectory
    report: ComparisonReport


@dataclass
class Fig1Result:
    """Cases in alpha order plus the reversal verdicts.

    The scalar flags compare flux signs at the first interior grid point; the
    sign maps record, per grid point, where the correlated flux opposes the
    baseline (reversal here is time-local, not global).
    """

    cases: list
    reversal_analytic: bool
    reversal_numeric: bool
    probe_time: float
    reversal_map_analytic: np.ndarray = None
    reversal_map_numeric: np.ndarray = None


def _sign_flip(baseline: float, correlated: float) -> bool:
    return bool(np.sign(baseline) != 0 and np.sign(correlated) == -np.sign(baseline))


def run_fig1(trap: TrapParams = None, alpha_values=(0.0, 0.05), alpha_theta: float = 0.0,
             grid: TimeGrid = None, cutoff: FockCutoff = FockCutoff(),
             engines: tuple = ("analytic", "numeric"), tolerance: float = 0.05,
             thermal_base: ThermalSpec = None) -> Fig1Result:
    """Correlated vs uncorrelated runs on both engines plus the reversal verdict.

    Temperatures default to the bundled operating point (pass thermal_base to
    change them); the correlation of each case comes from alpha_values.  The
    reversal flag compares the flux sign at the first interior grid point
    between the baseline (first alpha value, normally 0) and the last alpha value.
    """
    trap = trap or yb_trap()
    grid = grid or default_grid(trap)
    if thermal_base is None:
        thermal_base = ThermalSpec.from_temperatures(trap.omega_e, YB_T1, YB_T2)
    cases = []
    for r in alpha_values:
        thermal = ThermalSpec(thermal_base.gamma1, thermal_base.gamma2, r, alpha_theta)
        s = Scenario(name=f"alpha={r}", trap=trap, thermal=thermal, grid=grid,
                     cutoff=cutoff, engines=engines)
        trajs = run_scenario(s)
        a = trajs.get("analytic")
        n = trajs.get("numeric")
        report = compare_trajectories(a, n, tolerance) if a is not None and n is not None else None
        cases.append(Fig1Case(alpha_r=r, analytic=a, numeric=n, report=report))

    k = 1  # first interior point: the "small t" probe
    t_probe = grid.times()[k]
    rev_a = rev_n = False
    map_a = map_n = None
    if len(cases) >= 2:
        base, corr = cases[0], cases[-1]
        if base.analytic is not None and corr.analytic is not None:
            rev_a = _sign_flip(base.analytic.flux[k], corr.analytic.flux[k])
            map_a = np.sign(corr.analytic.flux) == -np.sign(base.analytic.flux)
        if base.numeric is not None and corr.numeric is not None:
            rev_n = _sign_flip(base.numeric.flux[k], corr.numeric.flux[k])
            map_n = np.sign(corr.numeric.flux) == -np.sign(base.numeric.flux)
    return Fig1Result(cases=cases, reversal_analytic=rev_a, reversal_numeric=rev_n,
                      probe_time=t_probe, reversal_map_analytic=map_a,
                      reversal_map_numeric=map_n)


@dataclass
class SweepResult:
    """Flux surface flux_norm[i, k] over (axis value i, time k), analytic engine.

    state_valid flags whether the prepared state is positive semidefinite at
    each axis value (always true for the delta_theta axis).
    """

    axis: str
    axis_values: np.ndarray
    t: np.ndarray
    flux_norm: np.ndarray
    state_valid: np.ndarray
    baseline_norm: np.ndarray


def run_fig2(axis: str, trap: TrapParams = None, fixed_r: float = 0.05,
             fixed_delta_theta: float = -np.pi / 2, sweep: SweepSpec = None,
             grid: TimeGrid = None, n_t: int = 101,
             thermal_base: ThermalSpec = None) -> SweepResult:
    """Flux surface over a correlation axis.

    axis = 'delta_theta': sweep the phase difference over [-pi, pi] at fixed r.
    axis = 'r':           sweep the amplitude over [0, 0.5] at fixed delta_theta
                          (realized by theta = delta_phi - delta_theta).
    Temperatures default to the bundled operating point.
    """
    trap = trap or yb_trap()
    if sweep is None:
        sweep = (SweepSpec("delta_theta", -np.pi, np.pi) if axis == "delta_theta"
                 else SweepSpec("r", 0.0, 0.5))
    if sweep.axis != axis:
        raise ValueError(f"sweep axis {sweep.axis!r} does not match requested {axis!r}")
    if thermal_base is None:
        thermal_base = ThermalSpec.from_temperatures(trap.omega_e, YB_T1, YB_T2)
    c = derive_couplings(trap)
    if grid is None:
        grid = default_grid(trap, n_t)
    ts = grid.times()
    values = sweep.values()

    def make_ctx(r, theta):
        thermal = ThermalSpec(thermal_base.gamma1, thermal_base.gamma2, r, theta)
        return AnalyticContext.from_couplings(c, thermal, trap.omega_e), thermal

    baseline_ctx, _ = make_ctx(0.0, 0.0)
    baseline = heat_flux(baseline_ctx, ts) / baseline_ctx.energy_scale

    surface = np.empty((len(values), len(ts)))
    valid = np.empty(len(values), dtype=bool)
    for i, val in enumerate(values):
        if axis == "delta_theta":
            r, theta = fixed_r, c.delta_phi - val
        else:
            r, theta = val, c.delta_phi - fixed_delta_theta
        ctx, thermal = make_ctx(r, theta)
        surface[i] = heat_flux(ctx, ts) / ctx.energy_scale
        valid[i] = thermal.alpha_r <= alpha_psd_limit(thermal.gamma1, thermal.gamma2) + 1e-15
    return SweepResult(axis=axis, axis_values=values, t=ts, flux_norm=surface,
                       state_valid=valid, baseline_norm=baseline)


def reversal_threshold(ctx0: AnalyticContext, t_probe: float,
                       r_max: float = 1.0, tol: float = 1e-12) -> float:
    """Smallest coherence amplitude r that flips the flux sign at t_probe.

    Bisection on the closed-form flux, which is linear (hence monotone) in r at
    fixed time.  A zero baseline returns 0; raises NoReversalPossible when the
    correlation term cannot oppose the baseline (e.g. sin(delta_theta) = 0 at
    vanishing V-).
    """
    if t_probe <= 0 or t_probe >= validity_window(ctx0):
        raise ValueError("t_probe must lie strictly inside the validity window")

    def flux_at(r):
        ctx = AnalyticContext(
            v_plus=ctx0.v_plus, v_minus=ctx0.v_minus, j_total=ctx0.j_total,
            delta_phi=ctx0.delta_phi, gamma1=ctx0.gamma1, gamma2=ctx0.gamma2,
            r=r, theta=ctx0.theta, omega_e=ctx0.omega_e)
        return float(heat_flux(ctx, t_probe))

    base = flux_at(0.0)
    if base == 0.0:
        return 0.0
    sign = np.sign(base)

    # expand until the sign flips, then bisect
    hi = None
    probe = r_max / 64.0
    while probe <= r_max * (1 + 1e-9):
        if np.sign(flux_at(probe)) == -sign:
            hi = probe
            break
        probe *= 2.0
    if hi is None:
        raise NoReversalPossible(
            f"flux at t = {t_probe} keeps its sign for all r <= {r_max}")
    lo = 0.0
    while hi - lo > tol * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if np.sign(flux_at(mid)) == -sign:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)
