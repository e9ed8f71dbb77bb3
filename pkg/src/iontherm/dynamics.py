"""Full unitary evolution in the truncated two-mode Fock space.

The Hamiltonian is diagonalized once; expectation values on the whole time grid
are then contractions of the eigenbasis density matrix with phase factors, so a
grid point costs O(dim^2) after the O(dim^3) setup.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, GridTooSmall
from .hilbert import FockCutoff, SIGMA_Z, embed, fock_level_projector, ladder, two_spin_two_mode
from .linops import SpaceDescriptor, dagger, eigh
from .model import TrapParams, build_h_ld
from .states import HBAR, ThermalSpec, build_rho0_composite, build_rho_s0


@dataclass(frozen=True)
class TimeGrid:
    """Uniform grid including both endpoints."""

    t_start: float
    t_end: float
    n_points: int

    def __post_init__(self):
        if self.n_points < 2:
            raise GridTooSmall(f"need at least 2 points, got {self.n_points}")
        if not self.t_end > self.t_start:
            raise ValueError(f"t_end must exceed t_start, got [{self.t_start}, {self.t_end}]")

    def times(self) -> np.ndarray:
        return np.linspace(self.t_start, self.t_end, self.n_points)

    @property
    def dt(self) -> float:
        return (self.t_end - self.t_start) / (self.n_points - 1)


@dataclass
class Trajectory:
    """Per-time observables of one engine run.

    q1, q2, q12 are joules; flux is watts (closed form for the analytic engine,
    finite differences for the numeric one).  Phonon columns are None for the
    analytic engine, which never leaves the spin sector.
    """

    engine: str
    grid: TimeGrid
    omega_e: float
    q1: np.ndarray
    q2: np.ndarray
    q12: np.ndarray
    flux: np.ndarray = None
    n1: np.ndarray = None
    n2: np.ndarray = None
    top_fock: np.ndarray = None
    params: dict = field(default_factory=dict)

    @property
    def t(self) -> np.ndarray:
        return self.grid.times()

    @property
    def energy_scale(self) -> float:
        """hbar omega_e / 2 in joules; *_norm properties are in this unit."""
        return 0.5 * HBAR * self.omega_e

    @property
    def q1_norm(self):
        return self.q1 / self.energy_scale

    @property
    def q2_norm(self):
        return self.q2 / self.energy_scale

    @property
    def q12_norm(self):
        return self.q12 / self.energy_scale

    @property
    def flux_norm(self):
        return None if self.flux is None else self.flux / self.energy_scale


def evolve_numeric(h: np.ndarray, rho0: np.ndarray, grid: TimeGrid,
                   observables) -> np.ndarray:
    """Expectation values Tr[rho(t_k) O_i] for rho(t) = e^{-iHt} rho0 e^{iHt}.

    Returns a real array of shape (len(observables), n_points).  H must be
    Hermitian (rad/s) and match rho0's dimension.
    """
    if h.shape != rho0.shape or h.shape[0] != h.shape[1]:
        raise DimensionMismatch(
            f"Hamiltonian {h.shape} and state {rho0.shape} must be square and equal")
    for o in observables:
        if o.shape != h.shape:
            raise DimensionMismatch(f"observable {o.shape} does not match {h.shape}")
    lam, v = eigh(h)                       # raises NotHermitian
    rho_e = dagger(v) @ rho0 @ v
    ts = grid.times()
    phases = np.exp(-1j * np.outer(ts, lam))
    out = np.empty((len(observables), len(ts)))
    for i, o in enumerate(observables):
        contracted = rho_e * (dagger(v) @ o @ v).T   # C_ab = rho_ab O_ba
        out[i] = np.real(np.einsum("ta,ab,tb->t", phases, contracted, np.conj(phases)))
    return out


def sigma_z_observables(space: SpaceDescriptor):
    """sigma_z of each spin embedded in the composite space (traceless)."""
    return embed(SIGMA_Z, space, 0), embed(SIGMA_Z, space, 1)


def pseudo_energy_observables(space: SpaceDescriptor, omega_e: float) -> dict:
    """Observables whose expectations fill a Trajectory.

    'q1'/'q2' are the local pseudo-energy operators (hbar omega_e / 2)(1 - sigma_z_j),
    whose thermal expectation matches the closed forms at t = 0; 'n1'/'n2' are the
    mode number operators and 'top_fock' projects onto states with either mode at
    its highest retained level.
    """
    if len(space.factors) != 4 or space.factors[0] != 2 or space.factors[1] != 2:
        raise DimensionMismatch(f"expected a two-spin two-mode space, got {space.factors}")
    ident = np.eye(space.dim, dtype=complex)
    sz1, sz2 = sigma_z_observables(space)
    scale = 0.5 * HBAR * omega_e
    cutoff = FockCutoff(space.factors[2] - 1)
    num = ladder(cutoff, "number")
    top = fock_level_projector(cutoff, cutoff.n_max)
    top1 = embed(top, space, 2)
    top2 = embed(top, space, 3)
    return {
        "q1": scale * (ident - sz1),
        "q2": scale * (ident - sz2),
        "n1": embed(num, space, 2),
        "n2": embed(num, space, 3),
        "top_fock": top1 + top2 - top1 @ top2,
    }


def total_excitation_observable(space: SpaceDescriptor) -> np.ndarray:
    """Conserved charge of the sideband coupling: up-spin count plus phonon number."""
    ident = np.eye(space.dim, dtype=complex)
    sz1, sz2 = sigma_z_observables(space)
    cutoff = FockCutoff(space.factors[2] - 1)
    num = ladder(cutoff, "number")
    return 0.5 * (2 * ident + sz1 + sz2) + embed(num, space, 2) + embed(num, space, 3)


def numeric_flux(traj: Trajectory) -> Trajectory:
    """Attach the finite-difference flux d(q12)/dt to a trajectory.

    Centered differences inside, one-sided at the endpoints; needs >= 3 points.
    """
    if traj.grid.n_points < 3:
        raise GridTooSmall("flux differencing needs at least 3 grid points")
    traj.flux = np.gradient(traj.q12, traj.grid.dt)
    return traj


def run_numeric_trajectory(trap: TrapParams, thermal: ThermalSpec, grid: TimeGrid,
                           cutoff: FockCutoff = FockCutoff()) -> Trajectory:
    """Evolve the correlated thermal state under the sideband Hamiltonian.

    Builds H_LD and rho_s(0) (x) |00><00| at the given cutoff, records the
    pseudo-energies, phonon numbers and top-level population, and attaches the
    finite-difference flux.
    """
    space = two_spin_two_mode(cutoff)
    h = build_h_ld(trap, cutoff)
    rho0 = build_rho0_composite(build_rho_s0(thermal), cutoff)
    obs = pseudo_energy_observables(space, trap.omega_e)
    names = list(obs)
    values = evolve_numeric(h, rho0, grid, [obs[k] for k in names])
    rec = dict(zip(names, values))
    traj = Trajectory(
        engine="numeric", grid=grid, omega_e=trap.omega_e,
        q1=rec["q1"], q2=rec["q2"], q12=rec["q1"] - rec["q2"],
        n1=rec["n1"], n2=rec["n2"], top_fock=rec["top_fock"],
        params={"cutoff": cutoff.n_max, "gamma1": thermal.gamma1,
                "gamma2": thermal.gamma2, "alpha_r": thermal.alpha_r,
                "alpha_theta": thermal.alpha_theta},
    )
    return numeric_flux(traj)
