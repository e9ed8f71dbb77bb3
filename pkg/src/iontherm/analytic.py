"""Closed-form solution of the effective two-spin model.

The block-diagonal propagator and the pseudo-energy formulas below are exact for
the 4x4 spin Hamiltonian built by model.build_h_s: pseudo-energies are
expectations of the local Hamiltonians H_j = (hbar omega_e / 2)(1 - sigma_z_j)
evolved from the correlated thermal state of states.build_rho_s0.

All functions broadcast over numpy time arrays.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateOmega, PreconditionViolated
from .model import DerivedCouplings
from .states import HBAR, ThermalSpec


@dataclass
class AnalyticContext:
    """Everything the closed forms need: couplings, thermal data and phases.

    omega_eff is recomputed from (v_minus, j_total) on construction and must
    agree with any supplied value.
    """

    v_plus: float
    v_minus: float
    j_total: float
    delta_phi: float
    gamma1: float
    gamma2: float
    r: float
    theta: float
    omega_e: float
    omega_eff: float = field(default=None)

    def __post_init__(self):
        expected = float(np.hypot(self.v_minus, self.j_total))
        if self.omega_eff is None:
            self.omega_eff = expected
        elif not np.isclose(self.omega_eff, expected, rtol=1e-12, atol=0.0):
            raise ValueError(
                f"omega_eff = {self.omega_eff} inconsistent with "
                f"sqrt(v_minus^2 + j_total^2) = {expected}")

    @classmethod
    def from_couplings(cls, c: DerivedCouplings, thermal: ThermalSpec,
                       omega_e: float) -> "AnalyticContext":
        return cls(v_plus=c.v_plus, v_minus=c.v_minus, j_total=c.j_total,
                   delta_phi=c.delta_phi, gamma1=thermal.gamma1, gamma2=thermal.gamma2,
                   r=thermal.alpha_r, theta=thermal.alpha_theta, omega_e=omega_e)

    @property
    def delta_theta(self) -> float:
        return self.delta_phi - self.theta

    @property
    def energy_scale(self) -> float:
        """hbar omega_e / 2, the natural pseudo-energy unit (joules)."""
        return 0.5 * HBAR * self.omega_e


def propagator_4x4(ctx: AnalyticContext, t) -> np.ndarray:
    """Evolution operator of the effective spin model at time t (seconds).

    Equals exp(-i H_S t) for the 4x4 Hamiltonian with diagonal (V+, V-, -V-, -V+)
    and exchange J e^{i dphi}; at omega_eff = 0 the middle block is trivial.
    """
    om = ctx.omega_eff
    u = np.zeros((4, 4), dtype=complex)
    u[0, 0] = np.exp(-1j * ctx.v_plus * t)
    u[3, 3] = np.conj(u[0, 0])
    if om == 0.0:
        u[1, 1] = 1.0
        u[2, 2] = 1.0
        return u
    c, s = np.cos(om * t), np.sin(om * t)
    u[1, 1] = c - 1j * (ctx.v_minus / om) * s
    u[1, 2] = -1j * (ctx.j_total / om) * np.exp(1j * ctx.delta_phi) * s
    u[2, 1] = -np.conj(u[1, 2])
    u[2, 2] = np.conj(u[1, 1])
    return u


def _trig(ctx, t):
    om = ctx.omega_eff
    t = np.asarray(t, dtype=float)
    return om, np.sin(om * t), np.sin(2 * om * t), np.cos(2 * om * t)


def q1(ctx: AnalyticContext, t):
    """Pseudo-energy of spin 1 (joules)."""
    th1, th2 = np.tanh(ctx.gamma1), np.tanh(ctx.gamma2)
    if ctx.omega_eff == 0.0:
        return ctx.energy_scale * (1 - th1) * np.ones_like(np.asarray(t, dtype=float))
    om, s, s2, _ = _trig(ctx, t)
    jj, vm, r = ctx.j_total, ctx.v_minus, ctx.r
    # J^2 s^2 (th1 - th2 - 4 V- r cos(dth) / J) expanded to avoid 0/0 at J = 0
    block = jj ** 2 * s ** 2 * (th1 - th2) \
        - 4 * vm * jj * r * np.cos(ctx.delta_theta) * s ** 2
    return (ctx.energy_scale / om ** 2) * (
        block + om ** 2 * (1 - th1) - 2 * om * jj * r * np.sin(ctx.delta_theta) * s2)


def q2(ctx: AnalyticContext, t):
    """Pseudo-energy of spin 2 (joules)."""
    th1, th2 = np.tanh(ctx.gamma1), np.tanh(ctx.gamma2)
    if ctx.omega_eff == 0.0:
        return ctx.energy_scale * (1 - th2) * np.ones_like(np.asarray(t, dtype=float))
    om, s, s2, _ = _trig(ctx, t)
    jj, vm, r = ctx.j_total, ctx.v_minus, ctx.r
    block = jj ** 2 * s ** 2 * (th2 - th1) \
        + 4 * vm * jj * r * np.cos(ctx.delta_theta) * s ** 2
    return (ctx.energy_scale / om ** 2) * (
        block + om ** 2 * (1 - th2) + 2 * om * jj * r * np.sin(ctx.delta_theta) * s2)


def q12(ctx: AnalyticContext, t):
    """Pseudo-energy difference Q1 - Q2 in closed form (joules)."""
    th1, th2 = np.tanh(ctx.gamma1), np.tanh(ctx.gamma2)
    if ctx.omega_eff == 0.0:
        return -ctx.energy_scale * (th1 - th2) \
            * np.ones_like(np.asarray(t, dtype=float))
    om, s, s2, c2 = _trig(ctx, t)
    jj, vm, r = ctx.j_total, ctx.v_minus, ctx.r
    return -(2 * ctx.energy_scale / om ** 2) * (
        0.5 * (th1 - th2) * (jj ** 2 * c2 + vm ** 2)
        + 2 * jj * r * (2 * vm * np.cos(ctx.delta_theta) * s ** 2
                        + om * np.sin(ctx.delta_theta) * s2))


def heat_flux(ctx: AnalyticContext, t):
    """Flux d(Q1 - Q2)/dt from spin 1 toward spin 2 (watts)."""
    th1, th2 = np.tanh(ctx.gamma1), np.tanh(ctx.gamma2)
    if ctx.omega_eff == 0.0:
        return np.zeros_like(np.asarray(t, dtype=float))
    om, s, s2, c2 = _trig(ctx, t)
    jj, vm, r = ctx.j_total, ctx.v_minus, ctx.r
    return (2 * ctx.energy_scale / om) * (
        jj ** 2 * (th1 - th2) * s2
        - 4 * jj * r * (vm * np.cos(ctx.delta_theta) * s2
                        + om * np.sin(ctx.delta_theta) * c2))


def simplified_flux(ctx: AnalyticContext, t, tol: float = 1e-9):
    """Flux for the symmetric trap (V- = 0, omega_eff = J), watts.

    hbar omega_e J [ (tanh G1 - tanh G2) sin 2Jt - 4 r sin(dtheta) cos 2Jt ].
    """
    scale = max(abs(ctx.j_total), abs(ctx.v_plus), 1.0)
    if abs(ctx.v_minus) > tol * scale:
        raise PreconditionViolated(
            f"simplified flux requires v_minus = 0, got {ctx.v_minus}")
    jj = ctx.j_total
    if jj == 0.0:
        return np.zeros_like(np.asarray(t, dtype=float))
    t = np.asarray(t, dtype=float)
    th1, th2 = np.tanh(ctx.gamma1), np.tanh(ctx.gamma2)
    return 2 * ctx.energy_scale * jj * (
        (th1 - th2) * np.sin(2 * jj * t)
        - 4 * ctx.r * np.sin(ctx.delta_theta) * np.cos(2 * jj * t))


def validity_window(ctx: AnalyticContext) -> float:
    """Largest time with 2 omega_eff t <= pi/2, where the mapping is trusted."""
    if ctx.omega_eff == 0.0:
        raise DegenerateOmega("validity window undefined for omega_eff = 0")
    return np.pi / (4.0 * ctx.omega_eff)
