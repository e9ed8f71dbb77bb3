"""Trap parameters, derived spin-spin couplings and Hamiltonian builders.

Physics conventions:
  * every frequency is angular (rad/s); configuration loaders convert cyclic Hz
    at the boundary, the core never sees cyclic units;
  * ion index j and mode index m both run over {1, 2}; arrays are 0-indexed;
  * Hamiltonians are returned divided by hbar, i.e. in rad/s.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, ResonantDrive, UnsupportedArgument
from .hilbert import FockCutoff, SIGMA_MINUS, SIGMA_PLUS, SIGMA_Z, embed, ladder, two_spin_two_mode

LAMB_DICKE_WARN = 0.3


@dataclass
class TrapParams:
    """Physical inputs of the two-ion trap.

    omega_e      qubit gap (rad/s)
    delta        drive detuning omega_e - omega_drive (rad/s); exactly one of
                 delta / omega_drive may be given, the other is derived
    mode_freqs   (omega_1, omega_2) common-mode frequencies (rad/s)
    rabi         (Omega_1, Omega_2) drive coupling strengths (rad/s)
    lamb_dicke   eta[j, m], 2x2 dimensionless
    phases       (phi_1, phi_2) drive phases (rad)
    """

    omega_e: float
    mode_freqs: tuple
    rabi: tuple
    lamb_dicke: np.ndarray
    phases: tuple = (0.0, 0.0)
    delta: float = None
    omega_drive: float = None

    def __post_init__(self):
        self.mode_freqs = tuple(float(w) for w in self.mode_freqs)
        self.rabi = tuple(float(r) for r in self.rabi)
        self.phases = tuple(float(p) for p in self.phases)
        eta = np.asarray(self.lamb_dicke, dtype=float)
        if eta.shape == ():
            eta = np.full((2, 2), float(eta))
        if eta.shape != (2, 2):
            raise DimensionMismatch(f"lamb_dicke must be scalar or 2x2, got {eta.shape}")
        self.lamb_dicke = eta
        if len(self.mode_freqs) != 2 or len(self.rabi) != 2 or len(self.phases) != 2:
            raise DimensionMismatch("mode_freqs, rabi and phases must each have 2 entries")

        if self.delta is None and self.omega_drive is None:
            raise ValueError("either delta or omega_drive must be given")
        if self.delta is None:
            self.delta = self.omega_e - self.omega_drive
        elif self.omega_drive is None:
            self.omega_drive = self.omega_e - self.delta
        elif abs(self.delta - (self.omega_e - self.omega_drive)) > 1e-6 * abs(self.omega_e):
            raise ValueError("delta and omega_drive are inconsistent with omega_e")

        if np.any(self.lamb_dicke > LAMB_DICKE_WARN):
            warnings.warn(
                f"Lamb-Dicke factor above {LAMB_DICKE_WARN}: first-order expansion "
                "of the sideband coupling is unreliable", stacklevel=2)
        for j in range(2):
            for m in range(2):
                det = self.delta - self.mode_freqs[m]
                if det != 0.0 and self.rabi[j] * self.lamb_dicke[j, m] >= abs(det):
                    warnings.warn(
                        f"dispersive condition violated for ion {j + 1}, mode {m + 1}: "
                        f"Omega*eta = {self.rabi[j] * self.lamb_dicke[j, m]:.4g} rad/s "
                        f">= |delta - omega_m| = {abs(det):.4g} rad/s", stacklevel=2)

    @property
    def delta_phi(self) -> float:
        return self.phases[0] - self.phases[1]


@dataclass
class DerivedCouplings:
    """Effective couplings of the dispersive spin model.

    g[m, j]      small-rotation parameters Omega_j eta_jm / (delta - omega_m)
    v[j, m]      Stark coefficients Omega_j^2 eta_jm^2 / (delta - omega_m), rad/s
    j12, j21     exchange couplings between the ions, rad/s
    v_plus/minus sum_m (v_1m +/- v_2m), rad/s
    j_total      j12 + j21, rad/s
    omega_eff    sqrt(v_minus^2 + j_total^2), rad/s
    delta_phi    phi_1 - phi_2, rad
    """

    g: np.ndarray
    v: np.ndarray
    j12: float
    j21: float
    v_plus: float
    v_minus: float
    j_total: float
    omega_eff: float
    delta_phi: float


def derive_couplings(p: TrapParams) -> DerivedCouplings:
    """Second-order couplings from trap inputs; raises ResonantDrive on delta = omega_m."""
    det = np.array([p.delta - p.mode_freqs[0], p.delta - p.mode_freqs[1]])
    if np.any(det == 0.0):
        m = int(np.argmin(np.abs(det))) + 1
        raise ResonantDrive(f"drive is exactly resonant with mode {m}")

    eta = p.lamb_dicke
    omega = np.array(p.rabi)
    g = np.empty((2, 2))   # [m, j]
    v = np.empty((2, 2))   # [j, m]
    for j in range(2):
        for m in range(2):
            g[m, j] = omega[j] * eta[j, m] / det[m]
            v[j, m] = omega[j] ** 2 * eta[j, m] ** 2 / det[m]
    j12 = omega[0] * omega[1] * float(np.sum(eta[0] * eta[1] / det))
    j21 = omega[1] * omega[0] * float(np.sum(eta[1] * eta[0] / det))
    v_plus = float(np.sum(v[0] + v[1]))
    v_minus = float(np.sum(v[0] - v[1]))
    j_total = j12 + j21
    return DerivedCouplings(
        g=g, v=v, j12=j12, j21=j21,
        v_plus=v_plus, v_minus=v_minus, j_total=j_total,
        omega_eff=float(np.hypot(v_minus, j_total)),
        delta_phi=p.delta_phi,
    )


def kummer_1f1(neg_n: int, b: int, x: float) -> float:
    """Confluent hypergeometric 1F1(-n; b; x) for integer n >= 0 (polynomial case).

    Evaluated as the finite sum over k of (-n)_k / (b)_k x^k / k!.
    """
    if neg_n != int(neg_n) or neg_n > 0:
        raise UnsupportedArgument(
            f"first argument must be a non-positive integer, got {neg_n}")
    if b <= 0 or b != int(b):
        raise UnsupportedArgument(f"second argument must be a positive integer, got {b}")
    n = -int(neg_n)
    total, term = 1.0, 1.0
    for k in range(n):
        term *= (-(n - k)) * x / ((b + k) * (k + 1))
        total += term
    return total


def laguerre(n: int, x: float) -> float:
    """Laguerre polynomial L_n(x) by the three-term recurrence."""
    if n < 0 or n != int(n):
        raise UnsupportedArgument(f"order must be a non-negative integer, got {n}")
    if n == 0:
        return 1.0
    prev, cur = 1.0, 1.0 - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 - x) * cur - k * prev) / (k + 1)
    return cur


def coupling_fg(eta1: float, eta2: float, n1: int, n2: int):
    """Mode-weight factors of the sideband coupling evaluated on Fock levels.

    Returns (F, G) with F = 1F1(-n1; 2; eta1^2) L_n2(eta2^2) and G the same
    expression with the (eta, n) pairs swapped.
    """
    f = kummer_1f1(-n1, 2, eta1 ** 2) * laguerre(n2, eta2 ** 2)
    g = kummer_1f1(-n2, 2, eta2 ** 2) * laguerre(n1, eta1 ** 2)
    return f, g


def _composite_ops(cutoff: FockCutoff):
    space = two_spin_two_mode(cutoff)
    sz = [embed(SIGMA_Z, space, j) for j in range(2)]
    sp = [embed(SIGMA_PLUS, space, j) for j in range(2)]
    sm = [embed(SIGMA_MINUS, space, j) for j in range(2)]
    a = [embed(ladder(cutoff, "lower"), space, 2 + m) for m in range(2)]
    n = [embed(ladder(cutoff, "number"), space, 2 + m) for m in range(2)]
    return space, sz, sp, sm, a, n


def build_h_ld(p: TrapParams, cutoff: FockCutoff) -> np.ndarray:
    """First-order sideband Hamiltonian on the composite space, in rad/s.

    H/hbar = sum_j (delta/2) sz_j + sum_m omega_m n_m
             + i sum_{j,m} Omega_j eta_jm (a_m sp_j e^{i phi_j} - a_m^dag sm_j e^{-i phi_j})
    """
    space, sz, sp, sm, a, n = _composite_ops(cutoff)
    h = np.zeros((space.dim, space.dim), dtype=complex)
    for j in range(2):
        h += (p.delta / 2) * sz[j]
    for m in range(2):
        h += p.mode_freqs[m] * n[m]
    for j in range(2):
        ph = np.exp(1j * p.phases[j])
        for m in range(2):
            coup = p.rabi[j] * p.lamb_dicke[j, m]
            h += 1j * coup * (a[m] @ sp[j] * ph - a[m].conj().T @ sm[j] * np.conj(ph))
    return h


def build_h_r(p: TrapParams, cutoff: FockCutoff) -> np.ndarray:
    """Dispersive-frame Hamiltonian (Stark, mode-swap and exchange terms), rad/s."""
    c = derive_couplings(p)
    space, sz, sp, sm, a, n = _composite_ops(cutoff)
    det = [p.delta - p.mode_freqs[0], p.delta - p.mode_freqs[1]]
    eta = p.lamb_dicke

    h = np.zeros((space.dim, space.dim), dtype=complex)
    for m in range(2):
        h += p.mode_freqs[m] * n[m]
    ident = np.eye(space.dim, dtype=complex)
    for j in range(2):
        for m in range(2):
            h += c.v[j, m] * (2 * n[m] + ident) @ sz[j]
    for j in range(2):
        for m in range(2):
            for l in range(2):
                if m == l:
                    continue
                coeff = p.rabi[j] ** 2 * eta[j, m] * eta[j, l] / det[l]
                h += coeff * (a[l].conj().T @ a[m] + a[l] @ a[m].conj().T) @ sz[j]
    jmat = {(0, 1): c.j12, (1, 0): c.j21}
    for (j, s), jjs in jmat.items():
        dphi_js = p.phases[j] - p.phases[s]
        h += jjs * (sp[j] @ sm[s] * np.exp(1j * dphi_js)
                    + sm[j] @ sp[s] * np.exp(-1j * dphi_js))
    return h


def build_h_s(c: DerivedCouplings) -> np.ndarray:
    """Effective two-spin Hamiltonian on the |uu>, |ud>, |du>, |dd> basis, rad/s.

    Block structure 1x1 (+) 2x2 (+) 1x1: diagonal (V+, V-, -V-, -V+) and
    exchange J e^{i dphi} inside the middle block, J = j12 + j21.
    """
    h = np.zeros((4, 4), dtype=complex)
    h[0, 0] = c.v_plus
    h[1, 1] = c.v_minus
    h[2, 2] = -c.v_minus
    h[3, 3] = -c.v_plus
    h[1, 2] = c.j_total * np.exp(1j * c.delta_phi)
    h[2, 1] = np.conj(h[1, 2])
    return h
