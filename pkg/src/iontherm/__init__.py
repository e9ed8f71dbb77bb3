"""iontherm: two-trapped-ion spin-chain heat-flow simulator.

Layers, bottom to top:

  linops      dense complex kernels (kron, eigh, propagators, partial trace)
  hilbert     spin/boson operator builders on the two-spin (x) two-mode space
  model       trap parameters -> effective couplings; Hamiltonian builders
  states      correlated thermal initial states and validity checks
  analytic    closed-form propagator, pseudo-energies and heat flux
  dynamics    full Fock-space unitary evolution with observable extraction
  experiment  named scenario runs, engine comparisons, sweeps, reversal threshold
  cli         config-driven command line (params/evolve/sweep/compare/validate-state)
"""

from .analytic import (AnalyticContext, heat_flux, propagator_4x4, q1, q12, q2,
                       simplified_flux, validity_window)
from .dynamics import (TimeGrid, Trajectory, evolve_numeric, numeric_flux,
                       pseudo_energy_observables, run_numeric_trajectory)
from .hilbert import FockCutoff, embed, ladder, pauli, two_spin_two_mode
from .linops import SpaceDescriptor, eigh, is_hermitian, is_psd, is_unitary, kron, \
    partial_trace, propagator
from .model import (DerivedCouplings, TrapParams, build_h_ld, build_h_r, build_h_s,
                    coupling_fg, derive_couplings, kummer_1f1, laguerre)
from .states import (HBAR, KB, StateReport, ThermalSpec, alpha_psd_limit,
                     build_rho0_composite, build_rho_s0, gamma_from_temperature,
                     reference_alpha_bound, validate_state)
from .experiment import (ComparisonReport, Fig1Result, Scenario, SweepResult,
                         SweepSpec, analytic_trajectory, compare_trajectories,
                         default_grid, reversal_threshold, run_fig1, run_fig2,
                         run_scenario, yb_thermal, yb_trap)

__version__ = "0.1.0"
