#!/usr/bin/env python3
"""Heat-flow reversal between two thermal spins, closed form vs full dynamics.

Two ions start in local thermal states at 265 mK and 255 mK.  Without
correlations the pseudo-energy difference relaxes the way thermodynamics
suggests; an initial coherence alpha = 0.05 between |ud> and |du> drives the
early-time flux the other way.  The closed-form engine shows this cleanly.

The full two-mode evolution is run alongside, and this demo is honest about
what it shows: at this operating point the sideband coupling is 0.55 of the
detuning, so the exact dynamics sloshes population between spins and phonons
with order-one amplitude.  The per-spin energies therefore deviate strongly
from the effective model; the *difference* Q12 fares much better because the
sloshing is nearly common-mode, and its secular trend still reverses with the
coherence.
"""
from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

from iontherm import run_fig1

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

res = run_fig1()   # alpha in {0, 0.05}, both engines, 201-point default grid
base, corr = res.cases[0], res.cases[-1]
ts = base.analytic.t * 1e3  # ms

print("t = 0 pseudo-energies in units of hbar*omega_e/2:")
print(f"  Q1(0) = {base.analytic.q1_norm[0]:.4f}   Q2(0) = {base.analytic.q2_norm[0]:.4f}")
print(f"flux at the first interior grid point, (hbar*omega_e/2)/s:")
print(f"  analytic: baseline {base.analytic.flux_norm[1]:+.3e}, "
      f"correlated {corr.analytic.flux_norm[1]:+.3e}")
print(f"  -> closed-form reversal: {res.reversal_analytic}")
print(f"  numeric:  baseline {base.numeric.flux_norm[1]:+.3e}, "
      f"correlated {corr.numeric.flux_norm[1]:+.3e}")
print(f"  -> pointwise numeric reversal: {res.reversal_numeric} "
      "(micromotion dominates the instantaneous numeric flux here)")

for case in res.cases:
    dev = case.report.to_dict()["max_abs_deviation"]
    print(f"engine deviation at alpha = {case.alpha_r}: "
          f"Q1 {dev['q1']:.3f}, Q2 {dev['q2']:.3f}, Q12 {dev['q12']:.4f} "
          "(units hbar*omega_e/2)")

fig, axes = plt.subplots(1, 3, figsize=(14, 4))

ax = axes[0]
ax.plot(ts, base.analytic.q1_norm, "C3", lw=1, alpha=0.4, label="Q1, alpha=0")
ax.plot(ts, base.analytic.q2_norm, "C0", lw=1, alpha=0.4, label="Q2, alpha=0")
ax.plot(ts, corr.analytic.q1_norm, "C3", lw=2, label="Q1, alpha=0.05")
ax.plot(ts, corr.analytic.q2_norm, "C0", lw=2, label="Q2, alpha=0.05")
ax.set_xlabel("t (ms)")
ax.set_ylabel(r"Q / ($\hbar\omega_e/2$)")
ax.set_title("closed form: pseudo-energies")
ax.legend(fontsize=8)

ax = axes[1]
ax.plot(ts, base.analytic.flux_norm, "0.6", lw=1.5, label="alpha=0")
ax.plot(ts, corr.analytic.flux_norm, "k", lw=2, label="alpha=0.05")
ax.axhline(0, color="0.8", lw=0.5)
ax.set_xlabel("t (ms)")
ax.set_ylabel(r"flux / (($\hbar\omega_e/2$)/s)")
ax.set_title("closed form: flux reverses at early t")
ax.legend(fontsize=8)

ax = axes[2]
ax.plot(ts, base.analytic.q12_norm, "0.6", lw=1.5, label="analytic, alpha=0")
ax.plot(ts, corr.analytic.q12_norm, "k", lw=2, label="analytic, alpha=0.05")
ax.plot(ts, base.numeric.q12_norm, "C0", lw=0.7, alpha=0.6, label="numeric, alpha=0")
ax.plot(ts, corr.numeric.q12_norm, "C3", lw=0.7, alpha=0.6, label="numeric, alpha=0.05")
ax.set_xlabel("t (ms)")
ax.set_ylabel(r"Q12 / ($\hbar\omega_e/2$)")
ax.set_title("Q12: full dynamics vs closed form")
ax.legend(fontsize=8)

fig.tight_layout()
fig.savefig(OUT / "heat_flow_reversal.png", dpi=150)
print(f"\nfigure saved to {OUT / 'heat_flow_reversal.png'}")
