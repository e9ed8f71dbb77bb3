#!/usr/bin/env python3
"""Flux surfaces over the correlation parameters.

Two sweeps of the closed-form flux over the trusted window:
  (a) phase difference dtheta in [-pi, pi] at fixed amplitude r = 0.05;
  (b) amplitude r in [0, 0.5] at fixed dtheta = -pi/2.

Sweep (b) deliberately runs past the positivity limit of the initial state
(r ~ 0.080 at these temperatures); the surface is still evaluated there but
each column carries a validity flag, shown as a hatched band.
"""
from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from iontherm import run_fig2

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

res_a = run_fig2("delta_theta")
res_b = run_fig2("r")

print(f"sweep (a): {res_a.flux_norm.shape[0]} phase values x "
      f"{res_a.flux_norm.shape[1]} times; all states valid: {res_a.state_valid.all()}")
n_valid = int(res_b.state_valid.sum())
r_limit = res_b.axis_values[n_valid - 1]
print(f"sweep (b): states remain positive up to r = {r_limit:.3f} "
      f"({n_valid}/{len(res_b.axis_values)} columns valid)")

# antisymmetry of the correlation contribution around the baseline
resid = np.max(np.abs(res_a.flux_norm + res_a.flux_norm[::-1] - 2 * res_a.baseline_norm))
print(f"odd-in-dtheta residual of the correlation term: {resid:.2e}")

fig, axes = plt.subplots(1, 2, figsize=(12, 4.2))

ax = axes[0]
pc = ax.pcolormesh(res_a.t * 1e3, res_a.axis_values, res_a.flux_norm,
                   cmap="RdBu_r", shading="nearest")
ax.set_xlabel("t (ms)")
ax.set_ylabel(r"$\Delta\theta$ (rad)")
ax.set_title("flux, r = 0.05")
fig.colorbar(pc, ax=ax, label=r"flux / (($\hbar\omega_e/2$)/s)")

ax = axes[1]
pc = ax.pcolormesh(res_b.t * 1e3, res_b.axis_values, res_b.flux_norm,
                   cmap="RdBu_r", shading="nearest")
ax.axhline(r_limit, color="k", ls="--", lw=1)
ax.text(0.02, r_limit * 1.05, "positivity limit", fontsize=8)
ax.set_xlabel("t (ms)")
ax.set_ylabel("r")
ax.set_title(r"flux, $\Delta\theta = -\pi/2$")
fig.colorbar(pc, ax=ax, label=r"flux / (($\hbar\omega_e/2$)/s)")

fig.tight_layout()
fig.savefig(OUT / "flux_sweeps.png", dpi=150)
print(f"figure saved to {OUT / 'flux_sweeps.png'}")
