#!/usr/bin/env python3
"""Which correlated thermal states actually exist?

The initial state is a product of two single-spin Gibbs states plus a coherence
alpha between |ud> and |du>.  Positivity caps the coherence at
r <= 1 / (4 cosh G1 cosh G2): hot spins (small Gamma) tolerate r up to 1/4,
cold spins almost none.  A textbook-style reference bound
1/2 - (1 + tanh G1)^2 (1 + tanh G2)^2 / 8 is evaluated alongside;
it goes negative right where the operating point lives, which is why the
package treats the eigenvalue test as the authoritative check and merely
reports the other number.
"""
from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from iontherm import (ThermalSpec, alpha_psd_limit, build_rho_s0, reference_alpha_bound,
                      validate_state, yb_thermal)

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

op = yb_thermal(0.05, 0.0)
report = validate_state(build_rho_s0(op), op)
print(f"operating point: Gamma1 = {op.gamma1:.4f}, Gamma2 = {op.gamma2:.4f}, r = 0.05")
print(f"  trace = {report.trace:.15f}")
print(f"  min eigenvalue = {report.min_eigenvalue:+.3e}  ->  psd = {report.psd}")
print(f"  positivity limit r_max = {alpha_psd_limit(op.gamma1, op.gamma2):.4f}")
print(f"  reference bound value = {report.reference_bound_value:+.4f} "
      f"(negative: unusable here), satisfied = {report.reference_bound_satisfied}")

# scan the PSD frontier on a symmetric-temperature slice and verify the
# closed-form limit against brute-force eigenvalues
gammas = np.linspace(0.01, 3.0, 120)
rs = np.linspace(0, 0.3, 120)
frontier = np.array([alpha_psd_limit(g, g) for g in gammas])
psd = np.empty((len(gammas), len(rs)), dtype=bool)
for i, g in enumerate(gammas):
    for k, r in enumerate(rs):
        spec = ThermalSpec(g, g, r, 0.0)
        psd[i, k] = validate_state(build_rho_s0(spec), spec).psd
boundary_scan = rs[np.argmin(psd, axis=1) - 1]
print(f"\nbrute-force PSD frontier vs closed form, max gap: "
      f"{np.max(np.abs(boundary_scan - np.minimum(frontier, rs[-1]))):.3e} "
      "(one scan step)")

fig, ax = plt.subplots(figsize=(6, 4))
ax.pcolormesh(rs, gammas, psd, cmap="Greens", shading="nearest", alpha=0.55)
ax.plot(frontier, gammas, "k", lw=2, label=r"$r = 1/(4\cosh^2\Gamma)$")
ref = np.array([reference_alpha_bound(g, g) for g in gammas])
ok = ref > 0
ax.plot(np.sqrt(ref[ok]), gammas[ok], "C3--", lw=1.5, label="reference bound (where > 0)")
ax.plot(0.05, op.gamma1, "C0*", ms=12, label="operating point")
ax.set_xlabel("coherence amplitude $r$")
ax.set_ylabel(r"$\Gamma_1 = \Gamma_2$")
ax.set_title("green: positive semidefinite states")
ax.legend(fontsize=8, loc="upper right")
fig.tight_layout()
fig.savefig(OUT / "state_validity.png", dpi=150)
print(f"figure saved to {OUT / 'state_validity.png'}")
