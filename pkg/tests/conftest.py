import numpy as np
import pytest

from iontherm import AnalyticContext, derive_couplings, yb_thermal, yb_trap


@pytest.fixture(scope="session")
def trap():
    return yb_trap()


@pytest.fixture(scope="session")
def couplings(trap):
    return derive_couplings(trap)


@pytest.fixture()
def thermal_corr():
    return yb_thermal(alpha_r=0.05, alpha_theta=0.0)


@pytest.fixture()
def ctx(couplings, trap, thermal_corr):
    return AnalyticContext.from_couplings(couplings, thermal_corr, trap.omega_e)


def random_context(rng, r_scale=1.0):
    """Random valid analytic context: PSD state, nondegenerate couplings."""
    g1, g2 = rng.uniform(0.05, 3.0, size=2)
    limit = 1.0 / (4.0 * np.cosh(g1) * np.cosh(g2))
    r = rng.uniform(0.0, r_scale) * limit
    return AnalyticContext(
        v_plus=rng.uniform(-5000, 5000),
        v_minus=rng.uniform(-2000, 2000),
        j_total=rng.uniform(10, 5000) * rng.choice([-1.0, 1.0]),
        delta_phi=rng.uniform(-np.pi, np.pi),
        gamma1=g1, gamma2=g2, r=r,
        theta=rng.uniform(-np.pi, np.pi),
        omega_e=2 * np.pi * 12.643e9,
    )
