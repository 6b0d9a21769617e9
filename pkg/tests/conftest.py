import numpy as np
import pytest
import scipy.integrate
import scipy.linalg

from casimir_cooling import AtomicParams, MechanicalMode, SystemConfig

FIG_ATOMS = AtomicParams(gamma_sp=6.1e6, rabi=12e6, detuning=45e6, lamb_dicke=0.15, omega_ph=477.0)


def single_mode(g=-6.5e3, theta_over_nu=1.0, temperature=0.01, nu=2e6, kappa=2.0, atoms=FIG_ATOMS):
    return SystemConfig(atoms, (MechanicalMode(nu, kappa, g),), temperature, theta_over_nu * nu)


@pytest.fixture
def fig2_config():
    return single_mode()


def random_hurwitz(rng, dim):
    """Random real matrix shifted so that its spectral abscissa is at most -0.1."""
    a = rng.normal(size=(dim, dim))
    shift = np.max(np.linalg.eigvals(a).real) + rng.uniform(0.1, 2.0)
    return a - shift * np.eye(dim)


def integral_oracle(a, d):
    """V = int_0^inf exp(A t) D exp(A^T t) dt by adaptive quadrature on t = s / (1 - s)."""
    def integrand(s):
        t = s / (1.0 - s)
        m = scipy.linalg.expm(a * t)
        return m @ d @ m.T / (1.0 - s) ** 2

    v, _ = scipy.integrate.quad_vec(integrand, 0.0, 1.0, epsabs=1e-13, epsrel=1e-11, limit=2000)
    return v
