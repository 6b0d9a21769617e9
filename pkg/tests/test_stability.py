import math

import numpy as np
import pytest
import scipy.optimize
from hypothesis import given, settings, strategies as st

from casimir_cooling import (
    ConfigError,
    EigenvalueError,
    MechanicalMode,
    SystemConfig,
    build_system,
    derive_effective,
    routh_hurwitz_n1,
    spectral_stability,
)
from casimir_cooling.dynamics import LinearSystem

from conftest import FIG_ATOMS, single_mode


def _raw(a):
    a = np.asarray(a, dtype=float)
    n = (a.shape[0] - 2) // 2
    return LinearSystem(n, a, np.zeros_like(a))


def test_minus_identity():
    rep = spectral_stability(_raw(-np.eye(4)))
    assert rep.stable
    assert rep.decay_rate == pytest.approx(1.0)
    assert rep.relaxation_time * rep.decay_rate == pytest.approx(1.0)


def test_marginal_is_unstable():
    a = np.zeros((4, 4))
    a[0, 1], a[1, 0] = -2e6, 2e6
    rep = spectral_stability(_raw(a))
    assert not rep.stable
    assert rep.decay_rate is None and rep.relaxation_time is None


def test_non_finite_drift_is_an_eigenvalue_error():
    a = -np.eye(4)
    a[0, 0] = np.nan
    with pytest.raises(EigenvalueError):
        spectral_stability(_raw(a))


def test_decoupled_decay_rate_is_half_kappa(fig2_config):
    rep = spectral_stability(build_system(fig2_config.with_couplings(0.0)))
    assert rep.stable
    assert rep.decay_rate == pytest.approx(1.0, rel=1e-6)
    assert rep.relaxation_time == pytest.approx(1.0, rel=1e-6)


@settings(max_examples=60)
@given(
    kappas=st.lists(st.floats(0.5, 5e3), min_size=1, max_size=3),
    theta_over_nu=st.floats(-2.0, 2.0),
)
def test_decoupled_decay_rate_analytic(kappas, theta_over_nu):
    modes = tuple(MechanicalMode(2e6 * (1 + 0.3 * j), k) for j, k in enumerate(kappas))
    cfg = SystemConfig(FIG_ATOMS, modes, 0.01, theta_over_nu * 2e6)
    gam = derive_effective(cfg).gamma_eff
    rep = spectral_stability(build_system(cfg))
    assert rep.decay_rate == pytest.approx(min(min(k / 2 for k in kappas), gam), rel=1e-6)


def test_figure_point_is_stable_both_ways(fig2_config):
    assert routh_hurwitz_n1(fig2_config)
    assert spectral_stability(build_system(fig2_config)).stable


@given(theta_over_nu=st.floats(0.01, 3.0), kappa=st.floats(0.1, 1e3))
def test_rh_decoupled_is_stable(theta_over_nu, kappa):
    assert routh_hurwitz_n1(single_mode(g=0.0, theta_over_nu=theta_over_nu, kappa=kappa))


def test_rh_rejects_multimode():
    cfg = SystemConfig(FIG_ATOMS, (MechanicalMode(2e6, 2.0), MechanicalMode(3e6, 2.0)), 0.01, 2e6)
    with pytest.raises(ConfigError):
        routh_hurwitz_n1(cfg)


@pytest.mark.parametrize("theta_over_nu", [-1.0, -0.8, -1.3])
def test_rh_boundary_for_negative_detuning(theta_over_nu):
    """Locate the loss of stability in |g| by bisection on the spectrum alone and
    check that the Routh-Hurwitz verdict flips at the same place."""

    def margin(g):
        return spectral_stability(build_system(single_mode(g=g, theta_over_nu=theta_over_nu))).max_real_part

    # first inequality holds for negative detuning whatever g is
    assert routh_hurwitz_n1(single_mode(g=-1e7, theta_over_nu=theta_over_nu)) is False
    assert margin(-1e7) > 0 and margin(-1e2) < 0
    g_star = scipy.optimize.brentq(margin, -1e7, -1e2, xtol=1e-9, rtol=1e-13)

    # the second inequality is linear in g^2, so its root is explicit
    cfg = single_mode(g=g_star, theta_over_nu=theta_over_nu)
    eff = derive_effective(cfg)
    nu, kappa, gam, th, a2 = 2e6, 2.0, eff.gamma_eff, cfg.theta, eff.alpha_abs**2
    bracket = th**4 + th**2 * (kappa**2 + 2 * kappa * gam + 2 * gam**2 - 2 * nu**2) + (kappa * gam + gam**2 + nu**2) ** 2
    g_rh = math.sqrt(-2 * gam * kappa * bracket / (4 * nu * a2 * th * (kappa + 2 * gam) ** 2))
    assert abs(g_star) == pytest.approx(g_rh, rel=1e-6)

    for factor in (0.5, 0.9, 1.1, 2.0):
        cfg = single_mode(g=g_star * factor, theta_over_nu=theta_over_nu)
        rep = spectral_stability(build_system(cfg))
        assert abs(rep.max_real_part) > rep.tolerance
        assert routh_hurwitz_n1(cfg) == rep.stable == (factor < 1)

    # the first inequality alone never fails for theta < 0
    cfg = single_mode(g=g_star * 10, theta_over_nu=theta_over_nu)
    eff = derive_effective(cfg)
    nu, th = 2e6, cfg.theta
    assert nu**2 * (th**2 + eff.gamma_eff**2) - 4 * nu * eff.alpha_abs**2 * cfg.modes[0].g ** 2 * th > 0


def test_marginal_point_reported_unstable():
    th = -1.0

    def margin(g):
        return spectral_stability(build_system(single_mode(g=g, theta_over_nu=th))).max_real_part

    g_star = scipy.optimize.brentq(margin, -1e7, -1e2, xtol=1e-12, rtol=1e-15)
    rep = spectral_stability(build_system(single_mode(g=g_star, theta_over_nu=th)))
    assert not rep.stable
    assert abs(rep.max_real_part) <= rep.tolerance
    assert not routh_hurwitz_n1(single_mode(g=g_star * (1 + 1e-6), theta_over_nu=th))


@given(c=st.floats(0.1, 10.0))
def test_decay_rate_invariant_under_rescaling(c):
    from dataclasses import replace

    from casimir_cooling import build_drift

    cfg = single_mode()
    eff = derive_effective(cfg)
    a1 = build_drift(cfg, eff)
    a2 = build_drift(cfg.with_couplings(cfg.modes[0].g * c), replace(eff, alpha_abs=eff.alpha_abs / c))
    r1 = spectral_stability(_raw(a1)).max_real_part
    r2 = spectral_stability(_raw(a2)).max_real_part
    assert r2 == pytest.approx(r1, rel=1e-9)
