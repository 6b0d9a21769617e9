import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from dataclasses import replace

from casimir_cooling import MechanicalMode, SystemConfig, build_diffusion, build_drift, build_system, derive_effective
from casimir_cooling.dynamics import LinearSystem, quadrature_labels
from casimir_cooling.params import thermal_occupation

from conftest import FIG_ATOMS, single_mode


def test_single_mode_drift_pattern(fig2_config):
    eff = derive_effective(fig2_config)
    a = build_drift(fig2_config, eff)
    nu, kappa, g = 2e6, 2.0, -6.5e3
    c = 2 * eff.alpha_abs * g
    th, gam = fig2_config.theta, eff.gamma_eff
    expected = np.array(
        [
            [0.0, -nu, 0.0, 0.0],
            [nu, -kappa, -c, 0.0],
            [0.0, 0.0, -gam, th],
            [c, 0.0, -th, -gam],
        ]
    )
    np.testing.assert_array_equal(a, expected)


def test_decoupled_drift_is_block_diagonal():
    cfg = SystemConfig(FIG_ATOMS, (MechanicalMode(2e6, 2.0), MechanicalMode(3e6, 1.0)), 0.01, 2e6)
    a = build_drift(cfg)
    mask = np.kron(np.eye(3), np.ones((2, 2))).astype(bool)
    assert not np.any(a[~mask])


def test_three_modes_give_8x8():
    cfg = SystemConfig(FIG_ATOMS, tuple(MechanicalMode(nu, 2.0, -4.8e3) for nu in (1.998e6, 2e6, 2.002e6)), 0.01, 2e6)
    sys = build_system(cfg)
    assert sys.drift.shape == (8, 8) and sys.diffusion.shape == (8, 8)
    assert quadrature_labels(3) == ["q1", "p1", "q2", "p2", "q3", "p3", "X", "Y"]


def test_position_rows_have_one_entry():
    cfg = SystemConfig(FIG_ATOMS, (MechanicalMode(2e6, 2.0, 4e4), MechanicalMode(1.98e6, 2.0, 4e4)), 0.01, 1.99e6)
    a = build_drift(cfg)
    for j, m in enumerate(cfg.modes):
        row = a[2 * j]
        assert np.count_nonzero(row) == 1 and row[2 * j + 1] == -m.nu


def test_diffusion_example():
    # kappa (2 m + 1) with m = 100 and kappa = 2 Hz
    cfg = single_mode()
    d = build_diffusion(cfg)
    m = thermal_occupation(2e6, 0.01)
    np.testing.assert_array_equal(d, np.diag([0.0, 2.0 * (2 * m + 1), 0.0, 0.0]))
    assert 2.0 * (2 * 100 + 1) == 402.0


def test_diffusion_vacuum_floor():
    d = build_diffusion(single_mode(temperature=1e-6))
    assert d[1, 1] == pytest.approx(2.0, rel=1e-12)


@settings(max_examples=60)
@given(
    gs=st.lists(st.floats(-5e4, 5e4), min_size=1, max_size=3),
    theta=st.floats(-4e6, 4e6),
    kappas=st.lists(st.floats(0.1, 100.0), min_size=3, max_size=3),
)
def test_trace_is_total_damping(gs, theta, kappas):
    modes = tuple(MechanicalMode(2e6 * (1 + 0.01 * j), kappas[j], g) for j, g in enumerate(gs))
    cfg = SystemConfig(FIG_ATOMS, modes, 0.01, theta)
    eff = derive_effective(cfg)
    expected = -sum(m.kappa for m in modes) - 2 * eff.gamma_eff
    assert np.trace(build_drift(cfg, eff)) == pytest.approx(expected, rel=1e-12)


def test_swapping_identical_modes_permutes_drift():
    m1, m2 = MechanicalMode(2e6, 2.0, -5e3), MechanicalMode(2.5e6, 3.0, -7e3)
    a = build_drift(SystemConfig(FIG_ATOMS, (m1, m2), 0.01, 2e6))
    b = build_drift(SystemConfig(FIG_ATOMS, (m2, m1), 0.01, 2e6))
    perm = [2, 3, 0, 1, 4, 5]
    np.testing.assert_array_equal(b, a[np.ix_(perm, perm)])


@given(c=st.floats(0.01, 100.0))
def test_drift_depends_on_alpha_g_product(c):
    cfg = single_mode(g=-6.5e3)
    eff = derive_effective(cfg)
    scaled_cfg = cfg.with_couplings(-6.5e3 * c)
    scaled_eff = replace(eff, alpha_abs=eff.alpha_abs / c)
    np.testing.assert_allclose(build_drift(scaled_cfg, scaled_eff), build_drift(cfg, eff), rtol=1e-14, atol=0)


def test_linear_system_is_read_only_and_checked():
    sys = build_system(single_mode())
    with pytest.raises(ValueError):
        sys.drift[0, 0] = 1.0
    with pytest.raises(ValueError):
        LinearSystem(1, np.zeros((3, 3)), np.zeros((4, 4)))
