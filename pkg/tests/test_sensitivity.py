import dataclasses
import math

import numpy as np
import pytest

from lattice_gravimeter import (HBAR, css, derive, fringe_scan, oat_twist,
                                rb87_params, robustness, scaling_study,
                                uncertainty)
from lattice_gravimeter.sensitivity import (chi, fit_loglog,
                                            gravity_derivative_check,
                                            oracle_fringe)

# Frozen: dg/g for one uncorrelated atom in the Rb-87 reference sequence,
# hbar / (2 M g L d T_tot), evaluated once by hand.
RB87_DG_OVER_G_N1 = 1.878719248406458e-6


def test_chi_of_coherent_state():
    assert chi(css(5), 0.0, math.pi / 2.0) == pytest.approx(1.0, rel=1e-12)


def test_chi_rejects_dead_fringe():
    with pytest.raises(ValueError):
        chi(css(5), math.pi / 2.0, math.pi / 2.0)  # visibility is zero here


def test_uncertainty_reference_point(rb87):
    rep = uncertainty(rb87, css(1))
    assert rep.chi == pytest.approx(1.0, rel=1e-12)
    assert rep.phi_star == math.pi / 2.0
    assert rep.xi_star == 0.0
    d = derive(rb87)
    expected = HBAR / (2.0 * rb87.atom_mass * rb87.gravity * rb87.shift_sites
                       * d.lattice_const * d.total_time)
    assert rep.dg_over_g == pytest.approx(expected, rel=1e-13)
    assert rep.dg_over_g == pytest.approx(RB87_DG_OVER_G_N1, rel=1e-12)


def test_uncertainty_needs_gravity(rb87):
    p = dataclasses.replace(rb87, gravity=0.0)
    with pytest.raises(ValueError):
        uncertainty(p, css(2))


def test_uncorrelated_scaling_is_shot_noise(rb87):
    fit = scaling_study(rb87, [10, 100, 1000, 10000], "css")
    assert fit.exponent == pytest.approx(-0.5, abs=1e-10)
    assert fit.r_squared == pytest.approx(1.0, abs=1e-12)


def test_fit_loglog_recovers_power_law():
    n = [10, 100, 1000]
    fit = fit_loglog(n, [3.0 * x ** -0.75 for x in n])
    assert fit.exponent == pytest.approx(-0.75, abs=1e-12)
    assert fit.intercept == pytest.approx(3.0, rel=1e-10)


def test_fit_loglog_rejects_degenerate_input():
    with pytest.raises(ValueError):
        fit_loglog([10, 10, 10], [1.0, 1.0, 1.0])


def test_scaling_study_input_guards(rb87):
    with pytest.raises(ValueError):
        scaling_study(rb87, [100, 10, 1000, 10000], "css")  # not sorted
    with pytest.raises(ValueError):
        scaling_study(rb87, [10, 100], "css")  # too few points


def test_fringe_scan_matches_closed_form(rb87):
    n = 6
    grid = np.linspace(0.0, 2.0 * math.pi, 25)
    rows = fringe_scan(rb87, css(n), grid)
    assert len(rows) == grid.size
    for phi, mean, lo, hi in rows:
        expected = 0.5 * n * math.cos(phi)
        sigma = math.sqrt(0.25 * n * (1.0 - math.cos(phi) ** 2))
        assert mean == pytest.approx(expected, abs=1e-12)
        assert lo == pytest.approx(expected - sigma, abs=1e-12)
        assert hi == pytest.approx(expected + sigma, abs=1e-12)


def test_oracle_fringe_tracks_closed_form(small_params):
    phis = np.linspace(math.pi, 3.0 * math.pi, 7)
    means = oracle_fringe(small_params, css(2), phis)
    np.testing.assert_allclose(means, np.cos(phis), atol=1e-12)


def test_robustness_zero_dislocation(small_params):
    ((delta, shift, vis),) = robustness(small_params, css(1), [0.0],
                                        n_grid=2001)
    assert delta == 0.0
    assert abs(shift) < 1e-10
    assert vis == pytest.approx(1.0, abs=1e-10)


def test_derivative_check_close(rb87):
    # Scale gravity down so the fringe sits a few cycles from zero; the
    # closed-form slope and the measured finite difference must agree.
    d = derive(rb87)
    g_small = 2.5 * math.pi * HBAR / (2.0 * rb87.atom_mass * rb87.shift_sites
                                      * d.lattice_const * d.total_time)
    p = dataclasses.replace(rb87, gravity=g_small)
    closed, fd = gravity_derivative_check(p, css(2))
    assert fd == pytest.approx(closed, rel=1e-3)


def test_squeezed_input_improves_uncertainty(rb87):
    from lattice_gravimeter import rotate_x
    from lattice_gravimeter.dicke import optimal_oat
    n = 20
    mu, beta, _ = optimal_oat(n)
    sss = rotate_x(oat_twist(css(n), mu), beta)
    assert uncertainty(rb87, sss).dg_over_g < uncertainty(rb87, css(n)).dg_over_g
