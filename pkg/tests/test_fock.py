"""Brute-force oracle checks: basis bookkeeping, single-atom fringes,
agreement between the number-basis and one-body propagation paths, and the
response to a controlled lattice dislocation."""

import dataclasses
import math

import numpy as np
import pytest
from scipy.special import comb

from lattice_gravimeter import (HBAR, SymmetricSpinState, css, embed, measure,
                                moments, moments_firstq, simulate)
from lattice_gravimeter.fock import (N_MODES, ORACLE_CAP, OracleCapError,
                                     SequenceOptions, basis_size)
from lattice_gravimeter.firstq import sequence_matrix

from conftest import params_at, random_dicke_coeffs

FIELDS = ("mean_global", "mean_local", "second_global", "second_local",
          "second_outer_minus", "second_outer_plus", "var_global",
          "var_local", "visibility")


def test_basis_size_is_bose_counting():
    for n in range(1, ORACLE_CAP + 1):
        assert basis_size(n) == int(comb(n + N_MODES - 1, N_MODES - 1, exact=True))


def test_embed_single_atom():
    f = embed(css(1))
    assert f.n_particles == 1
    norms = np.abs(f.amps)
    assert np.count_nonzero(norms > 1e-15) == 2
    np.testing.assert_allclose(np.sort(norms[norms > 1e-15]),
                               [1 / math.sqrt(2)] * 2, rtol=1e-14)


def test_oracle_cap_enforced():
    with pytest.raises(OracleCapError):
        embed(css(ORACLE_CAP + 1))


def test_sequence_is_deterministic(small_params):
    p = params_at(small_params, 0.3, 4.0)
    a = simulate(p, css(2)).amps
    b = simulate(p, css(2)).amps
    np.testing.assert_array_equal(a, b)


def test_sequence_preserves_norm(small_params):
    rng = np.random.default_rng(21)
    s = SymmetricSpinState(random_dicke_coeffs(rng, 3))
    f = simulate(params_at(small_params, 0.9, 2.2), s)
    assert abs(np.vdot(f.amps, f.amps).real - 1.0) < 1e-12


def test_single_atom_fringe(small_params):
    for xi in (0.0, 0.5, 1.2):
        for phi in np.linspace(0.0, 2.0 * math.pi, 9):
            p = params_at(small_params, xi, phi)
            m = measure(simulate(p, css(1)))
            assert m.mean_global == pytest.approx(
                0.5 * math.cos(xi) ** 2 * math.cos(phi), abs=1e-13)


def test_oracle_matches_analytic_small_n(small_params):
    rng = np.random.default_rng(22)
    for n in (1, 2, 3, 4):
        for _ in range(5):
            s = SymmetricSpinState(random_dicke_coeffs(rng, n))
            xi = rng.uniform(0.0, math.pi)
            phi = rng.uniform(0.0, 2.0 * math.pi)
            p = params_at(small_params, xi, phi)
            analytic = moments(s, xi, phi)
            oracle = measure(simulate(p, s))
            for f in FIELDS:
                assert getattr(oracle, f) == pytest.approx(
                    getattr(analytic, f), abs=1e-12)


def test_one_body_path_matches_number_basis(small_params):
    # The same sequence propagated through one- and two-body correlators
    # must reproduce the full number-basis result.
    rng = np.random.default_rng(23)
    for n in (2, 4, 6):
        s = SymmetricSpinState(random_dicke_coeffs(rng, n))
        p = params_at(small_params, 0.8, 3.7)
        full = measure(simulate(p, s))
        reduced = moments_firstq(p, s)
        for f in FIELDS:
            assert getattr(reduced, f) == pytest.approx(
                getattr(full, f), abs=1e-12)


def test_sequence_matrix_is_unitary(small_params):
    p = params_at(small_params, 0.4, 5.0)
    w = sequence_matrix(p)
    np.testing.assert_allclose(w @ w.conj().T, np.eye(N_MODES), atol=1e-12)


def test_internal_energies_do_not_move_the_fringe(small_params):
    # A common and a differential on-site offset shift individual branch
    # phases but the measured signal only responds through xi.
    p0 = params_at(small_params, 0.0, 4.5)
    p1 = dataclasses.replace(p0, onsite_up=2.0e-31, onsite_dn=2.0e-31)
    m0 = measure(simulate(p0, css(2)))
    m1 = measure(simulate(p1, css(2)))
    assert m1.mean_global == pytest.approx(m0.mean_global, abs=1e-12)


def test_dislocation_rotates_precession_angle(small_params):
    p = params_at(small_params, 0.0, 2.0 * math.pi)
    for delta in (-0.15, 0.0, 0.2):
        opt = SequenceOptions(dislocation_energy=delta * HBAR / p.hold_time)
        m = measure(simulate(p, css(2), opt))
        xi_eff = delta
        assert m.visibility == pytest.approx(math.cos(xi_eff) ** 2, abs=1e-12)
        assert m.mean_global == pytest.approx(math.cos(xi_eff) ** 2, abs=1e-12)


def test_state_roundtrip(small_params):
    f = simulate(params_at(small_params, 0.1, 3.3), css(2))
    back = type(f).from_json(f.to_json())
    assert back.n_particles == f.n_particles
    np.testing.assert_allclose(back.amps, f.amps, atol=1e-16)
