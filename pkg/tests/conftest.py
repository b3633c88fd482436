"""Shared fixtures for the gravimeter test suite."""

import dataclasses
import math

import numpy as np
import pytest

from lattice_gravimeter import HBAR, PhysicalParams, derive, rb87_params


def params_at(base: PhysicalParams, xi: float, phi: float) -> PhysicalParams:
    """Parameters whose interferometer lands on (xi, phi).

    Written independently of the library's own angle plumbing: gravity is
    solved from phi = 2 M g L d (T_s + T_h + 2 T_p)/hbar + pi, and the
    transition frequency from xi = omega_0 T_h / 2 (on-site energies zero).
    Phases below pi are lifted by a full fringe to keep gravity nonnegative.
    """
    d = derive(base)
    phi_eff = phi if phi >= math.pi else phi + 2.0 * math.pi
    gravity = (phi_eff - math.pi) * HBAR / (
        2.0 * base.atom_mass * base.shift_sites * d.lattice_const * d.total_time)
    return dataclasses.replace(
        base, gravity=gravity, transition_freq=2.0 * xi / base.hold_time,
        onsite_up=0.0, onsite_dn=0.0)


@pytest.fixture
def rb87():
    """Rubidium-87 reference parameter set (g = 9.8, T_h = 1 s)."""
    return rb87_params()


@pytest.fixture
def rb87_derived(rb87):
    return derive(rb87)


def random_dicke_coeffs(rng, n):
    """A random normalized symmetric-state coefficient vector of N atoms."""
    c = rng.standard_normal(n + 1) + 1j * rng.standard_normal(n + 1)
    return c / np.linalg.norm(c)


@pytest.fixture
def small_params():
    """A parameter set with modest phases, convenient for oracle fringes.

    Gravity is left at zero; individual tests override it to place the
    interferometer phase wherever they need it.
    """
    return PhysicalParams(
        atom_mass=1.44316060e-25,
        gravity=0.0,
        wavelength=866.4e-9,
        drive_freq=50e3,
        shift_sites=2,
        hold_time=1e-3,
        pulse_time=1e-5,
    )
