"""Closed-form measurement statistics of the four-path interferometer.

The general complex-coefficient expressions are primary; the simplified
forms for real symmetric amplitudes (CSS and twisted states) are kept as
cross-checks. Angles xi and phi enter as free parameters here so they can
be scanned; the sensitivity module binds them to physics.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .dicke import SymmetricSpinState

NORM_TOL = 1e-9
_REAL_TOL = 1e-9


@dataclass(frozen=True)
class MeasurementMoments:
    """First and second moments of the spin-population difference.

    Global refers to the sum over all occupied sites, local to the central
    recombination site; outer_minus/plus are the second moments at the two
    leaked sites (their means vanish identically). All in spin units.
    """

    mean_global: float
    mean_local: float
    second_global: float
    second_local: float
    second_outer_minus: float
    second_outer_plus: float
    var_global: float
    var_local: float
    visibility: float
    nonsymmetric: bool = False


def _sums(c: np.ndarray) -> tuple[complex, complex, float, float, float]:
    """Coefficient sums shared by the moment formulas.

    s1 = sum_n sqrt(n(N-n+1)) c_n c*_{n-1}         (fringe amplitude)
    s2 = sum_n sqrt(n(n-1)(N-n+1)(N-n+2)) c_n c*_{n-2}  (2-phi cross term)
    plus sum |c|^2*n, sum |c|^2*(N-n), sum |c|^2*n(N-n).
    """
    N = c.size - 1
    n = np.arange(N + 1)
    p = np.abs(c) ** 2
    s1 = complex(np.sum(np.sqrt(n[1:] * (N - n[1:] + 1)) * c[1:] * np.conj(c[:-1])))
    if N >= 2:
        nn = n[2:]
        w = np.sqrt(nn * (nn - 1) * (N - nn + 1) * (N - nn + 2))
        s2 = complex(np.sum(w * c[2:] * np.conj(c[:-2])))
    else:
        s2 = 0.0 + 0.0j
    return s1, s2, float(np.sum(p * n)), float(np.sum(p * (N - n))), \
        float(np.sum(p * n * (N - n)))


def moments(s: SymmetricSpinState, xi: float, phi: float) -> MeasurementMoments:
    """Exact moments for arbitrary (possibly complex) Dicke amplitudes."""
    if not (math.isfinite(xi) and math.isfinite(phi)):
        raise ValueError("xi and phi must be finite")
    if s.norm_error > NORM_TOL:
        raise ValueError(f"state is not normalized (deviation {s.norm_error:.2e})")
    N = s.n_particles
    c2, c4 = math.cos(xi) ** 2, math.cos(xi) ** 4
    s2xi = math.sin(xi) ** 2
    s1, s2, sum_n, sum_nn, sum_ncomp = _sums(s.coeffs)

    mean_local = c2 * (s1 * cmath.exp(-1j * phi)).real
    outer_minus = (s2xi / 4.0) * sum_n
    outer_plus = (s2xi / 4.0) * sum_nn
    second_local = (N / 4.0) * c2 + (c4 / 2.0) * sum_ncomp \
        + (c4 / 2.0) * (s2 * cmath.exp(-2j * phi)).real
    second_global = second_local + outer_minus + outer_plus

    nonsymmetric = abs(s1.imag) > _REAL_TOL * max(abs(s1), 1.0)
    if nonsymmetric:
        visibility = 2.0 * c2 * abs(s1) / N
    else:
        visibility = 2.0 * c2 * s1.real / N

    return MeasurementMoments(
        mean_global=mean_local,
        mean_local=mean_local,
        second_global=second_global,
        second_local=second_local,
        second_outer_minus=outer_minus,
        second_outer_plus=outer_plus,
        var_global=second_global - mean_local**2,
        var_local=second_local - mean_local**2,
        visibility=visibility,
        nonsymmetric=nonsymmetric,
    )


def css_moments(N: int, xi: float, phi: float) -> MeasurementMoments:
    """Closed forms for a coherent spin state input."""
    if N < 1:
        raise ValueError(f"need N >= 1, got {N}")
    c2, c4 = math.cos(xi) ** 2, math.cos(xi) ** 4
    s2xi = math.sin(xi) ** 2
    cph2 = math.cos(phi) ** 2
    mean = (N / 2.0) * c2 * math.cos(phi)
    second_local = (N / 4.0) * c2 - (N / 4.0) * c4 * cph2 + (N**2 / 4.0) * c4 * cph2
    outer = (N / 8.0) * s2xi
    second_global = second_local + 2.0 * outer
    return MeasurementMoments(
        mean_global=mean,
        mean_local=mean,
        second_global=second_global,
        second_local=second_local,
        second_outer_minus=outer,
        second_outer_plus=outer,
        var_global=(N / 4.0) * (1.0 - c4 * cph2),
        var_local=(N / 4.0) * c2 * (1.0 - c2 * cph2),
        visibility=c2,
    )


def single_particle_moments(xi: float, phi: float) -> MeasurementMoments:
    """One-atom special case: mean (1/2)cos^2(xi)cos(phi)."""
    return css_moments(1, xi, phi)
