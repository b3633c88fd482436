"""Gravity-measurement sensitivity: squeezing parameter, uncertainty,
particle-number scaling, fringe tables and dislocation robustness."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import dicke, fock, phases
from .moments import moments as compute_moments
from .dicke import SymmetricSpinState, css, optimal_oat
from .params import HBAR, PhysicalParams, derive

VISIBILITY_FLOOR = 1e-12


@dataclass(frozen=True)
class SensitivityReport:
    chi: float          # squeezing parameter at the operating point
    dg_over_g: float    # relative gravity uncertainty
    phi_star: float     # operating phase (rad)
    xi_star: float      # operating hold precession (rad)
    n_particles: int


@dataclass(frozen=True)
class ScalingFit:
    """Power-law fit value = intercept * N**exponent over n_range."""

    exponent: float
    intercept: float
    r_squared: float
    n_range: tuple[int, int]


def chi(s: SymmetricSpinState, xi: float, phi: float) -> float:
    """chi = 2*DeltaJz/(V*sqrt(N)) from the closed-form moments."""
    m = compute_moments(s, xi, phi)
    if abs(m.visibility) < VISIBILITY_FLOOR:
        raise ValueError("visibility is degenerate; chi undefined")
    return 2.0 * math.sqrt(max(m.var_global, 0.0)) / (abs(m.visibility)
                                                      * math.sqrt(s.n_particles))


def _dg_from_chi(p: PhysicalParams, N: int, chi_value: float) -> float:
    d = derive(p)
    denom = (2.0 * math.sqrt(N) * p.atom_mass * p.gravity
             * p.shift_sites * d.lattice_const * d.total_time)
    return HBAR * chi_value / denom


def uncertainty(p: PhysicalParams, s: SymmetricSpinState) -> SensitivityReport:
    """Relative gravity uncertainty at the optimal operating point
    (phase pi/2 mod pi, zero hold precession)."""
    if p.gravity <= 0:
        raise ValueError("relative uncertainty requires g > 0")
    phi_star, xi_star = math.pi / 2.0, 0.0
    chi_value = chi(s, xi_star, phi_star)
    return SensitivityReport(
        chi=chi_value,
        dg_over_g=_dg_from_chi(p, s.n_particles, chi_value),
        phi_star=phi_star,
        xi_star=xi_star,
        n_particles=s.n_particles,
    )


def scaling_study(p: PhysicalParams, n_list: list[int], kind: str) -> ScalingFit:
    """Log-log fit of the optimal dg/g versus particle number.

    kind 'css' uses chi = 1; kind 'sss' optimizes the one-axis twisting
    per N (closed-form path above the exact-vector switch).
    """
    if kind not in ("css", "sss"):
        raise ValueError(f"kind must be 'css' or 'sss', got {kind!r}")
    if len(n_list) < 4 and kind == "css":
        raise ValueError("need at least 4 particle numbers for the css fit")
    if len(n_list) < 3:
        raise ValueError("need at least 3 particle numbers")
    if sorted(n_list) != list(n_list):
        raise ValueError("n_list must be sorted ascending")
    if len(set(n_list)) != len(n_list):
        raise ValueError("n_list entries must be distinct")

    dgs = []
    for N in n_list:
        if kind == "css":
            chi_value = 1.0
        else:
            _, _, chi_value = optimal_oat(N)
        dgs.append(_dg_from_chi(p, N, chi_value))
    return fit_loglog(n_list, dgs)


def fit_loglog(n_list, values) -> ScalingFit:
    x = np.log(np.asarray(n_list, dtype=float))
    y = np.log(np.asarray(values, dtype=float))
    if np.ptp(x) < 1e-12:
        raise ValueError("degenerate abscissa: particle numbers coincide")
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid**2)) / ss_tot if ss_tot > 0 else 1.0
    return ScalingFit(
        exponent=float(slope),
        intercept=float(np.exp(intercept)),
        r_squared=r2,
        n_range=(int(min(n_list)), int(max(n_list))),
    )


def fringe_scan(p: PhysicalParams, s: SymmetricSpinState,
                phi_grid) -> list[tuple[float, float, float, float]]:
    """(phi, <Jz>, <Jz>-DeltaJz, <Jz>+DeltaJz) rows at xi = 0."""
    phi_grid = np.atleast_1d(np.asarray(phi_grid, dtype=float))
    if phi_grid.size == 0:
        raise ValueError("phi grid is empty")
    rows = []
    for phi in phi_grid:
        m = compute_moments(s, 0.0, float(phi))
        half = math.sqrt(max(m.var_global, 0.0))
        rows.append((float(phi), m.mean_global, m.mean_global - half,
                     m.mean_global + half))
    return rows


def _phi_to_gravity(p: PhysicalParams, phi: float) -> float:
    """Gravity value at which the chained total phase equals phi."""
    d = derive(p)
    scale = 2.0 * p.atom_mass * p.shift_sites * d.lattice_const * d.total_time / HBAR
    return (phi - math.pi) / scale


def oracle_fringe(p: PhysicalParams, s: SymmetricSpinState, phi_values,
                  opt: fock.SequenceOptions = fock.SequenceOptions()) -> np.ndarray:
    """<Jz> from the brute-force oracle at each target phase (phi is scanned
    by adjusting g; the hold precession is unaffected)."""
    means = np.empty(len(phi_values))
    for i, phi in enumerate(phi_values):
        g = _phi_to_gravity(p, float(phi))
        if g < 0:
            raise ValueError(f"target phase {phi} needs negative gravity")
        pg = PhysicalParams(**{**p.__dict__, "gravity": g})
        final = fock.simulate(pg, s, opt)
        means[i] = fock.measure(final).mean_global
    return means


def _quadratic_peak(x: np.ndarray, y: np.ndarray) -> float:
    """Vertex of the parabola through the maximum sample and its neighbors."""
    k = int(np.argmax(y))
    k = min(max(k, 1), x.size - 2)
    x0, x1, x2 = x[k - 1], x[k], x[k + 1]
    y0, y1, y2 = y[k - 1], y[k], y[k + 1]
    denom = (y0 - 2.0 * y1 + y2)
    if denom == 0:
        return float(x1)
    return float(x1 + 0.5 * (y0 - y2) / denom * (x1 - x0))


def robustness(p: PhysicalParams, s: SymmetricSpinState, delta_list,
               n_grid: int = 10_000) -> list[tuple[float, float, float]]:
    """(delta, fringe-peak shift, visibility) for each dislocation energy.

    The fringe is scanned over one 2pi window around the peak at phi = 2pi;
    the peak is located by quadratic interpolation on the grid. The peak
    position must not move with delta, while the visibility follows the
    cos^2 law of the dislocation-modified hold precession.
    """
    phi_grid = np.linspace(math.pi, 3.0 * math.pi, n_grid)
    results = []
    for delta in delta_list:
        opt = fock.SequenceOptions(dislocation_energy=float(delta))
        means = oracle_fringe(p, s, phi_grid, opt)
        peak = _quadratic_peak(phi_grid, means)
        g_peak = _phi_to_gravity(p, peak)
        pg = PhysicalParams(**{**p.__dict__, "gravity": g_peak})
        vis = fock.measure(fock.simulate(pg, s, opt)).visibility
        results.append((float(delta), peak - 2.0 * math.pi, vis))
    return results


def gravity_derivative_check(p: PhysicalParams, s: SymmetricSpinState,
                             rel_step: float = 1e-6) -> tuple[float, float]:
    """(closed-form dg/g, finite-difference dg/g) at the operating point.

    The mean signal runs through the full phasebook + moments pipeline; the
    derivative uses a Richardson-extrapolated central difference. The
    caller picks a parameter set whose total phase is small enough that the
    difference is well conditioned.
    """
    ledger = phases.ledger(p)

    def mean_at(g: float) -> float:
        pg = PhysicalParams(**{**p.__dict__, "gravity": g})
        led = phases.ledger(pg)
        return compute_moments(s, led.xi, led.phi_total).mean_global

    g0 = p.gravity
    h = rel_step * g0

    def central(step: float) -> float:
        return (mean_at(g0 + step) - mean_at(g0 - step)) / (2.0 * step)

    d1, d2 = central(h), central(h / 2.0)
    slope = (4.0 * d2 - d1) / 3.0  # Richardson extrapolation

    m = compute_moments(s, ledger.xi, ledger.phi_total)
    fd = math.sqrt(max(m.var_global, 0.0)) / abs(slope) / g0
    closed = _dg_from_chi(p, s.n_particles, chi(s, ledger.xi, ledger.phi_total))
    return closed, fd
