"""Brute-force many-body simulation of the full interferometer sequence.

The state lives in the bosonic Fock space over ten (site, spin) modes: five
sites labelled -2..+2 in units of the shift distance L, two spin states
each. Shifts are spin-dependent mode relabelings with adiabatic phases,
pulses are instantaneous collective rotations composed with the
site-dependent gravitational phase, and holds are diagonal. For N up to the
cap (dimension C(N+9,9) <= 24310 at N=8) everything is exact up to the
Krylov tolerance of the pulse exponential.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import expm_multiply

from .dicke import SymmetricSpinState
from .moments import MeasurementMoments
from .params import HBAR, PhysicalParams, derive

SITES = (-2, -1, 0, 1, 2)   # in units of L
SPINS = ("up", "dn")
MODES = tuple((site, spin) for site in SITES for spin in SPINS)
MODE_INDEX = {m: i for i, m in enumerate(MODES)}
N_MODES = len(MODES)

ORACLE_CAP = 8
# dense pulse matrices are cached below this Fock dimension
_DENSE_PULSE_DIM = 700


class OracleCapError(ValueError):
    """Particle number exceeds the brute-force cap."""


@dataclass(frozen=True)
class SequenceOptions:
    """Perturbations applied to the ideal sequence.

    dislocation_energy: extra spin-dependent on-site energy during the hold
        (+delta for up, -delta for down), in joules. Models the energy-shift
        consequence of a relative displacement of the two lattices.
    hold_jitter / pulse_jitter: additive timing errors in seconds.
    """

    dislocation_energy: float = 0.0
    hold_jitter: float = 0.0
    pulse_jitter: float = 0.0


@dataclass
class FockState:
    """Amplitudes over all occupation vectors with sum n_i = N."""

    n_particles: int
    amps: np.ndarray

    @property
    def norm_error(self) -> float:
        return abs(float(np.sum(np.abs(self.amps) ** 2)) - 1.0)

    def to_json(self) -> dict:
        return {
            "n_particles": self.n_particles,
            "amplitudes": [[float(a.real), float(a.imag)] for a in self.amps],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "FockState":
        amps = np.array([complex(re, im) for re, im in obj["amplitudes"]])
        return cls(int(obj["n_particles"]), amps)


@lru_cache(maxsize=16)
def _basis(N: int) -> tuple[np.ndarray, dict]:
    """Occupation matrix (dim x 10, lexicographic) and index lookup."""
    occs = []
    for combo in combinations_with_replacement(range(N_MODES), N):
        occ = [0] * N_MODES
        for m in combo:
            occ[m] += 1
        occs.append(tuple(occ))
    occs.sort()
    mat = np.array(occs, dtype=np.int64)
    index = {occ: i for i, occ in enumerate(occs)}
    return mat, index


def basis_size(N: int) -> int:
    return math.comb(N + N_MODES - 1, N_MODES - 1)


@lru_cache(maxsize=16)
def _jy_sparse(N: int) -> sp.csr_matrix:
    """Collective Jy = sum_sites (-i a+_up a_dn + i a+_dn a_up)/2."""
    occ, index = _basis(N)
    dim = occ.shape[0]
    rows, cols, vals = [], [], []
    for site in SITES:
        iu, idn = MODE_INDEX[(site, "up")], MODE_INDEX[(site, "dn")]
        for col in range(dim):
            o = occ[col]
            if o[idn] > 0:  # a+_up a_dn
                new = list(o)
                new[idn] -= 1
                new[iu] += 1
                row = index[tuple(new)]
                amp = math.sqrt(o[idn] * (o[iu] + 1))
                rows.append(row); cols.append(col); vals.append(-0.5j * amp)
            if o[iu] > 0:   # a+_dn a_up
                new = list(o)
                new[iu] -= 1
                new[idn] += 1
                row = index[tuple(new)]
                amp = math.sqrt(o[iu] * (o[idn] + 1))
                rows.append(row); cols.append(col); vals.append(0.5j * amp)
    return sp.csr_matrix((vals, (rows, cols)), shape=(dim, dim))


@lru_cache(maxsize=8)
def _dense_pulse(N: int) -> np.ndarray:
    import scipy.linalg
    return scipy.linalg.expm(0.5j * math.pi * _jy_sparse(N).toarray())


@lru_cache(maxsize=16)
def _shift_permutation(N: int, up_step: int) -> np.ndarray:
    """Row gather index implementing up: l -> l+up_step, dn: l -> l-up_step.

    Wraps cyclically at the site boundary; simulate() checks that the wrap
    modes carry no occupation before using it.
    """
    occ, index = _basis(N)
    n_sites = len(SITES)
    perm_modes = []
    for site, spin in MODES:
        step = up_step if spin == "up" else -up_step
        new_site = SITES[(SITES.index(site) + step) % n_sites]
        perm_modes.append(MODE_INDEX[(new_site, spin)])
    gather = np.empty(occ.shape[0], dtype=np.int64)
    for i in range(occ.shape[0]):
        new = [0] * N_MODES
        for m, nm in enumerate(occ[i]):
            new[perm_modes[m]] += nm
        gather[index[tuple(new)]] = i
    return gather


def embed(s: SymmetricSpinState, cap: int = ORACLE_CAP) -> FockState:
    """Place Dicke amplitudes on the central-site occupations."""
    N = s.n_particles
    if N > cap:
        raise OracleCapError(f"N={N} exceeds the oracle cap {cap}")
    if s.norm_error > 1e-9:
        raise ValueError("state is not normalized")
    occ, index = _basis(N)
    amps = np.zeros(occ.shape[0], dtype=complex)
    iu, idn = MODE_INDEX[(0, "up")], MODE_INDEX[(0, "dn")]
    for n in range(N + 1):
        key = [0] * N_MODES
        key[iu], key[idn] = n, N - n
        amps[index[tuple(key)]] = s.coeffs[n]
    return FockState(N, amps)


def _mode_phases_shift(p: PhysicalParams, d) -> np.ndarray:
    """Adiabatic phase per mode for one shift leg, keyed to the start site.

    A spin-up particle at site l (L units) moves to l-1 and sees the mean
    height (l - 1/2)*L*d; spin-down moves to l+1 with mean height
    (l + 1/2)*L*d. The wrap modes get the same formula; they must be empty.
    """
    fld = d.force * p.shift_sites * d.lattice_const
    phases = np.empty(N_MODES)
    for i, (site, spin) in enumerate(MODES):
        if spin == "up":
            e = p.onsite_up + HBAR * p.transition_freq / 2.0 - fld * (site - 0.5)
        else:
            e = p.onsite_dn - HBAR * p.transition_freq / 2.0 - fld * (site + 0.5)
        phases[i] = -e * d.shift_time / HBAR
    return phases


def _mode_phases_hold(p: PhysicalParams, d, t_hold: float, delta: float) -> np.ndarray:
    fld = d.force * p.shift_sites * d.lattice_const
    phases = np.empty(N_MODES)
    for i, (site, spin) in enumerate(MODES):
        if spin == "up":
            e = p.onsite_up + HBAR * p.transition_freq / 2.0 + delta - fld * site
        else:
            e = p.onsite_dn - HBAR * p.transition_freq / 2.0 - delta - fld * site
        phases[i] = -e * t_hold / HBAR
    return phases


def _mode_phases_pulse(p: PhysicalParams, d, t_pulse: float) -> np.ndarray:
    """Site-dependent gravitational phase during a pulse (spin-blind)."""
    fld = d.force * p.shift_sites * d.lattice_const
    return np.array([fld * site * t_pulse / HBAR for site, _ in MODES])


class _Pipeline:
    """Stage-by-stage evolution with norm and NaN diagnostics."""

    def __init__(self, N: int):
        self.N = N
        self.occ, _ = _basis(N)
        self.dim = self.occ.shape[0]
        self.jy = _jy_sparse(N)
        self.use_dense = self.dim <= _DENSE_PULSE_DIM

    def diagonal(self, amps: np.ndarray, mode_phases: np.ndarray, stage: str) -> np.ndarray:
        out = amps * np.exp(1j * (self.occ @ mode_phases))
        self._check(out, stage)
        return out

    def pulse(self, amps: np.ndarray, stage: str) -> np.ndarray:
        if self.use_dense:
            out = _dense_pulse(self.N) @ amps
        else:
            out = expm_multiply(0.5j * math.pi * self.jy, amps)
        self._check(out, stage)
        return out

    def relabel(self, amps: np.ndarray, up_step: int, stage: str) -> np.ndarray:
        # wrap modes: up leaving through the bottom, dn through the top
        wrap = (MODE_INDEX[((-2, "up") if up_step < 0 else (2, "up"))],
                MODE_INDEX[((2, "dn") if up_step < 0 else (-2, "dn"))])
        for m in wrap:
            leak = float(np.sum(np.abs(amps) ** 2 * self.occ[:, m]))
            if leak > 1e-20:
                raise RuntimeError(
                    f"{stage}: occupied boundary mode {MODES[m]} would leave "
                    f"the five-site window (weight {leak:.3e})")
        out = amps[_shift_permutation(self.N, up_step)]
        self._check(out, stage)
        return out

    def _check(self, amps: np.ndarray, stage: str) -> None:
        if not np.all(np.isfinite(amps.view(float))):
            raise RuntimeError(f"non-finite amplitude after stage {stage}")
        drift = abs(float(np.sum(np.abs(amps) ** 2)) - 1.0)
        if drift > 1e-10:
            raise RuntimeError(f"norm drift {drift:.3e} after stage {stage}")


def simulate(p: PhysicalParams, s: SymmetricSpinState,
             opt: SequenceOptions = SequenceOptions(),
             cap: int = ORACLE_CAP) -> FockState:
    """Run the six-stage sequence and return the final Fock state."""
    d = derive(p)
    state = embed(s, cap=cap)
    pipe = _Pipeline(state.n_particles)
    amps = state.amps

    t_pulse = p.pulse_time + opt.pulse_jitter
    t_hold = p.hold_time + opt.hold_jitter
    shift_ph = _mode_phases_shift(p, d)
    pulse_ph = _mode_phases_pulse(p, d, t_pulse)

    # spin-up moves one leg down the ladder (l -> l-1), spin-down up
    amps = pipe.diagonal(amps, shift_ph, "shift1.phase")
    amps = pipe.relabel(amps, -1, "shift1.move")
    amps = pipe.diagonal(amps, pulse_ph, "pulse1.phase")
    amps = pipe.pulse(amps, "pulse1.rotate")
    amps = pipe.diagonal(
        amps, _mode_phases_hold(p, d, t_hold, opt.dislocation_energy), "hold")
    amps = pipe.diagonal(amps, pulse_ph, "pulse2.phase")
    amps = pipe.pulse(amps, "pulse2.rotate")
    amps = pipe.diagonal(amps, shift_ph, "shift2.phase")
    amps = pipe.relabel(amps, -1, "shift2.move")
    amps = pipe.diagonal(amps, pulse_ph, "pulse3.phase")
    amps = pipe.pulse(amps, "pulse3.rotate")
    return FockState(state.n_particles, amps)


def _coherence_site0(f: FockState) -> complex:
    """<a+_up a_dn> at the central site, evaluated on the final state and
    mapped back through the last pulse; its modulus is cos^2(xi)*|fringe sum|.
    """
    occ, index = _basis(f.n_particles)
    iu, idn = MODE_INDEX[(0, "up")], MODE_INDEX[(0, "dn")]
    raw = 0.0 + 0.0j  # <a+_up a_dn> on the final state
    for col in np.nonzero(occ[:, idn] > 0)[0]:
        o = occ[col]
        new = list(o)
        new[idn] -= 1
        new[iu] += 1
        row = index[tuple(new)]
        raw += np.conj(f.amps[row]) * f.amps[col] * math.sqrt(o[idn] * (o[iu] + 1))
    jz0 = 0.5 * float(np.sum(np.abs(f.amps) ** 2 * (occ[:, iu] - occ[:, idn])))
    # the final rotation maps the pre-pulse coherence onto Jz0 + i*Im<a+_u a_d>
    return jz0 + 1j * raw.imag


def measure(f: FockState) -> MeasurementMoments:
    """Exact spin-population moments of a Fock state, per site and global."""
    if f.norm_error > 1e-9:
        raise ValueError("state is not normalized")
    occ, _ = _basis(f.n_particles)
    prob = np.abs(f.amps) ** 2

    jz = {}
    for site in SITES:
        iu, idn = MODE_INDEX[(site, "up")], MODE_INDEX[(site, "dn")]
        jz[site] = 0.5 * (occ[:, iu] - occ[:, idn]).astype(float)
    jz_global = sum(jz.values())

    mean_local = float(prob @ jz[0])
    return MeasurementMoments(
        mean_global=float(prob @ jz_global),
        mean_local=mean_local,
        second_global=float(prob @ jz_global**2),
        second_local=float(prob @ jz[0] ** 2),
        second_outer_minus=float(prob @ jz[-2] ** 2),
        second_outer_plus=float(prob @ jz[2] ** 2),
        var_global=float(prob @ jz_global**2) - float(prob @ jz_global) ** 2,
        var_local=float(prob @ jz[0] ** 2) - mean_local**2,
        visibility=2.0 * abs(_coherence_site0(f)) / f.n_particles,
    )
