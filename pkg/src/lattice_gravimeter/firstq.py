"""Second, independent evaluation of the interferometer moments.

Every stage of the sequence is a non-interacting (one-body) unitary, so the
whole run is characterized by a single 10x10 mode matrix W. Moments of the
final state then follow by contracting W against the one- and two-body
correlations of the input, which occupies only the two central-site modes.
This path shares no state-vector code with the Fock oracle and guards
against a common bug in it.
"""

from __future__ import annotations

import math

import numpy as np

from .dicke import SymmetricSpinState
from .fock import (MODES, MODE_INDEX, N_MODES, SITES, SequenceOptions,
                   _mode_phases_hold, _mode_phases_pulse, _mode_phases_shift)
from .moments import MeasurementMoments
from .params import PhysicalParams, derive


def _shift_matrix(phases: np.ndarray) -> np.ndarray:
    """Permutation (up: l -> l-1, dn: l -> l+1, cyclic) times start phases."""
    w = np.zeros((N_MODES, N_MODES), dtype=complex)
    n_sites = len(SITES)
    for i, (site, spin) in enumerate(MODES):
        step = -1 if spin == "up" else 1
        new_site = SITES[(SITES.index(site) + step) % n_sites]
        w[MODE_INDEX[(new_site, spin)], i] = np.exp(1j * phases[i])
    return w


def _pulse_matrix(phases: np.ndarray) -> np.ndarray:
    """Per-site rotation |up> -> (|up>-|dn>)/sqrt2, |dn> -> (|up>+|dn>)/sqrt2,
    composed with the site gravitational phase."""
    w = np.zeros((N_MODES, N_MODES), dtype=complex)
    r = 1.0 / math.sqrt(2.0)
    for site in SITES:
        iu, idn = MODE_INDEX[(site, "up")], MODE_INDEX[(site, "dn")]
        w[iu, iu], w[idn, iu] = r, -r
        w[iu, idn], w[idn, idn] = r, r
    return np.diag(np.exp(1j * phases)) @ w


def sequence_matrix(p: PhysicalParams, opt: SequenceOptions = SequenceOptions(),
                    *, through_final_pulse: bool = True) -> np.ndarray:
    """The one-body matrix of the full sequence (optionally stopping just
    before the final pulse, where the fringe coherence is read off)."""
    d = derive(p)
    t_pulse = p.pulse_time + opt.pulse_jitter
    t_hold = p.hold_time + opt.hold_jitter
    shift = _shift_matrix(_mode_phases_shift(p, d))
    pulse = _pulse_matrix(_mode_phases_pulse(p, d, t_pulse))
    hold = np.diag(np.exp(
        1j * _mode_phases_hold(p, d, t_hold, opt.dislocation_energy)))
    w = shift @ pulse @ hold @ pulse @ shift
    if through_final_pulse:
        w = pulse @ w
    return w


def _ladder_down(v: np.ndarray, total: int, spin: str) -> np.ndarray:
    """Apply a_up or a_dn at the central site to a Dicke-amplitude vector
    indexed by n_up, for a state with `total` particles."""
    n = np.arange(total + 1)
    if spin == "up":
        out = np.sqrt(n[1:]) * v[1:]
    else:
        out = np.sqrt(total - n[:-1]) * v[:-1]
    return out  # length total, indexed by new n_up for total-1 particles


def _initial_tables(s: SymmetricSpinState) -> tuple[np.ndarray, np.ndarray]:
    """One-body <a+_p a_q> and normal-ordered <a+_p a+_r a_q a_s> over the
    two occupied input modes (central site, up/dn)."""
    N = s.n_particles
    v = s.coeffs
    one = np.zeros((2, 2), dtype=complex)
    two = np.zeros((2, 2, 2, 2), dtype=complex)
    spins = ("up", "dn")
    singles = {q: _ladder_down(v, N, spins[q]) for q in range(2)}
    for pidx in range(2):
        for q in range(2):
            one[pidx, q] = np.vdot(singles[pidx], singles[q])
    if N >= 2:
        doubles = {}
        for q in range(2):
            for sidx in range(2):
                doubles[(q, sidx)] = _ladder_down(singles[sidx], N - 1, spins[q])
        for pidx in range(2):
            for r in range(2):
                for q in range(2):
                    for sidx in range(2):
                        # <a+_p a+_r a_q a_s> = <(a_r a_p psi)|(a_q a_s psi)>
                        two[pidx, r, q, sidx] = np.vdot(
                            doubles[(r, pidx)], doubles[(q, sidx)])
    return one, two


def moments_firstq(p: PhysicalParams, s: SymmetricSpinState,
                   opt: SequenceOptions = SequenceOptions()) -> MeasurementMoments:
    """MeasurementMoments via one-body evolution plus Wick-free contraction."""
    N = s.n_particles
    w = sequence_matrix(p, opt)
    iu0, id0 = MODE_INDEX[(0, "up")], MODE_INDEX[(0, "dn")]
    occ_modes = (iu0, id0)
    one, two = _initial_tables(s)

    # <a+_i a_j>_final = sum_kl conj(W_ik) W_jl <a+_k a_l>_initial
    wocc = w[:, occ_modes]           # (10, 2)
    one_f = np.conj(wocc) @ one @ wocc.T

    # <n_i n_j>_final = contraction of the normal-ordered table + delta_ij n_i
    nn = np.zeros((N_MODES, N_MODES))
    if N >= 2:
        # cache per-mode row pairs over the occupied input modes
        for i in range(N_MODES):
            a_i = np.conj(wocc[i])    # index p
            b_i = wocc[i]             # index q
            for j in range(N_MODES):
                a_j = np.conj(wocc[j])  # index r
                b_j = wocc[j]           # index s
                val = np.einsum("p,r,q,s,prqs->", a_i, a_j, b_i, b_j, two)
                nn[i, j] = val.real
    for i in range(N_MODES):
        nn[i, i] += one_f[i, i].real

    n_mean = np.real(np.diag(one_f))
    jz_mean = {}
    for site in SITES:
        iu, idn = MODE_INDEX[(site, "up")], MODE_INDEX[(site, "dn")]
        jz_mean[site] = 0.5 * (n_mean[iu] - n_mean[idn])

    def jz_second(sites_a, sites_b) -> float:
        total = 0.0
        for sa in sites_a:
            for sb in sites_b:
                iu_a, id_a = MODE_INDEX[(sa, "up")], MODE_INDEX[(sa, "dn")]
                iu_b, id_b = MODE_INDEX[(sb, "up")], MODE_INDEX[(sb, "dn")]
                total += 0.25 * (nn[iu_a, iu_b] - nn[iu_a, id_b]
                                 - nn[id_a, iu_b] + nn[id_a, id_b])
        return total

    mean_local = jz_mean[0]
    mean_global = sum(jz_mean.values())

    # fringe coherence just before the final pulse
    w_pre = sequence_matrix(p, opt, through_final_pulse=False)
    wocc_pre = w_pre[:, occ_modes]
    one_pre = np.conj(wocc_pre) @ one @ wocc_pre.T
    coherence = one_pre[iu0, id0]

    second_local = jz_second((0,), (0,))
    second_global = jz_second(SITES, SITES)
    return MeasurementMoments(
        mean_global=mean_global,
        mean_local=mean_local,
        second_global=second_global,
        second_local=second_local,
        second_outer_minus=jz_second((-2,), (-2,)),
        second_outer_plus=jz_second((2,), (2,)),
        var_global=second_global - mean_global**2,
        var_local=second_local - mean_local**2,
        visibility=2.0 * abs(coherence) / N,
    )
