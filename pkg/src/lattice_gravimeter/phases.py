"""Phase bookkeeping through the shift / pulse / hold / pulse / shift sequence.

Every accumulated phase of the interferometer is tracked unwrapped (full real
value, not mod 2pi): for realistic parameters the total phase is ~5e5 rad and
several tests reason about its linearity in g, L and the total time. Wrapping
happens only when a phase is fed into a trig function.

The -pi constant on the second pulse's spin-down phase is kept inside the
ledger so that the chained total reproduces the closed form
2*M*g*L*d*(T_s + T_h + 2*T_pulse)/hbar + pi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .params import HBAR, DerivedParams, PhysicalParams, derive


@dataclass(frozen=True)
class PhaseLedger:
    """All phases of the sequence, in radians.

    phi1_*  first spin-dependent shift
    phi2_*  first half-pi pulse (left/right basis)
    phi3_*  hold
    phi4_*  second half-pi pulse (up/down basis, includes the -pi offset)
    phi5_*  second spin-dependent shift
    theta*  cumulative chains
    xi      half the spin-precession phase during the hold
    eta     outer-path phase picked up by the leaked wavepackets
    """

    phi1_up: float
    phi1_dn: float
    phi2_left: float
    phi2_right: float
    phi3_left: float
    phi3_right: float
    phi4_up: float
    phi4_dn: float
    phi5_up: float
    phi5_dn: float
    theta1_r: float
    theta1_l: float
    theta2_r: float
    theta2_l: float
    theta3_dn: float
    theta3_up: float
    theta4_dn: float
    theta4_up: float
    xi: float
    eta: float
    phi_total: float


def shift_phases(p: PhysicalParams, d: DerivedParams, leg: str) -> tuple[float, float]:
    """Phases (up, down) accumulated during one shift leg.

    First leg: the wavepacket starts at the central site and climbs half a
    leg on average, so the gravitational term enters with +F*L*d/2 for up
    and -F*L*d/2 for down (overall minus sign). Second leg flips the signs
    of the F*L*d/2 terms.
    """
    if leg not in ("first", "second"):
        raise ValueError(f"leg must be 'first' or 'second', got {leg!r}")
    fld = d.force * p.shift_sites * d.lattice_const
    sgn = 1.0 if leg == "first" else -1.0
    up = -(p.onsite_up + HBAR * p.transition_freq / 2.0 + sgn * fld / 2.0) * d.shift_time / HBAR
    dn = -(p.onsite_dn - HBAR * p.transition_freq / 2.0 - sgn * fld / 2.0) * d.shift_time / HBAR
    return up, dn


def pulse_phases(p: PhysicalParams, d: DerivedParams, which: str) -> tuple[float, float]:
    """Gravitational phases picked up during one half-pi pulse.

    Returns (left, right) for the first pulse and (up, down) for the second;
    the second pulse's down phase carries the constant -pi offset.
    """
    if which not in ("first", "second"):
        raise ValueError(f"which must be 'first' or 'second', got {which!r}")
    fld_t = d.force * p.shift_sites * d.lattice_const * p.pulse_time / HBAR
    if which == "first":
        return fld_t, -fld_t           # (phi2_left, phi2_right)
    return fld_t, -fld_t - math.pi  # (phi4_up, phi4_dn)


def hold_phases(p: PhysicalParams, d: DerivedParams) -> tuple[float, float, float]:
    """(phi3_left, phi3_right, xi) for the hold of duration T_h."""
    phi3_left = d.force * p.shift_sites * d.lattice_const * p.hold_time / HBAR
    xi = (p.onsite_up - p.onsite_dn + HBAR * p.transition_freq) * p.hold_time / (2.0 * HBAR)
    return phi3_left, -phi3_left, xi


def ledger(p: PhysicalParams) -> PhaseLedger:
    """Populate the full phase ledger by chaining the five operations."""
    d = derive(p)
    phi1_up, phi1_dn = shift_phases(p, d, "first")
    phi2_left, phi2_right = pulse_phases(p, d, "first")
    phi3_left, phi3_right, xi = hold_phases(p, d)
    phi4_up, phi4_dn = pulse_phases(p, d, "second")
    phi5_up, phi5_dn = shift_phases(p, d, "second")

    theta1_r = phi1_up + phi2_right
    theta1_l = phi1_dn + phi2_left
    theta2_r = theta1_r + phi3_right
    theta2_l = theta1_l + phi3_left
    theta3_dn = theta2_r + phi4_dn
    theta3_up = theta2_l + phi4_up
    theta4_dn = theta3_dn + phi5_dn
    theta4_up = theta3_up + phi5_up

    fld = d.force * p.shift_sites * d.lattice_const
    eta = -(p.onsite_up - p.onsite_dn + HBAR * p.transition_freq + fld) * d.shift_time / HBAR

    return PhaseLedger(
        phi1_up=phi1_up, phi1_dn=phi1_dn,
        phi2_left=phi2_left, phi2_right=phi2_right,
        phi3_left=phi3_left, phi3_right=phi3_right,
        phi4_up=phi4_up, phi4_dn=phi4_dn,
        phi5_up=phi5_up, phi5_dn=phi5_dn,
        theta1_r=theta1_r, theta1_l=theta1_l,
        theta2_r=theta2_r, theta2_l=theta2_l,
        theta3_dn=theta3_dn, theta3_up=theta3_up,
        theta4_dn=theta4_dn, theta4_up=theta4_up,
        xi=xi, eta=eta,
        phi_total=theta4_up - theta4_dn,
    )


def total_phase(p: PhysicalParams) -> float:
    """Total interferometer phase, chained through the ledger."""
    return ledger(p).phi_total


def closed_form_phase(p: PhysicalParams) -> float:
    """2*M*g*L*d*(T_s + T_h + 2*T_pulse)/hbar + pi.

    The spin-dependent energies cancel exactly between the two arms; only
    the gravitational tilt survives, plus the constant pi from the second
    pulse convention.
    """
    d = derive(p)
    return (2.0 * p.atom_mass * p.gravity * p.shift_sites * d.lattice_const
            * d.total_time / HBAR + math.pi)
