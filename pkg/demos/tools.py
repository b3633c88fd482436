"""Small helpers shared by the demo scripts."""

import dataclasses
import math

from lattice_gravimeter import HBAR, PhysicalParams, derive


def place_fringe(base: PhysicalParams, xi: float, phi: float) -> PhysicalParams:
    """Parameters that put the interferometer at hold angle xi and phase phi.

    Gravity is solved from phi = 2 M g L d T_tot / hbar + pi and the
    transition frequency from xi = omega_0 T_h / 2. Phases below pi are
    lifted by one fringe so gravity stays nonnegative.
    """
    d = derive(base)
    phi_eff = phi if phi >= math.pi else phi + 2.0 * math.pi
    gravity = (phi_eff - math.pi) * HBAR / (
        2.0 * base.atom_mass * base.shift_sites * d.lattice_const * d.total_time)
    return dataclasses.replace(
        base, gravity=gravity, transition_freq=2.0 * xi / base.hold_time,
        onsite_up=0.0, onsite_dn=0.0)
