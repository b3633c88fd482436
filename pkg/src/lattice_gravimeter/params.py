"""Physical configuration of the lattice gravimeter and derived quantities.

All quantities are SI with an explicit hbar; there is no natural-unit mode.
On-site energies and the transition frequency default to zero: the pulse
construction cancels them from the total interferometer phase, so they only
matter for the hold-time precession angle.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

HBAR = 1.054571817e-34  # J*s

_EPS_KEYS = (("eps_up_J", "eps_up_Er", "onsite_up"),
             ("eps_dn_J", "eps_dn_Er", "onsite_dn"))


class ParamError(ValueError):
    """Fatal configuration problem (invariant violation or bad config file)."""


@dataclass(frozen=True)
class PhysicalParams:
    """Inputs of the experiment.

    atom_mass        M, kg
    gravity          g, m/s^2 (g = 0 is a valid degenerate test case)
    wavelength       lattice laser wavelength, m
    depth_up/dn      lattice depths in recoil units (informational)
    drive_freq       polarization drive frequency nu, rad/s
    transition_freq  spin transition frequency omega_0, rad/s
    onsite_up/dn     bare on-site energies, J
    shift_sites      L, lattice sites traversed per shift leg
    hold_time        T_h, s
    pulse_time       half-pi pulse duration, s
    """

    atom_mass: float
    gravity: float
    wavelength: float
    drive_freq: float
    shift_sites: int
    hold_time: float
    pulse_time: float
    depth_up: float = 100.0
    depth_dn: float = 100.0
    transition_freq: float = 0.0
    onsite_up: float = 0.0
    onsite_dn: float = 0.0


@dataclass(frozen=True)
class DerivedParams:
    """Quantities computed from PhysicalParams (see derive)."""

    lattice_const: float   # d = lambda/2, m
    wave_vector: float     # kappa = 2 pi / lambda, 1/m
    force: float           # F = M g, N
    recoil_energy: float   # E_r = 2 pi^2 hbar^2 / (M lambda^2), J
    shift_time: float      # T_s = L pi / nu, s
    total_time: float      # T_s + T_h + 2 T_pulse, s


def _check_fatal(p: PhysicalParams) -> list[str]:
    errors = []
    for name, value in (("atom_mass", p.atom_mass),
                        ("wavelength", p.wavelength),
                        ("drive_freq", p.drive_freq)):
        if not math.isfinite(value) or value <= 0:
            errors.append(f"{name} must be finite and positive, got {value!r}")
    if p.shift_sites < 1:
        errors.append(f"shift_sites must be >= 1, got {p.shift_sites}")
    if not math.isfinite(p.gravity) or p.gravity < 0:
        errors.append(f"gravity must be finite and >= 0, got {p.gravity!r}")
    if not math.isfinite(p.hold_time) or p.hold_time < 0:
        errors.append(f"hold_time must be finite and >= 0, got {p.hold_time!r}")
    if not math.isfinite(p.pulse_time) or p.pulse_time < 0:
        errors.append(f"pulse_time must be finite and >= 0, got {p.pulse_time!r}")
    return errors


def derive(p: PhysicalParams) -> DerivedParams:
    """Compute the derived parameter set. Deterministic and pure."""
    errors = _check_fatal(p)
    if errors:
        raise ParamError("; ".join(errors))
    d = p.wavelength / 2.0
    shift_time = p.shift_sites * math.pi / p.drive_freq
    return DerivedParams(
        lattice_const=d,
        wave_vector=2.0 * math.pi / p.wavelength,
        force=p.atom_mass * p.gravity,
        recoil_energy=2.0 * math.pi**2 * HBAR**2 / (p.atom_mass * p.wavelength**2),
        shift_time=shift_time,
        total_time=shift_time + p.hold_time + 2.0 * p.pulse_time,
    )


def validate(p: PhysicalParams) -> list[str]:
    """Return non-fatal warnings; raise ParamError on invariant violations.

    The only heuristic is adiabaticity of the shift: hbar*nu should stay
    below the recoil energy. This is a coarse stand-in for the band-leakage
    condition; no band structure is solved here.
    """
    errors = _check_fatal(p)
    if errors:
        raise ParamError("; ".join(errors))
    warnings = []
    recoil = 2.0 * math.pi**2 * HBAR**2 / (p.atom_mass * p.wavelength**2)
    if HBAR * p.drive_freq >= recoil:
        warnings.append(
            "adiabaticity heuristic: hbar*drive_freq = "
            f"{HBAR * p.drive_freq:.3e} J >= recoil energy {recoil:.3e} J"
        )
    return warnings


def params_from_dict(cfg: dict) -> PhysicalParams:
    """Build PhysicalParams from a flat key-value mapping.

    On-site energies are accepted either in joules (eps_up_J) or in recoil
    units (eps_up_Er), never both.
    """
    required = ("atom_mass", "gravity", "wavelength", "drive_freq",
                "shift_sites", "hold_time", "pulse_time")
    missing = [k for k in required if k not in cfg]
    if missing:
        raise ParamError(f"missing config keys: {', '.join(missing)}")

    kwargs = {k: cfg[k] for k in required}
    kwargs["shift_sites"] = int(cfg["shift_sites"])
    for opt in ("depth_up", "depth_dn", "transition_freq"):
        if opt in cfg:
            kwargs[opt] = float(cfg[opt])

    recoil = 2.0 * math.pi**2 * HBAR**2 / (float(cfg["atom_mass"]) * float(cfg["wavelength"])**2)
    for key_j, key_er, field in _EPS_KEYS:
        if key_j in cfg and key_er in cfg:
            raise ParamError(f"config sets both {key_j} and {key_er}; pick one")
        if key_j in cfg:
            kwargs[field] = float(cfg[key_j])
        elif key_er in cfg:
            kwargs[field] = float(cfg[key_er]) * recoil
    return PhysicalParams(**kwargs)


def load_config(path: str) -> dict:
    """Parse a JSON config file into a plain dict."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParamError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ParamError(f"config {path} must be a JSON object")
    return cfg


def rb87_params(gravity: float = 9.8, shift_sites: int = 50,
                hold_time: float = 1.0, pulse_time: float = 1e-5,
                **overrides) -> PhysicalParams:
    """Rubidium-87 reference parameter set (hbar*nu = 0.5 E_r, L = 50)."""
    atom_mass = 1.44e-25
    wavelength = 7.85e-7
    recoil = 2.0 * math.pi**2 * HBAR**2 / (atom_mass * wavelength**2)
    base = dict(
        atom_mass=atom_mass,
        gravity=gravity,
        wavelength=wavelength,
        drive_freq=0.5 * recoil / HBAR,
        shift_sites=shift_sites,
        hold_time=hold_time,
        pulse_time=pulse_time,
    )
    base.update(overrides)
    return PhysicalParams(**base)
