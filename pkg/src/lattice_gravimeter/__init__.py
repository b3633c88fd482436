"""Desk-scale simulation of atom gravimetry in tilted spin-dependent
optical lattices: exact phase accumulation, collective-spin observables,
a brute-force many-body oracle, and sensitivity scaling."""

from .params import (HBAR, DerivedParams, ParamError, PhysicalParams, derive,
                     params_from_dict, rb87_params, validate)
from .phases import PhaseLedger, closed_form_phase, ledger, total_phase
from .dicke import SymmetricSpinState, css, oat_twist, optimal_oat, rotate_x
from .moments import MeasurementMoments, css_moments, moments, single_particle_moments
from .fock import FockState, SequenceOptions, embed, measure, simulate
from .firstq import moments_firstq
from .sensitivity import (ScalingFit, SensitivityReport, chi, fringe_scan,
                          robustness, scaling_study, uncertainty)

__all__ = [
    "HBAR", "DerivedParams", "ParamError", "PhysicalParams", "derive",
    "params_from_dict", "rb87_params", "validate",
    "PhaseLedger", "closed_form_phase", "ledger", "total_phase",
    "SymmetricSpinState", "css", "oat_twist", "optimal_oat", "rotate_x",
    "MeasurementMoments", "css_moments", "moments", "single_particle_moments",
    "FockState", "SequenceOptions", "embed", "measure", "simulate",
    "moments_firstq",
    "ScalingFit", "SensitivityReport", "chi", "fringe_scan", "robustness",
    "scaling_study", "uncertainty",
]

__version__ = "0.1.0"
