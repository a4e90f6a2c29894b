"""Finite second-order perturbation theory for relativistic Coulomb scattering."""

__version__ = "0.1.0"

from .kinematics import ALPHA, ELECTRON_MASS_MEV, Kinematics, energy_total, make_kinematics  # noqa: E402
from .phase_shifts import PhaseShiftTable, build_table, delta1_bar, delta2, g_factor  # noqa: E402
from .pv_quadrature import PVQuadConfig, PVResult, principal_value, sinc_log_identity  # noqa: E402
from .cross_section import (  # noqa: E402
    XSecConfig,
    XSecRecord,
    delta_l_shift,
    delta_profile,
    differential_cross_section,
    moller,
    rutherford,
    scattering_amplitude,
)

__all__ = [
    "ALPHA",
    "ELECTRON_MASS_MEV",
    "Kinematics",
    "PVQuadConfig",
    "PVResult",
    "PhaseShiftTable",
    "XSecConfig",
    "XSecRecord",
    "build_table",
    "delta1_bar",
    "delta2",
    "delta_l_shift",
    "delta_profile",
    "differential_cross_section",
    "energy_total",
    "g_factor",
    "make_kinematics",
    "moller",
    "principal_value",
    "rutherford",
    "scattering_amplitude",
    "sinc_log_identity",
]
