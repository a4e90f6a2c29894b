"""Relativistic two-body kinematics in the centre-of-mass frame.

Units: MeV for momenta, masses and energies (hbar = c = 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

ELECTRON_MASS_MEV = 0.51099895
ALPHA = 7.2973525693e-3
# (hbar c)^2 in GeV^2 mbarn
HBARC2_GEV2_MBARN = 0.3893793721
MEV2_TO_MBARN = HBARC2_GEV2_MBARN * 1e6


class KinematicsError(ValueError):
    pass


def energy_total(k: float, mass: float = ELECTRON_MASS_MEV) -> float:
    """Total CM energy 2 sqrt(k^2 + m^2) for two equal masses of momentum k."""
    if k < 0:
        raise KinematicsError(f"momentum must be nonnegative, got {k}")
    if mass <= 0:
        raise KinematicsError(f"mass must be positive, got {mass}")
    return 2.0 * math.hypot(k, mass)


@dataclass(frozen=True)
class Kinematics:
    """One scattering configuration: momentum, mass, coupling and derived values.

    ``beta`` and ``eta`` are not defined at p = 0; accessing them there raises.
    """

    p: float
    mass: float = ELECTRON_MASS_MEV
    alpha: float = ALPHA
    E: float = field(init=False)

    def __post_init__(self):
        if not math.isfinite(self.p) or self.p < 0:
            raise KinematicsError(f"momentum must be finite and nonnegative, got {self.p}")
        if not math.isfinite(self.mass) or self.mass <= 0:
            raise KinematicsError(f"mass must be positive, got {self.mass}")
        if not math.isfinite(self.alpha) or self.alpha < 0:
            raise KinematicsError(f"alpha must be nonnegative, got {self.alpha}")
        object.__setattr__(self, "E", energy_total(self.p, self.mass))

    @property
    def beta(self) -> float:
        if self.p == 0:
            raise KinematicsError("beta requested at p = 0")
        return self.p / math.hypot(self.p, self.mass)

    @property
    def eta(self) -> float:
        return self.alpha / (2.0 * self.beta)

    def energy(self, k: float) -> float:
        return energy_total(k, self.mass)

    def with_alpha(self, alpha: float) -> "Kinematics":
        return Kinematics(self.p, self.mass, alpha)


def make_kinematics(p: float, mass: float = ELECTRON_MASS_MEV, alpha: float = ALPHA) -> Kinematics:
    """Build a :class:`Kinematics`; alpha must be positive here."""
    if not alpha > 0:
        raise KinematicsError(f"alpha must be positive, got {alpha}")
    return Kinematics(p, mass, alpha)
