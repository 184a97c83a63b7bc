"""Model parameters in natural units.

Everything downstream works with hbar = mu = L = 1, where mu is the reduced
mass and L the box length.  The dimensionless coupling gamma = mu*g*L/hbar^2
then coincides with the bare coupling g.  For mass ratio eta = m1/m2 the
individual masses are m1 = (1 + eta) and m2 = (1 + eta)/eta, which makes the
reduced mass exactly 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


def mass_heavy(eta: float) -> float:
    """Mass of particle 1 in natural units (mu = 1)."""
    return 1.0 + eta


def mass_light(eta: float) -> float:
    """Mass of particle 2 in natural units (mu = 1)."""
    return (1.0 + eta) / eta


@dataclass(frozen=True)
class ModelParams:
    """Physical constants of the two-particle box problem.

    gamma >= 0 is the dimensionless repulsive coupling; gamma may be
    math.inf, in which case the hard-core limit equations are used.
    """

    eta: float = 3.0
    gamma: float = 0.0
    L: float = 1.0
    hbar: float = 1.0
    mu: float = 1.0

    def __post_init__(self) -> None:
        if not (self.eta > 0.0 and math.isfinite(self.eta)):
            raise ValueError(f"mass ratio must be positive and finite, got {self.eta}")
        if self.gamma < 0.0 or math.isnan(self.gamma):
            raise ValueError(f"coupling must be >= 0, got {self.gamma}")
        if (self.L, self.hbar, self.mu) != (1.0, 1.0, 1.0):
            raise ValueError("only natural units hbar = mu = L = 1 are supported")

    @property
    def g(self) -> float:
        """Bare coupling; equals gamma in natural units."""
        return self.gamma

    @property
    def m1(self) -> float:
        return mass_heavy(self.eta)

    @property
    def m2(self) -> float:
        return mass_light(self.eta)
