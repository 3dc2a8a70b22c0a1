"""One-parameter families of trapezoid return maps.

Each family fixes all table parameters but one and exposes build(u); the
`increasing` flag records how the rotation number responds to u, which the
staircase monotonicity assertion and the tongue bracket search rely on.
All families stay valid on both sides of the branch-layout condition since
the two-break lift formulas hold for any 0 < tan_alpha < tan_theta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

from .circle_map import PLLift, trapezoid_lift
from .errors import InvalidFamily
from .geometry import TrapezoidParams, maas_params, trapezoid_params
from .scalar import Scalar, exact, is_exact, scalar_str, to_float


@dataclass(frozen=True)
class FamilyPoint:
    u: Scalar
    params: TrapezoidParams
    lift: PLLift


@dataclass(frozen=True)
class FamilyEll:
    """u = ell at fixed (tan_alpha, tan_theta); rho grows with the height."""

    tan_alpha: Scalar
    tan_theta: Scalar
    increasing = True
    label = "ell"

    def params(self, u) -> TrapezoidParams:
        return trapezoid_params(u, self.tan_alpha, self.tan_theta, require_extra=False)

    def build(self, u) -> FamilyPoint:
        p = self.params(u)
        return FamilyPoint(u, p, trapezoid_lift(p))

    def probe_window(self) -> Tuple[Scalar, Scalar]:
        one = exact(1) if is_exact(self.tan_theta) else 1.0
        return one / 2**20, one * 2**20

    def config(self) -> dict:
        return {
            "family": self.label,
            "tan_alpha": scalar_str(self.tan_alpha),
            "tan_theta": scalar_str(self.tan_theta),
        }


@dataclass(frozen=True)
class FamilyNegTheta:
    """u = -tan_theta at fixed (ell, tan_alpha); rho grows as the slope drops."""

    ell: Scalar
    tan_alpha: Scalar
    increasing = True
    label = "neg-theta"

    def params(self, u) -> TrapezoidParams:
        return trapezoid_params(self.ell, self.tan_alpha, -u, require_extra=False)

    def build(self, u) -> FamilyPoint:
        p = self.params(u)
        return FamilyPoint(u, p, trapezoid_lift(p))

    def probe_window(self) -> Tuple[Scalar, Scalar]:
        lo = -(self.tan_alpha + 2 * self.ell) * 2**16
        eps = exact(1, 2**16) if is_exact(self.tan_alpha) else 2.0**-16
        return lo, -(self.tan_alpha + eps)

    def config(self) -> dict:
        return {
            "family": self.label,
            "ell": scalar_str(self.ell),
            "tan_alpha": scalar_str(self.tan_alpha),
        }


@dataclass(frozen=True)
class FamilyMaasTau:
    """u = tau on the (d, tau) slice at fixed d; rho falls as tau grows."""

    d: Scalar
    increasing = False
    label = "maas-tau"

    def params(self, u) -> TrapezoidParams:
        return maas_params(self.d, u, require_extra=False)

    def build(self, u) -> FamilyPoint:
        p = self.params(u)
        return FamilyPoint(u, p, trapezoid_lift(p))

    def probe_window(self) -> Tuple[Scalar, Scalar]:
        one = exact(1) if is_exact(self.d) else 1.0
        lo = (one - self.d) + one / 2**12
        return lo, one * 2**16

    def config(self) -> dict:
        return {"family": self.label, "d": scalar_str(self.d)}


@dataclass(frozen=True)
class FamilyAlphaTheta:
    """(alpha, theta) = (u, kappa*u) as angles, fixed ell; float-mode only.

    Needs kappa > 1 so that alpha < theta along the whole ray; u ranges in
    (0, pi/(2*kappa)).  Rotation numbers fall as u grows (theta steepens).
    """

    ell: Scalar
    kappa: float
    increasing = False
    label = "alpha-theta"

    def __post_init__(self):
        if not self.kappa > 1:
            raise InvalidFamily(f"kappa must exceed 1; got {self.kappa}")

    def params(self, u) -> TrapezoidParams:
        uf = to_float(u)
        if not 0 < uf < math.pi / (2 * self.kappa):
            raise InvalidFamily(f"angle u={uf} outside (0, pi/(2*kappa))")
        return trapezoid_params(
            to_float(self.ell), math.tan(uf), math.tan(self.kappa * uf), require_extra=False
        )

    def build(self, u) -> FamilyPoint:
        p = self.params(u)
        return FamilyPoint(u, p, trapezoid_lift(p))

    def probe_window(self) -> Tuple[float, float]:
        hi = math.pi / (2 * self.kappa)
        return hi * 2.0**-16, hi * (1 - 2.0**-16)

    def config(self) -> dict:
        return {"family": self.label, "ell": scalar_str(self.ell), "kappa": self.kappa}


FAMILY_NAMES = ("ell", "neg-theta", "maas-tau", "alpha-theta")


def family_from_name(name: str, **fixed):
    """CLI-facing factory; raises InvalidFamily for unknown names or bad args."""
    try:
        if name == "ell":
            return FamilyEll(fixed["tan_alpha"], fixed["tan_theta"])
        if name == "neg-theta":
            return FamilyNegTheta(fixed["ell"], fixed["tan_alpha"])
        if name == "maas-tau":
            return FamilyMaasTau(fixed["d"])
        if name == "alpha-theta":
            return FamilyAlphaTheta(fixed["ell"], float(fixed["kappa"]))
    except KeyError as e:
        raise InvalidFamily(f"family {name!r} is missing fixed parameter {e.args[0]!r}") from None
    raise InvalidFamily(f"unknown family {name!r}; choose from {FAMILY_NAMES}")
