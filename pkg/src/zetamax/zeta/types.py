from __future__ import annotations

import enum
import math
from dataclasses import dataclass


class Method(str, enum.Enum):
    EULER_MACLAURIN = "EulerMaclaurin"
    RIEMANN_SIEGEL = "RiemannSiegel"
    MAIN_SUM = "MainSum"
    POISSON_SMOOTHED = "PoissonSmoothed"


@dataclass(frozen=True)
class ZetaValue:
    re: float
    im: float
    method: Method
    error_estimate: float

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)

    def __abs__(self) -> float:
        return math.hypot(self.re, self.im)


@dataclass(frozen=True)
class IntervalMax:
    """Maximum of log|zeta(1/2 + iu)| over |u - t_center| <= half_width."""

    t_center: float
    u_star: float
    value: float
    grid_spacing: float
    refined: bool
    half_width: float = 1.0
    grid_points: int = 0
