"""Distance reduction chain: slope distance -> chord at the reference level
-> ellipsoid arc -> projection plane, by the rigorous formula and by the
classical correction terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

DEFAULT_RADIUS = 6378000.0   # the exercises' working value for R


class InconsistentObservationError(ValueError):
    pass


@dataclass(frozen=True)
class DistanceObservation:
    """Slope distance dp between endpoints at altitudes h_a and h_b.

    site_angle (radians) is an optional alternative datum measured at A;
    radius is the mean Earth radius used in the reductions.
    """
    dp: float
    h_a: float
    h_b: float
    site_angle: Optional[float] = None
    radius: float = DEFAULT_RADIUS

    def __post_init__(self):
        if self.dp <= abs(self.h_b - self.h_a):
            raise InconsistentObservationError(
                f"slope distance {self.dp} not above the height difference "
                f"{abs(self.h_b - self.h_a)}")


def reduce_rigorous(obs: DistanceObservation) -> tuple[float, float]:
    """Chord at reference level and ellipsoid arc:

        D0 = sqrt[(Dp^2 - dH^2) / ((1 + H_A/R)(1 + H_B/R))]
        De = 2 R arcsin(D0 / 2R)

    The arc exceeds the chord by D0^3/(24 R^2), under a centimetre for the
    workbook's 15-20 km lines.
    """
    dh = obs.h_b - obs.h_a
    r = obs.radius
    radicand = (obs.dp ** 2 - dh ** 2) / ((1.0 + obs.h_a / r) * (1.0 + obs.h_b / r))
    if radicand <= 0.0:
        raise InconsistentObservationError("negative radicand: observation inconsistent")
    d0 = math.sqrt(radicand)
    de = 2.0 * r * math.asin(d0 / (2.0 * r))
    return d0, de


def chord_by_corrections(obs: DistanceObservation) -> float:
    """Chord at reference level by the correction terms
    D0 = Dp - dH^2/(2 Dp) - Dp Hm/R."""
    dh = obs.h_b - obs.h_a
    hm = (obs.h_a + obs.h_b) / 2.0
    return obs.dp - dh * dh / (2.0 * obs.dp) - obs.dp * hm / obs.radius


def chord_via_site_angle(obs: DistanceObservation) -> float:
    """Chord using the site angle instead of the height difference:
    Dh = Dp cos(i), then the level reduction.

    The vertical angle carries the Earth-curvature share of the height
    difference, so this path and the altitude path agree only to the
    corresponding correction term (decimetres on the workbook line).
    """
    if obs.site_angle is None:
        raise InconsistentObservationError("no site angle in this observation")
    hm = (obs.h_a + obs.h_b) / 2.0
    dh_dist = obs.dp * math.cos(obs.site_angle)
    return dh_dist * (1.0 - hm / obs.radius)


def reduce_by_corrections(obs: DistanceObservation) -> float:
    """Ellipsoid arc by the classical correction sequence:

        De = Dp + C_slope + C_level + C_arc
        C_slope = -dH^2/(2 Dp),  C_level = -Dp Hm/R,  C_arc = +Dp^3/(24 R^2)
    """
    dh = obs.h_b - obs.h_a
    hm = (obs.h_a + obs.h_b) / 2.0
    c_slope = -dh * dh / (2.0 * obs.dp)
    c_level = -obs.dp * hm / obs.radius
    c_arc = obs.dp ** 3 / (24.0 * obs.radius ** 2)
    return obs.dp + c_slope + c_level + c_arc


def grid_module(module: Optional[float] = None,
                alteration_cm_per_km: Optional[float] = None) -> float:
    """Linear module from either form; the \"alteration lineaire\" quoted in
    cm/km converts as m = 1 + value * 1e-5."""
    if (module is None) == (alteration_cm_per_km is None):
        raise ValueError("give exactly one of module and alteration_cm_per_km")
    if module is None:
        module = 1.0 + alteration_cm_per_km * 1e-5
    if not 0.99 < module < 1.01:
        raise ValueError(f"linear module {module} implausibly far from 1")
    return module


def to_grid(de: float, module: Optional[float] = None,
            alteration_cm_per_km: Optional[float] = None) -> float:
    """Distance on the projection plane Dr = m * De."""
    return grid_module(module, alteration_cm_per_km) * de


def slope_from_grid(dr: float, h_a: float, h_b: float,
                    module: Optional[float] = None,
                    alteration_cm_per_km: Optional[float] = None,
                    radius: float = DEFAULT_RADIUS) -> float:
    """Invert the full chain: plane distance back to the slope distance
    between the marks at altitudes h_a, h_b."""
    de = dr / grid_module(module, alteration_cm_per_km)
    d0 = 2.0 * radius * math.sin(de / (2.0 * radius))
    dh = h_b - h_a
    return math.sqrt(d0 * d0 * (1.0 + h_a / radius) * (1.0 + h_b / radius) + dh * dh)
