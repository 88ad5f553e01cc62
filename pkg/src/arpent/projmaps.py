"""Conformal plane representations.

Mercator and the polar stereographic chart of the workbook, the pole-tangent
stereographic pair with its exact inverse, the conformal sphere fitted to a
parallel, the truncated UTM chart, and the Lambert conic with the Tunisian
zone registry. Every forward map here is conformal; the tests check
m(meridian) = m(parallel) numerically on each one.
"""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass
from pathlib import Path

from .ellipsoid import Ellipsoid
from .geocore import (
    POLE_GUARD,
    PoleDomainError,
    isometric_latitude,
    isometric_latitude_inverse,
    mercator_latitude,
    mercator_latitude_inverse,
    prime_vertical_radius,
)

TWO_PI = 2.0 * math.pi

_DATA_DIR = Path(__file__).parent / "data"


class OutOfBandWarning(UserWarning):
    """Latitude far from the zone's origin parallel."""


# -- Mercator (sphere) ---------------------------------------------------------

def mercator_forward(R: float, phi, lam) -> tuple[float, float]:
    """X = R lambda, Y = R ln tan(pi/4 + phi/2)."""
    phi = float(phi)
    if abs(phi) >= math.pi / 2 - POLE_GUARD:
        raise PoleDomainError("Mercator is unbounded at the poles")
    return R * float(lam), R * mercator_latitude(phi)


def mercator_inverse(R: float, x: float, y: float) -> tuple[float, float]:
    return mercator_latitude_inverse(y / R), x / R


def mercator_module(phi) -> float:
    """Local scale m1 = m2 = 1 / cos(phi)."""
    return 1.0 / math.cos(float(phi))


# -- polar stereographic (the workbook chart) ------------------------------------

def polar_stereo_forward(R: float, phi, lam) -> tuple[float, float]:
    """X = 2R tan(pi/4 - phi/2) sin(lambda), Y = -2R tan(pi/4 - phi/2) cos(lambda).

    Meridians map to rays through the origin and parallels to circles of
    radius 2R tan(pi/4 - phi/2); the south pole is the one singular point.
    """
    phi, lam = float(phi), float(lam)
    if phi <= -math.pi / 2 + POLE_GUARD:
        raise PoleDomainError("south pole is not representable")
    r = 2.0 * R * math.tan(math.pi / 4 - phi / 2)
    return r * math.sin(lam), -r * math.cos(lam)


def polar_stereo_inverse(R: float, x: float, y: float) -> tuple[float, float]:
    r = math.hypot(x, y)
    phi = math.pi / 2 - 2.0 * math.atan(r / (2.0 * R))
    lam = math.atan2(x, -y) if r > 0 else 0.0
    return phi, lam


def polar_stereo_parallel_radius(R: float, phi) -> float:
    return 2.0 * R * math.tan(math.pi / 4 - float(phi) / 2)


def polar_stereo_module(phi) -> float:
    """m = sec^2(pi/4 - phi/2), equal along meridian and parallel."""
    return 1.0 / math.cos(math.pi / 4 - float(phi) / 2) ** 2


# -- pole-tangent stereographic pair (unit sphere) --------------------------------

def stereo_plane_to_sphere(u: float, v: float) -> tuple[float, float, float]:
    """F(u, v) on the unit sphere; F(0,0) is the south pole (0,0,-1)."""
    d = u * u + v * v + 1.0
    return 2.0 * u / d, 2.0 * v / d, (u * u + v * v - 1.0) / d


def stereo_sphere_to_plane(x: float, y: float, z: float) -> tuple[float, float]:
    """Projection from the north pole N = (0,0,1) onto the plane z = 0;
    sigma(F(u, v)) = (u, v) exactly."""
    if z >= 1.0 - 1e-15:
        raise PoleDomainError("projection centre (0,0,1) has no image")
    return x / (1.0 - z), y / (1.0 - z)


def stereo_conformal_factor(u: float, v: float) -> float:
    """ds(sphere) = 2/(1 + u^2 + v^2) ds(plane)."""
    return 2.0 / (1.0 + u * u + v * v)


# -- conformal sphere fitted at a parallel ------------------------------------------

@dataclass(frozen=True)
class GaussSphereParams:
    c: float
    b_shift: float
    R_sphere: float
    phi0: float
    psi0: float


def gauss_sphere_fit(ell: Ellipsoid, phi0) -> GaussSphereParams:
    """Constants of the minimum-distortion conformal sphere at parallel phi0.

    m(phi0) = 1 with first and second derivatives zero force
        c   = sqrt(1 + e'^2 cos^4 phi0)
        tan psi0 = tan phi0 sqrt((1 - e^2)/(1 - e^2 sin^2 phi0))
        R   = a sqrt(1 - e^2) / (1 - e^2 sin^2 phi0)
        b   = L_mercator(psi0) - c * L_iso(phi0)
    """
    phi0 = float(phi0)
    w2 = 1.0 - ell.e2 * math.sin(phi0) ** 2
    c = math.sqrt(1.0 + ell.ep2 * math.cos(phi0) ** 4)
    psi0 = math.atan(math.tan(phi0) * math.sqrt((1.0 - ell.e2) / w2))
    R = ell.a * math.sqrt(1.0 - ell.e2) / w2
    b_shift = mercator_latitude(psi0) - c * isometric_latitude(ell, phi0)
    return GaussSphereParams(c=c, b_shift=b_shift, R_sphere=R, phi0=phi0, psi0=psi0)


def gauss_sphere_map(params: GaussSphereParams, ell: Ellipsoid, phi, lam) -> tuple[float, float]:
    """(phi, lambda) on the ellipsoid -> (psi, Lambda) on the fitted sphere:
    L = c L_iso(phi) + b, Lambda = c lambda."""
    L = params.c * isometric_latitude(ell, float(phi)) + params.b_shift
    return mercator_latitude_inverse(L), params.c * float(lam)


def gauss_sphere_inverse(params: GaussSphereParams, ell: Ellipsoid, psi, lam_sphere) -> tuple[float, float]:
    L = mercator_latitude(float(psi))
    phi = isometric_latitude_inverse(ell, (L - params.b_shift) / params.c)
    return phi, float(lam_sphere) / params.c


def gauss_sphere_module(params: GaussSphereParams, ell: Ellipsoid, phi) -> float:
    """m = c R cos(psi) / (N(phi) cos(phi))."""
    phi = float(phi)
    psi, _ = gauss_sphere_map(params, ell, phi, 0.0)
    return (params.c * params.R_sphere * math.cos(psi)
            / (prime_vertical_radius(ell, phi) * math.cos(phi)))


# -- truncated UTM chart --------------------------------------------------------------

def utm_meridian_distance(ell: Ellipsoid, phi) -> float:
    """g(phi) = a (1 - e^2) (1.0051353 phi - 0.0025731 sin 2 phi), the chart's
    own meridian-arc polynomial."""
    phi = float(phi)
    return ell.a * (1.0 - ell.e2) * (1.0051353 * phi - 0.0025731 * math.sin(2.0 * phi))


def _utm_coeffs(ell: Ellipsoid, phi: float) -> tuple[float, float, float]:
    a1 = prime_vertical_radius(ell, phi) * math.cos(phi)
    a2 = a1 / 2.0 * math.sin(phi)
    a3 = (a1 * math.cos(phi) ** 2 / 6.0
          * (1.0 - math.tan(phi) ** 2 + ell.ep2 * math.cos(phi) ** 2))
    return a1, a2, a3


def utm_truncated_forward(ell: Ellipsoid, lambda0, phi, lam) -> tuple[float, float]:
    """X = a1 dl + a3 dl^3, Y = g(phi) + a2 dl^2 with dl = lambda - lambda0.

    Valid for |dl| up to about 3 degrees; no scale factor and no false
    origin (the workbook's chart is the raw transverse development).
    """
    phi, dl = float(phi), float(lam) - float(lambda0)
    a1, a2, a3 = _utm_coeffs(ell, phi)
    return a1 * dl + a3 * dl ** 3, utm_meridian_distance(ell, phi) + a2 * dl * dl


def utm_truncated_inverse_on_parallel(ell: Ellipsoid, lambda0, phi, x: float,
                                      tol: float = 1e-12, max_iter: int = 30) -> float:
    """Longitude of the point with easting x on the known parallel phi:
    Newton on a1 dl + a3 dl^3 = x, seeded at x/a1."""
    phi = float(phi)
    a1, _, a3 = _utm_coeffs(ell, phi)
    dl = x / a1
    for _ in range(max_iter):
        f = a1 * dl + a3 * dl ** 3 - x
        dl -= f / (a1 + 3.0 * a3 * dl * dl)
        if abs(f) < tol * max(1.0, abs(x)):
            return float(lambda0) + dl
    raise RuntimeError("inverse-on-parallel did not converge")


# -- meridian convergence, Laplace azimuth, gisement chain ------------------------------

def meridian_convergence(lam, lambda0, phi) -> float:
    """tan(gamma) = (lambda - lambda0) sin(phi)."""
    return math.atan((float(lam) - float(lambda0)) * math.sin(float(phi)))


def laplace_azimuth(az_astro, lam, lam_astro, phi) -> float:
    """Geodetic azimuth from the astronomical one:
    Azg = Aza + (lambda - lambda_a) sin(phi)."""
    return float(az_astro) + (float(lam) - float(lam_astro)) * math.sin(float(phi))


def gisement_from_azimuth(az, gamma, dv=0.0) -> float:
    """Grid bearing G = Az - gamma - Dv, in [0, 2 pi).

    gamma is the meridian convergence at the station, Dv the arc-to-chord
    correction with the sign the observation sheet carries.
    """
    return (float(az) - float(gamma) - float(dv)) % TWO_PI


def plane_traverse(x: float, y: float, g, dist: float) -> tuple[float, float]:
    """Advance by dist along grid bearing G: X + D sin G, Y + D cos G."""
    g = float(g)
    return x + dist * math.sin(g), y + dist * math.cos(g)


def plane_bearing(x1: float, y1: float, x2: float, y2: float) -> tuple[float, float]:
    """Grid bearing in [0, 2 pi) and plane distance from point 1 to point 2."""
    g = math.atan2(x2 - x1, y2 - y1) % TWO_PI
    return g, math.hypot(x2 - x1, y2 - y1)


# -- Lambert conic (tangent, with scale) ---------------------------------------------

@dataclass(frozen=True)
class LambertZone:
    ell: Ellipsoid
    phi0: float          # latitude of the origin parallel, rad
    lambda0: float       # origin longitude, rad
    k0: float            # scale at the origin parallel
    x0: float            # false easting, m
    y0: float            # false northing, m
    name: str = ""

    @property
    def n(self) -> float:
        return math.sin(self.phi0)

    @property
    def r0(self) -> float:
        return self.k0 * prime_vertical_radius(self.ell, self.phi0) / math.tan(self.phi0)


BAND_RAD = 0.12   # ~7.6 gr of latitude: generous validity band for a tangent cone


def lambert_forward(zone: LambertZone, phi, lam) -> tuple[float, float]:
    """Tangent conformal conic: r = r0 exp(-n (L - L0)), theta = n (lambda - lambda0),
    X = X0 + r sin(theta), Y = Y0 + r0 - r cos(theta)."""
    phi, lam = float(phi), float(lam)
    if abs(phi - zone.phi0) > BAND_RAD:
        warnings.warn(f"latitude {phi:.4f} rad far from the {zone.name or 'zone'} "
                      f"origin parallel", OutOfBandWarning, stacklevel=2)
    dL = isometric_latitude(zone.ell, phi) - isometric_latitude(zone.ell, zone.phi0)
    r = zone.r0 * math.exp(-zone.n * dL)
    theta = zone.n * (lam - zone.lambda0)
    return zone.x0 + r * math.sin(theta), zone.y0 + zone.r0 - r * math.cos(theta)


def lambert_inverse(zone: LambertZone, x: float, y: float) -> tuple[float, float]:
    dx = x - zone.x0
    dy = zone.y0 + zone.r0 - y
    r = math.hypot(dx, dy)
    theta = math.atan2(dx, dy)
    lam = zone.lambda0 + theta / zone.n
    L = isometric_latitude(zone.ell, zone.phi0) - math.log(r / zone.r0) / zone.n
    return isometric_latitude_inverse(zone.ell, L), lam


def lambert_convergence(zone: LambertZone, lam) -> float:
    """Convergence of meridians on the cone: gamma = (lambda - lambda0) sin(phi0)."""
    return (float(lam) - zone.lambda0) * zone.n


def load_zones(path: str | Path | None = None) -> dict[str, LambertZone]:
    """Zone registry CSV: name, a, e2, phi0(gr), lambda0(gr), k0, x0, y0.

    The Tunisian zone constants ship as data, not code: the workbook uses
    the zones without ever printing them.
    """
    gr = math.pi / 200.0
    path = Path(path) if path is not None else _DATA_DIR / "lambert_zones.csv"
    zones = {}
    with open(path, newline="") as f:
        for row in csv.DictReader(f):
            ell = Ellipsoid(float(row["a"]), float(row["e2"]), name=row["name"])
            zones[row["name"]] = LambertZone(
                ell=ell,
                phi0=float(row["phi0_gr"]) * gr,
                lambda0=float(row["lambda0_gr"]) * gr,
                k0=float(row["k0"]),
                x0=float(row["x0"]),
                y0=float(row["y0"]),
                name=row["name"],
            )
    return zones


def zone_for_latitude(zones: dict[str, LambertZone], phi) -> LambertZone:
    """Closest origin parallel wins (how the Tunisian north/south split works)."""
    return min(zones.values(), key=lambda z: abs(z.phi0 - float(phi)))
