"""Ellipsoid geometry: curvature radii, latitude families, isometric latitude,
Wallis integrals and the meridian arc (forward and inverse), Clairaut's
constant, and the second equator crossing of a geodesic.
"""

from __future__ import annotations

import math

from .ellipsoid import Ellipsoid

QUARTER_TOL = 1e-4   # meters, acceptance slack on the arc range check
POLE_GUARD = 1e-12   # rad, isometric latitude domain guard


class PoleDomainError(ValueError):
    """Raised for operations unbounded at the poles."""


LATITUDE_KINDS = ("geodetic", "parametric", "geocentric")


def prime_vertical_radius(ell: Ellipsoid, phi) -> float:
    """Prime-vertical curvature radius N = a / sqrt(1 - e2 sin^2 phi)."""
    phi = float(phi)
    return ell.a / math.sqrt(1.0 - ell.e2 * math.sin(phi) ** 2)


def meridian_radius(ell: Ellipsoid, phi) -> float:
    """Meridian curvature radius rho = a(1 - e2) / w^3, w^2 = 1 - e2 sin^2 phi."""
    phi = float(phi)
    w2 = 1.0 - ell.e2 * math.sin(phi) ** 2
    return ell.a * (1.0 - ell.e2) / (w2 * math.sqrt(w2))


def latitude_convert(ell: Ellipsoid, kind_from: str, kind_to: str, phi) -> float:
    """Convert between geodetic, parametric and geocentric latitudes.

    tan(parametric) = (b/a) tan(geodetic); tan(geocentric) = (1-e2) tan(geodetic).
    Poles and the equator are fixed points of every conversion.
    """
    if kind_from not in LATITUDE_KINDS or kind_to not in LATITUDE_KINDS:
        raise ValueError(f"latitude kinds must be in {LATITUDE_KINDS}")
    phi = float(phi)
    if kind_from == kind_to:
        return phi
    # go through geodetic
    one = math.sqrt(1.0 - ell.e2)
    if kind_from == "parametric":
        phi = math.atan2(math.sin(phi), one * math.cos(phi))
    elif kind_from == "geocentric":
        phi = math.atan2(math.sin(phi), (1.0 - ell.e2) * math.cos(phi))
    if kind_to == "geodetic":
        return phi
    if kind_to == "parametric":
        return math.atan2(one * math.sin(phi), math.cos(phi))
    return math.atan2((1.0 - ell.e2) * math.sin(phi), math.cos(phi))


def isometric_latitude(ell: Ellipsoid, phi) -> float:
    """Isometric latitude L(phi) = ln tan(pi/4 + phi/2) - (e/2) ln[(1+e sin phi)/(1-e sin phi)].

    (L, lambda) are symmetric (conformal) coordinates on the ellipsoid;
    dL = rho dphi / (N cos phi). Odd, strictly increasing, unbounded at the poles.
    """
    phi = float(phi)
    if abs(phi) >= math.pi / 2 - POLE_GUARD:
        raise PoleDomainError("isometric latitude is unbounded at the poles")
    s = math.sin(phi)
    # atanh(sin phi) == ln tan(pi/4 + phi/2), exactly odd in phi
    value = math.atanh(s)
    if ell.e2 > 0.0:
        value -= ell.e * math.atanh(ell.e * s)
    return value


def isometric_latitude_inverse(ell: Ellipsoid, L: float, tol: float = 1e-14, max_iter: int = 50) -> float:
    """Invert L(phi) by Newton with the analytic slope dL/dphi = rho/(N cos phi).

    The sphere solution phi = 2 arctan(exp L) - pi/2 seeds the iteration.
    """
    phi = 2.0 * math.atan(math.exp(L)) - math.pi / 2
    if ell.e2 == 0.0:
        return phi
    for _ in range(max_iter):
        f = isometric_latitude(ell, phi) - L
        slope = (1.0 - ell.e2) / ((1.0 - ell.e2 * math.sin(phi) ** 2) * math.cos(phi))
        step = f / slope
        phi -= step
        if abs(step) < tol:
            return phi
    raise RuntimeError(f"isometric latitude inversion did not reach {tol} rad")


def mercator_latitude(phi) -> float:
    """Sphere case ln tan(pi/4 + phi/2)."""
    phi = float(phi)
    if abs(phi) >= math.pi / 2 - POLE_GUARD:
        raise PoleDomainError("Mercator latitude is unbounded at the poles")
    return math.atanh(math.sin(phi))


def mercator_latitude_inverse(L: float) -> float:
    return 2.0 * math.atan(math.exp(L)) - math.pi / 2


def wallis(p: int, omega) -> float:
    """W_p(Omega) = integral of sin^p(w) dw from 0 to Omega, p even.

    Downward use of W_p = (p-1)/p W_{p-2} - sin^{p-1}(Omega) cos(Omega) / p
    starting from W_0 = Omega.
    """
    if p < 0 or p % 2 != 0:
        raise ValueError(f"wallis order must be even and >= 0, got {p}")
    omega = float(omega)
    w = omega
    s, c = math.sin(omega), math.cos(omega)
    for k in range(2, p + 1, 2):
        w = (k - 1) / k * w - s ** (k - 1) * c / k
    return w


def _w3_series_coeffs(n_terms: int) -> list[float]:
    """Binomial coefficients of (1-u)^(-3/2) = sum c_k u^k, u = e2 sin^2 phi."""
    coeffs = [1.0]
    for k in range(1, n_terms):
        coeffs.append(coeffs[-1] * (2 * k + 1) / (2 * k))
    return coeffs


def meridian_arc_terms(ell: Ellipsoid, target_m: float = 1e-3) -> int:
    """Number of series terms so the neglected tail of the arc stays under target_m.

    The tail at the worst latitude (pole) is bounded by
    a(1-e2) (pi/2) sum_{k>n} c_k e2^k with c_k the binomial growth of w^-3.
    """
    scale = ell.a * (1.0 - ell.e2) * (math.pi / 2)
    c = 1.0
    term = scale
    n = 1
    while True:
        c *= (2 * n + 1) / (2 * n)
        term = scale * c * ell.e2 ** n
        # remaining tail < term / (1 - ratio), ratio < 3/2 e2 for all later terms
        ratio = 1.5 * ell.e2
        if term / (1.0 - ratio) < target_m:
            return n
        n += 1
        if n > 64:
            raise RuntimeError("meridian arc series does not reach target precision")


def meridian_arc(ell: Ellipsoid, phi, n_terms: int | None = None) -> float:
    """Meridian arc beta(phi) = integral of rho dphi from the equator.

    w^-3 is expanded in powers of e2 sin^2 phi and integrated term by term
    with the Wallis recursion; the truncation order keeps the tail under a
    millimetre at every latitude.
    """
    phi = float(phi)
    if n_terms is None:
        n_terms = meridian_arc_terms(ell) if ell.e2 > 0.0 else 0
    coeffs = _w3_series_coeffs(n_terms + 1)
    total = 0.0
    for k, c in enumerate(coeffs):
        total += c * ell.e2 ** k * wallis(2 * k, phi)
    return ell.a * (1.0 - ell.e2) * total


def quarter_meridian(ell: Ellipsoid) -> float:
    return meridian_arc(ell, math.pi / 2)


def meridian_arc_inverse(ell: Ellipsoid, beta: float, tol_m: float = 1e-4, max_iter: int = 50) -> float:
    """Latitude with meridian arc beta, by Newton phi <- phi + (beta - beta(phi))/rho(phi)."""
    q = quarter_meridian(ell)
    if not -QUARTER_TOL <= beta <= q + QUARTER_TOL:
        raise ValueError(f"arc length {beta} outside [0, quarter meridian = {q:.3f}]")
    phi = beta / (ell.a * (1.0 - ell.e2))   # sphere-like start
    for _ in range(max_iter):
        delta = beta - meridian_arc(ell, phi)
        phi += delta / meridian_radius(ell, phi)
        if abs(delta) < tol_m:
            return phi
    raise RuntimeError("meridian arc inversion did not converge")


def clairaut_constant(ell: Ellipsoid, phi, az) -> float:
    """Clairaut's constant N(phi) cos(phi) sin(Az), invariant along a geodesic."""
    phi = float(phi)
    return prime_vertical_radius(ell, phi) * math.cos(phi) * math.sin(float(az))


def jacobi_equator_longitude(ell: Ellipsoid, lambda_e, az_e) -> float:
    """Longitude of the second equator crossing of a geodesic leaving the
    equator at longitude lambda_E with azimuth Az_E:

        lambda_H = lambda_E + 2 pi - e2 pi sin(Az_E)

    Strictly short of a full turn for 0 < Az_E < pi, so ellipsoid geodesics
    do not close after one circuit.
    """
    az_e = float(az_e)
    if not 0.0 < az_e < math.pi:
        raise ValueError("equator azimuth must lie in (0, pi)")
    return float(lambda_e) + 2.0 * math.pi - ell.e2 * math.pi * math.sin(az_e)


def torus_clairaut_constant(shell_radius: float, tube_radius: float, az_e) -> float:
    """Clairaut constant C = (a + R) sin(Az_e) for a torus geodesic started on
    the outer equator; along the geodesic (a + R cos phi)^2 dlambda/ds = C."""
    return (shell_radius + tube_radius) * math.sin(float(az_e))
