"""Two-body orbit computations: Kepler's equation, anomaly conversions,
orbit from apsides, period, vis-viva, time since perigee."""

from __future__ import annotations

import math
from dataclasses import dataclass

GM_EARTH = 3.986005e14        # m^3/s^2, the workbook's printed value
AU_METERS = 149_597_870_000.0  # printed as 149 597 870 km

ANOMALY_KINDS = ("true", "eccentric", "mean")


class EccentricityError(ValueError):
    pass


class RadiusRangeError(ValueError):
    pass


@dataclass(frozen=True)
class Orbit:
    a: float                 # semi-major axis, m
    e: float                 # eccentricity in [0, 1)
    mu: float = GM_EARTH     # gravitational parameter, m^3/s^2

    def __post_init__(self):
        if self.a <= 0.0:
            raise ValueError(f"semi-major axis must be positive, got {self.a}")
        if not 0.0 <= self.e < 1.0:
            raise EccentricityError(f"need 0 <= e < 1, got {self.e}")

    @property
    def r_perigee(self) -> float:
        return self.a * (1.0 - self.e)

    @property
    def r_apogee(self) -> float:
        return self.a * (1.0 + self.e)

    @property
    def b(self) -> float:
        return self.a * math.sqrt(1.0 - self.e * self.e)


def kepler_solve(mean_anomaly: float, e: float, tol: float = 1e-14, max_iter: int = 60) -> float:
    """Eccentric anomaly E with E - e sin E = M, |residual| <= 1e-13.

    Newton from E0 = M + e sin M; high eccentricities that make Newton
    oscillate fall back to bisection (the Halley-comet regime near M ~ 0).
    """
    if not 0.0 <= e < 1.0:
        raise EccentricityError(f"need 0 <= e < 1, got {e}")
    m = float(mean_anomaly)
    two_pi = 2.0 * math.pi
    m_wrap = math.fmod(m, two_pi)
    if m_wrap > math.pi:
        m_wrap -= two_pi
    elif m_wrap < -math.pi:
        m_wrap += two_pi
    offset = m - m_wrap

    E = m_wrap + e * math.sin(m_wrap)
    last_step = math.inf
    for _ in range(max_iter):
        f = E - e * math.sin(E) - m_wrap
        step = f / (1.0 - e * math.cos(E))
        if e > 0.8 and abs(step) >= abs(last_step):
            break   # oscillating: hand over to bisection
        E -= step
        last_step = abs(step)
        if abs(step) < tol:
            return E + offset
    # bisection fallback: E - e sin E is monotone increasing
    lo, hi = m_wrap - 1.1 * e - 1e-12, m_wrap + 1.1 * e + 1e-12
    for _ in range(200):
        mid = (lo + hi) / 2.0
        if mid - e * math.sin(mid) < m_wrap:
            lo = mid
        else:
            hi = mid
        if hi - lo < tol:
            break
    return (lo + hi) / 2.0 + offset


def kepler_residual(E: float, e: float, m: float) -> float:
    return E - e * math.sin(E) - m


def true_from_eccentric(E: float, e: float) -> float:
    """tan(nu/2) = sqrt((1+e)/(1-e)) tan(E/2), kept continuous in the turn count."""
    half = math.atan2(math.sqrt(1.0 + e) * math.sin(E / 2.0),
                      math.sqrt(1.0 - e) * math.cos(E / 2.0))
    # atan2 collapses the turn count of E/2; restore it
    k = round((E / 2.0 - half) / math.pi)
    return 2.0 * (half + k * math.pi)


def eccentric_from_true(nu: float, e: float) -> float:
    half = math.atan2(math.sqrt(1.0 - e) * math.sin(nu / 2.0),
                      math.sqrt(1.0 + e) * math.cos(nu / 2.0))
    k = round((nu / 2.0 - half) / math.pi)
    return 2.0 * (half + k * math.pi)


def anomaly_convert(kind_from: str, kind_to: str, x: float, e: float) -> float:
    """Convert between true, eccentric and mean anomalies."""
    if kind_from not in ANOMALY_KINDS or kind_to not in ANOMALY_KINDS:
        raise ValueError(f"anomaly kinds must be in {ANOMALY_KINDS}")
    if not 0.0 <= e < 1.0:
        raise EccentricityError(f"need 0 <= e < 1, got {e}")
    x = float(x)
    if kind_from == kind_to:
        return x
    # through the eccentric anomaly
    if kind_from == "true":
        E = eccentric_from_true(x, e)
    elif kind_from == "mean":
        E = kepler_solve(x, e)
    else:
        E = x
    if kind_to == "eccentric":
        return E
    if kind_to == "mean":
        return E - e * math.sin(E)
    return true_from_eccentric(E, e)


def orbit_from_apsides(h_apo: float, h_peri: float, r_body: float,
                       mu: float = GM_EARTH) -> Orbit:
    """Orbit from apoapsis/periapsis altitudes above a body of radius r_body:
    a = R + (h_a + h_p)/2, e = (h_a - h_p) / (2R + h_a + h_p)."""
    if h_apo < h_peri:
        raise ValueError("apoapsis altitude below periapsis altitude")
    a = r_body + (h_apo + h_peri) / 2.0
    e = (h_apo - h_peri) / (2.0 * r_body + h_apo + h_peri)
    return Orbit(a=a, e=e, mu=mu)


def orbit_from_apsidal_radii(r_apo: float, r_peri: float, mu: float = GM_EARTH) -> Orbit:
    """From the apsidal radii themselves (keyed on the numeric values:
    periapsis is the smaller whatever the labels say)."""
    r_apo, r_peri = max(r_apo, r_peri), min(r_apo, r_peri)
    a = (r_apo + r_peri) / 2.0
    return Orbit(a=a, e=(r_apo - r_peri) / (r_apo + r_peri), mu=mu)


def period(orbit: Orbit) -> float:
    """Kepler III: T = 2 pi sqrt(a^3 / mu)."""
    return 2.0 * math.pi * math.sqrt(orbit.a ** 3 / orbit.mu)


def radius_at_true_anomaly(orbit: Orbit, nu: float) -> float:
    return orbit.a * (1.0 - orbit.e ** 2) / (1.0 + orbit.e * math.cos(nu))


def radius_at_eccentric_anomaly(orbit: Orbit, E: float) -> float:
    return orbit.a * (1.0 - orbit.e * math.cos(E))


def true_anomaly_at_radius(orbit: Orbit, r: float, outbound: bool = True) -> float:
    """True anomaly with r(nu) = r; outbound picks the branch after perigee."""
    if not orbit.r_perigee * (1 - 1e-12) <= r <= orbit.r_apogee * (1 + 1e-12):
        raise RadiusRangeError(
            f"radius {r} outside [{orbit.r_perigee}, {orbit.r_apogee}]")
    c = (orbit.a * (1.0 - orbit.e ** 2) / r - 1.0) / orbit.e if orbit.e > 0 else 1.0
    nu = math.acos(max(-1.0, min(1.0, c)))
    return nu if outbound else -nu


def time_since_perigee(orbit: Orbit, nu: float) -> float:
    """Elapsed time from perigee passage to true anomaly nu: t = M T / (2 pi)."""
    m = anomaly_convert("true", "mean", nu, orbit.e)
    return m * period(orbit) / (2.0 * math.pi)


def vis_viva(orbit: Orbit, r: float) -> float:
    """Speed from the energy integral v = sqrt(mu (2/r - 1/a))."""
    if not orbit.r_perigee * (1 - 1e-12) <= r <= orbit.r_apogee * (1 + 1e-12):
        raise RadiusRangeError(
            f"radius {r} outside [{orbit.r_perigee}, {orbit.r_apogee}]")
    return math.sqrt(orbit.mu * (2.0 / r - 1.0 / orbit.a))


def apsidal_ratio(e: float) -> float:
    """v_apogee / v_perigee = (1 - e) / (1 + e)."""
    if not 0.0 <= e < 1.0:
        raise EccentricityError(f"need 0 <= e < 1, got {e}")
    return (1.0 - e) / (1.0 + e)


def areal_constant(orbit: Orbit) -> float:
    """Areal constant C with C^2 = (b^2 / a) mu."""
    return math.sqrt(orbit.b ** 2 / orbit.a * orbit.mu)


def position_in_plane(orbit: Orbit, E: float) -> tuple[float, float]:
    """Orbital-plane coordinates (a (cos E - e), b sin E)."""
    return orbit.a * (math.cos(E) - orbit.e), orbit.b * math.sin(E)
