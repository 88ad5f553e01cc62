"""Built-in catalog of the workbook's curves and surfaces, all registered
with analytic derivatives (the finite-difference fallback is tested against
these)."""

from __future__ import annotations

import math


from .diffgeo import ParametricCurve, ParametricSurface
from .ellipsoid import Ellipsoid


def helix(a: float, b: float) -> ParametricCurve:
    """x = a cos t, y = a sin t, z = b t; kappa = a/(a^2+b^2), tau = b/(a^2+b^2)."""
    return ParametricCurve(
        lambda t: (a * math.cos(t), a * math.sin(t), b * t),
        d1=lambda t: (-a * math.sin(t), a * math.cos(t), b),
        d2=lambda t: (-a * math.cos(t), -a * math.sin(t), 0.0),
        d3=lambda t: (a * math.sin(t), -a * math.cos(t), 0.0),
        name="helix",
    )


def twisted_quartic(a: float = 1.0) -> ParametricCurve:
    """x = a t^2, y = a t^3, z = (9/16) a t^4, with |r'| = 2t + (9/4) t^3 for t >= 0."""
    return ParametricCurve(
        lambda t: (a * t * t, a * t ** 3, 9.0 / 16.0 * a * t ** 4),
        d1=lambda t: (2 * a * t, 3 * a * t * t, 2.25 * a * t ** 3),
        d2=lambda t: (2 * a, 6 * a * t, 6.75 * a * t * t),
        d3=lambda t: (0.0, 6 * a, 13.5 * a * t),
        name="twisted_quartic",
    )


def ellipse_curve(a: float, b: float) -> ParametricCurve:
    """Plane ellipse (a cos u, b sin u, 0)."""
    return ParametricCurve(
        lambda t: (a * math.cos(t), b * math.sin(t), 0.0),
        d1=lambda t: (-a * math.sin(t), b * math.cos(t), 0.0),
        d2=lambda t: (-a * math.cos(t), -b * math.sin(t), 0.0),
        d3=lambda t: (a * math.sin(t), -b * math.cos(t), 0.0),
        name="ellipse",
    )


def enneper() -> ParametricSurface:
    """Enneper's minimal surface; ds^2 = (1 + u^2 + v^2)^2 (du^2 + dv^2)."""
    return ParametricSurface(
        lambda u, v: (u - u ** 3 / 3 + u * v * v, v - v ** 3 / 3 + v * u * u, u * u - v * v),
        du=lambda u, v: (1 - u * u + v * v, 2 * u * v, 2 * u),
        dv=lambda u, v: (2 * u * v, 1 - v * v + u * u, -2 * v),
        duu=lambda u, v: (-2 * u, 2 * v, 2.0),
        duv=lambda u, v: (2 * v, 2 * u, 0.0),
        dvv=lambda u, v: (2 * u, -2 * v, -2.0),
        domain=((-2.0, 2.0), (-2.0, 2.0)),
        name="enneper",
    )


def crossed_paraboloids() -> ParametricSurface:
    """X = u^2 + v, Y = u + v^2, Z = u v."""
    return ParametricSurface(
        lambda u, v: (u * u + v, u + v * v, u * v),
        du=lambda u, v: (2 * u, 1.0, v),
        dv=lambda u, v: (1.0, 2 * v, u),
        duu=lambda u, v: (2.0, 0.0, 0.0),
        duv=lambda u, v: (0.0, 0.0, 1.0),
        dvv=lambda u, v: (0.0, 2.0, 0.0),
        domain=((-2.0, 2.0), (-2.0, 2.0)),
        name="crossed_paraboloids",
    )


def spheroid(a: float, b: float) -> ParametricSurface:
    """X = a cos u cos v, Y = a cos u sin v, Z = b sin u (u = latitude)."""
    return ParametricSurface(
        lambda u, v: (a * math.cos(u) * math.cos(v), a * math.cos(u) * math.sin(v), b * math.sin(u)),
        du=lambda u, v: (-a * math.sin(u) * math.cos(v), -a * math.sin(u) * math.sin(v), b * math.cos(u)),
        dv=lambda u, v: (-a * math.cos(u) * math.sin(v), a * math.cos(u) * math.cos(v), 0.0),
        duu=lambda u, v: (-a * math.cos(u) * math.cos(v), -a * math.cos(u) * math.sin(v), -b * math.sin(u)),
        duv=lambda u, v: (a * math.sin(u) * math.sin(v), -a * math.sin(u) * math.cos(v), 0.0),
        dvv=lambda u, v: (-a * math.cos(u) * math.cos(v), -a * math.cos(u) * math.sin(v), 0.0),
        domain=((-1.4, 1.4), (0.0, 2 * math.pi)),
        name="spheroid",
    )


def sphere_surface(radius: float = 1.0) -> ParametricSurface:
    s = spheroid(radius, radius)
    s.name = "sphere"
    return s


def pseudosphere_log() -> ParametricSurface:
    """X = sin u cos v, Y = sin u sin v, Z = cos u + ln tan(u/2); K = -1."""
    def zu(u):
        return math.cos(u) ** 2 / math.sin(u)

    def zuu(u):
        return -math.cos(u) * (1.0 + math.sin(u) ** 2) / math.sin(u) ** 2

    return ParametricSurface(
        lambda u, v: (math.sin(u) * math.cos(v), math.sin(u) * math.sin(v),
                      math.cos(u) + math.log(math.tan(u / 2))),
        du=lambda u, v: (math.cos(u) * math.cos(v), math.cos(u) * math.sin(v), zu(u)),
        dv=lambda u, v: (-math.sin(u) * math.sin(v), math.sin(u) * math.cos(v), 0.0),
        duu=lambda u, v: (-math.sin(u) * math.cos(v), -math.sin(u) * math.sin(v), zuu(u)),
        duv=lambda u, v: (-math.cos(u) * math.sin(v), math.cos(u) * math.cos(v), 0.0),
        dvv=lambda u, v: (-math.sin(u) * math.cos(v), -math.sin(u) * math.sin(v), 0.0),
        domain=((0.2, 1.4), (0.0, 2 * math.pi)),
        name="pseudosphere_log",
    )


def pseudosphere_th() -> ParametricSurface:
    """X = th u cos v, Y = th u sin v, Z = 1/ch u + ln th(u/2), u > 0.

    (The hyperbolic tangent is sinh/cosh; the workbook's display of th u has
    the quotient upside down.)
    """
    def zu(u):
        return 1.0 / (math.cosh(u) ** 2 * math.sinh(u))

    def zuu(u):
        return -2.0 / math.cosh(u) ** 3 - 1.0 / (math.cosh(u) * math.sinh(u) ** 2)

    def sech2(u):
        return 1.0 / math.cosh(u) ** 2

    return ParametricSurface(
        lambda u, v: (math.tanh(u) * math.cos(v), math.tanh(u) * math.sin(v),
                      1.0 / math.cosh(u) + math.log(math.tanh(u / 2))),
        du=lambda u, v: (sech2(u) * math.cos(v), sech2(u) * math.sin(v), zu(u)),
        dv=lambda u, v: (-math.tanh(u) * math.sin(v), math.tanh(u) * math.cos(v), 0.0),
        duu=lambda u, v: (-2 * sech2(u) * math.tanh(u) * math.cos(v),
                          -2 * sech2(u) * math.tanh(u) * math.sin(v), zuu(u)),
        duv=lambda u, v: (-sech2(u) * math.sin(v), sech2(u) * math.cos(v), 0.0),
        dvv=lambda u, v: (-math.tanh(u) * math.cos(v), -math.tanh(u) * math.sin(v), 0.0),
        domain=((0.3, 2.5), (0.0, 2 * math.pi)),
        name="pseudosphere_th",
    )


def torus(shell_radius: float, tube_radius: float) -> ParametricSurface:
    """x = (A + R cos u) cos v, y = (A + R cos u) sin v, z = R sin u."""
    A, R = shell_radius, tube_radius

    def g(u):
        return A + R * math.cos(u)

    return ParametricSurface(
        lambda u, v: (g(u) * math.cos(v), g(u) * math.sin(v), R * math.sin(u)),
        du=lambda u, v: (-R * math.sin(u) * math.cos(v), -R * math.sin(u) * math.sin(v), R * math.cos(u)),
        dv=lambda u, v: (-g(u) * math.sin(v), g(u) * math.cos(v), 0.0),
        duu=lambda u, v: (-R * math.cos(u) * math.cos(v), -R * math.cos(u) * math.sin(v), -R * math.sin(u)),
        duv=lambda u, v: (R * math.sin(u) * math.sin(v), -R * math.sin(u) * math.cos(v), 0.0),
        dvv=lambda u, v: (-g(u) * math.cos(v), -g(u) * math.sin(v), 0.0),
        domain=((0.0, 2 * math.pi), (0.0, 2 * math.pi)),
        name="torus",
    )


def ellipsoid_of_revolution(ell: Ellipsoid) -> ParametricSurface:
    """Geodetic parameterization (u = phi, v = lambda): principal curvature
    radii are rho along the meridian and N along the prime vertical."""
    a, e2 = ell.a, ell.e2

    def w2(u):
        return 1.0 - e2 * math.sin(u) ** 2

    def N(u):
        return a / math.sqrt(w2(u))

    def rho(u):
        return a * (1.0 - e2) / w2(u) ** 1.5

    def drho(u):
        return 3.0 * rho(u) * e2 * math.sin(u) * math.cos(u) / w2(u)

    def pos(u, v):
        n = N(u)
        return (n * math.cos(u) * math.cos(v), n * math.cos(u) * math.sin(v),
                n * (1.0 - e2) * math.sin(u))

    def du(u, v):
        r = rho(u)
        return (-r * math.sin(u) * math.cos(v), -r * math.sin(u) * math.sin(v), r * math.cos(u))

    def dv(u, v):
        n = N(u)
        return (-n * math.cos(u) * math.sin(v), n * math.cos(u) * math.cos(v), 0.0)

    def duu(u, v):
        r, dr = rho(u), drho(u)
        a_ = dr * math.sin(u) + r * math.cos(u)
        return (-a_ * math.cos(v), -a_ * math.sin(v), dr * math.cos(u) - r * math.sin(u))

    def duv(u, v):
        r = rho(u)
        return (r * math.sin(u) * math.sin(v), -r * math.sin(u) * math.cos(v), 0.0)

    def dvv(u, v):
        n = N(u)
        return (-n * math.cos(u) * math.cos(v), -n * math.cos(u) * math.sin(v), 0.0)

    return ParametricSurface(pos, du, dv, duu, duv, dvv,
                             domain=((-1.4, 1.4), (0.0, 2 * math.pi)),
                             name="ellipsoid_of_revolution")


CURVES = {
    "helix": lambda: helix(3.0, 4.0),
    "twisted_quartic": lambda: twisted_quartic(1.0),
    "ellipse": lambda: ellipse_curve(2.0, 1.0),
}

SURFACES = {
    "enneper": enneper,
    "crossed_paraboloids": crossed_paraboloids,
    "spheroid": lambda: spheroid(2.0, 1.0),
    "sphere": lambda: sphere_surface(1.0),
    "pseudosphere_log": pseudosphere_log,
    "pseudosphere_th": pseudosphere_th,
    "torus": lambda: torus(2.0, 1.0),
    "ellipsoid_of_revolution": lambda: ellipsoid_of_revolution(
        Ellipsoid(6378249.20, 0.0068034877, name="clarke1880")),
}


def get_surface(name: str) -> ParametricSurface:
    try:
        return SURFACES[name]()
    except KeyError:
        raise KeyError(f"unknown surface {name!r}; catalog: {sorted(SURFACES)}") from None


def get_curve(name: str) -> ParametricCurve:
    try:
        return CURVES[name]()
    except KeyError:
        raise KeyError(f"unknown curve {name!r}; catalog: {sorted(CURVES)}") from None
