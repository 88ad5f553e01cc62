"""Differential geometry engine: Frenet apparatus for space curves,
fundamental forms and curvatures for parametric surfaces, Monge-patch
curvatures, and the total curvature of an orthogonal metric.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.integrate import quad

Vec = np.ndarray

FD_STEP_1 = 1e-5   # first derivatives
FD_STEP_2 = 1e-4   # second derivatives (roundoff floor dominates below this)
FD_STEP_3 = 1e-3   # third derivatives


class SingularPointError(ValueError):
    """Parameterization degenerate at the requested point."""


class UndefinedNormalError(ValueError):
    """Frenet normal undefined where the curvature vanishes."""


class ParametricCurve:
    """Space curve t -> R^3 with derivative access up to order 3.

    Analytic derivatives are used when registered; otherwise central finite
    differences with a step scaled to the parameter size.
    """

    def __init__(self, position: Callable[[float], Vec],
                 d1: Optional[Callable] = None,
                 d2: Optional[Callable] = None,
                 d3: Optional[Callable] = None,
                 name: str = ""):
        self.position = position
        self._d1, self._d2, self._d3 = d1, d2, d3
        self.name = name

    def r(self, t: float) -> Vec:
        return np.asarray(self.position(t), dtype=float)

    def d1(self, t: float) -> Vec:
        if self._d1 is not None:
            return np.asarray(self._d1(t), dtype=float)
        h = FD_STEP_1 * max(1.0, abs(t))
        return (self.r(t + h) - self.r(t - h)) / (2.0 * h)

    def d2(self, t: float) -> Vec:
        if self._d2 is not None:
            return np.asarray(self._d2(t), dtype=float)
        h = FD_STEP_2 * max(1.0, abs(t))
        return (self.r(t + h) - 2.0 * self.r(t) + self.r(t - h)) / (h * h)

    def d3(self, t: float) -> Vec:
        if self._d3 is not None:
            return np.asarray(self._d3(t), dtype=float)
        h = FD_STEP_3 * max(1.0, abs(t))
        return (-self.r(t - 2 * h) + 2 * self.r(t - h) - 2 * self.r(t + h)
                + self.r(t + 2 * h)) / (2.0 * h ** 3)


class ParametricSurface:
    """Surface (u, v) -> R^3 with first and second partials, analytic or numeric."""

    def __init__(self, position: Callable[[float, float], Vec],
                 du: Optional[Callable] = None, dv: Optional[Callable] = None,
                 duu: Optional[Callable] = None, duv: Optional[Callable] = None,
                 dvv: Optional[Callable] = None,
                 domain: tuple = ((-1.0, 1.0), (-1.0, 1.0)),
                 name: str = ""):
        self.position = position
        self._du, self._dv = du, dv
        self._duu, self._duv, self._dvv = duu, duv, dvv
        self.domain = domain
        self.name = name

    def r(self, u: float, v: float) -> Vec:
        return np.asarray(self.position(u, v), dtype=float)

    def du(self, u, v) -> Vec:
        if self._du is not None:
            return np.asarray(self._du(u, v), dtype=float)
        h = FD_STEP_1 * max(1.0, abs(u))
        return (self.r(u + h, v) - self.r(u - h, v)) / (2 * h)

    def dv(self, u, v) -> Vec:
        if self._dv is not None:
            return np.asarray(self._dv(u, v), dtype=float)
        h = FD_STEP_1 * max(1.0, abs(v))
        return (self.r(u, v + h) - self.r(u, v - h)) / (2 * h)

    def duu(self, u, v) -> Vec:
        if self._duu is not None:
            return np.asarray(self._duu(u, v), dtype=float)
        h = FD_STEP_2 * max(1.0, abs(u))
        return (self.r(u + h, v) - 2 * self.r(u, v) + self.r(u - h, v)) / (h * h)

    def dvv(self, u, v) -> Vec:
        if self._dvv is not None:
            return np.asarray(self._dvv(u, v), dtype=float)
        h = FD_STEP_2 * max(1.0, abs(v))
        return (self.r(u, v + h) - 2 * self.r(u, v) + self.r(u, v - h)) / (h * h)

    def duv(self, u, v) -> Vec:
        if self._duv is not None:
            return np.asarray(self._duv(u, v), dtype=float)
        hu = FD_STEP_2 * max(1.0, abs(u))
        hv = FD_STEP_2 * max(1.0, abs(v))
        return (self.r(u + hu, v + hv) - self.r(u + hu, v - hv)
                - self.r(u - hu, v + hv) + self.r(u - hu, v - hv)) / (4 * hu * hv)


@dataclass(frozen=True)
class FrenetFrame:
    T: Vec
    N: Vec
    B: Vec
    kappa: float
    tau: float
    s_prime: float


@dataclass(frozen=True)
class FundamentalForms:
    E: float
    F: float
    G: float
    L: float
    M: float
    N: float
    normal: Vec

    @property
    def first_det(self) -> float:
        return self.E * self.G - self.F * self.F


def frenet(curve: ParametricCurve, t: float) -> FrenetFrame:
    """Frenet frame, curvature and torsion at parameter t.

    kappa = |r' x r''| / |r'|^3 and tau = det(r', r'', r''') / |r' x r''|^2;
    (T, N, B) is orthonormal and right-handed wherever kappa > 0.
    """
    r1, r2, r3 = curve.d1(t), curve.d2(t), curve.d3(t)
    speed = float(np.linalg.norm(r1))
    if speed == 0.0:
        raise SingularPointError(f"curve not regular at t={t}")
    cr = np.cross(r1, r2)
    ncr = float(np.linalg.norm(cr))
    kappa = ncr / speed ** 3
    T = r1 / speed
    if ncr == 0.0:
        raise UndefinedNormalError(f"zero curvature at t={t}: normal undefined")
    B = cr / ncr
    N = np.cross(B, T)
    tau = float(np.dot(cr, r3)) / ncr ** 2
    return FrenetFrame(T, N, B, kappa, tau, speed)


def curvature_center(curve: ParametricCurve, t: float) -> Vec:
    """Centre of the osculating circle: r + N / kappa."""
    f = frenet(curve, t)
    return curve.r(t) + f.N / f.kappa


def arc_length(curve: ParametricCurve, t0: float, t1: float) -> float:
    """Arc length by adaptive quadrature of |r'|."""
    if t0 > t1:
        raise ValueError("need t0 <= t1")
    if t0 == t1:
        return 0.0
    val, _ = quad(lambda t: float(np.linalg.norm(curve.d1(t))), t0, t1,
                  epsabs=1e-10 * max(1.0, t1 - t0), epsrel=1e-12, limit=200)
    return val


def fundamental_forms(surface: ParametricSurface, u: float, v: float) -> FundamentalForms:
    """First and second fundamental forms and the unit normal r_u x r_v / |.|."""
    ru, rv = surface.du(u, v), surface.dv(u, v)
    E = float(np.dot(ru, ru))
    F = float(np.dot(ru, rv))
    G = float(np.dot(rv, rv))
    det = E * G - F * F
    # relative threshold: catches poles where a coordinate direction
    # collapses (G ~ eps^2) without tripping on anisotropic but regular
    # parameterizations
    if E <= 0.0 or G <= 0.0 or det <= 1e-24 * max(E, G) ** 2:
        raise SingularPointError(f"singular parameterization at (u,v)=({u},{v})")
    n = np.cross(ru, rv)
    n = n / np.linalg.norm(n)
    L = float(np.dot(n, surface.duu(u, v)))
    M = float(np.dot(n, surface.duv(u, v)))
    N = float(np.dot(n, surface.dvv(u, v)))
    return FundamentalForms(E, F, G, L, M, N, n)


def curvatures(surface: ParametricSurface, u: float, v: float) -> tuple[float, float, float, float]:
    """Principal curvatures plus Gaussian and mean curvature (k1, k2, K, H).

    k1 >= k2 are the shape-operator eigenvalues; K = (LN - M^2)/(EG - F^2),
    H = (EN + GL - 2FM) / (2 (EG - F^2)). Signs follow the r_u x r_v normal.
    """
    f = fundamental_forms(surface, u, v)
    I = np.array([[f.E, f.F], [f.F, f.G]])
    II = np.array([[f.L, f.M], [f.M, f.N]])
    shape_op = np.linalg.solve(I, II)
    k1, k2 = sorted(np.linalg.eigvals(shape_op).real, reverse=True)
    K = (f.L * f.N - f.M * f.M) / f.first_det
    H = (f.E * f.N + f.G * f.L - 2.0 * f.F * f.M) / (2.0 * f.first_det)
    return float(k1), float(k2), float(K), float(H)


def graph_curvatures(f: Callable[[float, float], float], x: float, y: float,
                     derivs: Optional[Callable] = None) -> tuple[float, float]:
    """Gaussian and mean curvature of the graph z = f(x, y).

        K = (fxx fyy - fxy^2) / (1 + fx^2 + fy^2)^2
        H = [(1+fx^2) fyy - 2 fx fy fxy + (1+fy^2) fxx] / (2 (1+fx^2+fy^2)^(3/2))

    `derivs`, when given, returns (fx, fy, fxx, fxy, fyy); otherwise central
    differences are used. H follows the upward normal.
    """
    if derivs is not None:
        fx, fy, fxx, fxy, fyy = derivs(x, y)
    else:
        h1 = FD_STEP_1 * max(1.0, abs(x), abs(y))
        h2 = FD_STEP_2 * max(1.0, abs(x), abs(y))
        fx = (f(x + h1, y) - f(x - h1, y)) / (2 * h1)
        fy = (f(x, y + h1) - f(x, y - h1)) / (2 * h1)
        fxx = (f(x + h2, y) - 2 * f(x, y) + f(x - h2, y)) / (h2 * h2)
        fyy = (f(x, y + h2) - 2 * f(x, y) + f(x, y - h2)) / (h2 * h2)
        fxy = (f(x + h2, y + h2) - f(x + h2, y - h2)
               - f(x - h2, y + h2) + f(x - h2, y - h2)) / (4 * h2 * h2)
    w = 1.0 + fx * fx + fy * fy
    K = (fxx * fyy - fxy * fxy) / (w * w)
    H = ((1.0 + fx * fx) * fyy - 2.0 * fx * fy * fxy + (1.0 + fy * fy) * fxx) / (2.0 * w ** 1.5)
    return K, H


def orthogonal_metric_K(A: Callable[[float, float], float],
                        B: Callable[[float, float], float],
                        u: float, v: float, step: float = 1e-4) -> float:
    """Total curvature of ds^2 = A^2 du^2 + B^2 dv^2:

        K = -(1/(A B)) [ d/dv (A'_v / B) + d/du (B'_u / A) ]

    evaluated with nested central differences.
    """
    h = step

    def Av_over_B(uu, vv):
        return (A(uu, vv + h) - A(uu, vv - h)) / (2 * h) / B(uu, vv)

    def Bu_over_A(uu, vv):
        return (B(uu + h, vv) - B(uu - h, vv)) / (2 * h) / A(uu, vv)

    term1 = (Av_over_B(u, v + h) - Av_over_B(u, v - h)) / (2 * h)
    term2 = (Bu_over_A(u + h, v) - Bu_over_A(u - h, v)) / (2 * h)
    return -(term1 + term2) / (A(u, v) * B(u, v))


def torus_geodesic_rk4(shell_radius: float, tube_radius: float, az_e: float,
                       n_steps: int, ds: float,
                       phi0: float = 0.0, lam0: float = 0.0):
    """Integrate the raw torus geodesic equations with fixed-step RK4.

    State (phi, lambda, phi', lambda') with
        phi''    = -sin(phi) (A + R cos phi) lambda'^2 / R
        lambda'' =  2 R sin(phi) phi' lambda' / (A + R cos phi)
    Returns the trajectory array of shape (n_steps+1, 4). Test fixture for
    the Clairaut invariant (A + R cos phi)^2 lambda' = const, not a public
    geodesic solver.
    """
    A, R = shell_radius, tube_radius

    def rhs(s, y):
        phi, lam, dphi, dlam = y
        g = A + R * math.cos(phi)
        return np.array([
            dphi,
            dlam,
            -math.sin(phi) * g * dlam * dlam / R,
            2.0 * R * math.sin(phi) * dphi * dlam / g,
        ])

    g0 = A + R * math.cos(phi0)
    y = np.array([phi0, lam0, math.cos(az_e) / R, math.sin(az_e) / g0])
    out = np.empty((n_steps + 1, 4))
    out[0] = y
    s = 0.0
    for i in range(n_steps):
        k1 = rhs(s, y)
        k2 = rhs(s + ds / 2, y + ds / 2 * k1)
        k3 = rhs(s + ds / 2, y + ds / 2 * k2)
        k4 = rhs(s + ds, y + ds * k3)
        y = y + ds / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
        s += ds
        out[i + 1] = y
    return out
