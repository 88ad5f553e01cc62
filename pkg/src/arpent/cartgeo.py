"""Cartesian (X,Y,Z) <-> geodetic (phi, lambda, h) conversion.

Three fixed-point iterations, one exact method through a quartic in the
foot-point equatorial radius (solved by the Ferrari/Cardano reduction), and
a truncated series in t = e2 a / sqrt(R^2 + nu^2). All methods agree to
1e-10 rad on Earth-like geometry, which is what the cross-validation tests
pin down.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

from .ellipsoid import Ellipsoid
from .geocore import prime_vertical_radius


class NonContractingError(RuntimeError):
    """Fixed-point iteration produced growing deltas."""


class UndefinedLongitudeError(ValueError):
    """Point on the polar axis has no longitude."""


class GeometryError(ValueError):
    """No admissible foot point (point too deep inside the ellipsoid)."""


class IterMethod(str, Enum):
    ITER1 = "iter1"   # phi = atan((Z + N e2 sin phi)/p)
    ITER2 = "iter2"   # phi = atan((Z/p) / (1 - N e2 cos phi / p))
    ITER3 = "iter3"   # phi = psi + asin(N e2 sin 2phi / (2 r))


@dataclass(frozen=True)
class IterationReport:
    method: IterMethod
    iterations: int
    bound_used: int
    final_delta: float


@dataclass(frozen=True)
class QuarticCoeffs:
    """Monic quartic x^4 + a1 x^3 + a2 x^2 + a3 x + a4 = 0."""
    a1: float
    a2: float
    a3: float
    a4: float


def geodetic_to_cart(ell: Ellipsoid, phi, lam, h: float) -> tuple[float, float, float]:
    """X = (N+h) cos phi cos lambda, Y = (N+h) cos phi sin lambda,
    Z = (N(1-e2)+h) sin phi."""
    phi, lam = float(phi), float(lam)
    n = prime_vertical_radius(ell, phi)
    cp = math.cos(phi)
    return ((n + h) * cp * math.cos(lam),
            (n + h) * cp * math.sin(lam),
            (n * (1.0 - ell.e2) + h) * math.sin(phi))


def longitude_of(x: float, y: float) -> float:
    """Two-argument arctangent of tan(lambda) = Y/X, in (-pi, pi]."""
    if x == 0.0 and y == 0.0:
        raise UndefinedLongitudeError("longitude undefined on the polar axis")
    lam = math.atan2(y, x)
    if lam == -math.pi and y >= 0.0:   # only the y = -0.0 seam maps to +pi
        lam = math.pi
    return lam


def iteration_bound(k: float, spread: float, eps: float) -> int:
    """Smallest iteration count i with k^i * spread < eps, for a contraction
    factor k in (0, 1) and an initial bracket width `spread`."""
    if not 0.0 < k < 1.0:
        raise ValueError(f"contraction factor must be in (0,1), got {k}")
    if spread <= 0.0 or eps <= 0.0:
        raise ValueError("spread and eps must be positive")
    if spread < eps:
        return 0
    # ceil of the log quotient; the 1e-9 guard absorbs float fuzz when the
    # quotient lands exactly on an integer (e.g. k=0.1, eps/spread=1e-6)
    return max(0, math.ceil(math.log(eps / spread) / math.log(k) - 1e-9))


def _height_from(ell, p, z, phi):
    """h from the least pole-sensitive of the two closed forms."""
    n = prime_vertical_radius(ell, phi)
    if abs(phi) < math.pi / 4:
        return p / math.cos(phi) - n
    return z / math.sin(phi) - n * (1.0 - ell.e2)


def cart_to_geodetic_iter(ell: Ellipsoid, x: float, y: float, z: float,
                          method: IterMethod | str = IterMethod.ITER1,
                          eps: float = 1e-13, max_iter: int = 200,
                          ) -> tuple[tuple[float, float, float], IterationReport]:
    """Fixed-point conversion; returns ((phi, lambda, h), report).

    Seed phi0 = atan(Z / (p (1-e2))) (one Bowring-style step, making the
    contraction factor small everywhere h is Earth-like). Divergence --
    five consecutive non-decreasing deltas -- raises NonContractingError
    rather than looping: a diverging scheme says nothing about existence.
    """
    method = IterMethod(method)
    p = math.hypot(x, y)
    if p == 0.0:
        # polar axis: phi = +/- pi/2 exactly, h measured along the axis
        phi = math.copysign(math.pi / 2, z)
        return (phi, 0.0, abs(z) - ell.b), IterationReport(method, 0, 0, 0.0)
    lam = longitude_of(x, y)
    r = math.hypot(p, z)
    psi = math.atan2(z, p)
    e2 = ell.e2

    phi = math.atan2(z, p * (1.0 - e2))
    # A-priori bound for the successive-delta stopping rule: with k the
    # largest |f'| over the bracketing interval and `spread` the bracket
    # width, |phi_i - phi_{i-1}| <= (1 + k) k^{i-1} spread, so the first
    # delta below eps comes at most one step after the classic k^i bound.
    k_est = _contraction_estimate(ell, p, z, phi, method)
    spread = abs(phi - psi) * (1.0 + 1e-3) + 1e-5
    if 0.0 < k_est < 1.0:
        bound = 1 + iteration_bound(k_est, (1.0 + k_est) * spread, eps)
    elif k_est == 0.0:
        bound = 1
    else:
        bound = max_iter

    delta = math.inf
    growing = 0
    for i in range(1, max_iter + 1):
        n = prime_vertical_radius(ell, phi)
        if method is IterMethod.ITER1:
            new = math.atan((z + n * e2 * math.sin(phi)) / p)
        elif method is IterMethod.ITER2:
            new = math.atan((z / p) / (1.0 - n * e2 * math.cos(phi) / p))
        else:
            new = psi + math.asin(n * e2 * math.sin(2.0 * phi) / (2.0 * r))
        d = abs(new - phi)
        phi = new
        if d >= delta:
            growing += 1
            if growing >= 5:
                raise NonContractingError(
                    f"{method.value}: delta grew for 5 consecutive steps (last {d:.3e} rad)")
        else:
            growing = 0
        delta = d
        if d < eps:
            h = _height_from(ell, p, z, phi)
            return (phi, lam, h), IterationReport(method, i, bound, d)
    raise NonContractingError(f"{method.value}: no convergence in {max_iter} iterations")


def _contraction_estimate(ell, p, z, phi, method):
    """max |f'| over the bracketing interval, by central differences on the
    update map at a few sample points."""
    e2 = ell.e2
    if e2 == 0.0:
        return 0.0
    r = math.hypot(p, z)
    psi = math.atan2(z, p)

    def f(t):
        n = prime_vertical_radius(ell, t)
        if method is IterMethod.ITER1:
            return math.atan((z + n * e2 * math.sin(t)) / p)
        if method is IterMethod.ITER2:
            return math.atan((z / p) / (1.0 - n * e2 * math.cos(t) / p))
        return psi + math.asin(n * e2 * math.sin(2.0 * t) / (2.0 * r))

    h = 1e-6
    pad = 1e-4
    lo, hi = min(psi, phi) - pad, max(psi, phi) + pad
    k = 0.0
    try:
        for i in range(7):
            t = lo + (hi - lo) * i / 6
            k = max(k, abs(f(t + h) - f(t - h)) / (2 * h))
    except ValueError:
        return 1.0
    return k


# --- polynomial solvers (Cardano / Ferrari) --------------------------------

def solve_cubic_cardan(p: float, q: float) -> list[complex]:
    """Roots of xi^3 + p xi + q = 0 by Cardano's formula (all three, complex)."""
    if p == 0.0 and q == 0.0:
        return [0j, 0j, 0j]
    disc = (q / 2.0) ** 2 + (p / 3.0) ** 3
    sd = cmath.sqrt(disc)
    u3 = -q / 2.0 + sd
    if abs(u3) < 1e-300:
        u3 = -q / 2.0 - sd
    u = u3 ** (1.0 / 3.0)
    roots = []
    j = complex(-0.5, math.sqrt(3.0) / 2.0)
    for k in range(3):
        uk = u * j ** k
        roots.append(uk - p / (3.0 * uk))
    # Newton polish, kept only when it actually reduces the residual (near
    # multiple roots both f and f' sit at rounding noise and the quotient
    # is garbage)
    for i, r in enumerate(roots):
        fr = r ** 3 + p * r + q
        dfr = 3.0 * r ** 2 + p
        if dfr != 0:
            cand = r - fr / dfr
            if abs(cand ** 3 + p * cand + q) < abs(fr):
                roots[i] = cand
    return roots


def depressed_cubic_roots(c2: float, c1: float, c0: float) -> list[complex]:
    """Roots of z^3 + c2 z^2 + c1 z + c0 = 0 via the shift xi = z + c2/3."""
    shift = c2 / 3.0
    p = c1 - c2 * c2 / 3.0
    q = 2.0 * c2 ** 3 / 27.0 - c2 * c1 / 3.0 + c0
    return [xi - shift for xi in solve_cubic_cardan(p, q)]


def solve_quartic(qc: QuarticCoeffs) -> list[complex]:
    """Four roots of the monic quartic by the u+v+w split.

    After y = x + a1/4 the depressed quartic y^4 + b2 y^2 + b3 y + b4 = 0 is
    attacked with 2y = u + v + w where u^2, v^2, w^2 solve the resolvent

        z^3 + 2 b2 z^2 + (b2^2 - 4 b4) z - b3^2 = 0.

    (The symmetric-function conditions u^2+v^2+w^2 = -2 b2, u v w = -b3 force
    the constant term -b3^2, not -b3.) The sign combination of the square
    roots is fixed by u v w = -b3.
    """
    a1, a2, a3, a4 = qc.a1, qc.a2, qc.a3, qc.a4
    b2 = a2 - 3.0 * a1 * a1 / 8.0
    b3 = a3 - a1 * a2 / 2.0 + a1 ** 3 / 8.0
    b4 = a4 - a1 * a3 / 4.0 + a1 * a1 * a2 / 16.0 - 3.0 * a1 ** 4 / 256.0
    shift = a1 / 4.0

    if abs(b3) < 1e-14 * max(1.0, abs(b2), abs(b4)):
        # biquadratic shortcut
        roots = []
        for z in _quadratic_roots(b2, b4):
            s = cmath.sqrt(z)
            roots.extend([s - shift, -s - shift])
        return _polish(roots, qc)

    zs = depressed_cubic_roots(2.0 * b2, b2 * b2 - 4.0 * b4, -b3 * b3)
    u = cmath.sqrt(zs[0])
    v = cmath.sqrt(zs[1])
    w = cmath.sqrt(zs[2])
    # enforce u v w = -b3; |u v w| equals |b3| up to rounding because the
    # resolvent roots multiply to b3^2, so flipping one sign always suffices
    if abs(u * v * w + b3) > abs(u * v * w - b3):
        w = -w
    ys = [(u + v + w) / 2.0, (u - v - w) / 2.0, (-u + v - w) / 2.0, (-u - v + w) / 2.0]
    return _polish([yy - shift for yy in ys], qc)


def _quadratic_roots(b: float, c: float) -> list[complex]:
    d = cmath.sqrt(b * b - 4.0 * c)
    return [(-b + d) / 2.0, (-b - d) / 2.0]


def _polish(roots: list[complex], qc: QuarticCoeffs) -> list[complex]:
    out = []
    for r in roots:
        for _ in range(3):
            fr = (((r + qc.a1) * r + qc.a2) * r + qc.a3) * r + qc.a4
            dfr = ((4.0 * r + 3.0 * qc.a1) * r + 2.0 * qc.a2) * r + qc.a3
            if dfr == 0:
                break
            cand = r - fr / dfr
            fc = (((cand + qc.a1) * cand + qc.a2) * cand + qc.a3) * cand + qc.a4
            if abs(fc) >= abs(fr):   # step no longer improves: noise floor
                break
            r = cand
        out.append(r)
    return out


def quartic_residual(qc: QuarticCoeffs, x: complex) -> complex:
    return (((x + qc.a1) * x + qc.a2) * x + qc.a3) * x + qc.a4


# --- exact (finite) method --------------------------------------------------

def footpoint_quartic(ell: Ellipsoid, p: float, z: float) -> QuarticCoeffs:
    """Quartic in the foot-point equatorial radius R0.

    The foot point m = (R0, Z0) of the normal through M = (p, Z) satisfies
    (Z - Z0)/(R - R0) = (a^2/b^2)(Z0/R0); eliminating Z0 with the meridian
    ellipse gives, with c2 = a^2 - b^2:

      c2^2 R0^4 - 2 a^2 p c2 R0^3 + (a^4 p^2 + a^2 b^2 Z^2 - a^2 c2^2) R0^2
        + 2 a^4 p c2 R0 - a^6 p^2 = 0
    """
    a2 = ell.a * ell.a
    b2 = ell.b * ell.b
    c2 = a2 - b2
    if c2 == 0.0:
        raise ValueError("finite method needs e2 > 0; use the spherical shortcut")
    return QuarticCoeffs(
        a1=-2.0 * a2 * p / c2,
        a2=(a2 * a2 * p * p + a2 * b2 * z * z - a2 * c2 * c2) / (c2 * c2),
        a3=2.0 * a2 * a2 * p / c2,
        a4=-(a2 ** 3) * p * p / (c2 * c2),
    )


def cart_to_geodetic_finite(ell: Ellipsoid, x: float, y: float, z: float) -> tuple[float, float, float]:
    """Exact conversion through the foot-point quartic.

    Among the four roots the geometric foot point is the real root with
    0 < R0 <= a and sign(Z0) = sign(Z); with several candidates the one
    nearest p wins (exterior points have exactly one).
    """
    p = math.hypot(x, y)
    if p == 0.0:
        phi = math.copysign(math.pi / 2, z)
        return phi, 0.0, abs(z) - ell.b
    if ell.e2 == 0.0:
        lam = longitude_of(x, y)
        r = math.hypot(p, z)
        return math.atan2(z, p), lam, r - ell.a
    lam = longitude_of(x, y)
    a2 = ell.a * ell.a
    b2 = ell.b * ell.b
    qc = footpoint_quartic(ell, p, z)
    candidates = []
    for root in solve_quartic(qc):
        if abs(root.imag) > 1e-6 * max(1.0, abs(root.real)):
            continue
        r0 = min(root.real, ell.a)
        if not 0.0 < r0 <= ell.a * (1.0 + 1e-12):
            continue
        # the foot lies on the meridian ellipse; rebuilding Z0 from it is
        # stable where the normal-line formula has a pole
        z0 = math.copysign(ell.b * math.sqrt(max(0.0, 1.0 - (r0 / ell.a) ** 2)), z)
        if z != 0.0 and z0 * z < 0.0:
            continue
        phi = math.atan2(a2 * z0, b2 * r0)
        # signed distance along the normal and perpendicular offset from it;
        # the quartic folds both signs of Z0 into R0, so mirror-foot roots
        # show up with a large offset and must be discarded here
        h = (p - r0) * math.cos(phi) + (z - z0) * math.sin(phi)
        off = abs(-(p - r0) * math.sin(phi) + (z - z0) * math.cos(phi))
        if off > max(1e-6 * abs(h), 1e-3):
            continue
        candidates.append((abs(r0 - p), r0, phi, h))
    if not candidates:
        raise GeometryError("no admissible foot point: point too deep inside the ellipsoid")
    candidates.sort()
    distinct = [candidates[0]]
    for cand in candidates[1:]:
        if abs(cand[1] - distinct[-1][1]) > 1e-6 * ell.a:
            distinct.append(cand)
    if len(distinct) > 1:
        # several genuine feet: the point lies inside the evolute, where the
        # normal map is not injective
        raise GeometryError("ambiguous foot point: point too deep inside the ellipsoid")
    _, r0, phi, h = distinct[0]
    if h < -(1.0 - ell.e2) * prime_vertical_radius(ell, phi) * (1.0 + 1e-12):
        raise GeometryError(
            f"h = {h:.3f} m below the single-valued bound -N(1-e2): "
            "point too deep inside the ellipsoid")
    return phi, lam, h


# --- series method -----------------------------------------------------------

SERIES_COEFF_COUNT = 5


def series_coefficients(c: float, order: int = 4) -> list[float]:
    """Coefficients a_i(c) of x = sum a_i t^i.

    a0 = a1 = 1 and a2 = c follow by identification in
    (x-1)^2 (R^2 + nu^2 x^2) = e^4 a^2 x^2; a3 = (5c^2-3c)/2 and
    a4 = 2c - 9c^2 + 8c^3 continue the expansion.
    """
    full = [1.0, 1.0, c, (5.0 * c * c - 3.0 * c) / 2.0,
            2.0 * c - 9.0 * c * c + 8.0 * c ** 3]
    if not 0 <= order <= 4:
        raise ValueError("series order must be 0..4")
    return full[:order + 1]


def cart_to_geodetic_series(ell: Ellipsoid, x: float, y: float, z: float,
                            order: int = 4) -> tuple[float, float, float]:
    """Truncated series in t = e2 a / sqrt(R^2 + nu^2), nu^2 = (1-e2) Z^2.

    x = (R/Z) tan(phi) is expanded as sum a_i(c) t^i with c = R^2/(R^2+nu^2);
    at order 4 the neglected tail is O(e^10), below 5e-9 rad on the surface.
    """
    p = math.hypot(x, y)
    if p == 0.0:
        phi = math.copysign(math.pi / 2, z)
        return phi, 0.0, abs(z) - ell.b
    lam = longitude_of(x, y)
    if z == 0.0:
        return 0.0, lam, p - ell.a
    nu2 = (1.0 - ell.e2) * z * z
    s = math.sqrt(p * p + nu2)
    t = ell.e2 * ell.a / s
    c = p * p / (p * p + nu2)
    xs = 0.0
    for i, ai in enumerate(series_coefficients(c, order)):
        xs += ai * t ** i
    phi = math.atan(xs * z / p)
    return phi, lam, _height_from(ell, p, z, phi)
