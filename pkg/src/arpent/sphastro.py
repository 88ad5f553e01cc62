"""Spherical trigonometry and positional astronomy.

Angles are radians. Azimuths are returned from North, clockwise (East
positive), in [0, 2 pi): the workbook's cotangent formula natively measures
from South towards West, so a half turn is added. Hour angles are positive
West of the meridian.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

TWO_PI = 2.0 * math.pi
SIDEREAL_RATE = 1.0027379   # sidereal hours elapsed per TU hour


class UnsolvableTriangleError(ValueError):
    pass


class CircumpolarError(ValueError):
    """Star never sets or never rises at this latitude; .case says which."""

    def __init__(self, case: str):
        super().__init__(f"star {case} at this latitude")
        self.case = case


class ZenithPassError(ValueError):
    """Azimuth undefined for a culmination through the zenith."""


class NoSuchSquareError(ValueError):
    pass


class SingularInverseError(ValueError):
    pass


class InfiniteShadowError(ValueError):
    pass


@dataclass(frozen=True)
class SphericalTriangle:
    """Angles A, B, C and opposite sides a, b, c (arcs on the unit sphere).

    Unknown elements are None; triangle_solve fills them in.
    """
    A: Optional[float] = None
    B: Optional[float] = None
    C: Optional[float] = None
    a: Optional[float] = None
    b: Optional[float] = None
    c: Optional[float] = None

    def elements(self):
        return {"A": self.A, "B": self.B, "C": self.C,
                "a": self.a, "b": self.b, "c": self.c}

    def is_complete(self) -> bool:
        return all(v is not None for v in self.elements().values())


def _check_range(name, value):
    if not 0.0 < value < math.pi:
        raise UnsolvableTriangleError(f"element {name} = {value} outside (0, pi)")


def _angle_from_sides(x, y, z):
    """Angle opposite x from the fundamental cosine law."""
    q = (math.cos(x) - math.cos(y) * math.cos(z)) / (math.sin(y) * math.sin(z))
    if abs(q) > 1.0 + 1e-12:
        raise UnsolvableTriangleError(f"sides violate the triangle inequality (cos = {q})")
    return math.acos(max(-1.0, min(1.0, q)))


def _side_from_sas(y, z, x_angle):
    return math.acos(math.cos(y) * math.cos(z) + math.sin(y) * math.sin(z) * math.cos(x_angle))


def _dual(t: SphericalTriangle) -> SphericalTriangle:
    """Polar duality: sides and angles swap through pi - x."""
    f = lambda v: None if v is None else math.pi - v
    return SphericalTriangle(A=f(t.a), B=f(t.b), C=f(t.c),
                             a=f(t.A), b=f(t.B), c=f(t.C))


def triangle_solve(t: SphericalTriangle) -> SphericalTriangle:
    """Complete a spherical triangle from three independent elements.

    Handles SSS, SAS (two sides + included angle) and ASA (two angles +
    included side, through the polar dual). Ambiguous data sets (SSA, AAS)
    and under- or over-determined ones raise, naming what is missing.
    """
    el = t.elements()
    known = {k: v for k, v in el.items() if v is not None}
    for k, v in known.items():
        _check_range(k, v)
    if len(known) != 3:
        raise UnsolvableTriangleError(
            f"need exactly three elements, got {sorted(known)}")
    sides = [k for k in known if k.islower()]
    angles = [k for k in known if k.isupper()]

    if len(sides) == 3:
        a, b, c = t.a, t.b, t.c
        out = SphericalTriangle(a=a, b=b, c=c,
                                A=_angle_from_sides(a, b, c),
                                B=_angle_from_sides(b, c, a),
                                C=_angle_from_sides(c, a, b))
    elif len(sides) == 2:
        (s1, s2), (ang,) = sides, angles
        if ang.lower() in (s1, s2):
            missing = ({"a", "b", "c"} - {s1, s2}).pop()
            raise UnsolvableTriangleError(
                f"sides {s1},{s2} with non-included angle {ang} are ambiguous: "
                f"need the included angle {missing.upper()}")
        third = ang.lower()
        vals = dict(known)
        vals[third] = _side_from_sas(known[s1], known[s2], known[ang])
        out = triangle_solve(SphericalTriangle(a=vals.get("a"), b=vals.get("b"), c=vals.get("c")))
    elif len(angles) == 2:
        (side,) = sides
        if side.upper() in angles:
            missing = ({"A", "B", "C"} - set(angles)).pop()
            raise UnsolvableTriangleError(
                f"angles {angles[0]},{angles[1]} with opposite side {side} are ambiguous: "
                f"need the included side {missing.lower()}")
        solved_dual = triangle_solve(_dual(t))
        out = _dual(solved_dual)
    else:
        raise UnsolvableTriangleError(
            "three angles given: need at least one side to fix the scale-free datum")

    if out.A + out.B + out.C <= math.pi:
        raise UnsolvableTriangleError("degenerate triangle: angle sum not above pi")
    return out


def triangle_residuals(t: SphericalTriangle) -> dict[str, float]:
    """Closure residuals of the classical identities on a complete triangle."""
    res = {}
    trip = (("a", "b", "c", "A"), ("b", "c", "a", "B"), ("c", "a", "b", "C"))
    el = t.elements()
    for x, y, z, X in trip:
        res[f"cos_{x}"] = (math.cos(el[x])
                           - math.cos(el[y]) * math.cos(el[z])
                           - math.sin(el[y]) * math.sin(el[z]) * math.cos(el[X]))
    # sine law: sin a / sin A constant
    ratios = [math.sin(el[s]) / math.sin(el[s.upper()]) for s in ("a", "b", "c")]
    res["sine_law"] = max(ratios) - min(ratios)
    # four-parts (cotangent) formula: cot a sin b = cos b cos C + cot A sin C
    res["cotangent"] = (math.cos(el["a"]) / math.sin(el["a"]) * math.sin(el["b"])
                        - math.cos(el["b"]) * math.cos(el["C"])
                        - math.cos(el["A"]) / math.sin(el["A"]) * math.sin(el["C"]))
    # polar duality: the dual of the dual must close
    dual = _dual(t)
    res["dual_cos"] = (math.cos(dual.a)
                       - math.cos(dual.b) * math.cos(dual.c)
                       - math.sin(dual.b) * math.sin(dual.c) * math.cos(dual.A))
    return res


def spherical_excess(t: SphericalTriangle) -> float:
    """Spherical excess (area on the unit sphere).

    Three angles: excess = A + B + C - pi. Three sides: l'Huilier. Two sides
    with the included angle: the small-triangle planar-area formula
    (1/2) b c sin A, which is the workbook's route for survey triangles.
    """
    el = t.elements()
    angles = [el[k] for k in ("A", "B", "C") if el[k] is not None]
    sides = {k: el[k] for k in ("a", "b", "c") if el[k] is not None}
    if len(angles) == 3:
        return sum(angles) - math.pi
    if len(sides) == 3:
        s = sum(sides.values()) / 2
        prod = (math.tan(s / 2)
                * math.tan((s - sides["a"]) / 2)
                * math.tan((s - sides["b"]) / 2)
                * math.tan((s - sides["c"]) / 2))
        return 4.0 * math.atan(math.sqrt(max(0.0, prod)))
    if len(sides) == 2 and len(angles) == 1:
        (ang_name,) = [k for k in ("A", "B", "C") if el[k] is not None]
        if ang_name.lower() in sides:
            raise UnsolvableTriangleError("excess needs the included angle")
        b, c = sides.values()
        return 0.5 * b * c * math.sin(el[ang_name])
    raise UnsolvableTriangleError("excess needs 3 angles, 3 sides, or 2 sides + included angle")


def closure(t: SphericalTriangle, excess: Optional[float] = None) -> float:
    """Misclosure f = (A + B + C) - pi - excess of an observed triangle."""
    if None in (t.A, t.B, t.C):
        raise UnsolvableTriangleError("closure needs the three observed angles")
    if excess is None:
        excess = spherical_excess(t)
    return (t.A + t.B + t.C) - math.pi - excess


# -- spherical square ----------------------------------------------------------

def square_side(alpha: float) -> float:
    """Side of the spherical square with corner angle alpha: cos a = cot^2(alpha/2)."""
    q = 1.0 / math.tan(alpha / 2.0) ** 2 if math.tan(alpha / 2.0) != 0 else math.inf
    if not 0.0 <= q < 1.0:
        raise NoSuchSquareError(
            f"corner angle {alpha} admits no spherical square (need pi/2 < alpha < pi)")
    return math.acos(q)


def square_diagonal(alpha: float) -> float:
    """Diagonal of the spherical square, from the isoceles corner triangle."""
    a = square_side(alpha)
    return math.acos(math.cos(a) ** 2 + math.sin(a) ** 2 * math.cos(alpha))


# -- Cassini-Soldner -----------------------------------------------------------

def cassini_soldner_forward(phi: float, lam: float) -> tuple[float, float]:
    """(phi, lambda) -> (L, H): L along the central meridian to the foot of
    the perpendicular great circle, H the perpendicular arc. From the right
    triangle: sin H = cos phi sin lambda, tan L = tan phi / cos lambda."""
    phi, lam = float(phi), float(lam)
    H = math.asin(max(-1.0, min(1.0, math.cos(phi) * math.sin(lam))))
    L = math.atan2(math.sin(phi), math.cos(phi) * math.cos(lam))
    return L, H


def cassini_soldner_inverse(L: float, H: float) -> tuple[float, float]:
    """(L, H) -> (phi, lambda); singular on the perpendicular pole |H| = pi/2."""
    if abs(math.cos(H)) < 1e-12:
        raise SingularInverseError("H = +/- pi/2 is the pole of the reference great circle")
    phi = math.asin(max(-1.0, min(1.0, math.cos(H) * math.sin(L))))
    lam = math.atan2(math.sin(H), math.cos(H) * math.cos(L))
    return phi, lam


# -- hour angles, azimuths, altitudes -------------------------------------------

def hour_angle_of_set(phi: float, delta: float) -> float:
    """Hour angle of setting: cos AH_c = -tan(phi) tan(delta), in [0, pi].

    |tan phi tan delta| > 1 means the star never reaches the horizon; the
    error says whether it never sets (circumpolar) or never rises.
    """
    q = -math.tan(float(phi)) * math.tan(float(delta))
    if q < -1.0:
        raise CircumpolarError("never sets")
    if q > 1.0:
        raise CircumpolarError("never rises")
    return math.acos(q)


def zenith_distance(phi: float, delta: float, ah: float) -> float:
    """cos z = sin phi sin delta + cos phi cos delta cos AH."""
    cz = (math.sin(phi) * math.sin(delta)
          + math.cos(phi) * math.cos(delta) * math.cos(ah))
    return math.acos(max(-1.0, min(1.0, cz)))


def star_azimuth(phi: float, delta: float, ah: float) -> float:
    """Azimuth from North, clockwise, [0, 2 pi).

    Quadrant-safe two-argument form of tan Az = sin AH /
    (cos AH sin phi - cos phi tan delta); that ratio counts from South
    towards West, hence the added half turn.
    """
    phi, delta, ah = float(phi), float(delta), float(ah)
    if zenith_distance(phi, delta, ah) < 1e-12:
        raise ZenithPassError("star through the zenith: azimuth undefined")
    az_south = math.atan2(math.sin(ah),
                          math.cos(ah) * math.sin(phi) - math.cos(phi) * math.tan(delta))
    return (az_south + math.pi) % TWO_PI


def sidereal_chain(hsg0_hours: float, elapsed_tu_hours: float, lambda_hours: float,
                   alpha_hours: float, apply_rate: bool = True) -> tuple[float, float]:
    """Local sidereal time and hour angle from Greenwich sidereal time at 0h TU.

    HSL = HSG0 + elapsed * 1.0027379 + lambda (hours, mod 24); AH = HSL - alpha.
    `apply_rate=False` reproduces rate-free textbook arithmetic. Returns
    (HSL hours, AH radians in [0, 2 pi)).
    """
    rate = SIDEREAL_RATE if apply_rate else 1.0
    hsl = (hsg0_hours + elapsed_tu_hours * rate + lambda_hours) % 24.0
    ah_hours = (hsl - alpha_hours) % 24.0
    return hsl, ah_hours * math.pi / 12.0


def culmination_altitudes(phi: float, delta: float) -> tuple[float, float]:
    """Altitudes at upper and lower meridian transit (northern formulation):
    h_upper = pi/2 - |phi - delta|, h_lower = phi + delta - pi/2."""
    phi, delta = float(phi), float(delta)
    return math.pi / 2 - abs(phi - delta), phi + delta - math.pi / 2


def never_sets(phi: float, delta: float) -> bool:
    """Always above the horizon (northern observer): delta >= pi/2 - phi."""
    return float(delta) >= math.pi / 2 - float(phi)


def never_rises(phi: float, delta: float) -> bool:
    """Never above the horizon (northern observer): delta <= -(pi/2 - phi)."""
    return float(delta) <= -(math.pi / 2 - float(phi))


def culminates_at_zenith(phi: float, delta: float, tol: float = 1e-12) -> bool:
    return abs(float(phi) - float(delta)) <= tol


def shadow_length(pole_height: float, phi: float, delta: float) -> float:
    """Noon shadow of a vertical pole: HC = HA tan(Dz) with Dz = |phi - delta|.

    The sun on or below the horizon at noon leaves no finite shadow.
    """
    dz = abs(float(phi) - float(delta))
    if dz >= math.pi / 2:
        raise InfiniteShadowError("sun at or below the horizon at noon")
    return pole_height * math.tan(dz)
