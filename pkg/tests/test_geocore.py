import math

import mpmath
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from arpent.ellipsoid import Ellipsoid, PRESETS, sphere, get_ellipsoid
from arpent import geocore as gc

CLARKE = PRESETS["clarke1880"]
GRS = PRESETS["grs"]
GR = math.pi / 200


# -- ellipsoid type ----------------------------------------------------------

def test_ellipsoid_derived_quantities():
    assert CLARKE.b == pytest.approx(CLARKE.a * math.sqrt(1 - CLARKE.e2), rel=1e-15)
    for ell in (CLARKE, GRS):
        assert ell.ep2 * (1 - ell.e2) == pytest.approx(ell.e2, rel=1e-15)
        assert 0 <= ell.e2 < 1
    assert CLARKE.a == 6378249.20 and CLARKE.e2 == 0.0068034877
    assert GRS.a == 6378137.00 and GRS.e2 == 0.00669438


def test_ellipsoid_registry(tmp_path):
    assert get_ellipsoid("clarke1880") is CLARKE
    cfg = tmp_path / "ells.json"
    cfg.write_text('{"custom": {"a": 6400000.0, "e2": 0.005}}')
    ell = get_ellipsoid("custom", cfg)
    assert ell.a == 6400000.0 and ell.e2 == 0.005
    with pytest.raises(KeyError):
        get_ellipsoid("nope")
    with pytest.raises(ValueError):
        Ellipsoid(6378137.0, 1.5)


# -- curvature radii ---------------------------------------------------------

def mp_prime_vertical(ell, phi):
    with mpmath.workdps(50):
        a, e2, p = mpmath.mpf(ell.a), mpmath.mpf(ell.e2), mpmath.mpf(phi)
        return float(a / mpmath.sqrt(1 - e2 * mpmath.sin(p) ** 2))


def test_prime_vertical_radius():
    assert gc.prime_vertical_radius(CLARKE, 0.0) == pytest.approx(6378249.20, abs=1e-9)
    pole = CLARKE.a / math.sqrt(1 - CLARKE.e2)
    assert gc.prime_vertical_radius(CLARKE, math.pi / 2) == pytest.approx(pole, abs=1e-9)
    phi = math.radians(36.0)
    oracle = mp_prime_vertical(CLARKE, phi)
    assert gc.prime_vertical_radius(CLARKE, phi) == pytest.approx(oracle, abs=1e-6)
    assert gc.prime_vertical_radius(CLARKE, phi) >= CLARKE.a


def test_meridian_radius():
    assert gc.meridian_radius(CLARKE, 0.0) == pytest.approx(CLARKE.a * (1 - CLARKE.e2), abs=1e-9)
    assert gc.meridian_radius(sphere(6371000.0), 0.7) == pytest.approx(6371000.0)
    phi = math.radians(45.0)
    with mpmath.workdps(50):
        a, e2, p = mpmath.mpf(CLARKE.a), mpmath.mpf(CLARKE.e2), mpmath.mpf(phi)
        w2 = 1 - e2 * mpmath.sin(p) ** 2
        oracle = float(a * (1 - e2) / w2 ** mpmath.mpf("1.5"))
    assert gc.meridian_radius(CLARKE, phi) == pytest.approx(oracle, abs=1e-6)


@given(st.floats(min_value=-math.pi / 2 + 1e-6, max_value=math.pi / 2 - 1e-6))
def test_rho_le_N(phi):
    assert gc.meridian_radius(CLARKE, phi) <= gc.prime_vertical_radius(CLARKE, phi) + 1e-9


def test_d_Ncos_identity():
    # d(N cos phi)/dphi = -rho sin phi  at 20 latitudes
    h = 1e-6
    for k in range(20):
        phi = -1.4 + 2.8 * k / 19
        lhs = (gc.prime_vertical_radius(CLARKE, phi + h) * math.cos(phi + h)
               - gc.prime_vertical_radius(CLARKE, phi - h) * math.cos(phi - h)) / (2 * h)
        rhs = -gc.meridian_radius(CLARKE, phi) * math.sin(phi)
        assert lhs == pytest.approx(rhs, rel=1e-8, abs=1e-2)


# -- latitude families -------------------------------------------------------

def test_latitude_convert_fixed_points():
    assert gc.latitude_convert(CLARKE, "geodetic", "geocentric", 0.0) == 0.0
    assert gc.latitude_convert(CLARKE, "geodetic", "parametric", math.pi / 2) == pytest.approx(math.pi / 2)
    assert gc.latitude_convert(CLARKE, "geodetic", "geodetic", 0.3) == 0.3


def test_latitude_convert_45deg():
    phi = math.radians(45.0)
    om = gc.latitude_convert(CLARKE, "geodetic", "geocentric", phi)
    assert om == pytest.approx(math.atan(1 - CLARKE.e2), abs=1e-15)
    psi = gc.latitude_convert(CLARKE, "geodetic", "parametric", phi)
    assert math.tan(psi) == pytest.approx((CLARKE.b / CLARKE.a) * math.tan(phi), rel=1e-14)


@given(st.floats(min_value=-math.pi / 2 + 1e-9, max_value=math.pi / 2 - 1e-9))
def test_latitude_convert_composition(phi):
    psi = gc.latitude_convert(CLARKE, "geodetic", "parametric", phi)
    om1 = gc.latitude_convert(CLARKE, "parametric", "geocentric", psi)
    om2 = gc.latitude_convert(CLARKE, "geodetic", "geocentric", phi)
    assert abs(om1 - om2) < 1e-13


@given(st.tuples(st.floats(min_value=-1.5, max_value=1.5), st.floats(min_value=-1.5, max_value=1.5)))
def test_latitude_convert_monotone(pair):
    p1, p2 = sorted(pair)
    if p2 - p1 < 1e-9:
        return
    a = gc.latitude_convert(CLARKE, "geodetic", "geocentric", p1)
    b = gc.latitude_convert(CLARKE, "geodetic", "geocentric", p2)
    assert a < b


# -- isometric latitude ------------------------------------------------------

def isolat_quadrature(ell, phi):
    f = lambda t: gc.meridian_radius(ell, t) / (gc.prime_vertical_radius(ell, t) * math.cos(t))
    val, _ = quad(f, 0.0, phi, epsabs=1e-13, epsrel=1e-13)
    return val


def test_isometric_latitude():
    assert gc.isometric_latitude(CLARKE, 0.0) == 0.0
    phi = 0.9
    assert gc.isometric_latitude(sphere(1.0), phi) == pytest.approx(
        math.log(math.tan(math.pi / 4 + phi / 2)), rel=1e-15)
    phi = 40 * GR
    oracle = isolat_quadrature(CLARKE, phi)
    assert gc.isometric_latitude(CLARKE, phi) == pytest.approx(oracle, abs=1e-11)


def test_isometric_latitude_inverse_recovers_40gr():
    L = gc.isometric_latitude(CLARKE, 40 * GR)
    phi = gc.isometric_latitude_inverse(CLARKE, L)
    assert phi / GR == pytest.approx(40.0, abs=1e-12)


@given(st.floats(min_value=-1.5, max_value=1.5))
def test_isometric_odd_and_invertible(phi):
    L = gc.isometric_latitude(CLARKE, phi)
    assert gc.isometric_latitude(CLARKE, -phi) == pytest.approx(-L, rel=1e-12, abs=1e-15)
    assert gc.isometric_latitude_inverse(CLARKE, L) == pytest.approx(phi, abs=1e-13)


def test_isometric_latitude_pole_rejected():
    with pytest.raises(gc.PoleDomainError):
        gc.isometric_latitude(CLARKE, math.pi / 2)


# -- Wallis integrals --------------------------------------------------------

def test_wallis_w0():
    assert gc.wallis(0, 0.7) == 0.7


def test_wallis_vs_quadrature():
    for p in (0, 2, 4, 6, 8):
        for omega in (0.1, 0.5, 1.0, 1.3, math.pi / 2):
            oracle, _ = quad(lambda w: math.sin(w) ** p, 0.0, omega, epsabs=1e-14, epsrel=1e-14)
            assert abs(gc.wallis(p, omega) - oracle) <= 1e-12, (p, omega)


def test_wallis_quarter():
    assert gc.wallis(2, math.pi / 2) == pytest.approx(math.pi / 4, abs=1e-15)


def test_wallis_odd_rejected():
    with pytest.raises(ValueError):
        gc.wallis(3, 1.0)
    with pytest.raises(ValueError):
        gc.wallis(-2, 1.0)


# -- meridian arc ------------------------------------------------------------

def arc_quadrature(ell, phi):
    val, _ = quad(lambda t: gc.meridian_radius(ell, t), 0.0, phi,
                  epsabs=1e-8, epsrel=1e-13, limit=200)
    return val


def test_meridian_arc_basics():
    assert gc.meridian_arc(CLARKE, 0.0) == 0.0
    R = 6371000.0
    assert gc.meridian_arc(sphere(R), 0.8) == pytest.approx(R * 0.8, rel=1e-15)


def test_meridian_arc_tail_bound_choice():
    # documented bound: 5 terms (through e^8) for Earth-like e2
    assert gc.meridian_arc_terms(CLARKE) == 5
    assert gc.meridian_arc_terms(GRS) == 5


def test_quarter_meridian_vs_quadrature():
    for ell in (CLARKE, GRS):
        oracle = arc_quadrature(ell, math.pi / 2)
        assert abs(gc.quarter_meridian(ell) - oracle) < 1e-3


def test_meridian_arc_100_latitudes_within_1mm():
    import random
    rng = random.Random(17)
    for ell in (CLARKE, GRS):
        for _ in range(100):
            phi = rng.uniform(-math.pi / 2, math.pi / 2)
            assert abs(gc.meridian_arc(ell, phi) - arc_quadrature(ell, phi)) < 1e-3


@given(st.floats(min_value=0.0, max_value=math.pi / 2 - 1e-9))
@settings(max_examples=30)
def test_meridian_arc_odd_increasing(phi):
    assert gc.meridian_arc(GRS, -phi) == pytest.approx(-gc.meridian_arc(GRS, phi), abs=1e-9)
    if phi > 1e-6:
        assert gc.meridian_arc(GRS, phi) > gc.meridian_arc(GRS, phi - 1e-6)


def test_meridian_arc_inverse():
    assert gc.meridian_arc_inverse(GRS, 0.0) == pytest.approx(0.0, abs=1e-15)
    for deg in range(10, 90, 10):
        phi = math.radians(deg)
        back = gc.meridian_arc_inverse(GRS, gc.meridian_arc(GRS, phi))
        assert back == pytest.approx(phi, abs=1e-11)


def test_meridian_arc_inverse_5000km_bisection_oracle():
    beta = 5_000_000.0
    lo, hi = 0.0, math.pi / 2
    for _ in range(60):
        mid = (lo + hi) / 2
        if gc.meridian_arc(GRS, mid) < beta:
            lo = mid
        else:
            hi = mid
    oracle = (lo + hi) / 2
    assert gc.meridian_arc_inverse(GRS, beta) == pytest.approx(oracle, abs=1e-10)


def test_meridian_arc_inverse_range_check():
    with pytest.raises(ValueError):
        gc.meridian_arc_inverse(GRS, -5.0)
    with pytest.raises(ValueError):
        gc.meridian_arc_inverse(GRS, 2 * gc.quarter_meridian(GRS))


# -- first fundamental form of the ellipsoid ---------------------------------

def test_ds2_matches_parameterization():
    # ds^2 = rho^2 dphi^2 + N^2 cos^2 phi dlambda^2 against numeric
    # differentiation of (X, Y, Z)(phi, lambda)
    from arpent.cartgeo import geodetic_to_cart
    import numpy as np
    h = 1e-6
    for phi, lam in ((0.3, 0.5), (0.9, 2.0), (-0.7, 1.1)):
        p0 = np.array(geodetic_to_cart(CLARKE, phi - h, lam, 0.0))
        p1 = np.array(geodetic_to_cart(CLARKE, phi + h, lam, 0.0))
        dphi_len = np.linalg.norm(p1 - p0) / (2 * h)
        assert dphi_len == pytest.approx(gc.meridian_radius(CLARKE, phi), rel=1e-8)
        q0 = np.array(geodetic_to_cart(CLARKE, phi, lam - h, 0.0))
        q1 = np.array(geodetic_to_cart(CLARKE, phi, lam + h, 0.0))
        dlam_len = np.linalg.norm(q1 - q0) / (2 * h)
        assert dlam_len == pytest.approx(
            gc.prime_vertical_radius(CLARKE, phi) * math.cos(phi), rel=1e-8)


# -- Clairaut and the Jacobi correspondence ----------------------------------

def test_clairaut_trivial_cases():
    assert gc.clairaut_constant(CLARKE, 0.0, math.pi / 2) == pytest.approx(CLARKE.a, rel=1e-15)
    assert gc.clairaut_constant(CLARKE, 0.7, 0.0) == pytest.approx(0.0, abs=1e-12)


def test_clairaut_jacobi_correspondence():
    # N cos(phi) = a cos(phi') with phi' the parametric latitude, so the
    # ellipsoid Clairaut constant equals the Jacobi-sphere one at matched
    # azimuth
    phi = 0.61
    psi = gc.latitude_convert(CLARKE, "geodetic", "parametric", phi)
    assert gc.prime_vertical_radius(CLARKE, phi) * math.cos(phi) == pytest.approx(
        CLARKE.a * math.cos(psi), rel=1e-14)


def test_torus_clairaut_value():
    c = gc.torus_clairaut_constant(2.0, 1.0, math.pi / 4)
    assert c == pytest.approx(3.0 * math.sin(math.pi / 4), rel=1e-15)


def test_jacobi_equator_longitude():
    assert gc.jacobi_equator_longitude(sphere(1.0), 0.4, 1.0) == pytest.approx(0.4 + 2 * math.pi)
    lamH = gc.jacobi_equator_longitude(CLARKE, 0.0, math.pi / 2)
    assert lamH == pytest.approx(2 * math.pi - CLARKE.e2 * math.pi, rel=1e-15)
    lamH = gc.jacobi_equator_longitude(CLARKE, 0.3, math.radians(60))
    assert lamH == pytest.approx(0.3 + 2 * math.pi - CLARKE.e2 * math.pi * math.sin(math.radians(60)),
                                 rel=1e-15)
    # strict non-closure for interior azimuths
    for az in (0.1, 1.0, 2.0, 3.0):
        assert gc.jacobi_equator_longitude(CLARKE, 0.0, az) < 2 * math.pi
    with pytest.raises(ValueError):
        gc.jacobi_equator_longitude(CLARKE, 0.0, 0.0)
