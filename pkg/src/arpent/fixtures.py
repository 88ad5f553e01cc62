"""Named fixture cases: every worked exercise of the collection, runnable as
a golden-file suite.

Each case carries its inputs, the expected outputs with a tolerance each,
and a provenance tag: "paper" marks values printed in the source collection,
"derived" marks values computed here by an independent oracle (quadrature,
bisection, arbitrary precision, cross-method agreement) and frozen.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import cartgeo, catalog, diffgeo, geocore, lsq, orbits, projmaps, reductions, sphastro
from .angles import parse_hours
from .ellipsoid import PRESETS, sphere

GR = math.pi / 200
DMGR = GR * 1e-4


@dataclass(frozen=True)
class Expectation:
    value: float
    tol: float


@dataclass(frozen=True)
class FixtureCase:
    id: str
    title: str
    compute: Callable[[], dict]
    expected: dict[str, Expectation]
    provenance: str          # "paper" | "derived"
    inputs: dict = field(default_factory=dict)


@dataclass(frozen=True)
class FixtureResult:
    id: str
    passed: bool
    provenance: str
    details: list  # (key, got, want, tol, ok)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.id}"


_REGISTRY: dict[str, FixtureCase] = {}


def register(case: FixtureCase):
    if case.id in _REGISTRY:
        raise ValueError(f"duplicate fixture id {case.id}")
    _REGISTRY[case.id] = case


def fixture(id, title, expected, provenance, inputs=None):
    def deco(fn):
        exp = {k: Expectation(v, t) for k, (v, t) in expected.items()}
        register(FixtureCase(id=id, title=title, compute=fn, expected=exp,
                             provenance=provenance, inputs=inputs or {}))
        return fn
    return deco


def all_cases() -> list[FixtureCase]:
    return [_REGISTRY[k] for k in sorted(_REGISTRY)]


def get_case(case_id: str) -> FixtureCase:
    try:
        return _REGISTRY[case_id]
    except KeyError:
        raise KeyError(f"unknown fixture {case_id!r}; run `fixtures list`") from None


def run_case(case_id: str) -> FixtureResult:
    case = get_case(case_id)
    got = case.compute()
    details = []
    ok_all = True
    for key, exp in case.expected.items():
        g = float(got[key])
        ok = abs(g - exp.value) <= exp.tol
        ok_all = ok_all and ok
        details.append((key, g, exp.value, exp.tol, ok))
    return FixtureResult(id=case.id, passed=ok_all, provenance=case.provenance,
                         details=details)


def run_all(ids=None) -> list[FixtureResult]:
    ids = sorted(_REGISTRY) if ids is None else list(ids)
    return [run_case(i) for i in ids]


CLARKE = PRESETS["clarke1880"]
GRS = PRESETS["grs"]

P3_XYZ = (4300244.860, 1062094.681, 4574775.629)


# ---------------------------------------------------------------- geocore --

@fixture("geocore.radii.equator", "curvature radii of Clarke 1880 at the equator",
         {"N": (6378249.20, 1e-6), "rho": (6378249.20 * (1 - 0.0068034877), 1e-6)},
         provenance="paper", inputs={"ellipsoid": "clarke1880", "phi_gr": 0.0})
def _radii_equator():
    return {"N": geocore.prime_vertical_radius(CLARKE, 0.0),
            "rho": geocore.meridian_radius(CLARKE, 0.0)}


@fixture("geocore.wallis.quarter", "Wallis integral W2 over a quarter turn",
         {"W2": (math.pi / 4, 1e-13), "W8_1rad": (0.0370177997, 1e-9)},
         provenance="derived", inputs={"orders": [2, 8]})
def _wallis():
    return {"W2": geocore.wallis(2, math.pi / 2), "W8_1rad": geocore.wallis(8, 1.0)}


@fixture("geocore.isolat.roundtrip40", "isometric latitude of 40 gr and its inverse",
         {"L": (0.67027335, 1e-7), "phi_back_gr": (40.0, 1e-12)},
         provenance="derived", inputs={"ellipsoid": "clarke1880", "phi_gr": 40.0})
def _isolat():
    L = geocore.isometric_latitude(CLARKE, 40 * GR)
    return {"L": L, "phi_back_gr": geocore.isometric_latitude_inverse(CLARKE, L) / GR}


@fixture("geocore.arc.quarter_grs", "quarter meridian of the GRS-type ellipsoid",
         {"beta_m": (10001965.7293, 1e-3)},
         provenance="derived", inputs={"ellipsoid": "grs", "phi_deg": 90.0})
def _quarter():
    return {"beta_m": geocore.quarter_meridian(GRS)}


@fixture("geocore.arc.inverse5000km", "latitude whose meridian arc is 5000 km",
         {"phi_deg": (45.13547379, 1e-7)},
         provenance="derived", inputs={"ellipsoid": "grs", "beta_m": 5e6})
def _arcinv():
    return {"phi_deg": math.degrees(geocore.meridian_arc_inverse(GRS, 5_000_000.0))}


@fixture("geocore.jacobi.crossing", "second equator crossing of an equatorial geodesic",
         {"lambda_H": (2 * math.pi - 0.0068034877 * math.pi, 1e-12)},
         provenance="paper", inputs={"ellipsoid": "clarke1880", "Az_E_deg": 90.0})
def _jacobi():
    return {"lambda_H": geocore.jacobi_equator_longitude(CLARKE, 0.0, math.pi / 2)}


@fixture("geocore.clairaut.torus", "torus Clairaut constant, a=2 R=1 Aze=45 deg",
         {"C": (3.0 * math.sin(math.pi / 4), 1e-12)},
         provenance="paper", inputs={"a": 2.0, "R": 1.0, "Aze_deg": 45.0})
def _torus_c():
    return {"C": geocore.torus_clairaut_constant(2.0, 1.0, math.pi / 4)}


# ---------------------------------------------------------------- cartgeo --

@fixture("cart.p3.iterative", "3D point to geodetic, fixed-point method",
         {"phi_gr": (51.24094, 5e-6), "lambda_gr": (15.41503, 5e-6), "h_m": (715.182, 1e-3)},
         provenance="paper", inputs={"xyz": P3_XYZ, "ellipsoid": "grs"})
def _p3_iter():
    (phi, lam, h), _ = cartgeo.cart_to_geodetic_iter(GRS, *P3_XYZ, eps=1e-14)
    return {"phi_gr": phi / GR, "lambda_gr": lam / GR, "h_m": h}


@fixture("cart.p3.finite", "3D point to geodetic, exact quartic method",
         {"phi_gr": (51.24094, 5e-6), "h_m": (715.182, 1e-3)},
         provenance="derived", inputs={"xyz": P3_XYZ, "ellipsoid": "grs"})
def _p3_finite():
    phi, lam, h = cartgeo.cart_to_geodetic_finite(GRS, *P3_XYZ)
    return {"phi_gr": phi / GR, "h_m": h}


@fixture("cart.p3.series", "3D point to geodetic, order-4 series",
         {"phi_gr": (51.24094, 5e-6), "h_m": (715.182, 2e-3)},
         provenance="derived", inputs={"xyz": P3_XYZ, "ellipsoid": "grs", "order": 4})
def _p3_series():
    phi, lam, h = cartgeo.cart_to_geodetic_series(GRS, *P3_XYZ)
    return {"phi_gr": phi / GR, "h_m": h}


@fixture("cart.p3.roundtrip", "geodetic back to 3D reproduces the workbook point",
         {"dx_mm": (0.0, 0.01), "dy_mm": (0.0, 0.01), "dz_mm": (0.0, 0.01)},
         provenance="derived", inputs={"xyz": P3_XYZ, "ellipsoid": "grs"})
def _p3_round():
    (phi, lam, h), _ = cartgeo.cart_to_geodetic_iter(GRS, *P3_XYZ, eps=1e-15)
    x, y, z = cartgeo.geodetic_to_cart(GRS, phi, lam, h)
    return {"dx_mm": (x - P3_XYZ[0]) * 1e3, "dy_mm": (y - P3_XYZ[1]) * 1e3,
            "dz_mm": (z - P3_XYZ[2]) * 1e3}


@fixture("cart.iteration.bound", "a-priori iteration counts",
         {"i_half": (20, 0), "i_tenth": (6, 0), "i_done": (0, 0)},
         provenance="derived", inputs={"cases": [[0.5, 1.0, 1e-6], [0.1, 1.0, 1e-6], [0.5, 1e-6, 1e-3]]})
def _bounds():
    return {"i_half": cartgeo.iteration_bound(0.5, 1.0, 1e-6),
            "i_tenth": cartgeo.iteration_bound(0.1, 1.0, 1e-6),
            "i_done": cartgeo.iteration_bound(0.5, 1e-6, 1e-3)}


@fixture("cart.cardan.factored", "Cardan roots of xi^3 - 7 xi + 6",
         {"r1": (-3.0, 1e-9), "r2": (1.0, 1e-9), "r3": (2.0, 1e-9)},
         provenance="derived", inputs={"p": -7.0, "q": 6.0})
def _cardan():
    roots = sorted(r.real for r in cartgeo.solve_cubic_cardan(-7.0, 6.0))
    return {"r1": roots[0], "r2": roots[1], "r3": roots[2]}


@fixture("cart.ferrari.1234", "Ferrari roots of (x-1)(x-2)(x-3)(x-4)",
         {"r1": (1.0, 1e-8), "r2": (2.0, 1e-8), "r3": (3.0, 1e-8), "r4": (4.0, 1e-8)},
         provenance="derived", inputs={"coeffs": [-10.0, 35.0, -50.0, 24.0]})
def _ferrari():
    qc = cartgeo.QuarticCoeffs(-10.0, 35.0, -50.0, 24.0)
    roots = sorted(r.real for r in cartgeo.solve_quartic(qc))
    return dict(zip(("r1", "r2", "r3", "r4"), roots))


# ---------------------------------------------------------------- diffgeo --

@fixture("diffgeo.helix.frenet", "curvature and torsion of the helix a=3 b=4",
         {"kappa": (3 / 25, 1e-12), "tau": (4 / 25, 1e-12)},
         provenance="paper", inputs={"a": 3.0, "b": 4.0, "t": 0.8})
def _helix():
    f = diffgeo.frenet(catalog.helix(3.0, 4.0), 0.8)
    return {"kappa": f.kappa, "tau": f.tau}


@fixture("diffgeo.quartic_curve.t1", "Frenet data of (t^2, t^3, 9/16 t^4) at t=1",
         {"s01": (25 / 16, 1e-10), "kappa": (816 / 4913, 1e-12), "tau": (816 / 4913, 1e-12),
          "centre_x": (-13 / 4, 1e-10), "centre_y": (31 / 48, 1e-10), "centre_z": (77 / 16, 1e-10)},
         provenance="derived", inputs={"a": 1.0, "t": 1.0})
def _quartic_curve():
    c = catalog.twisted_quartic(1.0)
    f = diffgeo.frenet(c, 1.0)
    centre = diffgeo.curvature_center(c, 1.0)
    return {"s01": diffgeo.arc_length(c, 0.0, 1.0), "kappa": f.kappa, "tau": f.tau,
            "centre_x": centre[0], "centre_y": centre[1], "centre_z": centre[2]}


@fixture("diffgeo.enneper.minimal", "mean curvature of Enneper's surface",
         {"H_at_07_03": (0.0, 1e-9), "E_over_G": (1.0, 1e-12)},
         provenance="paper", inputs={"u": 0.7, "v": -0.3})
def _enneper():
    s = catalog.enneper()
    _, _, _, H = diffgeo.curvatures(s, 0.7, -0.3)
    f = diffgeo.fundamental_forms(s, 0.7, -0.3)
    return {"H_at_07_03": H, "E_over_G": f.E / f.G}


@fixture("diffgeo.pseudosphere.K", "total curvature of the tractoid chart",
         {"K_log": (-1.0, 1e-9), "K_th": (-1.0, 1e-9)},
         provenance="derived", inputs={"u": 0.9, "v": 1.0})
def _pseudo():
    _, _, K1, _ = diffgeo.curvatures(catalog.pseudosphere_log(), 0.9, 1.0)
    _, _, K2, _ = diffgeo.curvatures(catalog.pseudosphere_th(), 0.9, 1.0)
    return {"K_log": K1, "K_th": K2}


@fixture("diffgeo.crossed.forms", "first fundamental form of (u^2+v, u+v^2, uv) at (1,1)",
         {"E": (6.0, 1e-12), "F": (5.0, 1e-12), "G": (6.0, 1e-12)},
         provenance="derived", inputs={"u": 1.0, "v": 1.0})
def _crossed():
    f = diffgeo.fundamental_forms(catalog.crossed_paraboloids(), 1.0, 1.0)
    return {"E": f.E, "F": f.F, "G": f.G}


@fixture("diffgeo.ellipse.vertices", "curvature radii at the ellipse vertices (a=2, b=1)",
         {"R_major": (0.5, 1e-10), "R_minor": (4.0, 1e-10)},
         provenance="derived", inputs={"a": 2.0, "b": 1.0})
def _ellipse_vertices():
    e = catalog.ellipse_curve(2.0, 1.0)
    return {"R_major": 1 / diffgeo.frenet(e, 0.0).kappa,
            "R_minor": 1 / diffgeo.frenet(e, math.pi / 2).kappa}


@fixture("diffgeo.torus.clairaut_drift", "Clairaut invariant along an RK4 torus geodesic",
         {"rel_drift": (0.0, 1e-6)},
         provenance="paper", inputs={"a": 2.0, "R": 1.0, "Aze_deg": 45.0})
def _torus_drift():
    A, R = 2.0, 1.0
    az = math.pi / 4
    ds = 1e-3 * (A + R)
    n = int(round(2 * math.pi * (A + R) / ds))
    traj = diffgeo.torus_geodesic_rk4(A, R, az, n, ds)
    g = A + R * np.cos(traj[:, 0])
    c = g * g * traj[:, 3]
    c0 = (A + R) * math.sin(az)
    return {"rel_drift": float(np.max(np.abs(c - c0)) / c0)}


# ---------------------------------------------------------------- sphastro --

@fixture("astro.ex3.closure", "survey triangle: angle sum, excess, misclosure",
         {"alpha_gr": (200.00045, 1e-9), "eps_gr": (0.00033283, 1e-8), "f_gr": (0.00011717, 1e-8)},
         provenance="paper", inputs={"angles_gr": [80.16433, 55.77351, 64.06261],
                                     "AC_km": 20.1357, "AB_km": 22.1435, "R_km": 6371.0})
def _ex3():
    A, B, C = 80.16433 * GR, 55.77351 * GR, 64.06261 * GR
    R = 6371.0
    eps = sphastro.spherical_excess(
        sphastro.SphericalTriangle(A=A, b=20.1357 / R, c=22.1435 / R))
    f = sphastro.closure(sphastro.SphericalTriangle(A=A, B=B, C=C), eps)
    return {"alpha_gr": (A + B + C) / GR, "eps_gr": eps / GR, "f_gr": f / GR}


@fixture("astro.square.twothirds", "spherical square with 120 deg corners",
         {"side": (math.acos(1 / 3), 1e-12), "diagonal": (math.acos(-1 / 3), 1e-12)},
         provenance="paper", inputs={"alpha_deg": 120.0})
def _square():
    alpha = 2 * math.pi / 3
    return {"side": sphastro.square_side(alpha), "diagonal": sphastro.square_diagonal(alpha)}


@fixture("astro.cassini.3040", "Cassini-Soldner image of (30, 40) degrees",
         {"L_deg": (37.00450199, 1e-7), "H_deg": (33.82584497, 1e-7)},
         provenance="derived", inputs={"phi_deg": 30.0, "lambda_deg": 40.0})
def _cassini():
    L, H = sphastro.cassini_soldner_forward(math.radians(30), math.radians(40))
    return {"L_deg": math.degrees(L), "H_deg": math.degrees(H)}


@fixture("astro.trig_ex1.azimuth", "azimuth of a star at z=80 deg (phi=56, delta=5)",
         {"Az_deg": (264.0793, 1e-3), "AH_deg": (79.5130, 1e-3)},
         provenance="paper", inputs={"phi_deg": 56.0, "delta_deg": 5.0, "z_deg": 80.0})
def _trig_ex1():
    phi, delta, z = math.radians(56), math.radians(5), math.radians(80)
    cos_ah = ((math.cos(z) - math.sin(phi) * math.sin(delta))
              / (math.cos(phi) * math.cos(delta)))
    ah = math.acos(cos_ah)
    return {"Az_deg": math.degrees(sphastro.star_azimuth(phi, delta, ah)),
            "AH_deg": math.degrees(ah)}


@fixture("astro.p2.polaris", "hour angle, azimuth and zenith distance of Polaris",
         {"AH_h": (4 + 23 / 60 + 26.82 / 3600, 1e-10), "Az_deg": (358.8355, 1e-3),
          "z_deg": (51.5968, 1e-3)},
         provenance="paper", inputs={"phi_deg": 38.0, "delta_deg": 89.0,
                                     "HSL": "6h37mn19.72s", "alpha": "2h13mn52.90s"})
def _p2_polaris():
    phi, delta = math.radians(38), math.radians(89)
    hsl, ah = sphastro.sidereal_chain(parse_hours("6h37mn19.72s"), 0.0, 0.0,
                                      parse_hours("2h13mn52.90s"))
    return {"AH_h": ah * 12 / math.pi,
            "Az_deg": math.degrees(sphastro.star_azimuth(phi, delta, ah)),
            "z_deg": math.degrees(sphastro.zenith_distance(phi, delta, ah))}


@fixture("astro.p3.andromeda", "pointing Andromeda: sidereal chain, z and Az",
         {"HSL_h": (17.997774, 1e-5), "z_deg": (69.1188, 1e-3), "Az_deg": (52.6939, 1e-3)},
         provenance="paper", inputs={"HSG0": "20h35mn28s", "elapsed_TU_h": 21.0,
                                     "lambda": "0h20mn57s", "alpha": "0h40mn",
                                     "phi_deg": 43.521, "delta_deg": 41.0})
def _andromeda():
    hsl, ah = sphastro.sidereal_chain(parse_hours("20h35mn28s"), 21.0,
                                      parse_hours("0h20mn57s"), parse_hours("0h40mn"))
    phi, delta = math.radians(43.521), math.radians(41.0)
    return {"HSL_h": hsl,
            "z_deg": math.degrees(sphastro.zenith_distance(phi, delta, ah)),
            "Az_deg": math.degrees(sphastro.star_azimuth(phi, delta, ah))}


@fixture("astro.ex1.culminations", "polar-star altitudes at both transits",
         {"h1_deg": (37.9, 1e-10), "h2_deg": (35.9, 1e-10)},
         provenance="paper", inputs={"phi": "36°54'", "delta_deg": 89.0})
def _culm():
    h1, h2 = sphastro.culmination_altitudes(math.radians(36.9), math.radians(89))
    return {"h1_deg": math.degrees(h1), "h2_deg": math.degrees(h2)}


@fixture("astro.p4.shadow", "equinox noon shadow at 47 degrees latitude",
         {"HC_over_HA": (math.tan(math.radians(47)), 1e-12),
          "delta_for_equal_deg": (2.0, 1e-12)},
         provenance="paper", inputs={"phi_deg": 47.0, "delta_deg": 0.0})
def _shadow():
    phi = math.radians(47)
    return {"HC_over_HA": sphastro.shadow_length(1.0, phi, 0.0),
            "delta_for_equal_deg": math.degrees(phi - math.pi / 4)}


# ---------------------------------------------------------------- projmaps --

@fixture("proj.mercator.curve", "Mercator image of the tan(phi)=sin(lambda) curve at 2 gr",
         {"X_m": (31.431441, 2e-5), "Y_m": (31.421096, 2e-5)},
         provenance="paper", inputs={"R_m": 1000.0, "phi_gr": 2.0})
def _merc_curve():
    phi = 2 * GR
    lam = math.asin(math.tan(phi))
    X, Y = projmaps.mercator_forward(1000.0, phi, lam)
    return {"X_m": X, "Y_m": Y}


@fixture("proj.stereo.identity", "pole-tangent stereographic pair round trip",
         {"max_err": (0.0, 1e-14)},
         provenance="paper", inputs={"grid": "[-2, 2]^2"})
def _stereo_id():
    worst = 0.0
    for i in range(9):
        for j in range(9):
            u, v = -2 + 0.5 * i, -2 + 0.5 * j
            x, y, z = projmaps.stereo_plane_to_sphere(u, v)
            u2, v2 = projmaps.stereo_sphere_to_plane(x, y, z)
            worst = max(worst, abs(u2 - u), abs(v2 - v))
    return {"max_err": worst}


@fixture("proj.gauss.fit36", "conformal sphere fitted at 36 degrees on Clarke 1880",
         {"m_at_phi0": (1.0, 1e-12), "c": (1.0014661512, 1e-9)},
         provenance="derived", inputs={"ellipsoid": "clarke1880", "phi0_deg": 36.0})
def _gauss36():
    p = projmaps.gauss_sphere_fit(CLARKE, math.radians(36))
    return {"m_at_phi0": projmaps.gauss_sphere_module(p, CLARKE, math.radians(36)),
            "c": p.c}


@fixture("utm.p1.pointA", "truncated UTM of point A (40.9193 gr, 11.9656 gr)",
         {"X_m": (157833.48, 0.02), "Y_m": (4078512.97, 0.02)},
         provenance="paper", inputs={"phi_gr": 40.9193, "lambda_gr": 11.9656,
                                     "lambda0_deg": 9.0, "ellipsoid": "clarke1880"})
def _utm_a():
    X, Y = projmaps.utm_truncated_forward(CLARKE, math.radians(9), 40.9193 * GR, 11.9656 * GR)
    return {"X_m": X, "Y_m": Y}


@fixture("utm.p1.pointB", "longitude of B on A's parallel from its easting",
         {"lambda_gr": (12.0, 1e-5), "Y_m": (4078564.53, 0.02)},
         provenance="paper", inputs={"X_m": 160595.98, "phi_gr": 40.9193})
def _utm_b():
    phi = 40.9193 * GR
    lam = projmaps.utm_truncated_inverse_on_parallel(CLARKE, math.radians(9), phi, 160595.98)
    _, Y = projmaps.utm_truncated_forward(CLARKE, math.radians(9), phi, lam)
    return {"lambda_gr": lam / GR, "Y_m": Y}


@fixture("utm.p1.bearings", "gisement, distance and azimuths between A and B",
         {"G_gr": (98.81180, 2e-4), "D_m": (2762.983, 2e-3),
          "AzAB_gr": (99.98986, 2e-4), "AzBA_gr": (300.01047, 2e-4)},
         provenance="derived", inputs={})
def _utm_bearings():
    lam0 = math.radians(9)
    phi = 40.9193 * GR
    A = projmaps.utm_truncated_forward(CLARKE, lam0, phi, 11.9656 * GR)
    lamB = projmaps.utm_truncated_inverse_on_parallel(CLARKE, lam0, phi, 160595.98)
    B = (160595.98, projmaps.utm_truncated_forward(CLARKE, lam0, phi, lamB)[1])
    G, D = projmaps.plane_bearing(*A, *B)
    azAB = G + projmaps.meridian_convergence(11.9656 * GR, lam0, phi)
    azBA = (G + math.pi) % (2 * math.pi) + projmaps.meridian_convergence(lamB, lam0, phi)
    return {"G_gr": G / GR, "D_m": D / 1.0, "AzAB_gr": azAB / GR, "AzBA_gr": azBA / GR}


@fixture("utm.ex1.order8", "order-8 northing term at the audit point",
         {"a8l8_mm": (0.0, 0.1)},
         provenance="derived", inputs={"phi_gr": 40.0, "dl_gr": 1.23546})
def _utm_a8():
    phi = 40.0 * GR
    t2 = math.tan(phi) ** 2
    n = geocore.prime_vertical_radius(CLARKE, phi)
    a8 = (n * math.sin(phi) * math.cos(phi) ** 7
          * (1385 - 3111 * t2 + 543 * t2 ** 2 - t2 ** 3) / 40320)
    return {"a8l8_mm": abs(a8 * (1.23546 * GR) ** 8) * 1000}


@fixture("lambert.sud.point", "south-zone inverse recovers the printed longitude",
         {"lambda_gr": (9.3474734, 1e-6), "phi_gr": (38.06268, 1e-4)},
         provenance="paper", inputs={"X_m": 363044.79, "Y_m": 407020.09, "zone": "sud_tunisie"})
def _lambert_sud():
    z = projmaps.load_zones()["sud_tunisie"]
    phi, lam = projmaps.lambert_inverse(z, 363044.79, 407020.09)
    return {"lambda_gr": lam / GR, "phi_gr": phi / GR}


@fixture("lambert.ex1.chain", "north-zone coordinates, gisement and grid distance",
         {"X_m": (577510.130, 2e-3), "Y_m": (392121.672, 2e-3),
          "G_gr": (55.19538, 2e-5), "Dr_m": (5420.832, 1e-3)},
         provenance="derived", inputs={"phi_gr": 40.9193, "lambda_gr": 11.9656,
                                       "Azg_gr": 55.7631, "Dv_dmgr": 1.52,
                                       "De_m": 5421.32, "alteration_cm_km": -9.0})
def _lambert_ex1():
    z = projmaps.load_zones()["nord_tunisie"]
    X, Y = projmaps.lambert_forward(z, 40.9193 * GR, 11.9656 * GR)
    G = projmaps.gisement_from_azimuth(55.7631 * GR, projmaps.lambert_convergence(z, 11.9656 * GR),
                                       1.52e-4 * GR)
    return {"X_m": X, "Y_m": Y, "G_gr": G / GR,
            "Dr_m": reductions.to_grid(5421.32, alteration_cm_per_km=-9.0)}


@fixture("lambert.p1.chain", "full north-zone chain to point B",
         {"De_m": (20127.847, 2e-3), "Dr_m": (20124.836, 2e-3),
          "Azg_gr": (89.68426, 2e-5), "G_gr": (89.84429, 2e-5),
          "XB_m": (497891.736, 0.02), "YB_m": (447899.044, 0.02),
          "lambdaB_gr": (10.97357, 1e-4), "AzBA_gr": (289.82876, 1e-4)},
         provenance="derived", inputs={"Dp_m": 20130.858, "H_A": 235.07, "H_B": 507.75,
                                       "module": 0.999850371, "Aza_gr": 89.68499,
                                       "Dv_gr": 0.00188, "XA": 478022.43, "YA": 444702.22})
def _lambert_p1():
    z = projmaps.load_zones()["nord_tunisie"]
    obs = reductions.DistanceObservation(dp=20130.858, h_a=235.07, h_b=507.75)
    _, de = reductions.reduce_rigorous(obs)
    dr = reductions.to_grid(de, module=0.999850371)
    azg = projmaps.laplace_azimuth(89.68499 * GR, 10.72453 * GR, 10.72574 * GR, 41.44903 * GR)
    G = projmaps.gisement_from_azimuth(azg, projmaps.lambert_convergence(z, 10.72453 * GR),
                                       0.00188 * GR)
    XB, YB = projmaps.plane_traverse(478022.43, 444702.22, G, dr)
    phiB, lamB = projmaps.lambert_inverse(z, XB, YB)
    azBA = (projmaps.plane_bearing(XB, YB, 478022.43, 444702.22)[0]
            + projmaps.lambert_convergence(z, lamB)) % (2 * math.pi)
    return {"De_m": de, "Dr_m": dr, "Azg_gr": azg / GR, "G_gr": G / GR,
            "XB_m": XB, "YB_m": YB, "lambdaB_gr": lamB / GR, "AzBA_gr": azBA / GR}


@fixture("lambert.p2.chain", "full south-zone chain to point B and its geographic spot",
         {"De_m": (16478.218, 2e-3), "G_gr": (298.47090, 2e-5),
          "XB_m": (346573.631, 0.02), "YB_m": (406624.391, 0.02),
          "phiB_gr": (38.05622, 1e-4), "lambdaB_gr": (9.14884, 1e-4)},
         provenance="derived", inputs={"Dp_m": 16483.873, "H_A": 1319.79, "H_B": 1025.34,
                                       "alteration_cm_km": -14.0, "Azg_gr": 297.56225,
                                       "Dv_dmgr": -13.7, "XA": 363044.79, "YA": 407020.09})
def _lambert_p2():
    z = projmaps.load_zones()["sud_tunisie"]
    obs = reductions.DistanceObservation(dp=16483.873, h_a=1319.79, h_b=1025.34)
    _, de = reductions.reduce_rigorous(obs)
    dr = reductions.to_grid(de, alteration_cm_per_km=-14.0)
    G = projmaps.gisement_from_azimuth(297.56225 * GR,
                                       projmaps.lambert_convergence(z, 9.3474734 * GR),
                                       -13.7e-4 * GR)
    XB, YB = projmaps.plane_traverse(363044.79, 407020.09, G, dr)
    phiB, lamB = projmaps.lambert_inverse(z, XB, YB)
    return {"De_m": de, "G_gr": G / GR, "XB_m": XB, "YB_m": YB,
            "phiB_gr": phiB / GR, "lambdaB_gr": lamB / GR}


# ---------------------------------------------------------------- reduce --

@fixture("reduce.ex1", "slope to ellipsoid to plane, 20 km line",
         {"D0_m": (20127.8390, 2e-4), "De_m": (20127.8474, 2e-4), "Dr_m": (20124.8357, 2e-4),
          "corr_minus_rig_mm": (0.0, 5.0)},
         provenance="paper", inputs={"Dp": 20130.858, "H_A": 235.07, "H_B": 507.75,
                                     "R_km": 6378.0, "module": 0.999850371})
def _reduce1():
    obs = reductions.DistanceObservation(dp=20130.858, h_a=235.07, h_b=507.75)
    d0, de = reductions.reduce_rigorous(obs)
    return {"D0_m": d0, "De_m": de, "Dr_m": reductions.to_grid(de, module=0.999850371),
            "corr_minus_rig_mm": (reductions.reduce_by_corrections(obs) - de) * 1000}


@fixture("reduce.ex2", "site-angle line: both chords, their mean and the plane distance",
         {"D0_rig_m": (15498.0394, 2e-4), "D0_corr_m": (15498.0394, 2e-4),
          "D0_site_m": (15498.149, 2e-3), "De_m": (15498.0432, 2e-4),
          "Dr_m": (15492.5994, 2e-4)},
         provenance="paper", inputs={"Dp": 15498.823, "H_A": 128.26, "H_B": 231.84,
                                     "i_gr": 0.3523, "module": 0.999648744})
def _reduce2():
    obs = reductions.DistanceObservation(dp=15498.823, h_a=128.26, h_b=231.84,
                                         site_angle=0.3523 * GR)
    d0_rig, _ = reductions.reduce_rigorous(obs)
    d0_corr = reductions.chord_by_corrections(obs)
    d0_site = reductions.chord_via_site_angle(obs)
    d0_mean = (d0_rig + d0_corr) / 2
    de = 2 * obs.radius * math.asin(d0_mean / (2 * obs.radius))
    return {"D0_rig_m": d0_rig, "D0_corr_m": d0_corr, "D0_site_m": d0_site,
            "De_m": de, "Dr_m": reductions.to_grid(de, module=0.999648744)}


@fixture("reduce.ex3", "16 km line with the -14 cm/km zone alteration",
         {"De_m": (16478.2181, 2e-4), "Dr_m": (16475.9111, 2e-4)},
         provenance="paper", inputs={"Dp": 16483.873, "H_A": 1319.79, "H_B": 1025.34,
                                     "alteration_cm_km": -14.0})
def _reduce3():
    obs = reductions.DistanceObservation(dp=16483.873, h_a=1319.79, h_b=1025.34)
    _, de = reductions.reduce_rigorous(obs)
    return {"De_m": de, "Dr_m": reductions.to_grid(de, alteration_cm_per_km=-14.0)}


@fixture("reduce.inverse_chain", "plane distance back to the slope distance",
         {"Dp_m": (5431.565, 2e-3)},
         provenance="derived", inputs={"Dr": 5427.380, "alteration": 8.0,
                                       "H_A": 1000.0, "H_B": 1200.0})
def _reduce_inv():
    return {"Dp_m": reductions.slope_from_grid(5427.380, 1000.0, 1200.0,
                                               alteration_cm_per_km=8.0)}


# ---------------------------------------------------------------- orbits --

@fixture("orbit.p1.elements", "geodetic satellite: semi-major axis, eccentricity, period",
         {"a_m": (7321000.0, 0.0), "e": (300000 / 14642000, 1e-15), "T_s": (6233.9966, 2e-3)},
         provenance="paper", inputs={"h_apo_km": 1100.0, "h_peri_km": 800.0,
                                     "R_m": 6371000.0, "GM": 3.986005e14})
def _sat_elements():
    o = orbits.orbit_from_apsides(1100e3, 800e3, 6371000.0)
    return {"a_m": o.a, "e": o.e, "T_s": orbits.period(o)}


@fixture("orbit.p1.pass", "true anomaly and time since perigee at the 812 km pass",
         {"nu_deg": (23.5384, 1e-3), "t_s": (391.596, 1e-2)},
         provenance="paper", inputs={"D_m": 812000.0})
def _sat_pass():
    o = orbits.orbit_from_apsides(1100e3, 800e3, 6371000.0)
    nu = orbits.true_anomaly_at_radius(o, 6371000.0 + 812000.0)
    return {"nu_deg": math.degrees(nu), "t_s": orbits.time_since_perigee(o, nu)}


@fixture("orbit.halley", "Halley: eccentricity and apsidal speed ratio",
         {"e": (0.970250, 1e-6), "vA_over_vP": (0.015100, 1e-6)},
         provenance="paper", inputs={"r_apo_UA": 35.1, "r_peri_UA": 0.53})
def _halley():
    e = (35.1 - 0.53) / (35.1 + 0.53)
    return {"e": e, "vA_over_vP": orbits.apsidal_ratio(e)}


@fixture("orbit.kepler.solve", "Kepler equation at M=1 rad, e=0.0205",
         {"E_rad": (1.0174406985, 1e-9), "residual": (0.0, 1e-13)},
         provenance="derived", inputs={"M_rad": 1.0, "e": 0.0205})
def _kepler():
    E = orbits.kepler_solve(1.0, 0.0205)
    return {"E_rad": E, "residual": orbits.kepler_residual(E, 0.0205, 1.0)}


# ---------------------------------------------------------------- lsq --

@fixture("lsq.p5.solution", "printed least-squares triangle system",
         {"X1": (0.62971, 1e-3), "X2": (-0.90962, 1e-3), "X3": (0.94782, 1e-3)},
         provenance="paper", inputs={"system": "printed A, L, P"})
def _p5():
    A = np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0],
                  [1.00375, -0.83924, 0.00143],
                  [-1.00571, 1.20285, -0.66128],
                  [0.00094, -0.36239, 0.65918]])
    L = np.array([0.0, 0.0, 0.97981, -2.88449, 0.42396])
    P = np.array([0.277, 0.160, 1.524, 1.524, 1.524])
    res = lsq.solve_wls(lsq.LinearModel(A=A, L=L, P=P))
    return {"X1": res.X[0], "X2": res.X[1], "X3": res.X[2]}


@fixture("lsq.ex5.triangle", "compensated triangle of the six observations",
         {"a_m": (333.83908, 2e-5), "b_m": (525.84971, 2e-5), "c_m": (414.81569, 2e-5),
          "A_gr": (43.771433, 2e-5), "s2": (0.5174, 2e-3)},
         provenance="derived", inputs={"angles_gr": [43.77160, 98.39043, 57.83858],
                                       "sides_m": [333.841, 525.847, 414.815]})
def _ex5():
    adj = lsq.adjust_triangle(np.array([43.77160, 98.39043, 57.83858]) * GR,
                              [3.1e-4 * GR] * 3,
                              [333.841, 525.847, 414.815], [0.005, 0.010, 0.005])
    return {"a_m": adj.sides[0], "b_m": adj.sides[1], "c_m": adj.sides[2],
            "A_gr": adj.angles[0] / GR, "s2": adj.result.s2}


@fixture("lsq.p1.directions", "quadrilateral direction compensation",
         {"s2_dmgr2": (64.558, 0.05), "s2_over_sigma2": (1.6795, 1e-3),
          "vAB_dmgr": (4.64, 0.01), "angle_CBA_gr": (88.16389, 1e-5),
          "weight_CBA": (0.0118, 2e-4)},
         provenance="derived", inputs={"sigma_dmgr": 6.2})
def _p1_dirs():
    stations = {
        "A": {"B": 0.0, "C": 74.16667 * GR},
        "B": {"D": 0.0, "C": 82.46080 * GR, "A": 170.62531 * GR},
        "C": {"A": 0.0, "B": 37.67099 * GR, "D": 85.08302 * GR},
        "D": {"C": 0.0, "B": 70.12809 * GR},
    }
    adj = lsq.adjust_directions(stations, sigma=6.2 * DMGR)
    ang, var = lsq.angle_between_directions(adj, "B", "C", "A")
    return {"s2_dmgr2": adj.s2 / DMGR ** 2, "s2_over_sigma2": adj.s2_over_sigma2,
            "vAB_dmgr": adj.corrections["A"]["B"] / DMGR,
            "angle_CBA_gr": ang / GR, "weight_CBA": DMGR ** 2 / var}


@fixture("lsq.p2.leveling", "precision leveling of the ABCD polygon",
         {"H_B": (3.3678, 2e-4), "H_C": (4.9254, 2e-4), "H_D": (6.8854, 2e-4),
          "sigma_D_mm": (8.772, 0.02), "sigma_CD_mm": (8.772, 0.02),
          "mm_per_km": (6.311, 0.02)},
         provenance="derived", inputs={"fixed": {"A": 3.048}})
def _p2_level():
    diffs = [("A", "C", 1.878, 6.44), ("A", "D", 3.831, 3.22), ("C", "D", 1.954, 3.22),
             ("A", "B", 0.332, 6.44), ("B", "D", 3.530, 3.22), ("B", "C", 1.545, 6.44)]
    adj = lsq.adjust_leveling(diffs, {"A": 3.048})
    return {"H_B": adj.heights["B"], "H_C": adj.heights["C"], "H_D": adj.heights["D"],
            "sigma_D_mm": adj.sigmas["D"] * 1000,
            "sigma_CD_mm": lsq.height_difference_sigma(adj, "C", "D") * 1000,
            "mm_per_km": adj.mm_per_km}


@fixture("lsq.p1q3.leveling", "equal-weight leveling of the quadrilateral lines",
         {"H_B": (-0.5165, 2e-4), "H_C": (-3.3545, 2e-4), "H_D": (-1.5730, 2e-4),
          "s2": (9.9e-5, 1e-7)},
         provenance="derived", inputs={"fixed": {"A": 0.0}})
def _p1q3_level():
    diffs = [("B", "A", 0.509), ("D", "B", 1.058), ("C", "A", 3.362),
             ("C", "D", 1.783), ("C", "B", 2.829)]
    adj = lsq.adjust_leveling(diffs, {"A": 0.0})
    return {"H_B": adj.heights["B"], "H_C": adj.heights["C"], "H_D": adj.heights["D"],
            "s2": adj.s2}


@fixture("lsq.p3.aneroid", "aneroid calibration D = d + alpha t + gamma",
         {"alpha": (-0.085, 1e-12), "gamma": (1.42, 1e-12), "s2": (1.0714, 1e-3),
          "sigma_alpha": (0.0162, 1e-3)},
         provenance="derived", inputs={"t": [6.0, 10.0, 14.0, 18.0],
                                       "d": [761.3, 759.1, 758.4, 763.1],
                                       "D": [762.3, 759.5, 758.7, 763.0],
                                       "sigma_d": 0.14})
def _aneroid():
    t = np.array([6.0, 10.0, 14.0, 18.0])
    d = np.array([761.3, 759.1, 758.4, 763.1])
    D = np.array([762.3, 759.5, 758.7, 763.0])
    A = np.column_stack([t, np.ones(4)])
    L = D - d
    P = np.full(4, 1 / 0.14 ** 2)
    res = lsq.solve_wls(lsq.LinearModel(A=A, L=L, P=P))
    return {"alpha": res.X[0], "gamma": res.X[1], "s2": res.s2,
            "sigma_alpha": math.sqrt(res.cov[0, 0])}


@fixture("lsq.newton.quartic", "Newton minimization of the workbook quartic",
         {"u": (3.0, 1e-10), "v": (-18.0, 1e-10)},
         provenance="paper", inputs={"start": [2.0, 0.0]})
def _newton():
    import warnings as _w
    grad = lambda x: np.array([4 * x[0] ** 3 + 6 * x[1], 6 * x[0] + 3 * x[1] + 36])
    hess = lambda x: np.array([[12 * x[0] ** 2, 6.0], [6.0, 3.0]])
    with _w.catch_warnings():
        _w.simplefilter("ignore", lsq.IndefiniteHessianWarning)
        x, _ = lsq.newton_minimize(grad, hess, [2.0, 0.0])
    return {"u": x[0], "v": x[1]}


S1_TABLE = [
    (4300244.860, 1062094.681, 4574775.629),
    (4277737.502, 1115558.251, 4582961.996),
    (4276816.431, 1081197.897, 4591886.356),
    (4315183.431, 1135854.241, 4542857.520),
    (4285934.717, 1110917.314, 4576361.689),
    (4217271.349, 1193915.699, 4618635.464),
    (4292630.700, 1079310.256, 4579117.105),
]
S2_TABLE = [
    (4300245.018, 1062094.592, 4574775.510),
    (4277737.661, 1115558.164, 4582961.878),
    (4276816.590, 1081197.809, 4591886.238),
    (4315183.590, 1135854.153, 4542857.402),
    (4285934.876, 1110917.227, 4576361.571),
    (4217271.512, 1193915.612, 4618635.348),
    (4292630.858, 1079310.168, 4579116.986),
]
DATUM_TARGETS = {
    "A": (4351694.594, 1056274.819, 4526994.706),
    "B": (4319956.455, 1095408.043, 4548544.867),
    "C": (4303467.472, 1110727.257, 4560823.460),
    "D": (4202413.995, 1221146.648, 4625014.614),
}
DATUM_GOLDEN = {
    "A": (4351694.7504, 1056274.7302, 4526994.5860),
    "B": (4319956.6131, 1095407.9547, 4548544.7481),
    "C": (4303467.6308, 1110727.1689, 4560823.3416),
    "D": (4202414.1586, 1221146.5616, 4625014.4989),
}


@fixture("datum.bursa.fit", "Bursa-Wolf fit of the seven common points",
         {"rms_mm": (0.404, 4.6), "shift_x": (0.158, 5e-3),
          "shift_y": (-0.088, 5e-3), "shift_z": (-0.119, 5e-3)},
         provenance="paper", inputs={"points": 7})
def _bursa_fit():
    _, res = lsq.bursa_wolf_fit(list(zip(S1_TABLE, S2_TABLE)))
    v = res.V.reshape(-1, 3)
    shift = np.mean(np.array(S2_TABLE) - np.array(S1_TABLE), axis=0)
    return {"rms_mm": float(np.sqrt(np.mean(v ** 2))) * 1000,
            "shift_x": shift[0], "shift_y": shift[1], "shift_z": shift[2]}


@fixture("datum.bursa.apply", "transform of the four new points into the target frame",
         {"A_err_mm": (0.0, 1.0), "B_err_mm": (0.0, 1.0),
          "C_err_mm": (0.0, 1.0), "D_err_mm": (0.0, 1.0)},
         provenance="derived", inputs={"targets": sorted(DATUM_TARGETS)})
def _bursa_apply():
    p, _ = lsq.bursa_wolf_fit(list(zip(S1_TABLE, S2_TABLE)))
    out = {}
    for name, xyz in DATUM_TARGETS.items():
        got = lsq.bursa_wolf_apply(p, xyz)
        out[f"{name}_err_mm"] = float(np.linalg.norm(np.subtract(got, DATUM_GOLDEN[name]))) * 1000
    return out
