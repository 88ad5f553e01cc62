"""FastAPI service wrapping the computation library.

Every endpoint is a pure request/response wrapper: no state beyond the
registries loaded at import. Domain errors surface as HTTP 422 with the
library's message.
"""

from __future__ import annotations

import math
from contextlib import contextmanager

import numpy as np
from fastapi import FastAPI, HTTPException

from . import (__version__, cartgeo, catalog, diffgeo, fixtures, geocore,
               lsq, orbits, projmaps, reductions, sphastro)
from .angles import UNITS, parse_angle, parse_hours
from .ellipsoid import PRESETS, Ellipsoid
from . import schemas as S

app = FastAPI(
    title="arpent",
    version=__version__,
    description="Geodetic computations: conversions, projections, astronomy, "
                "distance reductions, orbits and adjustment.",
)

_DOMAIN_ERRORS = (ValueError, KeyError, RuntimeError, ZeroDivisionError)


@contextmanager
def domain_errors():
    try:
        yield
    except HTTPException:
        raise
    except _DOMAIN_ERRORS as e:
        raise HTTPException(status_code=422, detail=str(e)) from e


def resolve_ellipsoid(spec) -> Ellipsoid:
    if spec is None:
        return PRESETS["grs"]
    if isinstance(spec, str):
        key = spec.lower()
        if key not in PRESETS:
            raise HTTPException(422, f"unknown ellipsoid {spec!r}; presets: {sorted(PRESETS)}")
        return PRESETS[key]
    return Ellipsoid(spec.a, spec.e2)


def angle_in(value, unit: str) -> float:
    """Request angle (number in `unit`, or a tagged string) -> radians."""
    if isinstance(value, str):
        return parse_angle(value, default_unit=unit).rad
    return float(value) * UNITS[unit]


def angle_out(rad: float, unit: str) -> float:
    return rad / UNITS[unit]


@app.get("/health")
def health():
    return {"status": "ok", "version": __version__}


@app.get("/ellipsoids", response_model=list[S.EllipsoidInfo])
def list_ellipsoids():
    return [S.EllipsoidInfo(name=name, a=e.a, e2=e.e2, b=e.b, f=e.f)
            for name, e in sorted(PRESETS.items())]


@app.get("/zones", response_model=list[S.ZoneInfo])
def list_zones():
    gr = math.pi / 200
    out = []
    for name, z in sorted(projmaps.load_zones().items()):
        out.append(S.ZoneInfo(name=name, a=z.ell.a, e2=z.ell.e2,
                              phi0_gr=z.phi0 / gr, lambda0_gr=z.lambda0 / gr,
                              k0=z.k0, x0=z.x0, y0=z.y0))
    return out


# -- conversions ----------------------------------------------------------------

@app.post("/convert", response_model=S.ConvertResponse)
def convert(req: S.ConvertRequest):
    ell = resolve_ellipsoid(req.ellipsoid)
    rows = []
    with domain_errors():
        for pt in req.points:
            if req.direction == "to_cartesian":
                if len(pt.values) != 3:
                    raise HTTPException(422, f"point {pt.name!r}: need (phi, lambda, h)")
                phi = angle_in(pt.values[0], req.angle_unit)
                lam = angle_in(pt.values[1], req.angle_unit)
                h = float(pt.values[2])
                x, y, z = cartgeo.geodetic_to_cart(ell, phi, lam, h)
                rows.append(S.ConvertRow(name=pt.name, x=x, y=y, z=z))
            else:
                if len(pt.values) != 3:
                    raise HTTPException(422, f"point {pt.name!r}: need (X, Y, Z)")
                x, y, z = (float(v) for v in pt.values)
                iterations = bound = None
                if req.method == "finite":
                    phi, lam, h = cartgeo.cart_to_geodetic_finite(ell, x, y, z)
                elif req.method == "series":
                    phi, lam, h = cartgeo.cart_to_geodetic_series(ell, x, y, z)
                else:
                    (phi, lam, h), rep = cartgeo.cart_to_geodetic_iter(
                        ell, x, y, z, method=req.method, eps=req.eps)
                    iterations, bound = rep.iterations, rep.bound_used
                rows.append(S.ConvertRow(
                    name=pt.name, phi=angle_out(phi, req.angle_unit),
                    lam=angle_out(lam, req.angle_unit), h=h,
                    iterations=iterations, bound=bound))
    return S.ConvertResponse(angle_unit=req.angle_unit, rows=rows)


@app.post("/arc", response_model=S.ArcResponse)
def meridian_arc(req: S.ArcRequest):
    ell = resolve_ellipsoid(req.ellipsoid)
    with domain_errors():
        if (req.phi is None) == (req.beta_m is None):
            raise HTTPException(422, "give exactly one of phi and beta_m")
        if req.phi is not None:
            phi = angle_in(req.phi, req.angle_unit)
            beta = geocore.meridian_arc(ell, phi)
        else:
            beta = float(req.beta_m)
            phi = geocore.meridian_arc_inverse(ell, beta)
    return S.ArcResponse(phi=angle_out(phi, req.angle_unit), beta_m=beta,
                         angle_unit=req.angle_unit)


# -- projections ----------------------------------------------------------------

@app.post("/project", response_model=S.ProjectResponse)
def project(req: S.ProjectRequest):
    unit = req.angle_unit
    rows = []
    with domain_errors():
        if req.map == "lambert":
            zones = projmaps.load_zones(req.registry_file)
            if req.zone is None:
                raise HTTPException(422, f"lambert needs a zone; known: {sorted(zones)}")
            if req.zone not in zones:
                raise HTTPException(422, f"unknown zone {req.zone!r}; known: {sorted(zones)}")
            z = zones[req.zone]
            for pt in req.points:
                if req.direction == "forward":
                    phi = angle_in(pt.values[0], unit)
                    lam = angle_in(pt.values[1], unit)
                    x, y = projmaps.lambert_forward(z, phi, lam)
                    rows.append(S.ProjectRow(
                        name=pt.name, x=x, y=y,
                        gamma=angle_out(projmaps.lambert_convergence(z, lam), unit)))
                else:
                    x, y = float(pt.values[0]), float(pt.values[1])
                    phi, lam = projmaps.lambert_inverse(z, x, y)
                    rows.append(S.ProjectRow(
                        name=pt.name, phi=angle_out(phi, unit), lam=angle_out(lam, unit),
                        gamma=angle_out(projmaps.lambert_convergence(z, lam), unit)))
        elif req.map == "utm_truncated":
            ell = resolve_ellipsoid(req.ellipsoid or "clarke1880")
            if req.lambda0 is None:
                raise HTTPException(422, "utm_truncated needs lambda0")
            lam0 = angle_in(req.lambda0, unit)
            for pt in req.points:
                if req.direction == "forward":
                    phi = angle_in(pt.values[0], unit)
                    lam = angle_in(pt.values[1], unit)
                    x, y = projmaps.utm_truncated_forward(ell, lam0, phi, lam)
                    g = projmaps.meridian_convergence(lam, lam0, phi)
                    rows.append(S.ProjectRow(name=pt.name, x=x, y=y, gamma=angle_out(g, unit)))
                else:
                    # inverse on a known parallel: values are (X, phi)
                    x = float(pt.values[0])
                    phi = angle_in(pt.values[1], unit)
                    lam = projmaps.utm_truncated_inverse_on_parallel(ell, lam0, phi, x)
                    y = projmaps.utm_truncated_forward(ell, lam0, phi, lam)[1]
                    rows.append(S.ProjectRow(name=pt.name, phi=angle_out(phi, unit),
                                             lam=angle_out(lam, unit), y=y, x=x))
        elif req.map in ("mercator", "polar_stereo"):
            radius = req.radius if req.radius is not None else 6371000.0
            fwd = projmaps.mercator_forward if req.map == "mercator" else projmaps.polar_stereo_forward
            inv = projmaps.mercator_inverse if req.map == "mercator" else projmaps.polar_stereo_inverse
            mod = projmaps.mercator_module if req.map == "mercator" else projmaps.polar_stereo_module
            for pt in req.points:
                if req.direction == "forward":
                    phi = angle_in(pt.values[0], unit)
                    lam = angle_in(pt.values[1], unit)
                    x, y = fwd(radius, phi, lam)
                    rows.append(S.ProjectRow(name=pt.name, x=x, y=y, module=mod(phi)))
                else:
                    phi, lam = inv(radius, float(pt.values[0]), float(pt.values[1]))
                    rows.append(S.ProjectRow(name=pt.name, phi=angle_out(phi, unit),
                                             lam=angle_out(lam, unit), module=mod(phi)))
        else:   # gauss_sphere
            ell = resolve_ellipsoid(req.ellipsoid or "clarke1880")
            if req.phi0 is None:
                raise HTTPException(422, "gauss_sphere needs phi0")
            params = projmaps.gauss_sphere_fit(ell, angle_in(req.phi0, unit))
            for pt in req.points:
                if req.direction == "forward":
                    phi = angle_in(pt.values[0], unit)
                    lam = angle_in(pt.values[1], unit)
                    psi, Lam = projmaps.gauss_sphere_map(params, ell, phi, lam)
                    rows.append(S.ProjectRow(name=pt.name, phi=angle_out(psi, unit),
                                             lam=angle_out(Lam, unit),
                                             module=projmaps.gauss_sphere_module(params, ell, phi)))
                else:
                    psi = angle_in(pt.values[0], unit)
                    Lam = angle_in(pt.values[1], unit)
                    phi, lam = projmaps.gauss_sphere_inverse(params, ell, psi, Lam)
                    rows.append(S.ProjectRow(name=pt.name, phi=angle_out(phi, unit),
                                             lam=angle_out(lam, unit)))
    return S.ProjectResponse(angle_unit=unit, rows=rows)


# -- reductions ----------------------------------------------------------------

@app.post("/reduce", response_model=S.ReduceResponse)
def reduce_distances(req: S.ReduceRequest):
    rows = []
    with domain_errors():
        for o in req.observations:
            site = angle_in(o.site_angle, req.angle_unit) if o.site_angle is not None else None
            obs = reductions.DistanceObservation(dp=o.dp, h_a=o.h_a, h_b=o.h_b,
                                                 site_angle=site, radius=req.radius)
            d0, de = reductions.reduce_rigorous(obs)
            dec = reductions.reduce_by_corrections(obs)
            d0s = reductions.chord_via_site_angle(obs) if site is not None else None
            dr = None
            if req.module is not None or req.alteration_cm_per_km is not None:
                dr = reductions.to_grid(de, module=req.module,
                                        alteration_cm_per_km=req.alteration_cm_per_km)
            rows.append(S.ReduceRow(name=o.name, d0=d0, de=de, de_corrections=dec,
                                    d0_site=d0s, dr=dr))
    return S.ReduceResponse(rows=rows)


# -- astronomy ------------------------------------------------------------------

def _hours_in(value) -> float:
    if isinstance(value, str):
        return parse_hours(value)
    return float(value)


@app.post("/astro/position", response_model=S.AstroPositionResponse)
def astro_position(req: S.AstroPositionRequest):
    unit = req.angle_unit
    with domain_errors():
        phi = angle_in(req.phi, unit)
        delta = angle_in(req.delta, unit)
        hsl = None
        if (req.hour_angle is None) == (req.sidereal is None):
            raise HTTPException(422, "give exactly one of hour_angle and sidereal")
        if req.sidereal is not None:
            hsl, ah = sphastro.sidereal_chain(
                _hours_in(req.sidereal.hsg0), req.sidereal.elapsed_tu_hours,
                _hours_in(req.sidereal.lambda_hours), _hours_in(req.sidereal.alpha),
                apply_rate=req.sidereal.apply_rate)
        elif isinstance(req.hour_angle, str):
            ah = parse_angle(req.hour_angle, default_unit="hour").rad
        else:
            ah = angle_in(req.hour_angle, unit)
        z = sphastro.zenith_distance(phi, delta, ah)
        az = sphastro.star_azimuth(phi, delta, ah)
    return S.AstroPositionResponse(
        hour_angle=angle_out(ah, unit), azimuth=angle_out(az, unit),
        zenith_distance=angle_out(z, unit), altitude=angle_out(math.pi / 2 - z, unit),
        hsl_hours=hsl, angle_unit=unit)


@app.post("/astro/set", response_model=S.AstroSetResponse)
def astro_set(req: S.AstroSetRequest):
    with domain_errors():
        ahc = sphastro.hour_angle_of_set(angle_in(req.phi, req.angle_unit),
                                         angle_in(req.delta, req.angle_unit))
    return S.AstroSetResponse(hour_angle_set=angle_out(ahc, req.angle_unit),
                              hours=ahc * 12 / math.pi, angle_unit=req.angle_unit)


@app.post("/astro/culmination", response_model=S.CulminationResponse)
def astro_culmination(req: S.CulminationRequest):
    with domain_errors():
        phi = angle_in(req.phi, req.angle_unit)
        delta = angle_in(req.delta, req.angle_unit)
        h1, h2 = sphastro.culmination_altitudes(phi, delta)
    return S.CulminationResponse(
        h_upper=angle_out(h1, req.angle_unit), h_lower=angle_out(h2, req.angle_unit),
        never_sets=sphastro.never_sets(phi, delta),
        never_rises=sphastro.never_rises(phi, delta),
        zenith_culmination=sphastro.culminates_at_zenith(phi, delta),
        angle_unit=req.angle_unit)


@app.post("/astro/triangle", response_model=S.TriangleResponse)
def astro_triangle(req: S.TriangleRequest):
    unit = req.angle_unit
    with domain_errors():
        kw = {}
        for k in ("A", "B", "C", "a", "b", "c"):
            v = getattr(req, k)
            if v is not None:
                kw[k] = angle_in(v, unit)
        t = sphastro.triangle_solve(sphastro.SphericalTriangle(**kw))
        excess = t.A + t.B + t.C - math.pi
    return S.TriangleResponse(
        A=angle_out(t.A, unit), B=angle_out(t.B, unit), C=angle_out(t.C, unit),
        a=angle_out(t.a, unit), b=angle_out(t.b, unit), c=angle_out(t.c, unit),
        excess=angle_out(excess, unit), angle_unit=unit)


# -- curvature -------------------------------------------------------------------

@app.post("/curvature", response_model=S.CurvatureResponse)
def curvature(req: S.CurvatureRequest):
    with domain_errors():
        s = catalog.get_surface(req.surface)
        f = diffgeo.fundamental_forms(s, req.u, req.v)
        k1, k2, K, H = diffgeo.curvatures(s, req.u, req.v)
    return S.CurvatureResponse(surface=req.surface, E=f.E, F=f.F, G=f.G,
                               L=f.L, M=f.M, N=f.N, k1=k1, k2=k2, K=K, H=H)


# -- orbits ----------------------------------------------------------------------

@app.post("/orbit/elements", response_model=S.OrbitElementsResponse)
def orbit_elements(req: S.OrbitElementsRequest):
    with domain_errors():
        if req.h_apo is not None and req.h_peri is not None:
            if req.r_body is None:
                raise HTTPException(422, "altitudes need r_body")
            o = orbits.orbit_from_apsides(req.h_apo, req.h_peri, req.r_body, mu=req.mu)
        elif req.r_apo is not None and req.r_peri is not None:
            o = orbits.orbit_from_apsidal_radii(req.r_apo, req.r_peri, mu=req.mu)
        else:
            raise HTTPException(422, "give (h_apo, h_peri, r_body) or (r_apo, r_peri)")
        return S.OrbitElementsResponse(
            a=o.a, e=o.e, period_s=orbits.period(o),
            r_perigee=o.r_perigee, r_apogee=o.r_apogee,
            apsidal_speed_ratio=orbits.apsidal_ratio(o.e))


@app.post("/orbit/state", response_model=S.OrbitStateResponse)
def orbit_state(req: S.OrbitStateRequest):
    with domain_errors():
        o = orbits.Orbit(a=req.a, e=req.e, mu=req.mu)
        if (req.anomaly is None) == (req.radius is None):
            raise HTTPException(422, "give exactly one of anomaly and radius")
        if req.radius is not None:
            nu = orbits.true_anomaly_at_radius(o, req.radius)
        else:
            x = angle_in(req.anomaly, req.angle_unit)
            nu = orbits.anomaly_convert(req.anomaly_kind, "true", x, o.e)
        E = orbits.eccentric_from_true(nu, o.e)
        M = E - o.e * math.sin(E)
        r = orbits.radius_at_true_anomaly(o, nu)
        return S.OrbitStateResponse(
            nu=angle_out(nu, req.angle_unit), E=angle_out(E, req.angle_unit),
            M=angle_out(M, req.angle_unit), r=r, speed=orbits.vis_viva(o, r),
            t_since_perigee_s=M * orbits.period(o) / (2 * math.pi),
            angle_unit=req.angle_unit)


# -- datum fit -------------------------------------------------------------------

ARCSEC = math.pi / (180 * 3600)


@app.post("/datum/fit", response_model=S.DatumFitResponse)
def datum_fit(req: S.DatumFitRequest):
    with domain_errors():
        pairs = [(p.source, p.target) for p in req.pairs]
        params, res = lsq.bursa_wolf_fit(pairs)
        v = res.V.reshape(-1, 3)
    return S.DatumFitResponse(
        params=S.SevenParamsModel(
            tx=params.tx, ty=params.ty, tz=params.tz, scale_ppm=params.scale_ppm,
            rx_arcsec=params.rx / ARCSEC, ry_arcsec=params.ry / ARCSEC,
            rz_arcsec=params.rz / ARCSEC),
        rms_m=float(np.sqrt(np.mean(v ** 2))), s2=res.s2,
        residuals=[list(map(float, row)) for row in v])


@app.post("/datum/apply", response_model=S.DatumApplyResponse)
def datum_apply(req: S.DatumApplyRequest):
    with domain_errors():
        p = lsq.SevenParams(tx=req.params.tx, ty=req.params.ty, tz=req.params.tz,
                            scale=req.params.scale_ppm * 1e-6,
                            rx=req.params.rx_arcsec * ARCSEC,
                            ry=req.params.ry_arcsec * ARCSEC,
                            rz=req.params.rz_arcsec * ARCSEC)
        rows = []
        for pt in req.points:
            x, y, z = lsq.bursa_wolf_apply(p, [float(v) for v in pt.values])
            rows.append({"name": pt.name, "x": x, "y": y, "z": z})
    return S.DatumApplyResponse(rows=rows)


# -- adjustments ------------------------------------------------------------------

@app.post("/adjust/level", response_model=S.AdjustLevelResponse)
def adjust_level(req: S.AdjustLevelRequest):
    with domain_errors():
        diffs = [(o.frm, o.to, o.dh) if o.dist_km is None
                 else (o.frm, o.to, o.dh, o.dist_km) for o in req.observations]
        adj = lsq.adjust_leveling(diffs, dict(req.fixed))
    return S.AdjustLevelResponse(
        heights={k: float(v) for k, v in sorted(adj.heights.items())},
        sigmas_mm={k: float(v) * 1000 for k, v in sorted(adj.sigmas.items())},
        s2=adj.s2, mm_per_km=adj.mm_per_km)


@app.post("/adjust/triangle", response_model=S.AdjustTriangleResponse)
def adjust_triangle(req: S.AdjustTriangleRequest):
    unit = req.angle_unit
    with domain_errors():
        angles = [angle_in(v, unit) for v in req.angles]
        sig_angles = [angle_in(v, unit) for v in req.sigma_angles]
        adj = lsq.adjust_triangle(angles, sig_angles, list(req.sides),
                                  list(req.sigma_sides))
    return S.AdjustTriangleResponse(
        sides=[float(v) for v in adj.sides],
        angles=[angle_out(v, unit) for v in adj.angles],
        sigma_sides=[math.sqrt(float(v)) for v in np.diag(adj.cov_sides)],
        sigma_angles=[angle_out(math.sqrt(float(v)), unit) for v in np.diag(adj.cov_angles)],
        s2=adj.result.s2, iterations=adj.iterations, angle_unit=unit)


# -- fixtures -----------------------------------------------------------------------

@app.get("/fixtures", response_model=list[S.FixtureInfo])
def list_fixtures():
    return [S.FixtureInfo(id=c.id, title=c.title, provenance=c.provenance)
            for c in fixtures.all_cases()]


@app.post("/fixtures/run", response_model=S.FixtureRunResponse)
def run_fixtures(req: S.FixtureRunRequest):
    with domain_errors():
        results = fixtures.run_all(req.ids)
    outcomes = [
        S.FixtureOutcome(
            id=r.id, passed=r.passed, provenance=r.provenance,
            checks=[S.FixtureCheck(key=k, got=g, want=w, tol=t, ok=ok)
                    for k, g, w, t, ok in r.details])
        for r in results
    ]
    passed = sum(r.passed for r in results)
    return S.FixtureRunResponse(total=len(results), passed=passed,
                                failed=len(results) - passed, results=outcomes)
