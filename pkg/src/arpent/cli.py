"""Batch command-line front end.

A thin client over the HTTP service: every subcommand builds a request,
sends it to an in-process instance of the app (or to --server when given),
and formats the response as fixed-format text or CSV. Exit codes: 0 ok,
1 computation error (the service's message on stderr), 2 usage error.
"""

from __future__ import annotations

import csv
import io
import json
import sys
import warnings

import click
import httpx

DEFAULT_UNIT = "gr"


def make_client(server: str | None) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=30.0)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient
        from .service import app
        return TestClient(app)


def call(ctx, method: str, path: str, payload=None):
    client = ctx.obj["client"]
    try:
        r = client.request(method, path, json=payload)
    except httpx.HTTPError as e:
        click.echo(f"error: cannot reach service: {e}", err=True)
        sys.exit(1)
    if r.status_code >= 400:
        try:
            detail = r.json().get("detail", r.text)
        except Exception:
            detail = r.text
        click.echo(f"error: {detail}", err=True)
        sys.exit(1)
    return r.json()


def emit(ctx, data, text: str):
    if ctx.obj["json"]:
        click.echo(json.dumps(data, sort_keys=True, separators=(",", ":")))
    else:
        click.echo(text)


def fmt(v, nd=5):
    return f"{v:.{nd}f}"


@click.group()
@click.option("--server", default=None, metavar="URL",
              help="remote service URL (default: run in process)")
@click.option("--ellipsoids", "ell_registry", default=None, metavar="FILE",
              envvar="ARPENT_ELLIPSOIDS",
              help="JSON registry of extra ellipsoids {name: {a, e2}}")
@click.option("--json", "json_mode", is_flag=True, help="emit raw JSON responses")
@click.pass_context
def main(ctx, server, ell_registry, json_mode):
    """Geodetic computations from the command line."""
    ctx.ensure_object(dict)
    ctx.obj["client"] = make_client(server)
    ctx.obj["json"] = json_mode
    ctx.obj["ell_registry"] = ell_registry


def resolve_ell(ctx, name):
    """Preset name, resolved through the user registry file when given."""
    path = ctx.obj.get("ell_registry")
    if path and name:
        from .ellipsoid import load_registry
        table = load_registry(path)
        if name.lower() in table:
            e = table[name.lower()]
            return {"a": e.a, "e2": e.e2}
    return name


# -- convert ---------------------------------------------------------------------

@main.command()
@click.option("--ell", default="grs", show_default=True, help="ellipsoid preset")
@click.option("--to", "direction", type=click.Choice(["geodetic", "cartesian"]),
              required=True)
@click.option("--method", default="iter1", show_default=True,
              type=click.Choice(["iter1", "iter2", "iter3", "finite", "series"]))
@click.option("--unit", default=DEFAULT_UNIT, show_default=True,
              type=click.Choice(["gr", "deg", "rad", "dmgr"]))
@click.option("--csv", "csv_file", type=click.Path(exists=True), default=None,
              help="batch input: rows name,X,Y,Z or name,phi,lambda,h")
@click.argument("values", nargs=-1)
@click.pass_context
def convert(ctx, ell, direction, method, unit, csv_file, values):
    """Convert between Cartesian (X,Y,Z) and geodetic (phi,lambda,h)."""
    points = []
    if csv_file:
        with open(csv_file, newline="") as f:
            for row in csv.reader(f):
                if not row or row[0].startswith("#"):
                    continue
                points.append({"name": row[0], "values": [v.strip() for v in row[1:4]]})
    elif len(values) == 3:
        points.append({"name": "", "values": list(values)})
    else:
        raise click.UsageError("give three values or --csv FILE")
    data = call(ctx, "POST", "/convert", {
        "ellipsoid": resolve_ell(ctx, ell), "direction": f"to_{direction}",
        "method": method, "angle_unit": unit, "points": points})
    lines = []
    for row in data["rows"]:
        if direction == "geodetic":
            lines.append(",".join([row["name"], fmt(row["phi"]), fmt(row["lam"]),
                                   fmt(row["h"], 4), unit]))
        else:
            lines.append(",".join([row["name"], fmt(row["x"], 4), fmt(row["y"], 4),
                                   fmt(row["z"], 4)]))
    header = "name,phi,lambda,h,unit" if direction == "geodetic" else "name,X,Y,Z"
    emit(ctx, data, "\n".join([header] + lines))


# -- arc -------------------------------------------------------------------------

@main.command()
@click.option("--ell", default="grs", show_default=True)
@click.option("--phi", default=None, help="latitude (e.g. 90d, 40.9193)")
@click.option("--beta", type=float, default=None, help="arc length in metres (inverse)")
@click.option("--unit", default=DEFAULT_UNIT, show_default=True,
              type=click.Choice(["gr", "deg", "rad", "dmgr"]))
@click.pass_context
def arc(ctx, ell, phi, beta, unit):
    """Meridian arc length from the equator, or its inverse."""
    data = call(ctx, "POST", "/arc", {"ellipsoid": resolve_ell(ctx, ell),
                                      "angle_unit": unit, "phi": phi, "beta_m": beta})
    emit(ctx, data, f"phi={fmt(data['phi'])} {unit}  beta={fmt(data['beta_m'], 4)} m")


# -- project ---------------------------------------------------------------------

@main.command()
@click.option("--map", "map_name", required=True,
              type=click.Choice(["lambert", "utm", "mercator", "stereo", "gauss"]))
@click.option("--dir", "direction", default="fwd", show_default=True,
              type=click.Choice(["fwd", "inv"]))
@click.option("--zone", default=None, help="Lambert zone name")
@click.option("--registry", default=None, type=click.Path(exists=True),
              help="zone registry CSV overriding the built-in one")
@click.option("--ell", default=None, help="ellipsoid preset (utm/gauss)")
@click.option("--lambda0", default=None, help="central meridian (utm)")
@click.option("--phi0", default=None, help="origin parallel (gauss)")
@click.option("--radius", type=float, default=None, help="sphere radius (mercator/stereo)")
@click.option("--unit", default=DEFAULT_UNIT, show_default=True,
              type=click.Choice(["gr", "deg", "rad", "dmgr"]))
@click.option("--csv", "csv_file", type=click.Path(exists=True), default=None)
@click.argument("values", nargs=-1)
@click.pass_context
def project(ctx, map_name, direction, zone, registry, ell, lambda0, phi0, radius, unit,
            csv_file, values):
    """Plane representations: forward or inverse."""
    names = {"utm": "utm_truncated", "stereo": "polar_stereo", "gauss": "gauss_sphere",
             "lambert": "lambert", "mercator": "mercator"}
    points = []
    if csv_file:
        with open(csv_file, newline="") as f:
            for row in csv.reader(f):
                if not row or row[0].startswith("#"):
                    continue
                points.append({"name": row[0], "values": [v.strip() for v in row[1:3]]})
    elif len(values) == 2:
        points.append({"name": "", "values": list(values)})
    else:
        raise click.UsageError("give two values or --csv FILE")
    data = call(ctx, "POST", "/project", {
        "map": names[map_name], "direction": "forward" if direction == "fwd" else "inverse",
        "zone": zone, "registry_file": registry, "ellipsoid": resolve_ell(ctx, ell),
        "lambda0": lambda0, "phi0": phi0,
        "radius": radius, "angle_unit": unit, "points": points})
    lines = []
    for row in data["rows"]:
        parts = [row["name"]]
        if row.get("x") is not None:
            parts += [fmt(row["x"], 4), fmt(row["y"], 4)]
        if row.get("phi") is not None:
            parts += [fmt(row["phi"]), fmt(row["lam"])]
        if row.get("gamma") is not None:
            parts.append("gamma=" + fmt(row["gamma"]))
        if row.get("module") is not None:
            parts.append("m=" + fmt(row["module"], 9))
        lines.append(",".join(parts))
    emit(ctx, data, "\n".join(lines))


# -- reduce ----------------------------------------------------------------------

@main.command()
@click.option("--dp", type=float, default=None, help="slope distance, m")
@click.option("--ha", type=float, default=None)
@click.option("--hb", type=float, default=None)
@click.option("--site", default=None, help="site angle (unit-tagged, e.g. '0.3523 gr')")
@click.option("--module", type=float, default=None, help="linear module of the plane map")
@click.option("--alteration", type=float, default=None, help="linear alteration cm/km")
@click.option("--radius", type=float, default=6378000.0, show_default=True)
@click.option("--csv", "csv_file", type=click.Path(exists=True), default=None,
              help="batch rows name,dp,ha,hb[,site]")
@click.pass_context
def reduce(ctx, dp, ha, hb, site, module, alteration, radius, csv_file):
    """Distance reductions: slope -> chord -> ellipsoid arc -> plane."""
    obs = []
    if csv_file:
        with open(csv_file, newline="") as f:
            for row in csv.reader(f):
                if not row or row[0].startswith("#"):
                    continue
                o = {"name": row[0], "dp": float(row[1]), "h_a": float(row[2]),
                     "h_b": float(row[3])}
                if len(row) > 4 and row[4].strip():
                    o["site_angle"] = row[4].strip()
                obs.append(o)
    elif dp is not None and ha is not None and hb is not None:
        o = {"name": "", "dp": dp, "h_a": ha, "h_b": hb}
        if site is not None:
            o["site_angle"] = site
        obs.append(o)
    else:
        raise click.UsageError("give --dp --ha --hb or --csv FILE")
    data = call(ctx, "POST", "/reduce", {
        "observations": obs, "radius": radius,
        "module": module, "alteration_cm_per_km": alteration})
    lines = ["name,D0,De,De_corr,Dr"]
    for row in data["rows"]:
        dr = fmt(row["dr"], 4) if row.get("dr") is not None else ""
        lines.append(",".join([row["name"], fmt(row["d0"], 4), fmt(row["de"], 4),
                               fmt(row["de_corrections"], 4), dr]))
    emit(ctx, data, "\n".join(lines))


# -- astro -----------------------------------------------------------------------

@main.group()
def astro():
    """Spherical astronomy."""


@astro.command()
@click.option("--phi", required=True)
@click.option("--delta", required=True)
@click.option("--hour-angle", "hour_angle", default=None,
              help="hour angle ('4h23mn26.82s' or a number in --unit)")
@click.option("--hsg0", default=None, help="Greenwich sidereal time at 0h TU")
@click.option("--elapsed", type=float, default=None, help="elapsed TU hours")
@click.option("--longitude", default=None, help="east longitude in hours")
@click.option("--alpha", default=None, help="right ascension in hours")
@click.option("--no-rate", is_flag=True, help="skip the sidereal rate factor")
@click.option("--unit", default="gr", show_default=True,
              type=click.Choice(["gr", "deg", "rad", "dmgr"]))
@click.pass_context
def position(ctx, phi, delta, hour_angle, hsg0, elapsed, longitude, alpha, no_rate, unit):
    """Azimuth and zenith distance of a star."""
    payload = {"phi": phi, "delta": delta, "angle_unit": unit}
    if hour_angle is not None:
        payload["hour_angle"] = hour_angle
    elif hsg0 is not None:
        payload["sidereal"] = {"hsg0": hsg0, "elapsed_tu_hours": elapsed or 0.0,
                               "lambda_hours": longitude or 0.0, "alpha": alpha or 0.0,
                               "apply_rate": not no_rate}
    else:
        raise click.UsageError("give --hour-angle or the sidereal chain options")
    data = call(ctx, "POST", "/astro/position", payload)
    extra = f"  HSL={data['hsl_hours']:.6f} h" if data.get("hsl_hours") is not None else ""
    emit(ctx, data, f"AH={fmt(data['hour_angle'])} {unit}  Az={fmt(data['azimuth'])} {unit}"
                    f"  z={fmt(data['zenith_distance'])} {unit}{extra}")


@astro.command("set")
@click.option("--phi", required=True)
@click.option("--delta", required=True)
@click.option("--unit", default="gr", show_default=True,
              type=click.Choice(["gr", "deg", "rad", "dmgr"]))
@click.pass_context
def astro_set_cmd(ctx, phi, delta, unit):
    """Hour angle of setting: cos AH = -tan(phi) tan(delta)."""
    data = call(ctx, "POST", "/astro/set", {"phi": phi, "delta": delta, "angle_unit": unit})
    emit(ctx, data, f"AH_set={fmt(data['hour_angle_set'])} {unit} = {data['hours']:.6f} h")


@astro.command()
@click.option("--phi", required=True)
@click.option("--delta", required=True)
@click.option("--unit", default="gr", show_default=True,
              type=click.Choice(["gr", "deg", "rad", "dmgr"]))
@click.pass_context
def culmination(ctx, phi, delta, unit):
    """Altitudes at the meridian transits and visibility flags."""
    data = call(ctx, "POST", "/astro/culmination",
                {"phi": phi, "delta": delta, "angle_unit": unit})
    flags = []
    if data["never_sets"]:
        flags.append("never-sets")
    if data["never_rises"]:
        flags.append("never-rises")
    if data["zenith_culmination"]:
        flags.append("zenith")
    emit(ctx, data, f"h_upper={fmt(data['h_upper'])} {unit}  "
                    f"h_lower={fmt(data['h_lower'])} {unit}"
                    + (("  [" + ",".join(flags) + "]") if flags else ""))


@astro.command()
@click.option("--element", "-e", "elements", multiple=True, metavar="NAME=VALUE",
              help="known elements, e.g. -e a=0.8 -e b=0.6 -e C='90 deg'")
@click.option("--unit", default="gr", show_default=True,
              type=click.Choice(["gr", "deg", "rad", "dmgr"]))
@click.pass_context
def triangle(ctx, elements, unit):
    """Solve a spherical triangle from three elements."""
    payload = {"angle_unit": unit}
    for item in elements:
        if "=" not in item:
            raise click.UsageError(f"bad element {item!r}, use NAME=VALUE")
        k, v = item.split("=", 1)
        if k not in ("A", "B", "C", "a", "b", "c"):
            raise click.UsageError(f"unknown element {k!r}")
        payload[k] = v
    data = call(ctx, "POST", "/astro/triangle", payload)
    emit(ctx, data,
         "  ".join(f"{k}={fmt(data[k])}" for k in ("A", "B", "C", "a", "b", "c"))
         + f"  excess={fmt(data['excess'])} {unit}")


# -- curvature --------------------------------------------------------------------

@main.command()
@click.option("--surface", required=True, help="catalog surface name")
@click.option("--u", type=float, required=True)
@click.option("--v", type=float, required=True)
@click.pass_context
def curvature(ctx, surface, u, v):
    """Fundamental forms and curvatures of a catalog surface."""
    data = call(ctx, "POST", "/curvature", {"surface": surface, "u": u, "v": v})
    emit(ctx, data,
         f"E={data['E']:.9g} F={data['F']:.9g} G={data['G']:.9g}  "
         f"L={data['L']:.9g} M={data['M']:.9g} N={data['N']:.9g}\n"
         f"k1={data['k1']:.9g} k2={data['k2']:.9g} K={data['K']:.9g} H={data['H']:.9g}")


# -- orbit ------------------------------------------------------------------------

@main.group()
def orbit():
    """Two-body orbit computations."""


@orbit.command()
@click.option("--h-apo", type=float, default=None)
@click.option("--h-peri", type=float, default=None)
@click.option("--r-body", type=float, default=None)
@click.option("--r-apo", type=float, default=None)
@click.option("--r-peri", type=float, default=None)
@click.option("--ua", type=float, default=None,
              help="interpret --r-apo/--r-peri in astronomical units of this many metres")
@click.option("--gm", type=float, default=3.986005e14, show_default=True)
@click.pass_context
def elements(ctx, h_apo, h_peri, r_body, r_apo, r_peri, ua, gm):
    """Orbit elements from apsides."""
    if ua is not None:
        r_apo = r_apo * ua if r_apo is not None else None
        r_peri = r_peri * ua if r_peri is not None else None
    data = call(ctx, "POST", "/orbit/elements", {
        "mu": gm, "r_body": r_body, "h_apo": h_apo, "h_peri": h_peri,
        "r_apo": r_apo, "r_peri": r_peri})
    emit(ctx, data, f"a={data['a']:.3f} m  e={data['e']:.9f}  T={data['period_s']:.3f} s"
                    f"  vA/vP={data['apsidal_speed_ratio']:.6f}")


@orbit.command()
@click.option("--a", "a_", type=float, required=True)
@click.option("--e", "e_", type=float, required=True)
@click.option("--gm", type=float, default=3.986005e14, show_default=True)
@click.option("--kind", default="true", show_default=True,
              type=click.Choice(["true", "eccentric", "mean"]))
@click.option("--anomaly", default=None)
@click.option("--radius", type=float, default=None)
@click.option("--unit", default="gr", show_default=True,
              type=click.Choice(["gr", "deg", "rad", "dmgr"]))
@click.pass_context
def state(ctx, a_, e_, gm, kind, anomaly, radius, unit):
    """Anomalies, radius, speed and time since perigee."""
    data = call(ctx, "POST", "/orbit/state", {
        "a": a_, "e": e_, "mu": gm, "anomaly_kind": kind,
        "anomaly": anomaly, "radius": radius, "angle_unit": unit})
    emit(ctx, data, f"nu={fmt(data['nu'])} {unit}  E={fmt(data['E'])} {unit}  "
                    f"M={fmt(data['M'])} {unit}  r={data['r']:.3f} m  "
                    f"v={data['speed']:.4f} m/s  t={data['t_since_perigee_s']:.3f} s")


# -- datum ------------------------------------------------------------------------

def read_pairs_csv(path):
    pairs = []
    with open(path, newline="") as f:
        for row in csv.reader(f):
            if not row or row[0].startswith("#") or row[0] == "name":
                continue
            pairs.append({"name": row[0],
                          "source": [float(v) for v in row[1:4]],
                          "target": [float(v) for v in row[4:7]]})
    return pairs


@main.command("fit-datum")
@click.option("--csv", "csv_file", type=click.Path(exists=True), required=True,
              help="common points: name,x1,y1,z1,x2,y2,z2")
@click.option("--save", type=click.Path(), default=None, help="write params JSON here")
@click.pass_context
def fit_datum(ctx, csv_file, save):
    """Fit the Bursa-Wolf 7-parameter transformation to common points."""
    data = call(ctx, "POST", "/datum/fit", {"pairs": read_pairs_csv(csv_file)})
    if save:
        with open(save, "w") as f:
            json.dump(data["params"], f, indent=2, sort_keys=True)
    p = data["params"]
    emit(ctx, data,
         f"T=({p['tx']:+.4f}, {p['ty']:+.4f}, {p['tz']:+.4f}) m  "
         f"scale={p['scale_ppm']:+.6f} ppm\n"
         f"R=({p['rx_arcsec']:+.6f}, {p['ry_arcsec']:+.6f}, {p['rz_arcsec']:+.6f}) arcsec  "
         f"rms={data['rms_m'] * 1000:.2f} mm")


@main.command("apply-datum")
@click.option("--params", "params_file", type=click.Path(exists=True), required=True)
@click.option("--csv", "csv_file", type=click.Path(exists=True), required=True,
              help="points: name,x,y,z")
@click.pass_context
def apply_datum(ctx, params_file, csv_file):
    """Transform points with saved Bursa-Wolf parameters."""
    with open(params_file) as f:
        params = json.load(f)
    points = []
    with open(csv_file, newline="") as f:
        for row in csv.reader(f):
            if not row or row[0].startswith("#") or row[0] == "name":
                continue
            points.append({"name": row[0], "values": [float(v) for v in row[1:4]]})
    data = call(ctx, "POST", "/datum/apply", {"params": params, "points": points})
    lines = ["name,X,Y,Z"]
    for row in data["rows"]:
        lines.append(",".join([row["name"], fmt(row["x"], 4), fmt(row["y"], 4),
                               fmt(row["z"], 4)]))
    emit(ctx, data, "\n".join(lines))


# -- adjustments --------------------------------------------------------------------

@main.command("adjust-level")
@click.option("--csv", "csv_file", type=click.Path(exists=True), required=True,
              help="observations: from,to,dh[,dist_km]")
@click.option("--fixed", multiple=True, required=True, metavar="NODE=H",
              help="fixed heights, repeatable")
@click.pass_context
def adjust_level(ctx, csv_file, fixed):
    """Adjust a leveling network."""
    obs = []
    with open(csv_file, newline="") as f:
        for row in csv.reader(f):
            if not row or row[0].startswith("#") or row[0] == "from":
                continue
            o = {"frm": row[0].strip(), "to": row[1].strip(), "dh": float(row[2])}
            if len(row) > 3 and row[3].strip():
                o["dist_km"] = float(row[3])
            obs.append(o)
    fixed_map = {}
    for item in fixed:
        node, h = item.split("=", 1)
        fixed_map[node.strip()] = float(h)
    data = call(ctx, "POST", "/adjust/level", {"observations": obs, "fixed": fixed_map})
    lines = ["node,H,sigma_mm"]
    for node in sorted(data["heights"]):
        lines.append(f"{node},{data['heights'][node]:.4f},{data['sigmas_mm'][node]:.2f}")
    tail = f"s2={data['s2']:.6e}"
    if data.get("mm_per_km") is not None:
        tail += f"  precision={data['mm_per_km']:.2f} mm/km"
    emit(ctx, data, "\n".join(lines) + "\n" + tail)


@main.command("adjust-triangle")
@click.option("--angles", nargs=3, required=True)
@click.option("--sigma-angles", nargs=3, required=True)
@click.option("--sides", nargs=3, required=True,
              help="observed sides; '-' marks an unobserved one")
@click.option("--sigma-sides", nargs=3, required=True)
@click.option("--unit", default="gr", show_default=True,
              type=click.Choice(["gr", "deg", "rad", "dmgr"]))
@click.pass_context
def adjust_triangle(ctx, angles, sigma_angles, sides, sigma_sides, unit):
    """Compensate a plane triangle observed by angles and sides."""
    def opt(v):
        return None if v.strip() in ("-", "") else float(v)
    data = call(ctx, "POST", "/adjust/triangle", {
        "angles": list(angles), "sigma_angles": list(sigma_angles),
        "sides": [opt(v) for v in sides], "sigma_sides": [opt(v) for v in sigma_sides],
        "angle_unit": unit})
    emit(ctx, data,
         "sides=" + " ".join(fmt(v) for v in data["sides"])
         + "\nangles=" + " ".join(fmt(v) for v in data["angles"]) + f" {unit}"
         + f"\ns2={data['s2']:.5f}  iterations={data['iterations']}")


# -- fixtures -------------------------------------------------------------------------

@main.group()
def fixtures():
    """Golden-value fixture suite covering every worked exercise."""


@fixtures.command("list")
@click.pass_context
def fixtures_list(ctx):
    data = call(ctx, "GET", "/fixtures")
    lines = [f"{info['id']:28s} [{info['provenance']}] {info['title']}" for info in data]
    emit(ctx, data, "\n".join(lines))


@fixtures.command("run")
@click.option("--all", "run_all_flag", is_flag=True, help="run the whole suite")
@click.argument("ids", nargs=-1)
@click.pass_context
def fixtures_run(ctx, run_all_flag, ids):
    """Run fixture cases by id, or the whole suite with --all."""
    if not run_all_flag and not ids:
        raise click.UsageError("give fixture ids or --all")
    payload = {"ids": None if run_all_flag else list(ids)}
    data = call(ctx, "POST", "/fixtures/run", payload)
    lines = []
    for r in data["results"]:
        status = "PASS" if r["passed"] else "FAIL"
        lines.append(f"{status} {r['id']}")
        for chk in r["checks"]:
            if not chk["ok"]:
                lines.append(f"     {chk['key']}: got {chk['got']!r}, "
                             f"want {chk['want']} ± {chk['tol']}")
    lines.append(f"{data['passed']}/{data['total']} passed")
    emit(ctx, data, "\n".join(lines))
    if data["failed"]:
        sys.exit(1)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
def serve(host, port):
    """Run the HTTP service (requires uvicorn)."""
    try:
        import uvicorn
    except ImportError:
        raise click.ClickException("uvicorn is not installed (pip install arpent[server])")
    from .service import app
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
