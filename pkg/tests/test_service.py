import math

import pytest
from fastapi.testclient import TestClient

from arpent.service import app

client = TestClient(app)
GR = math.pi / 200


def test_health_and_registries():
    r = client.get("/health")
    assert r.status_code == 200 and r.json()["status"] == "ok"
    ells = client.get("/ellipsoids").json()
    assert {e["name"] for e in ells} == {"clarke1880", "grs"}
    zones = client.get("/zones").json()
    assert {z["name"] for z in zones} == {"nord_tunisie", "sud_tunisie"}
    nord = next(z for z in zones if z["name"] == "nord_tunisie")
    assert nord["phi0_gr"] == pytest.approx(40.0)


def test_convert_round_trip():
    r = client.post("/convert", json={
        "ellipsoid": "grs", "direction": "to_geodetic", "method": "finite",
        "points": [{"name": "M", "values": [4300244.860, 1062094.681, 4574775.629]}]})
    assert r.status_code == 200
    row = r.json()["rows"][0]
    assert row["phi"] == pytest.approx(51.24094, abs=5e-6)
    assert row["lam"] == pytest.approx(15.41503, abs=5e-6)
    assert row["h"] == pytest.approx(715.182, abs=1e-3)
    r2 = client.post("/convert", json={
        "ellipsoid": "grs", "direction": "to_cartesian", "angle_unit": "gr",
        "points": [{"name": "M", "values": [row["phi"], row["lam"], row["h"]]}]})
    back = r2.json()["rows"][0]
    assert back["x"] == pytest.approx(4300244.860, abs=1e-4)
    assert back["z"] == pytest.approx(4574775.629, abs=1e-4)


def test_convert_angle_strings():
    r = client.post("/convert", json={
        "ellipsoid": "clarke1880", "direction": "to_cartesian", "angle_unit": "gr",
        "points": [{"values": ["0", "0 deg", 0.0]}]})
    assert r.json()["rows"][0]["x"] == pytest.approx(6378249.20)


def test_convert_errors():
    r = client.post("/convert", json={"ellipsoid": "wgs1000", "direction": "to_geodetic",
                                      "points": []})
    assert r.status_code == 422
    # the polar axis is a handled shortcut, not an error
    r = client.post("/convert", json={
        "ellipsoid": "grs", "direction": "to_geodetic",
        "points": [{"values": [0.0, 0.0, 6400000.0]}]})
    assert r.status_code == 200
    assert r.json()["rows"][0]["phi"] == pytest.approx(100.0)
    # ambiguous deep-interior point through the finite method
    r = client.post("/convert", json={
        "ellipsoid": "grs", "direction": "to_geodetic", "method": "finite",
        "points": [{"values": [20000.0, 0.0, 0.0]}]})
    assert r.status_code == 422
    assert "inside the ellipsoid" in r.json()["detail"]


def test_arc_endpoint_both_ways():
    r = client.post("/arc", json={"ellipsoid": "grs", "phi": "90 deg", "angle_unit": "gr"})
    beta = r.json()["beta_m"]
    assert beta == pytest.approx(10001965.729, abs=1e-3)
    r2 = client.post("/arc", json={"ellipsoid": "grs", "beta_m": beta})
    assert r2.json()["phi"] == pytest.approx(100.0, abs=1e-9)
    assert client.post("/arc", json={"ellipsoid": "grs"}).status_code == 422


def test_project_lambert_and_utm():
    r = client.post("/project", json={
        "map": "lambert", "zone": "sud_tunisie", "direction": "inverse",
        "points": [{"values": [363044.79, 407020.09]}]})
    assert r.json()["rows"][0]["lam"] == pytest.approx(9.3474734, abs=1e-6)
    r = client.post("/project", json={
        "map": "utm_truncated", "lambda0": "9 deg", "ellipsoid": "clarke1880",
        "points": [{"values": [40.9193, 11.9656]}]})
    row = r.json()["rows"][0]
    assert row["x"] == pytest.approx(157833.48, abs=0.02)
    assert row["y"] == pytest.approx(4078512.97, abs=0.02)
    # inverse on the parallel: values are (X, phi)
    r = client.post("/project", json={
        "map": "utm_truncated", "lambda0": "9 deg", "ellipsoid": "clarke1880",
        "direction": "inverse", "points": [{"values": [160595.98, 40.9193]}]})
    assert r.json()["rows"][0]["lam"] == pytest.approx(12.0, abs=1e-5)
    assert client.post("/project", json={"map": "lambert", "points": []}).status_code == 422
    assert client.post("/project", json={
        "map": "lambert", "zone": "nowhere", "points": []}).status_code == 422


def test_project_sphere_charts():
    r = client.post("/project", json={
        "map": "mercator", "radius": 1000.0, "angle_unit": "rad",
        "points": [{"values": [0.0, 0.5]}]})
    assert r.json()["rows"][0]["x"] == pytest.approx(500.0)
    r = client.post("/project", json={
        "map": "polar_stereo", "radius": 1.0, "angle_unit": "deg",
        "points": [{"values": [90.0, 10.0]}]})
    assert r.json()["rows"][0]["x"] == pytest.approx(0.0, abs=1e-12)
    r = client.post("/project", json={
        "map": "gauss_sphere", "phi0": "36 deg", "ellipsoid": "clarke1880",
        "angle_unit": "deg", "points": [{"values": [36.0, 1.0]}]})
    assert r.json()["rows"][0]["module"] == pytest.approx(1.0, abs=1e-12)


def test_reduce_endpoint():
    r = client.post("/reduce", json={
        "observations": [{"name": "AB", "dp": 20130.858, "h_a": 235.07, "h_b": 507.75}],
        "module": 0.999850371})
    row = r.json()["rows"][0]
    assert row["de"] == pytest.approx(20127.8474, abs=2e-4)
    assert row["dr"] == pytest.approx(20124.8357, abs=2e-4)
    r = client.post("/reduce", json={
        "observations": [{"dp": 10.0, "h_a": 0.0, "h_b": 50.0}]})
    assert r.status_code == 422


def test_astro_endpoints():
    r = client.post("/astro/position", json={
        "phi": 38, "delta": 89, "hour_angle": "4h23mn26.82s"})
    body = r.json()
    assert body["azimuth"] == pytest.approx(358.8355, abs=1e-3)
    assert body["zenith_distance"] == pytest.approx(51.5968, abs=1e-3)
    r = client.post("/astro/set", json={"phi": 56, "delta": 5})
    assert r.json()["hour_angle_set"] == pytest.approx(
        math.degrees(math.acos(-math.tan(math.radians(56)) * math.tan(math.radians(5)))),
        abs=1e-9)
    r = client.post("/astro/set", json={"phi": 56, "delta": 80})
    assert r.status_code == 422 and "never sets" in r.json()["detail"]
    r = client.post("/astro/culmination", json={"phi": "36°54'", "delta": 89})
    body = r.json()
    assert body["h_upper"] == pytest.approx(37.9, abs=1e-9)
    assert body["h_lower"] == pytest.approx(35.9, abs=1e-9)
    assert body["never_sets"] is True
    r = client.post("/astro/triangle", json={"a": 100.0, "b": 100.0, "c": 100.0})
    assert r.json()["A"] == pytest.approx(100.0)
    r = client.post("/astro/triangle", json={"a": 50.0, "b": 60.0, "A": 40.0})
    assert r.status_code == 422


def test_curvature_endpoint():
    r = client.post("/curvature", json={"surface": "enneper", "u": 0.5, "v": -0.5})
    body = r.json()
    assert body["H"] == pytest.approx(0.0, abs=1e-9)
    assert body["E"] == pytest.approx((1 + 0.5) ** 2, rel=1e-12)
    assert client.post("/curvature", json={"surface": "moebius", "u": 0, "v": 0}).status_code == 422


def test_orbit_endpoints():
    r = client.post("/orbit/elements", json={
        "h_apo": 1100e3, "h_peri": 800e3, "r_body": 6371000.0})
    body = r.json()
    assert body["a"] == 7321000.0
    assert body["period_s"] == pytest.approx(6233.9966, abs=2e-3)
    r = client.post("/orbit/state", json={
        "a": 7321000.0, "e": 300000 / 14642000, "radius": 7183000.0})
    body = r.json()
    assert body["nu"] == pytest.approx(23.5384, abs=1e-3)
    assert body["t_since_perigee_s"] == pytest.approx(391.596, abs=1e-2)
    r = client.post("/orbit/state", json={"a": 7.0e6, "e": 0.0, "radius": 1.0})
    assert r.status_code == 422


def test_datum_endpoints():
    from arpent.fixtures import S1_TABLE, S2_TABLE, DATUM_TARGETS, DATUM_GOLDEN
    pairs = [{"name": str(i + 1), "source": list(s1), "target": list(s2)}
             for i, (s1, s2) in enumerate(zip(S1_TABLE, S2_TABLE))]
    r = client.post("/datum/fit", json={"pairs": pairs})
    body = r.json()
    assert body["rms_m"] < 0.005
    r2 = client.post("/datum/apply", json={
        "params": body["params"],
        "points": [{"name": k, "values": list(v)} for k, v in DATUM_TARGETS.items()]})
    for row in r2.json()["rows"]:
        want = DATUM_GOLDEN[row["name"]]
        assert abs(row["x"] - want[0]) < 1e-3
        assert abs(row["y"] - want[1]) < 1e-3
        assert abs(row["z"] - want[2]) < 1e-3


def test_adjust_endpoints():
    r = client.post("/adjust/level", json={
        "observations": [
            {"frm": "A", "to": "C", "dh": 1.878, "dist_km": 6.44},
            {"frm": "A", "to": "D", "dh": 3.831, "dist_km": 3.22},
            {"frm": "C", "to": "D", "dh": 1.954, "dist_km": 3.22},
            {"frm": "A", "to": "B", "dh": 0.332, "dist_km": 6.44},
            {"frm": "B", "to": "D", "dh": 3.530, "dist_km": 3.22},
            {"frm": "B", "to": "C", "dh": 1.545, "dist_km": 6.44}],
        "fixed": {"A": 3.048}})
    body = r.json()
    assert body["heights"]["D"] == pytest.approx(6.8854, abs=2e-4)
    assert body["mm_per_km"] == pytest.approx(6.311, abs=0.02)
    r = client.post("/adjust/triangle", json={
        "angles": [43.77160, 98.39043, 57.83858],
        "sigma_angles": [3.1e-4, 3.1e-4, 3.1e-4],
        "sides": [333.841, 525.847, 414.815],
        "sigma_sides": [0.005, 0.010, 0.005]})
    body = r.json()
    assert body["sides"][0] == pytest.approx(333.83908, abs=2e-5)
    assert body["angles"][0] == pytest.approx(43.771433, abs=2e-5)
    r = client.post("/adjust/level", json={
        "observations": [{"frm": "A", "to": "B", "dh": 1.0}], "fixed": {}})
    assert r.status_code == 422


def test_fixture_endpoints():
    r = client.get("/fixtures")
    infos = r.json()
    assert len(infos) >= 40
    assert all(i["provenance"] in ("paper", "derived") for i in infos)
    r = client.post("/fixtures/run", json={"ids": ["utm.p1.pointA", "orbit.halley"]})
    body = r.json()
    assert body["total"] == 2 and body["failed"] == 0
    r = client.post("/fixtures/run", json={})
    body = r.json()
    assert body["total"] >= 40 and body["failed"] == 0
    r = client.post("/fixtures/run", json={"ids": ["no.such.case"]})
    assert r.status_code == 422
