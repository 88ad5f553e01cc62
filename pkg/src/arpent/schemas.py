"""Pydantic request/response models of the service."""

from __future__ import annotations

from typing import Literal, Optional, Union

from pydantic import BaseModel, Field

AngleValue = Union[float, str]   # number in the request's angle_unit, or "6h37mn19.72s" / "36°54'"
AngleUnit = Literal["gr", "deg", "rad", "dmgr"]


class EllipsoidSpec(BaseModel):
    a: float
    e2: float


class EllipsoidInfo(BaseModel):
    name: str
    a: float
    e2: float
    b: float
    f: float


class ZoneInfo(BaseModel):
    name: str
    a: float
    e2: float
    phi0_gr: float
    lambda0_gr: float
    k0: float
    x0: float
    y0: float


class PointIn(BaseModel):
    name: str = ""
    values: list[AngleValue] = Field(min_length=2, max_length=3)


class ConvertRequest(BaseModel):
    ellipsoid: Union[str, EllipsoidSpec] = "grs"
    direction: Literal["to_geodetic", "to_cartesian"]
    method: Literal["iter1", "iter2", "iter3", "finite", "series"] = "iter1"
    angle_unit: AngleUnit = "gr"
    eps: float = 1e-13
    points: list[PointIn]


class ConvertRow(BaseModel):
    name: str = ""
    phi: Optional[float] = None
    lam: Optional[float] = None
    h: Optional[float] = None
    x: Optional[float] = None
    y: Optional[float] = None
    z: Optional[float] = None
    iterations: Optional[int] = None
    bound: Optional[int] = None


class ConvertResponse(BaseModel):
    angle_unit: AngleUnit
    rows: list[ConvertRow]


class ArcRequest(BaseModel):
    ellipsoid: Union[str, EllipsoidSpec] = "grs"
    angle_unit: AngleUnit = "gr"
    phi: Optional[AngleValue] = None
    beta_m: Optional[float] = None   # inverse problem when given


class ArcResponse(BaseModel):
    phi: float
    beta_m: float
    angle_unit: AngleUnit


class ProjectRequest(BaseModel):
    map: Literal["lambert", "utm_truncated", "mercator", "polar_stereo", "gauss_sphere"]
    direction: Literal["forward", "inverse"] = "forward"
    angle_unit: AngleUnit = "gr"
    zone: Optional[str] = None               # lambert
    registry_file: Optional[str] = None
    ellipsoid: Union[str, EllipsoidSpec, None] = None
    lambda0: Optional[AngleValue] = None     # utm_truncated
    phi0: Optional[AngleValue] = None        # gauss_sphere
    radius: Optional[float] = None           # sphere charts
    points: list[PointIn]


class ProjectRow(BaseModel):
    name: str = ""
    x: Optional[float] = None
    y: Optional[float] = None
    phi: Optional[float] = None
    lam: Optional[float] = None
    gamma: Optional[float] = None    # meridian convergence where defined
    module: Optional[float] = None


class ProjectResponse(BaseModel):
    angle_unit: AngleUnit
    rows: list[ProjectRow]


class ReduceObservation(BaseModel):
    name: str = ""
    dp: float
    h_a: float
    h_b: float
    site_angle: Optional[AngleValue] = None


class ReduceRequest(BaseModel):
    observations: list[ReduceObservation]
    angle_unit: AngleUnit = "gr"
    radius: float = 6378000.0
    module: Optional[float] = None
    alteration_cm_per_km: Optional[float] = None


class ReduceRow(BaseModel):
    name: str = ""
    d0: float
    de: float
    de_corrections: float
    d0_site: Optional[float] = None
    dr: Optional[float] = None


class ReduceResponse(BaseModel):
    rows: list[ReduceRow]


class SiderealSpec(BaseModel):
    hsg0: AngleValue                  # hours
    elapsed_tu_hours: float
    lambda_hours: AngleValue
    alpha: AngleValue
    apply_rate: bool = True


class AstroPositionRequest(BaseModel):
    phi: AngleValue
    delta: AngleValue
    angle_unit: AngleUnit = "deg"
    hour_angle: Optional[AngleValue] = None     # hours string or angle in unit
    sidereal: Optional[SiderealSpec] = None


class AstroPositionResponse(BaseModel):
    hour_angle: float
    azimuth: float
    zenith_distance: float
    altitude: float
    hsl_hours: Optional[float] = None
    angle_unit: AngleUnit


class AstroSetRequest(BaseModel):
    phi: AngleValue
    delta: AngleValue
    angle_unit: AngleUnit = "deg"


class AstroSetResponse(BaseModel):
    hour_angle_set: float
    hours: float
    angle_unit: AngleUnit


class CulminationRequest(BaseModel):
    phi: AngleValue
    delta: AngleValue
    angle_unit: AngleUnit = "deg"


class CulminationResponse(BaseModel):
    h_upper: float
    h_lower: float
    never_sets: bool
    never_rises: bool
    zenith_culmination: bool
    angle_unit: AngleUnit


class TriangleRequest(BaseModel):
    A: Optional[AngleValue] = None
    B: Optional[AngleValue] = None
    C: Optional[AngleValue] = None
    a: Optional[AngleValue] = None
    b: Optional[AngleValue] = None
    c: Optional[AngleValue] = None
    angle_unit: AngleUnit = "gr"


class TriangleResponse(BaseModel):
    A: float
    B: float
    C: float
    a: float
    b: float
    c: float
    excess: float
    angle_unit: AngleUnit


class CurvatureRequest(BaseModel):
    surface: str
    u: float
    v: float


class CurvatureResponse(BaseModel):
    surface: str
    E: float
    F: float
    G: float
    L: float
    M: float
    N: float
    k1: float
    k2: float
    K: float
    H: float


class OrbitElementsRequest(BaseModel):
    mu: float = 3.986005e14
    r_body: Optional[float] = None
    h_apo: Optional[float] = None
    h_peri: Optional[float] = None
    r_apo: Optional[float] = None
    r_peri: Optional[float] = None


class OrbitElementsResponse(BaseModel):
    a: float
    e: float
    period_s: float
    r_perigee: float
    r_apogee: float
    apsidal_speed_ratio: float


class OrbitStateRequest(BaseModel):
    a: float
    e: float
    mu: float = 3.986005e14
    anomaly_kind: Literal["true", "eccentric", "mean"] = "true"
    anomaly: Optional[AngleValue] = None
    radius: Optional[float] = None
    angle_unit: AngleUnit = "deg"


class OrbitStateResponse(BaseModel):
    nu: float
    E: float
    M: float
    r: float
    speed: float
    t_since_perigee_s: float
    angle_unit: AngleUnit


class DatumPair(BaseModel):
    name: str = ""
    source: list[float] = Field(min_length=3, max_length=3)
    target: list[float] = Field(min_length=3, max_length=3)


class DatumFitRequest(BaseModel):
    pairs: list[DatumPair]


class SevenParamsModel(BaseModel):
    tx: float
    ty: float
    tz: float
    scale_ppm: float
    rx_arcsec: float
    ry_arcsec: float
    rz_arcsec: float


class DatumFitResponse(BaseModel):
    params: SevenParamsModel
    rms_m: float
    s2: float
    residuals: list[list[float]]


class DatumApplyRequest(BaseModel):
    params: SevenParamsModel
    points: list[PointIn]


class DatumApplyResponse(BaseModel):
    rows: list[dict]


class LevelObservation(BaseModel):
    frm: str
    to: str
    dh: float
    dist_km: Optional[float] = None


class AdjustLevelRequest(BaseModel):
    observations: list[LevelObservation]
    fixed: dict[str, float]


class AdjustLevelResponse(BaseModel):
    heights: dict[str, float]
    sigmas_mm: dict[str, float]
    s2: float
    mm_per_km: Optional[float]


class AdjustTriangleRequest(BaseModel):
    angles: list[AngleValue] = Field(min_length=3, max_length=3)
    sigma_angles: list[AngleValue] = Field(min_length=3, max_length=3)
    sides: list[Optional[float]] = Field(min_length=3, max_length=3)
    sigma_sides: list[Optional[float]] = Field(min_length=3, max_length=3)
    angle_unit: AngleUnit = "gr"


class AdjustTriangleResponse(BaseModel):
    sides: list[float]
    angles: list[float]
    sigma_sides: list[float]
    sigma_angles: list[float]
    s2: float
    iterations: int
    angle_unit: AngleUnit


class FixtureInfo(BaseModel):
    id: str
    title: str
    provenance: str


class FixtureRunRequest(BaseModel):
    ids: Optional[list[str]] = None


class FixtureCheck(BaseModel):
    key: str
    got: float
    want: float
    tol: float
    ok: bool


class FixtureOutcome(BaseModel):
    id: str
    passed: bool
    provenance: str
    checks: list[FixtureCheck]


class FixtureRunResponse(BaseModel):
    total: int
    passed: int
    failed: int
    results: list[FixtureOutcome]
