"""Geodetic computation library: ellipsoid geometry, coordinate conversions,
differential geometry, spherical astronomy, conformal projections, distance
reductions, orbit mechanics and least-squares adjustment, with a FastAPI
service and a batch CLI on top."""

from .angles import Angle, parse_angle, parse_hours, format_hours
from .ellipsoid import Ellipsoid, PRESETS, get_ellipsoid, sphere

__version__ = "0.1.0"

__all__ = [
    "Angle", "parse_angle", "parse_hours", "format_hours",
    "Ellipsoid", "PRESETS", "get_ellipsoid", "sphere",
    "__version__",
]
