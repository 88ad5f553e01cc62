"""Reference ellipsoids and the preset registry."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

_DATA_DIR = Path(__file__).parent / "data"


@dataclass(frozen=True)
class Ellipsoid:
    """Ellipsoid of revolution given by semi-major axis and first eccentricity squared."""

    a: float
    e2: float
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if not 0.0 <= self.e2 < 1.0:
            raise ValueError(f"e2 must be in [0, 1), got {self.e2}")
        if self.a <= 0.0:
            raise ValueError(f"semi-major axis must be positive, got {self.a}")

    @property
    def b(self) -> float:
        """Semi-minor axis b = a*sqrt(1 - e2)."""
        return self.a * math.sqrt(1.0 - self.e2)

    @property
    def f(self) -> float:
        """Flattening (a - b)/a."""
        return 1.0 - math.sqrt(1.0 - self.e2)

    @property
    def e(self) -> float:
        return math.sqrt(self.e2)

    @property
    def ep2(self) -> float:
        """Second eccentricity squared e'^2 = e^2/(1 - e^2)."""
        return self.e2 / (1.0 - self.e2)

    def is_sphere(self) -> bool:
        return self.e2 == 0.0


def sphere(radius: float) -> Ellipsoid:
    return Ellipsoid(radius, 0.0, name="sphere")


# Workbook presets: the Tunisian exercises use Clarke 1880 (IGN); the 3D
# conversion and datum problems use the GRS-type ellipsoid.
PRESETS = {
    "clarke1880": Ellipsoid(6378249.20, 0.0068034877, name="clarke1880"),
    "grs": Ellipsoid(6378137.00, 0.00669438, name="grs"),
}


def get_ellipsoid(name: str, registry_file: str | Path | None = None) -> Ellipsoid:
    """Look up a preset by name, optionally extended by a JSON registry file.

    The registry file maps names to {"a": meters, "e2": dimensionless}.
    """
    key = name.lower()
    if registry_file is not None:
        table = load_registry(registry_file)
        if key in table:
            return table[key]
    if key in PRESETS:
        return PRESETS[key]
    raise KeyError(f"unknown ellipsoid {name!r}; presets: {sorted(PRESETS)}")


def load_registry(path: str | Path) -> dict[str, Ellipsoid]:
    raw = json.loads(Path(path).read_text())
    out = {}
    for name, fields in raw.items():
        out[name.lower()] = Ellipsoid(float(fields["a"]), float(fields["e2"]), name=name)
    return out


def default_registry_file() -> Path:
    return _DATA_DIR / "ellipsoids.json"
