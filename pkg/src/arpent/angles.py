"""Unit-aware angles.

Radians are the single internal unit everywhere in the library; grades,
degrees, decimilligrades and sexagesimal hours exist only at the I/O
boundary. The workbook data mixes all four, so every value entering or
leaving the library goes through this module.
"""

from __future__ import annotations

import math
import re

TWO_PI = 2.0 * math.pi

GR = math.pi / 200.0          # one grade (gon) in radians
DEG = math.pi / 180.0
DMGR = GR * 1e-4              # decimilligrade, 1e-4 gr
HOUR = math.pi / 12.0         # one sidereal/solar hour of arc

UNITS = {
    "rad": 1.0,
    "gr": GR,
    "deg": DEG,
    "dmgr": DMGR,
    "hour": HOUR,
}

_HMS_RE = re.compile(
    r"^\s*([+-]?)(\d+)\s*h\s*(?:(\d+)\s*(?:mn|m)\s*)?(?:(\d+(?:\.\d+)?)\s*s)?\s*$",
    re.IGNORECASE,
)
_DMS_RE = re.compile(
    r"^\s*([+-]?)(\d+(?:\.\d+)?)\s*(?:°|d)\s*(?:(\d+(?:\.\d+)?)\s*['′]\s*)?"
    r"(?:(\d+(?:\.\d+)?)\s*[\"″]\s*)?$"
)
_NUM_RE = re.compile(r"^\s*([+-]?\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)\s*(rad|gr|dmgr|deg|°|h)?\s*$")


class Angle:
    """Immutable angle, stored in radians."""

    __slots__ = ("rad",)

    def __init__(self, radians: float):
        object.__setattr__(self, "rad", float(radians))

    def __setattr__(self, *a):
        raise AttributeError("Angle is immutable")

    # constructors ---------------------------------------------------------
    @classmethod
    def from_gr(cls, v: float) -> "Angle":
        return cls(v * GR)

    @classmethod
    def from_deg(cls, v: float) -> "Angle":
        return cls(v * DEG)

    @classmethod
    def from_dmgr(cls, v: float) -> "Angle":
        return cls(v * DMGR)

    @classmethod
    def from_hours(cls, v: float) -> "Angle":
        return cls(v * HOUR)

    @classmethod
    def from_hms(cls, h: int, mn: int = 0, s: float = 0.0) -> "Angle":
        sign = -1.0 if h < 0 else 1.0
        return cls(sign * (abs(h) + mn / 60.0 + s / 3600.0) * HOUR)

    @classmethod
    def from_dms(cls, d: float, m: float = 0.0, s: float = 0.0) -> "Angle":
        sign = -1.0 if d < 0 else 1.0
        return cls(sign * (abs(d) + m / 60.0 + s / 3600.0) * DEG)

    # unit views -----------------------------------------------------------
    @property
    def gr(self) -> float:
        return self.rad / GR

    @property
    def deg(self) -> float:
        return self.rad / DEG

    @property
    def dmgr(self) -> float:
        return self.rad / DMGR

    @property
    def hours(self) -> float:
        return self.rad / HOUR

    def to(self, unit: str) -> float:
        return self.rad / UNITS[unit]

    # normalization --------------------------------------------------------
    def wrapped_positive(self) -> "Angle":
        """Equivalent angle in [0, 2*pi)."""
        r = math.fmod(self.rad, TWO_PI)
        if r < 0.0:
            r += TWO_PI
        if r >= TWO_PI:  # fmod round-off at the seam
            r -= TWO_PI
        return Angle(r)

    def wrapped_symmetric(self) -> "Angle":
        """Equivalent angle in (-pi, pi]."""
        r = math.fmod(self.rad, TWO_PI)
        if r > math.pi:
            r -= TWO_PI
        elif r <= -math.pi:
            r += TWO_PI
        return Angle(r)

    # formatting -----------------------------------------------------------
    def format(self, unit: str = "gr", decimals: int = 5) -> str:
        if unit == "hms":
            return self.format_hms()
        if unit == "dms":
            return self.format_dms()
        u = "deg" if unit == "°" else unit
        return f"{self.to(u):.{decimals}f}"

    def format_hms(self, s_decimals: int = 2) -> str:
        sign = "-" if self.rad < 0 else ""
        total = abs(self.hours)
        h = int(total)
        rem = (total - h) * 60.0
        mn = int(rem)
        s = (rem - mn) * 60.0
        s = round(s, s_decimals)
        if s >= 60.0:
            s -= 60.0
            mn += 1
        if mn >= 60:
            mn -= 60
            h += 1
        return f"{sign}{h}h{mn:02d}mn{s:0{3 + s_decimals}.{s_decimals}f}s"

    def format_dms(self, s_decimals: int = 2) -> str:
        sign = "-" if self.rad < 0 else ""
        total = abs(self.deg)
        d = int(total)
        rem = (total - d) * 60.0
        m = int(rem)
        s = round((rem - m) * 60.0, s_decimals)
        if s >= 60.0:
            s -= 60.0
            m += 1
        if m >= 60:
            m -= 60
            d += 1
        return f"{sign}{d}°{m:02d}'{s:0{3 + s_decimals}.{s_decimals}f}\""

    # plumbing -------------------------------------------------------------
    def __float__(self) -> float:
        return self.rad

    def __repr__(self) -> str:
        return f"Angle({self.rad!r} rad = {self.gr:.7f} gr)"

    def __eq__(self, other) -> bool:
        return isinstance(other, Angle) and self.rad == other.rad

    def __hash__(self):
        return hash(self.rad)

    def __neg__(self) -> "Angle":
        return Angle(-self.rad)

    def __add__(self, other) -> "Angle":
        return Angle(self.rad + float(other))

    def __sub__(self, other) -> "Angle":
        return Angle(self.rad - float(other))

    def __mul__(self, k: float) -> "Angle":
        return Angle(self.rad * k)

    __rmul__ = __mul__


def parse_angle(text: str, default_unit: str = "gr") -> Angle:
    """Parse '12.345', '12.345 gr', '36°54'', '6h37mn19.72s', '80d' ...

    Bare numbers take ``default_unit``. Sexagesimal hours keep centisecond
    precision exactly (the workbook quotes star catalogue times that way).
    """
    m = _HMS_RE.match(text)
    if m:
        sign = -1.0 if m.group(1) == "-" else 1.0
        h = int(m.group(2))
        mn = int(m.group(3) or 0)
        s = float(m.group(4) or 0.0)
        return Angle(sign * (h + mn / 60.0 + s / 3600.0) * HOUR)
    m = _DMS_RE.match(text)
    if m and (m.group(3) is not None or "°" in text or text.rstrip().lower().endswith("d")):
        sign = -1.0 if m.group(1) == "-" else 1.0
        d = float(m.group(2))
        mi = float(m.group(3) or 0.0)
        s = float(m.group(4) or 0.0)
        return Angle(sign * (d + mi / 60.0 + s / 3600.0) * DEG)
    m = _NUM_RE.match(text)
    if m:
        unit = m.group(2) or default_unit
        if unit == "°":
            unit = "deg"
        elif unit == "h":
            unit = "hour"
        return Angle(float(m.group(1)) * UNITS[unit])
    raise ValueError(f"cannot parse angle {text!r}")


def parse_hours(text: str) -> float:
    """Sexagesimal hour string -> decimal hours ('20h35mn28s' -> 20.5911...)."""
    return parse_angle(text, default_unit="hour").hours


def format_hours(hours: float, s_decimals: int = 2) -> str:
    return Angle.from_hours(hours).format_hms(s_decimals)
