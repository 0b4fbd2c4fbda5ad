"""Landolt C optotype rasters.

The optotype is an annulus of outer diameter d with stroke width and gap
width both d/5 (the standard construction), broken by a rectangular gap
facing one of eight compass directions. Weber contrast c against a
background luminance Lb puts the figure at Lb*(1+c) (bright polarity) or
Lb*(1-c) (dark polarity), quantized to uint8.
"""

import math
from dataclasses import dataclass

import numpy as np

from ..errors import StimulusError

# compass direction -> (cos, sin) of the gap axis, y up
ORIENTATIONS = ("E", "NE", "N", "NW", "W", "SW", "S", "SE")
_ANGLES = {name: 45.0 * i for i, name in enumerate(ORIENTATIONS)}


@dataclass(frozen=True)
class LandoltSpec:
    diameter_px: int
    contrast: float  # Weber, (0, 1]
    gap_orientation: str  # one of ORIENTATIONS
    polarity: str = "dark"  # "dark" or "bright" relative to background
    background: int = 127


def foreground_luminance(background: int, contrast: float, polarity: str) -> int:
    factor = 1.0 - contrast if polarity == "dark" else 1.0 + contrast
    return int(min(255, max(0, round(background * factor))))


def gen_landolt_c(spec: LandoltSpec) -> np.ndarray:
    """RGBA raster of the optotype; pixels off the C are transparent."""
    d = int(spec.diameter_px)
    if d < 3:
        raise StimulusError(f"Landolt C of {d}px is unrenderable (needs >= 3)")
    if not 0.0 < spec.contrast <= 1.0:
        raise StimulusError(f"contrast must be in (0, 1], got {spec.contrast}")
    if spec.gap_orientation not in _ANGLES:
        raise StimulusError(f"unknown gap orientation {spec.gap_orientation!r}")

    c = (d - 1) / 2.0
    yy, xx = np.mgrid[0:d, 0:d]
    x = xx - c
    y = c - yy  # math orientation, y up
    r2 = x * x + y * y
    outer = d / 2.0
    inner = outer - d / 5.0
    annulus = (r2 <= outer * outer) & (r2 >= inner * inner)

    ang = math.radians(_ANGLES[spec.gap_orientation])
    along = x * math.cos(ang) + y * math.sin(ang)
    perp = -x * math.sin(ang) + y * math.cos(ang)
    gap = (along > 0) & (np.abs(perp) <= d / 10.0)

    fg = foreground_luminance(spec.background, spec.contrast, spec.polarity)
    img = np.zeros((d, d, 4), dtype=np.uint8)
    mask = annulus & ~gap
    img[mask, :3] = fg
    img[mask, 3] = 255
    return img
