"""Concentric Glass patterns and matched noise distractors.

A pattern is a field of dipoles: dot pairs separated by a fixed offset.
In the target patch, a coherent fraction of dipoles is oriented tangent
to the circle (centered on the patch) through the dipole midpoint; the
rest take uniform random orientations. The distractor patch uses the
same dipole process with all orientations random, which preserves the
first-order dot statistics (density, pair spacing). Mixed polarity gives
each dipole one white and one black dot.
"""

import math
from dataclasses import dataclass, field
from typing import List

import numpy as np

from ..errors import StimulusError
from .draw import draw_disc

WHITE = (255, 255, 255)
BLACK = (0, 0, 0)


@dataclass(frozen=True)
class GlassSpec:
    n_dipoles: int = 100
    coherence: float = 1.0
    polarity: str = "white"  # "white" | "black" | "mixed"
    dipole_offset: float = 3.0  # texels between the two dots
    patch_radius: int = 75
    dot_radius: float = 2.0
    background: tuple = (127, 127, 127)


@dataclass
class Dipole:
    mid: tuple  # (x, y) relative to patch center, y up
    angle: float  # orientation in radians
    coherent: bool
    colors: tuple  # RGB for each of the two dots


@dataclass
class GlassPatch:
    spec: GlassSpec
    dipoles: List[Dipole] = field(default_factory=list)

    def tangent_error_deg(self, dipole: Dipole) -> float:
        """Angular distance (mod 180) between a dipole and the local tangent."""
        mx, my = dipole.mid
        tangent = math.atan2(my, mx) + math.pi / 2.0
        err = (dipole.angle - tangent) % math.pi
        return math.degrees(min(err, math.pi - err))


def round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def _dot_colors(polarity: str, rng: np.random.Generator) -> tuple:
    if polarity == "white":
        return (WHITE, WHITE)
    if polarity == "black":
        return (BLACK, BLACK)
    # mixed: exactly one white and one black, end chosen at random
    return (WHITE, BLACK) if rng.integers(2) == 0 else (BLACK, WHITE)


def _sample_dipoles(spec: GlassSpec, n_coherent: int, rng: np.random.Generator) -> list:
    margin = spec.dipole_offset / 2.0 + spec.dot_radius + 1.0
    usable = spec.patch_radius - margin
    if usable <= 0:
        raise StimulusError(
            f"patch radius {spec.patch_radius} too small for offset "
            f"{spec.dipole_offset} and dot radius {spec.dot_radius}"
        )
    dipoles = []
    for i in range(spec.n_dipoles):
        radius = usable * math.sqrt(rng.uniform())
        theta = rng.uniform(0.0, 2.0 * math.pi)
        mid = (radius * math.cos(theta), radius * math.sin(theta))
        if i < n_coherent:
            angle = theta + math.pi / 2.0  # tangent to the circle through mid
            coherent = True
        else:
            angle = rng.uniform(0.0, 2.0 * math.pi)
            coherent = False
        dipoles.append(Dipole(mid, angle, coherent, _dot_colors(spec.polarity, rng)))
    return dipoles


def gen_glass_pair(spec: GlassSpec, rng: np.random.Generator) -> tuple:
    """(target, distractor) patches; the distractor is fully incoherent."""
    if spec.n_dipoles < 1:
        raise StimulusError("need at least one dipole")
    if not 0.0 <= spec.coherence <= 1.0:
        raise StimulusError(f"coherence must be in [0, 1], got {spec.coherence}")
    n_coherent = round_half_up(spec.coherence * spec.n_dipoles)
    target = GlassPatch(spec, _sample_dipoles(spec, n_coherent, rng))
    distractor = GlassPatch(spec, _sample_dipoles(spec, 0, rng))
    return target, distractor


def render_glass_patch(patch: GlassPatch) -> np.ndarray:
    """RGB raster, hard-edged dots on the gray background."""
    spec = patch.spec
    size = 2 * spec.patch_radius
    img = np.empty((size, size, 3), dtype=np.uint8)
    img[:] = spec.background
    c = (size - 1) / 2.0
    half = spec.dipole_offset / 2.0
    for dipole in patch.dipoles:
        mx, my = dipole.mid
        dx = half * math.cos(dipole.angle)
        dy = half * math.sin(dipole.angle)
        for (px, py), color in zip(
            ((mx + dx, my + dy), (mx - dx, my - dy)), dipole.colors
        ):
            draw_disc(img, c + px, c - py, spec.dot_radius, color)
    return img
