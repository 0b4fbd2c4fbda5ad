"""Sample/test arrays for sequential-comparison change detection.

Objects are squares or letter-E shapes (drawn equiprobably) in one of
six palette colors and four orientations, placed on distinct jittered
grid cells. When a change is requested, exactly one object differs in
exactly one feature; positions and every other object are identical.
Squares are rotation-invariant at right angles, so an orientation change
is only ever applied to an E (a square falls back to a color change).
"""

from dataclasses import dataclass, replace
from typing import List, Optional

import numpy as np

from ..errors import StimulusError
from .draw import glyph_mask

CHANGE_PALETTE = (
    (230, 40, 40),    # red
    (235, 220, 40),   # yellow
    (50, 205, 50),    # green
    (40, 220, 220),   # cyan
    (60, 80, 235),    # blue
    (230, 40, 230),   # magenta
)
ORIENTATIONS = (0, 90, 180, 270)


@dataclass(frozen=True)
class ChangeObject:
    shape: str  # "square" | "E"
    color_index: int
    orientation: int  # degrees, multiple of 90
    cell: tuple
    center: tuple  # (fx, fy) screen fractions


@dataclass(frozen=True)
class ChangeArrays:
    sample: List[ChangeObject]
    test: List[ChangeObject]
    changed: bool
    changed_index: Optional[int]
    changed_feature: Optional[str]  # "color" | "orientation"


def gen_change_arrays(
    set_size: int,
    changed: bool,
    rng: np.random.Generator,
    grid: int = 3,
    region: tuple = (0.15, 0.85),
) -> ChangeArrays:
    if set_size < 1:
        raise StimulusError("set size must be >= 1")
    if set_size > grid * grid:
        raise StimulusError(f"set size {set_size} exceeds {grid}x{grid} grid")

    lo, hi = region
    cell_span = (hi - lo) / grid
    jitter = cell_span * 0.12
    cells = rng.permutation(grid * grid)[:set_size]

    sample = []
    for cell in cells:
        row, col = int(cell) // grid, int(cell) % grid
        cx = lo + (col + 0.5) * cell_span + rng.uniform(-jitter, jitter)
        cy = lo + (row + 0.5) * cell_span + rng.uniform(-jitter, jitter)
        sample.append(
            ChangeObject(
                shape="square" if rng.integers(2) == 0 else "E",
                color_index=int(rng.integers(len(CHANGE_PALETTE))),
                orientation=int(ORIENTATIONS[rng.integers(4)]),
                cell=(row, col),
                center=(cx, cy),
            )
        )

    if not changed:
        return ChangeArrays(sample, list(sample), False, None, None)

    idx = int(rng.integers(set_size))
    obj = sample[idx]
    features = ["color"] if obj.shape == "square" else ["color", "orientation"]
    feature = features[rng.integers(len(features))]
    if feature == "color":
        choices = [i for i in range(len(CHANGE_PALETTE)) if i != obj.color_index]
        new = replace(obj, color_index=int(choices[rng.integers(len(choices))]))
    else:
        choices = [o for o in ORIENTATIONS if o != obj.orientation]
        new = replace(obj, orientation=int(choices[rng.integers(len(choices))]))
    test = list(sample)
    test[idx] = new
    return ChangeArrays(sample, test, True, idx, feature)


def render_change_array(
    objects: List[ChangeObject],
    size: int,
    item_px: int = None,
    background=(127, 127, 127),
) -> np.ndarray:
    """Composite RGBA raster of the whole array on a transparent canvas."""
    img = np.zeros((size, size, 4), dtype=np.uint8)
    item_px = item_px or max(6, size // 8)
    for obj in objects:
        fx, fy = obj.center
        x0 = int(round(fx * size - item_px / 2))
        y0 = int(round((1.0 - fy) * size - item_px / 2))
        x0 = min(max(x0, 0), size - item_px)
        y0 = min(max(y0, 0), size - item_px)
        if obj.shape == "square":
            mask = np.ones((item_px, item_px), dtype=bool)
        else:
            mask = glyph_mask("E", item_px)
            mask = np.rot90(mask, k=obj.orientation // 90)
        region = img[y0 : y0 + item_px, x0 : x0 + item_px]
        region[mask, :3] = CHANGE_PALETTE[obj.color_index]
        region[mask, 3] = 255
    return img
