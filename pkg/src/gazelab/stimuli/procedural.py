"""Deterministic stand-in images for the recognition/recall tasks.

Each id yields a composite of a few colored shapes on a solid background.
The background color is a bijective 24-bit mix of the id, so any two
distinct ids (below 2^24) disagree on every background pixel; shape
coverage is capped well under half the canvas, which keeps the pairwise
pixel difference far above the 10% floor the tasks rely on.
"""

import numpy as np

from ..rngutil import named_rng
from .draw import draw_disc

_MIX_MULTIPLIER = 2654435761  # odd, so id -> color is invertible mod 2^24


def _background_color(image_id: int) -> tuple:
    mixed = (image_id * _MIX_MULTIPLIER) % (1 << 24)
    return (mixed & 0xFF, (mixed >> 8) & 0xFF, (mixed >> 16) & 0xFF)


def gen_procedural_image(image_id: int, size: int = 64) -> np.ndarray:
    """RGB raster for `image_id`; identical across calls and processes."""
    if image_id < 0:
        raise ValueError("image id must be >= 0")
    img = np.empty((size, size, 3), dtype=np.uint8)
    img[:] = _background_color(image_id)

    rng = named_rng(image_id, "procedural-image")
    max_side = size // 6  # caps total shape coverage near 25% of the canvas
    for _ in range(4 + int(rng.integers(3))):
        color = tuple(int(c) for c in rng.integers(0, 256, size=3))
        x = int(rng.integers(0, size - max_side))
        y = int(rng.integers(0, size - max_side))
        kind = int(rng.integers(3))
        if kind == 0:
            w = int(rng.integers(max_side // 2, max_side + 1))
            h = int(rng.integers(max_side // 2, max_side + 1))
            img[y : y + h, x : x + w] = color
        elif kind == 1:
            r = int(rng.integers(max_side // 3, max_side // 2 + 1))
            draw_disc(img, x + max_side / 2, y + max_side / 2, r, color)
        else:
            w = int(rng.integers(max_side // 2, max_side + 1))
            img[y : y + max(2, max_side // 4), x : x + w] = color
    return img
