"""Small rasterization helpers shared by the stimulus generators.

Everything draws hard-edged (no anti-aliasing) so stimulus pixel values
stay exact under nearest-neighbor sampling.
"""

import math

import numpy as np

MAGENTA = (255, 0, 255)
CYAN = (0, 255, 255)
RED = (220, 30, 30)
WHITE = (255, 255, 255)
BLACK = (0, 0, 0)
GRAY = (127, 127, 127)

# 5x5 stroke grids for the pre-rasterized glyph set
_GLYPHS = {
    "T": ("#####", "..#..", "..#..", "..#..", "..#.."),
    "L": ("#....", "#....", "#....", "#....", "#####"),
    "E": ("#####", "#....", "####.", "#....", "#####"),
    "+": ("..#..", "..#..", "#####", "..#..", "..#.."),
    "X": ("#...#", ".#.#.", "..#..", ".#.#.", "#...#"),
    "=": (".....", "#####", ".....", "#####", "....."),
    "/=": ("...##", "#####", "..#..", "#####", "##..."),
    "O": (".###.", "#...#", "#...#", "#...#", ".###."),
}


def glyph_mask(name: str, size: int) -> np.ndarray:
    """Boolean (size, size) mask of a 5x5 stroke glyph, nearest-scaled."""
    rows = _GLYPHS[name]
    grid = np.array([[c == "#" for c in row] for row in rows])
    idx = (np.arange(size) * grid.shape[0]) // size
    return grid[np.ix_(idx, idx)]


def glyph_image(name: str, size: int, color, bg=None) -> np.ndarray:
    """RGBA raster of a glyph; transparent background unless `bg` given."""
    img = np.zeros((size, size, 4), dtype=np.uint8)
    if bg is not None:
        img[:, :, :3] = bg
        img[:, :, 3] = 255
    mask = glyph_mask(name, size)
    img[mask, :3] = color
    img[mask, 3] = 255
    return img


def disc_mask(size: int, radius: float, cx=None, cy=None) -> np.ndarray:
    cx = (size - 1) / 2.0 if cx is None else cx
    cy = (size - 1) / 2.0 if cy is None else cy
    yy, xx = np.mgrid[0:size, 0:size]
    return (xx - cx) ** 2 + (yy - cy) ** 2 <= radius**2


def draw_disc(img: np.ndarray, cx: float, cy: float, radius: float, color) -> None:
    """Stamp a filled disc onto an (H, W, 3+) array in place (channels 0..2)."""
    h, w = img.shape[:2]
    x0 = max(0, int(math.floor(cx - radius)))
    x1 = min(w, int(math.ceil(cx + radius)) + 1)
    y0 = max(0, int(math.floor(cy - radius)))
    y1 = min(h, int(math.ceil(cy + radius)) + 1)
    if x0 >= x1 or y0 >= y1:
        return
    xx = (np.arange(x0, x1, dtype=np.float64) - cx) ** 2
    yy = (np.arange(y0, y1, dtype=np.float64) - cy) ** 2
    mask = yy[:, None] + xx[None, :] <= radius**2
    region = img[y0:y1, x0:x1]
    region[mask, 0] = color[0]
    region[mask, 1] = color[1]
    region[mask, 2] = color[2]


def rgba_canvas(size: int, background) -> np.ndarray:
    """Opaque (size, size, 4) canvas filled with `background`."""
    img = np.empty((size, size, 4), dtype=np.uint8)
    img[:, :, 0] = background[0]
    img[:, :, 1] = background[1]
    img[:, :, 2] = background[2]
    img[:, :, 3] = 255
    return img


def arrow_image(size: int, angle_deg: float, color, bg=None) -> np.ndarray:
    """RGBA arrow pointing at `angle_deg` (0 = right, counterclockwise)."""
    img = np.zeros((size, size, 4), dtype=np.uint8)
    if bg is not None:
        img[:, :, :3] = bg
        img[:, :, 3] = 255
    c = (size - 1) / 2.0
    yy, xx = np.mgrid[0:size, 0:size]
    dx = xx - c
    dy = c - yy  # raster rows grow downward
    ang = math.radians(angle_deg)
    along = dx * math.cos(ang) + dy * math.sin(ang)
    perp = -dx * math.sin(ang) + dy * math.cos(ang)
    half = size * 0.42
    shaft = (np.abs(along) <= half * 0.6) & (np.abs(perp) <= size * 0.08)
    head = (along > half * 0.3) & (along <= half) & (np.abs(perp) <= (half - along) * 0.6)
    mask = shaft | head
    img[mask, :3] = color
    img[mask, 3] = 255
    return img


def fixation_cross_image(size: int = 32) -> np.ndarray:
    return glyph_image("+", size, RED)


def solid_rgba(size: int, color) -> np.ndarray:
    img = np.empty((size, size, 4), dtype=np.uint8)
    img[:, :, :3] = color
    img[:, :, 3] = 255
    return img


def to_rgba(rgb: np.ndarray) -> np.ndarray:
    """Attach a fully opaque alpha channel to an (H, W, 3) raster."""
    img = np.empty(rgb.shape[:2] + (4,), dtype=np.uint8)
    img[:, :, :3] = rgb
    img[:, :, 3] = 255
    return img
