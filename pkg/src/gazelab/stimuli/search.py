"""Search arrays: one magenta T target among mode-dependent distractors.

orientation mode: distractors are magenta L (shape differs, color shared)
color mode:       distractors are cyan T (color differs, shape shared)
conjunction mode: distractors mix cyan T and magenta L, balanced +-1,
                  so neither single feature identifies the target

Items land on distinct cells of a jittered grid, which guarantees they
never overlap and stay fully on screen.
"""

from dataclasses import dataclass
from typing import List

import numpy as np

from ..errors import StimulusError
from .draw import CYAN, MAGENTA

SEARCH_MODES = ("orientation", "color", "conjunction")


@dataclass(frozen=True)
class SearchItem:
    glyph: str  # "T" or "L"
    color: tuple  # RGB
    cell: tuple  # (row, col) on the grid
    center: tuple  # (fx, fy) screen fractions, fy from bottom


@dataclass(frozen=True)
class SearchArray:
    mode: str
    set_size: int
    items: List[SearchItem]
    target_index: int

    def raster_order(self) -> list:
        """Item indices sorted top-to-bottom, left-to-right."""
        return sorted(range(len(self.items)), key=lambda i: self.items[i].cell)


def _distractors(mode: str, count: int) -> list:
    if mode == "orientation":
        return [("L", MAGENTA)] * count
    if mode == "color":
        return [("T", CYAN)] * count
    n_color = (count + 1) // 2  # cyan T gets the odd one
    return [("T", CYAN)] * n_color + [("L", MAGENTA)] * (count - n_color)


def gen_search_array(
    mode: str,
    set_size: int,
    rng: np.random.Generator,
    grid: int = 4,
    region: tuple = (0.12, 0.88),
    item_size: float = 0.10,
) -> SearchArray:
    if mode not in SEARCH_MODES:
        raise StimulusError(f"unknown search mode {mode!r}")
    if set_size < 1:
        raise StimulusError("set size must be >= 1")
    if set_size > grid * grid:
        raise StimulusError(f"set size {set_size} exceeds {grid}x{grid} grid")

    lo, hi = region
    cell_span = (hi - lo) / grid
    jitter = max(0.0, (cell_span - item_size) / 2.0 - 0.005)

    cells = rng.permutation(grid * grid)[:set_size]
    target_index = int(rng.integers(set_size))
    kinds = _distractors(mode, set_size - 1)
    rng.shuffle(kinds)

    items = []
    di = 0
    for idx, cell in enumerate(cells):
        row, col = int(cell) // grid, int(cell) % grid
        cx = lo + (col + 0.5) * cell_span + rng.uniform(-jitter, jitter)
        cy = lo + (row + 0.5) * cell_span + rng.uniform(-jitter, jitter)
        if idx == target_index:
            glyph, color = "T", MAGENTA
        else:
            glyph, color = kinds[di]
            di += 1
        items.append(SearchItem(glyph, color, (row, col), (cx, cy)))
    return SearchArray(mode, set_size, items, target_index)
