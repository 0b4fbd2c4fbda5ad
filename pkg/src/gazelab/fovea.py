"""Center-dense row/column subsampling.

A foveal map keeps nOut of nIn lines per axis. Offsets u from the output
center map to input offsets through sigma(u) = u + b*u^8, with b chosen
so the outermost kept line lands exactly on the image border
(sigma(r) = R for input half-width R = (nIn-1)/2 and output half-width
r = (nOut-1)/2). Because sigma grows by at least 1 per unit step, the
rounded source indices are strictly increasing, and the kept lines are
densest at the center.

Rounding goes to the index lattice that keeps sources integral:
round-half-up for an odd input (integer center), nearest half-integer
offset for an even input. When the input is even but the output is odd,
the single center line has no exact mirror; it takes the upper of the
two central input lines and every other pair remains exactly mirrored.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InputError

GROWTH_EXPONENT = 8


@dataclass(frozen=True)
class FoveaMap:
    """Precomputed per-axis gather table: output line u samples input line source_index[u]."""

    n_in: int
    n_out: int
    source_index: np.ndarray  # shape (n_out,), int64, strictly increasing

    @property
    def is_identity(self) -> bool:
        return self.n_in == self.n_out


def _lattice_round(x: float, half_integer: bool) -> float:
    # round-half-up onto the integer lattice, or onto the k+0.5 lattice
    if half_integer:
        return np.floor(x) + 0.5
    return np.floor(x + 0.5)


def build_fovea_map(n_in: int, n_out: int) -> FoveaMap:
    """Build the per-axis subsampling table for n_in -> n_out lines."""
    if n_in < 1 or n_out < 1:
        raise InputError(f"line counts must be >= 1, got {n_in} -> {n_out}")
    if n_out > n_in:
        raise InputError(f"cannot keep {n_out} of {n_in} lines")

    center = (n_in - 1) / 2.0
    half_out = (n_out - 1) / 2.0
    half_in = center
    even_input = n_in % 2 == 0

    if n_out == 1:
        # single kept line: the center, biased up when the input is even
        src = np.array([int(np.floor(center + 0.5))], dtype=np.int64)
        return FoveaMap(n_in, n_out, src)

    bend = (half_in - half_out) / half_out**GROWTH_EXPONENT
    offsets = np.arange(n_out, dtype=np.float64) - half_out

    sources = np.empty(n_out, dtype=np.int64)
    for k, u in enumerate(offsets):
        mag = abs(u)
        if mag == 0.0:
            # only reachable when n_out is odd; exact center if it exists
            sources[k] = int(np.floor(center + 0.5))
            continue
        stretched = mag + bend * mag**GROWTH_EXPONENT
        step = _lattice_round(stretched, half_integer=even_input)
        sources[k] = int(center + np.copysign(step, u))

    if not np.all(np.diff(sources) >= 1):
        raise AssertionError("source indices must be strictly increasing")
    if sources[0] < 0 or sources[-1] >= n_in:
        raise AssertionError("source indices out of range")
    return FoveaMap(n_in, n_out, sources)


def foveate(image: np.ndarray, map_y: FoveaMap, map_x: FoveaMap) -> np.ndarray:
    """Gather the kept rows/columns of an (H, W, ...) image."""
    if image.shape[0] != map_y.n_in or image.shape[1] != map_x.n_in:
        raise InputError(
            f"image is {image.shape[0]}x{image.shape[1]}, maps expect "
            f"{map_y.n_in}x{map_x.n_in}"
        )
    return image[np.ix_(map_y.source_index, map_x.source_index)]
