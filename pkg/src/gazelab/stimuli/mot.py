"""Bouncing-circle dynamics for multiple object tracking.

All circles share one speed and reflect specularly off the walls of a
unit-square arena, so per-circle speed is conserved exactly. Spawn
enforces a minimum pairwise separation; circles are otherwise
indistinguishable (rendering colors them only during cue/query phases).
"""

import math
from dataclasses import dataclass

import numpy as np

from ..errors import StimulusError
from .draw import draw_disc, rgba_canvas

CIRCLE_COLOR = (235, 235, 235)
CUE_COLOR = (255, 210, 40)
QUERY_COLOR = (70, 160, 255)


@dataclass(frozen=True)
class MOTSpec:
    n_circles: int = 8
    n_targets: int = 2
    speed: float = 0.006  # arena units per step
    circle_radius: float = 0.045  # arena units
    min_separation: float = 0.12


@dataclass
class MOTState:
    spec: MOTSpec
    positions: np.ndarray  # (n, 2) in [r, 1-r]^2, y up
    velocities: np.ndarray  # (n, 2), each row has norm spec.speed
    target_set: frozenset
    queried_index: int
    phase: str = "cue"  # "cue" | "track" | "query"


def init_mot(spec: MOTSpec, rng: np.random.Generator) -> MOTState:
    if not 0 < spec.n_targets < spec.n_circles:
        raise StimulusError(
            f"need 0 < targets < circles, got {spec.n_targets}/{spec.n_circles}"
        )
    r = spec.circle_radius
    positions = []
    for _ in range(spec.n_circles):
        for _attempt in range(1000):
            p = rng.uniform(r, 1.0 - r, size=2)
            if all(np.linalg.norm(p - q) >= spec.min_separation for q in positions):
                positions.append(p)
                break
        else:
            raise StimulusError("could not place circles with the requested separation")
    theta = rng.uniform(0.0, 2.0 * math.pi, size=spec.n_circles)
    velocities = spec.speed * np.stack([np.cos(theta), np.sin(theta)], axis=1)

    targets = frozenset(int(i) for i in rng.permutation(spec.n_circles)[: spec.n_targets])
    # query a target with probability 1/2, so yes/no stays balanced
    if rng.integers(2) == 0:
        pool = sorted(targets)
    else:
        pool = sorted(set(range(spec.n_circles)) - targets)
    queried = int(pool[rng.integers(len(pool))])
    return MOTState(
        spec=spec,
        positions=np.array(positions),
        velocities=velocities,
        target_set=targets,
        queried_index=queried,
        phase="cue",
    )


def step_mot(state: MOTState) -> MOTState:
    """Advance one step with specular wall reflection. Track phase only."""
    spec = state.spec
    r = spec.circle_radius
    pos = state.positions + state.velocities
    vel = state.velocities.copy()
    for axis in (0, 1):
        low = pos[:, axis] < r
        pos[low, axis] = 2.0 * r - pos[low, axis]
        vel[low, axis] = -vel[low, axis]
        high = pos[:, axis] > 1.0 - r
        pos[high, axis] = 2.0 * (1.0 - r) - pos[high, axis]
        vel[high, axis] = -vel[high, axis]
    return MOTState(
        spec=spec,
        positions=pos,
        velocities=vel,
        target_set=state.target_set,
        queried_index=state.queried_index,
        phase=state.phase,
    )


def render_mot(state: MOTState, size: int, background=(30, 30, 30)) -> np.ndarray:
    """Opaque RGBA raster; cue phase highlights targets, query the queried circle."""
    img = rgba_canvas(size, background)
    radius = state.spec.circle_radius * size
    for i, (x, y) in enumerate(state.positions):
        color = CIRCLE_COLOR
        if state.phase == "cue" and i in state.target_set:
            color = CUE_COLOR
        elif state.phase == "query" and i == state.queried_index:
            color = QUERY_COLOR
        draw_disc(img, x * size, (1.0 - y) * size, radius, color)
    return img
