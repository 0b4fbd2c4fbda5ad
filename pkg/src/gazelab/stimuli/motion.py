"""Random-dot motion fields with exact per-step coherence.

A fixed subset of round(coherence * nDots) dots (chosen once per trial)
moves in the signal direction every step. The remaining noise dots
follow the configured noise mode: "direction" (default) moves each at
the same speed in a fresh uniform random direction per step; "flash"
repositions each uniformly inside the aperture per step instead. Dots
that leave the aperture or outlive their lifetime respawn uniformly
inside. The motion displacement each dot took this step is kept on the
state so observers of the field can separate motion from teleports.
"""

import math
from dataclasses import dataclass

import numpy as np

from ..errors import StimulusError
from .draw import draw_disc, rgba_canvas

DIRECTION_ANGLES = {"right": 0.0, "up": 90.0, "left": 180.0, "down": 270.0}


NOISE_MODES = ("direction", "flash")


@dataclass(frozen=True)
class MotionFieldSpec:
    n_dots: int = 100
    coherence: float = 0.5
    direction_deg: float = 180.0
    speed: float = 1.5  # texels per step
    aperture_radius: float = 60.0
    dot_lifetime: int = 60  # steps; 0 disables aging
    dot_radius: float = 2.0
    noise_mode: str = "direction"  # "direction" moves noise dots, "flash" repositions them


@dataclass
class MotionFieldState:
    spec: MotionFieldSpec
    positions: np.ndarray  # (n, 2), relative to aperture center, y up
    ages: np.ndarray  # (n,) int
    coherent: np.ndarray  # (n,) bool, fixed for the trial
    last_motion: np.ndarray  # (n, 2) displacement applied this step
    just_respawned: np.ndarray  # (n,) bool


def round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def _uniform_in_disc(n: int, radius: float, rng: np.random.Generator) -> np.ndarray:
    r = radius * np.sqrt(rng.uniform(size=n))
    t = rng.uniform(0.0, 2.0 * math.pi, size=n)
    return np.stack([r * np.cos(t), r * np.sin(t)], axis=1)


def init_motion_field(spec: MotionFieldSpec, rng: np.random.Generator) -> MotionFieldState:
    if spec.n_dots < 1:
        raise StimulusError("need at least one dot")
    if not 0.0 <= spec.coherence <= 1.0:
        raise StimulusError(f"coherence must be in [0, 1], got {spec.coherence}")
    if spec.noise_mode not in NOISE_MODES:
        raise StimulusError(f"noise mode must be one of {NOISE_MODES}, got {spec.noise_mode!r}")
    n = spec.n_dots
    n_coherent = round_half_up(spec.coherence * n)
    coherent = np.zeros(n, dtype=bool)
    coherent[rng.permutation(n)[:n_coherent]] = True
    positions = _uniform_in_disc(n, spec.aperture_radius, rng)
    ages = rng.integers(0, spec.dot_lifetime, size=n) if spec.dot_lifetime > 0 else np.zeros(n, dtype=np.int64)
    return MotionFieldState(
        spec=spec,
        positions=positions,
        ages=np.asarray(ages, dtype=np.int64),
        coherent=coherent,
        last_motion=np.zeros((n, 2)),
        just_respawned=np.zeros(n, dtype=bool),
    )


def step_motion_field(state: MotionFieldState, rng: np.random.Generator) -> MotionFieldState:
    spec = state.spec
    n = spec.n_dots
    motion = np.zeros((n, 2))
    ang = math.radians(spec.direction_deg)
    motion[state.coherent] = (spec.speed * math.cos(ang), spec.speed * math.sin(ang))
    noise = ~state.coherent
    n_noise = int(noise.sum())
    positions = state.positions.copy()
    if n_noise and spec.noise_mode == "direction":
        theta = rng.uniform(0.0, 2.0 * math.pi, size=n_noise)
        motion[noise, 0] = spec.speed * np.cos(theta)
        motion[noise, 1] = spec.speed * np.sin(theta)
    positions += motion
    if n_noise and spec.noise_mode == "flash":
        # noise dots teleport rather than move; their motion stays zero
        positions[noise] = _uniform_in_disc(n_noise, spec.aperture_radius, rng)
    ages = state.ages + 1
    outside = np.einsum("ij,ij->i", positions, positions) > spec.aperture_radius**2
    expired = ages >= spec.dot_lifetime if spec.dot_lifetime > 0 else np.zeros(n, dtype=bool)
    respawn = outside | expired
    n_respawn = int(respawn.sum())
    if n_respawn:
        positions[respawn] = _uniform_in_disc(n_respawn, spec.aperture_radius, rng)
        ages[respawn] = 0
    return MotionFieldState(
        spec=spec,
        positions=positions,
        ages=ages,
        coherent=state.coherent,
        last_motion=motion,
        just_respawned=respawn,
    )


def render_motion_field(state: MotionFieldState, size: int = None) -> np.ndarray:
    """Opaque RGBA raster: white dots on black, inside the circular aperture."""
    spec = state.spec
    size = size or int(2 * spec.aperture_radius)
    img = rgba_canvas(size, (0, 0, 0))
    c = (size - 1) / 2.0
    scale = size / (2.0 * spec.aperture_radius)
    for x, y in state.positions:
        draw_disc(img, c + x * scale, c - y * scale, spec.dot_radius, (255, 255, 255))
    return img
