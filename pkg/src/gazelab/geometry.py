"""Gaze kinematics and the monitor-plane projection.

The eye sits at the origin looking down +z. The virtual monitor is the
rectangle z = distance, |x| <= monitorWidth/2, |y| <= monitorHeight/2
(x right, y up). A gaze of (yaw, pitch) degrees aims the central ray at
the plane point (distance*tan(yaw), distance*tan(pitch)), so yaw/pitch
are exactly the angular coordinates of the fixated point.

Screen texel coordinates follow image convention: x in texels from the
left edge, y in texels from the top edge.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ConfigError, InputError

DEFAULT_MAX_RATE = 2.5
DEFAULT_MAX_YAW = 60.0
DEFAULT_MAX_PITCH = 60.0


@dataclass(frozen=True)
class GazeState:
    """Gaze direction in degrees; positive yaw = right, positive pitch = up."""

    yaw: float = 0.0
    pitch: float = 0.0


@dataclass(frozen=True)
class GazeAction:
    """Per-step change of gaze, in degrees/step."""

    d_yaw: float = 0.0
    d_pitch: float = 0.0


@dataclass(frozen=True)
class ScreenPoint:
    """Continuous texel coordinates on the monitor texture (x from left, y from top)."""

    x: float
    y: float


@dataclass(frozen=True)
class MonitorGeometry:
    distance: float = 1.0
    monitor_width: float = 1.0
    monitor_height: float = 1.0
    screen_width: int = 512
    screen_height: int = 512
    fov_degrees: float = 60.0

    def validate(self) -> None:
        if not (self.distance > 0):
            raise ConfigError(f"distance: must be > 0, got {self.distance}")
        if self.monitor_width <= 0 or self.monitor_height <= 0:
            raise ConfigError("monitorWidth/monitorHeight: must be > 0")
        if self.screen_width < 1 or self.screen_height < 1:
            raise ConfigError("screenWidth/screenHeight: must be >= 1")
        if not (10.0 < self.fov_degrees < 120.0):
            raise ConfigError(
                f"fovDegrees: must lie in (10, 120), got {self.fov_degrees}"
            )
        texel_aspect = self.screen_width / self.screen_height
        physical_aspect = self.monitor_width / self.monitor_height
        if abs(texel_aspect - physical_aspect) > 1e-9 * physical_aspect:
            raise ConfigError(
                "screen texel aspect must match monitor physical aspect: "
                f"{texel_aspect:g} vs {physical_aspect:g}"
            )


def clamp_rate(action: GazeAction, max_rate: float = DEFAULT_MAX_RATE) -> GazeAction:
    return GazeAction(
        min(max(action.d_yaw, -max_rate), max_rate),
        min(max(action.d_pitch, -max_rate), max_rate),
    )


def apply_action(
    gaze: GazeState,
    action: GazeAction,
    max_rate: float = DEFAULT_MAX_RATE,
    max_yaw: float = DEFAULT_MAX_YAW,
    max_pitch: float = DEFAULT_MAX_PITCH,
) -> GazeState:
    """Rate-clamp the action, add it, then clamp gaze to its box. Pure."""
    values = (gaze.yaw, gaze.pitch, action.d_yaw, action.d_pitch)
    if not all(math.isfinite(v) for v in values):
        raise InputError(f"non-finite gaze/action: {values}")
    a = clamp_rate(action, max_rate)
    return GazeState(
        min(max(gaze.yaw + a.d_yaw, -max_yaw), max_yaw),
        min(max(gaze.pitch + a.d_pitch, -max_pitch), max_pitch),
    )


def gaze_to_screen_point(
    gaze: GazeState, geom: MonitorGeometry
) -> Optional[ScreenPoint]:
    """Texel hit by the central gaze ray, or None when the ray misses the monitor."""
    if abs(gaze.yaw) >= 90.0 or abs(gaze.pitch) >= 90.0:
        return None
    px = geom.distance * math.tan(math.radians(gaze.yaw))
    py = geom.distance * math.tan(math.radians(gaze.pitch))
    sx = (px / geom.monitor_width + 0.5) * geom.screen_width
    sy = (0.5 - py / geom.monitor_height) * geom.screen_height
    if 0.0 <= sx < geom.screen_width and 0.0 <= sy < geom.screen_height:
        return ScreenPoint(sx, sy)
    return None


def gaze_for_plane_offset(
    x: float, y: float, geom: MonitorGeometry
) -> GazeState:
    """Gaze whose central ray hits plane offset (x, y) from the monitor center."""
    return GazeState(
        math.degrees(math.atan2(x, geom.distance)),
        math.degrees(math.atan2(y, geom.distance)),
    )


def gaze_for_screen_fraction(fx: float, fy: float, geom: MonitorGeometry) -> GazeState:
    """Gaze aimed at a point given as screen fractions (fx from left, fy from bottom)."""
    return gaze_for_plane_offset(
        (fx - 0.5) * geom.monitor_width, (fy - 0.5) * geom.monitor_height, geom
    )


def camera_basis_tuples(gaze: GazeState) -> tuple:
    """Orthonormal camera axes (right, up, forward) as plain float tuples.

    The forward axis is the central gaze ray; right/up come from
    Gram-Schmidt against world up, so the horizon stays level. Plain
    tuples keep the per-frame hot path free of tiny-array overhead.
    """
    fx = math.tan(math.radians(gaze.yaw))
    fy = math.tan(math.radians(gaze.pitch))
    inv = 1.0 / math.sqrt(fx * fx + fy * fy + 1.0)
    f = (fx * inv, fy * inv, inv)
    rn = 1.0 / math.hypot(f[2], f[0])
    right = (f[2] * rn, 0.0, -f[0] * rn)
    up = (
        f[1] * right[2],
        f[2] * right[0] - f[0] * right[2],
        -f[1] * right[0],
    )
    return right, up, f


def camera_basis(gaze: GazeState) -> np.ndarray:
    """Axes of camera_basis_tuples as a (3, 3) array with rows right/up/forward."""
    return np.array(camera_basis_tuples(gaze))
