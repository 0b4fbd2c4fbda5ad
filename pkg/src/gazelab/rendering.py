"""Observation rasterizer: pinhole camera vs. the textured monitor plane.

Each output pixel casts a ray through the camera rotated to the current
gaze; rays hitting the monitor rectangle sample the screen texture
(nearest neighbor by default), all others take the world background
color. The whole frame is one gather through a flat index table, with
off-monitor pixels pointing at a sentinel row past the texture, so the
hot path stays a handful of vectorized ops.
"""

import math

import numpy as np

from .geometry import GazeState, MonitorGeometry, camera_basis, camera_basis_tuples


class Renderer:
    def __init__(
        self,
        geom: MonitorGeometry,
        out_width: int,
        out_height: int,
        bilinear: bool = False,
    ):
        self.geom = geom
        self.out_width = int(out_width)
        self.out_height = int(out_height)
        self.bilinear = bool(bilinear)

        focal = (self.out_height / 2.0) / math.tan(math.radians(geom.fov_degrees) / 2.0)
        xs = (np.arange(self.out_width, dtype=np.float32) + 0.5 - self.out_width / 2.0) / focal
        ys = (self.out_height / 2.0 - (np.arange(self.out_height, dtype=np.float32) + 0.5)) / focal
        self._xc = np.broadcast_to(xs, (self.out_height, self.out_width)).reshape(-1).copy()
        self._yc = np.repeat(ys, self.out_width)
        n = self._xc.size
        self._f1 = np.empty(n, dtype=np.float32)
        self._f2 = np.empty(n, dtype=np.float32)
        self._f3 = np.empty(n, dtype=np.float32)
        self._sentinel = geom.screen_height * geom.screen_width

        # texel scaling folded into constants
        self._ax = np.float32(geom.screen_width / geom.monitor_width)
        self._bx = np.float32(geom.screen_width / 2.0)
        self._ay = np.float32(-geom.screen_height / geom.monitor_height)
        self._by = np.float32(geom.screen_height / 2.0)

    def render(self, screen, gaze: GazeState) -> np.ndarray:
        """(H, W, 3) uint8 observation for the given gaze.

        `screen` is the widget kit (or anything exposing its
        packed/flat sentinel views of the texture).
        """
        if self.bilinear:
            return self._render_bilinear(screen.flat_with_sentinel, gaze)
        flat = self.flat_source(gaze)
        gathered = screen.packed_with_sentinel.take(flat)
        rgbx = gathered.view(np.uint8).reshape(self.out_height, self.out_width, 4)
        return np.ascontiguousarray(rgbx[:, :, :3])

    def flat_source(self, gaze: GazeState) -> np.ndarray:
        """Flat gather table: texel index per pixel, sentinel where off-monitor."""
        right, up, fwd = camera_basis_tuples(gaze)
        dist = self.geom.distance
        xc, yc = self._xc, self._yc
        dz, sx, sy = self._f1, self._f2, self._f3

        np.multiply(xc, right[2], out=dz)
        dz += yc * up[2]
        dz += fwd[2]
        np.multiply(xc, right[0], out=sx)
        sx += yc * up[0]
        sx += fwd[0]
        dy = yc * up[1]
        dy += fwd[1]

        behind = dz <= 1e-9
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            inv = np.divide(dist, dz, out=dz)
            sx *= inv
            sx *= self._ax
            sx += self._bx
            np.multiply(dy, inv, out=sy)
            sy *= self._ay
            sy += self._by

            w, h = self.geom.screen_width, self.geom.screen_height
            outside = behind
            outside |= sx < 0
            outside |= sx >= w
            outside |= sy < 0
            outside |= sy >= h
            np.clip(sx, 0.0, w - 1, out=sx)
            np.clip(sy, 0.0, h - 1, out=sy)
        ix = sx.astype(np.int32)
        iy = sy.astype(np.int32)
        flat = iy
        flat *= w
        flat += ix
        flat[outside] = self._sentinel
        return flat

    def _render_bilinear(self, texture_with_sentinel: np.ndarray, gaze: GazeState) -> np.ndarray:
        """Slower path: blend the four texel neighbors (config opt-in)."""
        geom = self.geom
        right, up, fwd = camera_basis(gaze)
        xc = self._xc.astype(np.float64)
        yc = self._yc.astype(np.float64)
        dz = xc * right[2] + yc * up[2] + fwd[2]
        dx = xc * right[0] + yc * up[0] + fwd[0]
        dy = yc * up[1] + fwd[1]
        with np.errstate(divide="ignore", invalid="ignore"):
            inv = geom.distance / dz
        sx = dx * inv * (geom.screen_width / geom.monitor_width) + geom.screen_width / 2.0
        sy = geom.screen_height / 2.0 - dy * inv * (geom.screen_height / geom.monitor_height)
        w, h = geom.screen_width, geom.screen_height
        outside = (dz <= 1e-9) | (sx < 0) | (sx >= w) | (sy < 0) | (sy >= h)

        fx = np.clip(sx - 0.5, 0.0, w - 1)
        fy = np.clip(sy - 0.5, 0.0, h - 1)
        x0 = np.floor(fx).astype(np.int64)
        y0 = np.floor(fy).astype(np.int64)
        x1 = np.minimum(x0 + 1, w - 1)
        y1 = np.minimum(y0 + 1, h - 1)
        tx = (fx - x0)[:, None]
        ty = (fy - y0)[:, None]
        tex = texture_with_sentinel[: h * w].astype(np.float64)
        v00 = tex[y0 * w + x0]
        v01 = tex[y0 * w + x1]
        v10 = tex[y1 * w + x0]
        v11 = tex[y1 * w + x1]
        blend = (
            v00 * (1 - tx) * (1 - ty)
            + v01 * tx * (1 - ty)
            + v10 * (1 - tx) * ty
            + v11 * tx * ty
        )
        out = np.clip(np.rint(blend), 0, 255).astype(np.uint8)
        out[outside] = texture_with_sentinel[-1]
        return out.reshape(self.out_height, self.out_width, 3)
