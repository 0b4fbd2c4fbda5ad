"""The on-monitor GUI substrate: named widgets, gaze events, timers, reward.

Widgets are named rectangles (screen fractions, origin at the lower-left)
carrying an RGBA image that is blitted into the shared screen texture.
Each tick the kit hit-tests the current gaze point, fires exit/enter on
widget change, fires hover every tick the gaze stays inside, then
decrements timers and fires the expired ones. Callbacks may add/remove
widgets and timers freely; structural changes are queued and applied at
the end of the tick so dispatch never iterates a mutating collection.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import InputError
from .geometry import ScreenPoint


@dataclass
class Widget:
    name: str
    image: np.ndarray  # (h, w, 4) uint8 RGBA; alpha >= 128 is opaque
    pos: tuple  # (x, y) lower-left corner, screen fractions
    size: tuple  # (w, h), screen fractions
    on_enter: Optional[Callable] = None
    on_exit: Optional[Callable] = None
    on_hover: Optional[Callable] = None  # called as on_hover(widget, hover_time)
    user_data: dict = field(default_factory=dict)

    def contains(self, fx: float, fy: float) -> bool:
        x, y = self.pos
        w, h = self.size
        return x <= fx < x + w and y <= fy < y + h

    @property
    def center(self) -> tuple:
        return (self.pos[0] + self.size[0] / 2.0, self.pos[1] + self.size[1] / 2.0)


@dataclass
class Timer:
    name: str
    remaining: int
    callback: Callable


def _pack_rgb(r: int, g: int, b: int) -> int:
    """The uint32 a (r, g, b, 0) texel reads back as on this platform."""
    return int(np.array([r, g, b, 0], dtype=np.uint8).view(np.uint32)[0])


def _validate_widget(widget: Widget) -> None:
    x, y = widget.pos
    w, h = widget.size
    if not (0.0 <= x <= 1.0 and 0.0 <= y <= 1.0) or w <= 0 or h <= 0:
        raise InputError(f"widget {widget.name!r}: bad rect pos={widget.pos} size={widget.size}")
    if x + w > 1.0 + 1e-9 or y + h > 1.0 + 1e-9:
        raise InputError(f"widget {widget.name!r}: rect exceeds screen")
    img = widget.image
    if not isinstance(img, np.ndarray) or img.ndim != 3 or img.shape[2] != 4 or img.dtype != np.uint8:
        raise InputError(f"widget {widget.name!r}: image must be (h, w, 4) uint8")


class WidgetKit:
    """Owns the screen texture, the live widgets, the timers, and step reward."""

    def __init__(self, screen_width: int, screen_height: int, background=(127, 127, 127)):
        self.width = int(screen_width)
        self.height = int(screen_height)
        self.background = tuple(int(c) for c in background)
        # texels are stored RGBX so the renderer can gather whole pixels as
        # uint32 scalars; one spare texel past the texture holds the
        # off-monitor color, letting every output pixel come from a single
        # indexed read
        n = self.height * self.width
        self._buffer = np.zeros((n + 1, 4), dtype=np.uint8)
        self._packed = self._buffer.view(np.uint32).reshape(-1)
        self._screen32 = self._packed[:n].reshape(self.height, self.width)
        self.screen = self._buffer[:n].reshape(self.height, self.width, 4)[:, :, :3]
        self._bg_packed = int(_pack_rgb(*self.background))
        self.set_offscreen_color((0, 0, 0))
        self.version = 0

        self._widgets: list[Widget] = []
        self._by_name: dict[str, Widget] = {}
        self._timers: list[Timer] = []
        self._timer_names: set[str] = set()
        self._current: Optional[Widget] = None
        self._hover_time = 0
        self._reward = 0.0
        self._dispatching = False
        self._pending: list[tuple] = []
        self._dirty = False
        self.recomposite()

    # -- screen -----------------------------------------------------------

    @property
    def flat_with_sentinel(self) -> np.ndarray:
        """(texels+1, 3) uint8 view; the last row is the off-monitor color."""
        return self._buffer[:, :3]

    @property
    def packed_with_sentinel(self) -> np.ndarray:
        """(texels+1,) uint32 view of the same storage, for fast gathers."""
        return self._packed

    def set_offscreen_color(self, rgb) -> None:
        self._buffer[-1, :3] = rgb

    def recomposite(self) -> None:
        """Rebuild the texture from scratch: background, then widgets in add order."""
        self._screen32[:] = self._bg_packed
        for widget in self._widgets:
            self._blit(widget)
        self.version += 1

    def _rect_texels(self, widget: Widget) -> tuple:
        x, y = widget.pos
        w, h = widget.size
        x0 = int(round(x * self.width))
        x1 = max(x0 + 1, int(round((x + w) * self.width)))
        # pos is measured from the bottom, texture rows run from the top
        y1 = int(round((1.0 - y) * self.height))
        y0 = min(y1 - 1, int(round((1.0 - y - h) * self.height)))
        return max(0, x0), min(self.width, x1), max(0, y0), min(self.height, y1)

    def _blit(self, widget: Widget) -> None:
        x0, x1, y0, y1 = self._rect_texels(widget)
        tw, th = x1 - x0, y1 - y0
        if tw <= 0 or th <= 0:
            return
        img = widget.image
        if img.shape[0] == th and img.shape[1] == tw:
            scaled = np.ascontiguousarray(img)
        else:
            rows = (np.arange(th) * img.shape[0]) // th
            cols = (np.arange(tw) * img.shape[1]) // tw
            scaled = np.ascontiguousarray(img[np.ix_(rows, cols)])
        packed = scaled.view(np.uint32)[:, :, 0]
        region = self._screen32[y0:y1, x0:x1]
        alpha = scaled[:, :, 3]
        if alpha.min() >= 128:  # fully opaque: plain copy
            region[:] = packed
        else:
            np.copyto(region, packed, where=alpha >= 128)

    # -- structure --------------------------------------------------------

    def add_widget(self, widget: Widget) -> None:
        _validate_widget(widget)
        if self._dispatching:
            self._pending.append(("add", widget))
            return
        if widget.name in self._by_name:
            raise InputError(f"duplicate widget name: {widget.name!r}")
        self._widgets.append(widget)
        self._by_name[widget.name] = widget
        self._blit(widget)
        self.version += 1

    def remove_widget(self, name: str) -> None:
        if self._dispatching:
            self._pending.append(("remove", name))
            return
        widget = self._by_name.get(name)
        if widget is None:
            raise InputError(f"unknown widget: {name!r}")
        if self._current is widget:
            self._fire_exit([])
        self._widgets.remove(widget)
        del self._by_name[name]
        self.recomposite()

    def clear_widgets(self, keep=()) -> None:
        for name in [w.name for w in self._widgets if w.name not in keep]:
            self.remove_widget(name)

    def update_widget_image(self, name: str, image: np.ndarray) -> None:
        """Swap a widget's image (animation); the texture recomposites lazily."""
        widget = self.get_widget(name)
        widget.image = image
        self._dirty = True

    def composite_if_dirty(self) -> None:
        if self._dirty:
            self._dirty = False
            self.recomposite()

    def has_widget(self, name: str) -> bool:
        return name in self._by_name

    def get_widget(self, name: str) -> Widget:
        widget = self._by_name.get(name)
        if widget is None:
            raise InputError(f"unknown widget: {name!r}")
        return widget

    def widgets(self) -> list:
        return list(self._widgets)

    def add_timer(self, name: str, timeout: int, callback: Callable) -> None:
        if timeout < 0:
            raise InputError(f"timer {name!r}: negative timeout")
        if self._dispatching:
            self._pending.append(("timer", name, int(timeout), callback))
            return
        if name in self._timer_names:
            raise InputError(f"duplicate timer name: {name!r}")
        self._timers.append(Timer(name, int(timeout), callback))
        self._timer_names.add(name)

    # -- reward -----------------------------------------------------------

    def add_reward(self, amount: float) -> None:
        if not math.isfinite(amount):
            raise InputError(f"non-finite reward: {amount}")
        self._reward += float(amount)

    def drain_reward(self) -> float:
        reward, self._reward = self._reward, 0.0
        return reward

    # -- dispatch ---------------------------------------------------------

    @property
    def current_widget_name(self) -> Optional[str]:
        return self._current.name if self._current else None

    @property
    def hover_time(self) -> int:
        return self._hover_time

    def clear_current(self) -> None:
        """Forget the hovered widget without firing events (phase boundaries)."""
        self._current = None
        self._hover_time = 0

    def _hit_test(self, point: Optional[ScreenPoint]) -> Optional[Widget]:
        if point is None:
            return None
        fx = point.x / self.width
        fy = 1.0 - point.y / self.height
        for widget in reversed(self._widgets):  # last added wins on overlap
            if widget.contains(fx, fy):
                return widget
        return None

    def _fire_exit(self, events: list) -> None:
        widget, self._current = self._current, None
        self._hover_time = 0
        events.append(("exit", widget.name, None))
        if widget.on_exit:
            widget.on_exit(widget)

    def dispatch_tick(self, point: Optional[ScreenPoint]) -> list:
        """One tick: gaze events against `point`, then timer expirations.

        Returns the fired events as (kind, name, value) tuples, in order.
        """
        events: list[tuple] = []
        self._dispatching = True
        try:
            hit = self._hit_test(point)
            if hit is not self._current:
                if self._current is not None:
                    self._fire_exit(events)
                if hit is not None:
                    self._current = hit
                    self._hover_time = 0
                    events.append(("enter", hit.name, None))
                    if hit.on_enter:
                        hit.on_enter(hit)
            elif hit is not None:
                self._hover_time += 1
            if self._current is not None:
                events.append(("hover", self._current.name, self._hover_time))
                if self._current.on_hover:
                    self._current.on_hover(self._current, self._hover_time)

            expired = []
            for timer in self._timers:
                timer.remaining -= 1
                if timer.remaining <= 0:
                    expired.append(timer)
            for timer in expired:
                self._timers.remove(timer)
                self._timer_names.discard(timer.name)
                events.append(("timer", timer.name, None))
                timer.callback()
        finally:
            self._dispatching = False
            pending, self._pending = self._pending, []
            for op in pending:
                if op[0] == "add":
                    self.add_widget(op[1])
                elif op[0] == "remove":
                    if op[1] in self._by_name:  # may have been removed twice
                        self.remove_widget(op[1])
                else:
                    self.add_timer(op[1], op[2], op[3])
        return events
