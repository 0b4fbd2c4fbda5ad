"""Image-memory paradigms: continuous recognition and visuomotor mapping.

Continuous recognition shows one image per trial, equiprobably a fresh
one or one seen earlier in the episode, and asks old/new; the staircase
climbs the lag (in trials) at which old items return. Visuomotor mapping
assigns each image a fixed response direction on first appearance and
asks for it on every showing; the staircase grows the pairing pool.
"""

from ..stimuli.draw import arrow_image, glyph_image, to_rgba
from .base import ResponseOption, Task, TrialSetup

LAG_LEVELS = [1, 2, 3, 5, 8, 12, 18, 26]
POOL_LEVELS = [1, 2, 3, 4, 6, 8, 12, 16]
IMAGE_FRACTION = 0.3
BUTTON_SIZE = 0.1

DIRECTION_BUTTONS = {
    "E": (0.92, 0.5),
    "N": (0.5, 0.92),
    "W": (0.08, 0.5),
    "S": (0.5, 0.08),
}
_DIRECTION_ANGLES = {"E": 0.0, "N": 90.0, "W": 180.0, "S": 270.0}


class ContinuousRecognitionTask(Task):
    name = "continuous_recognition"

    def __init__(self, ctx):
        super().__init__(ctx)
        self._last_shown: dict = {}  # image id -> trial index last shown
        self._next_id = 0

    def make_staircase(self):
        lags = self.param("lagLevels", LAG_LEVELS)
        return self.build_1d_staircase(
            [{"lag": lag} for lag in lags], fixed_params={"lag": lags[0]}
        )

    def _draw_new(self) -> bool:
        source_size = self.ctx.image_source.size
        if not self._last_shown:
            return True  # nothing to recognize yet
        if source_size is not None and self._next_id >= source_size:
            return False  # dataset exhausted: only old items remain truthful
        return bool(self.rng.integers(2) == 0)

    def build_trial(self, params: dict) -> TrialSetup:
        if self._draw_new():
            image_id, is_old, lag_actual = self._next_id, False, None
            self._next_id += 1
        else:
            target_lag = params["lag"]
            image_id = min(
                self._last_shown,
                key=lambda i: (abs(self.trial_index - self._last_shown[i] - target_lag), i),
            )
            is_old, lag_actual = True, self.trial_index - self._last_shown[image_id]
        self._last_shown[image_id] = self.trial_index
        image = to_rgba(self.ctx.image_source.get(image_id))

        def on_response_enter():
            self.add_stimulus("stim:image", image, (0.5, 0.5), IMAGE_FRACTION)
            self.add_response_button(
                "old", glyph_image("O", 36, (240, 240, 240), bg=(60, 60, 60)),
                (0.15, 0.08), BUTTON_SIZE,
            )
            self.add_response_button(
                "new", glyph_image("X", 36, (240, 240, 240), bg=(60, 60, 60)),
                (0.85, 0.08), BUTTON_SIZE,
            )

        return TrialSetup(
            truth="old" if is_old else "new",
            descriptor={
                "imageId": image_id,
                "isOld": is_old,
                "lagTarget": params["lag"],
                "lagActual": lag_actual,
            },
            options=[
                ResponseOption("old", (0.15, 0.08)),
                ResponseOption("new", (0.85, 0.08)),
            ],
            on_response_enter=on_response_enter,
        )

    @property
    def n_alternatives(self) -> int:
        return 2


class VisuomotorMappingTask(Task):
    name = "visuomotor"

    def __init__(self, ctx):
        super().__init__(ctx)
        self._pairs: list = []  # (image id, direction), fixed within the episode
        self._next_id = 0

    def make_staircase(self):
        pools = self.param("poolLevels", POOL_LEVELS)
        return self.build_1d_staircase(
            [{"poolSize": n} for n in pools], fixed_params={"poolSize": pools[0]}
        )

    def build_trial(self, params: dict) -> TrialSetup:
        source_size = self.ctx.image_source.size
        can_grow = source_size is None or self._next_id < source_size
        if len(self._pairs) < params["poolSize"] and can_grow or not self._pairs:
            direction = list(DIRECTION_BUTTONS)[self.rng.integers(4)]
            pair = (self._next_id, direction)
            self._pairs.append(pair)
            self._next_id += 1
            first_exposure = True
        else:
            pair = self._pairs[self.rng.integers(len(self._pairs))]
            first_exposure = False
        image_id, direction = pair
        image = to_rgba(self.ctx.image_source.get(image_id))

        def on_response_enter():
            self.add_stimulus("stim:image", image, (0.5, 0.5), IMAGE_FRACTION)
            for name, center in DIRECTION_BUTTONS.items():
                self.add_response_button(
                    name,
                    arrow_image(36, _DIRECTION_ANGLES[name], (240, 240, 240), bg=(60, 60, 60)),
                    center,
                    BUTTON_SIZE,
                )

        return TrialSetup(
            truth=direction,
            descriptor={
                "imageId": image_id,
                "direction": direction,
                "poolTarget": params["poolSize"],
                "firstExposure": first_exposure,
            },
            options=[ResponseOption(n, c) for n, c in DIRECTION_BUTTONS.items()],
            on_response_enter=on_response_enter,
        )

    @property
    def n_alternatives(self) -> int:
        return 4
