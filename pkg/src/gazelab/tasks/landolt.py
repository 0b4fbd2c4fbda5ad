"""Visual acuity / contrast sensitivity: identify a Landolt C gap direction.

Difficulty is a 2D staircase over stimulus scale and Weber contrast. The
optotype sits at screen center; compass arrow widgets at the periphery
collect the answer, one per possible gap orientation.
"""

import math

from ..stimuli.draw import arrow_image
from ..stimuli.landolt import LandoltSpec, ORIENTATIONS, gen_landolt_c
from .base import ResponseOption, Task, TrialSetup, require

SCALE_LEVELS = [0.4, 0.29, 0.21, 0.15, 0.11, 0.08, 0.055, 0.04]
CONTRAST_LEVELS = [1.0, 0.8, 0.6, 0.45, 0.3, 0.15]
RING_RADIUS = 0.42
BUTTON_SIZE = 0.09


class LandoltTask(Task):
    name = "landolt"

    def __init__(self, ctx):
        n = ctx.config.task_params.get("nOrientations", 8)
        require(n in (4, 8), f"nOrientations: must be 4 or 8, got {n}")
        self.orientations = ORIENTATIONS[:: 8 // n]
        self.polarity = ctx.config.task_params.get("polarity", "dark")
        super().__init__(ctx)

    def make_staircase(self):
        scales = self.param("scaleLevels", SCALE_LEVELS)
        contrasts = self.param("contrastLevels", CONTRAST_LEVELS)
        return self.build_2d_staircase(
            [{"scale": s} for s in scales],
            [{"contrast": c} for c in contrasts],
        )

    def _button_center(self, orientation: str) -> tuple:
        angle = math.radians(45.0 * ORIENTATIONS.index(orientation))
        return (0.5 + RING_RADIUS * math.cos(angle), 0.5 + RING_RADIUS * math.sin(angle))

    def build_trial(self, params: dict) -> TrialSetup:
        orientation = self.orientations[self.rng.integers(len(self.orientations))]
        background = int(round(sum(self.cfg.screen_background) / 3.0))
        spec = LandoltSpec(
            diameter_px=max(3, round(params["scale"] * self.cfg.screen_width)),
            contrast=params["contrast"],
            gap_orientation=orientation,
            polarity=self.polarity,
            background=background,
        )
        stimulus = gen_landolt_c(spec)

        def on_response_enter():
            self.add_stimulus("stim:optotype", stimulus, (0.5, 0.5), params["scale"])
            for name in self.orientations:
                angle = 45.0 * ORIENTATIONS.index(name)
                self.add_response_button(
                    name,
                    arrow_image(36, angle, (240, 240, 240), bg=(60, 60, 60)),
                    self._button_center(name),
                    BUTTON_SIZE,
                )

        return TrialSetup(
            truth=orientation,
            descriptor={
                "scale": params["scale"],
                "contrast": params["contrast"],
                "gapOrientation": orientation,
                "polarity": self.polarity,
            },
            options=[ResponseOption(n, self._button_center(n)) for n in self.orientations],
            on_response_enter=on_response_enter,
        )

    @property
    def n_alternatives(self) -> int:
        return len(self.orientations)
