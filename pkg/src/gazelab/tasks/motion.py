"""Random dot motion discrimination: report the coherent direction.

The dot field animates at screen center for as long as the response
phase lasts (viewing is response-terminated); arrow widgets at the
screen edges collect the direction report. Difficulty descends through
motion coherence.
"""

from ..stimuli.draw import arrow_image
from ..stimuli.motion import (
    DIRECTION_ANGLES,
    NOISE_MODES,
    MotionFieldSpec,
    init_motion_field,
    render_motion_field,
    step_motion_field,
)
from .base import ResponseOption, Task, TrialSetup, require

COHERENCE_LEVELS = [1.0, 0.85, 0.7, 0.55, 0.4, 0.3, 0.2, 0.1]
APERTURE_FRACTION = 0.4
BUTTON_SIZE = 0.09
BUTTON_CENTERS = {
    "right": (0.93, 0.5),
    "up": (0.5, 0.93),
    "left": (0.07, 0.5),
    "down": (0.5, 0.07),
}


class MotionTask(Task):
    name = "motion"

    def __init__(self, ctx):
        directions = ctx.config.task_params.get("directions", ["left", "right"])
        require(
            len(directions) >= 2 and all(d in DIRECTION_ANGLES for d in directions),
            f"directions: need >= 2 of {sorted(DIRECTION_ANGLES)}, got {directions}",
        )
        self.directions = list(directions)
        self.n_dots = int(ctx.config.task_params.get("nDots", 100))
        self.speed = float(ctx.config.task_params.get("speed", 1.5))
        self.dot_lifetime = int(ctx.config.task_params.get("dotLifetime", 60))
        self.noise_mode = ctx.config.task_params.get("noiseMode", "direction")
        require(
            self.noise_mode in NOISE_MODES,
            f"noiseMode: must be one of {NOISE_MODES}, got {self.noise_mode!r}",
        )
        super().__init__(ctx)
        self._state = None

    def make_staircase(self):
        levels = self.param("coherenceLevels", COHERENCE_LEVELS)
        return self.build_1d_staircase(
            [{"coherence": c} for c in levels], fixed_params={"coherence": levels[0]}
        )

    def build_trial(self, params: dict) -> TrialSetup:
        direction = self.directions[self.rng.integers(len(self.directions))]
        patch_px = round(APERTURE_FRACTION * self.cfg.screen_width)
        spec = MotionFieldSpec(
            n_dots=self.n_dots,
            coherence=params["coherence"],
            direction_deg=DIRECTION_ANGLES[direction],
            speed=self.speed,
            aperture_radius=patch_px / 2.0,
            dot_lifetime=self.dot_lifetime,
            noise_mode=self.noise_mode,
        )
        self._state = init_motion_field(spec, self.rng)

        def on_response_enter():
            self.add_stimulus(
                "stim:dots",
                render_motion_field(self._state, patch_px),
                (0.5, 0.5),
                APERTURE_FRACTION,
            )
            for name in self.directions:
                self.add_response_button(
                    name,
                    arrow_image(36, DIRECTION_ANGLES[name], (240, 240, 240), bg=(60, 60, 60)),
                    BUTTON_CENTERS[name],
                    BUTTON_SIZE,
                )

        def on_response_tick():
            self._state = step_motion_field(self._state, self.rng)
            self.kit.update_widget_image(
                "stim:dots", render_motion_field(self._state, patch_px)
            )

        return TrialSetup(
            truth=direction,
            descriptor={
                "coherence": params["coherence"],
                "direction": direction,
                "nDots": self.n_dots,
                "speed": self.speed,
            },
            options=[ResponseOption(d, BUTTON_CENTERS[d]) for d in self.directions],
            on_response_enter=on_response_enter,
            on_response_tick=on_response_tick,
        )

    @property
    def n_alternatives(self) -> int:
        return len(self.directions)
