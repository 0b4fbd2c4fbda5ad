"""Multiple object tracking: was the queried circle in the cued set?

A cue phase tints the target circles, a track phase lets identical
circles bounce around the arena, then one circle is tinted as the query
and yes/no buttons open. The 2D staircase climbs target count and speed.
"""

from ..stimuli.draw import glyph_image
from ..stimuli.mot import MOTSpec, init_mot, render_mot, step_mot
from .base import PhaseSpec, ResponseOption, Task, TrialSetup, require

TARGET_LEVELS = [1, 2, 3, 4, 5]
SPEED_LEVELS = [0.004, 0.006, 0.008, 0.010]
ARENA_FRACTION = 0.7
BUTTONS = {"yes": (0.15, 0.08), "no": (0.85, 0.08)}


class MOTTask(Task):
    name = "mot"

    def __init__(self, ctx):
        self.n_circles = int(ctx.config.task_params.get("nCircles", 8))
        self.cue_steps = int(ctx.config.task_params.get("cueSteps", 60))
        self.track_steps = int(ctx.config.task_params.get("trackSteps", 240))
        levels = ctx.config.task_params.get("targetLevels", TARGET_LEVELS)
        require(
            max(levels) < self.n_circles,
            f"targetLevels: max {max(levels)} must stay below nCircles={self.n_circles}",
        )
        super().__init__(ctx)
        self._state = None
        self._arena_px = round(ARENA_FRACTION * ctx.config.screen_width)

    def make_staircase(self):
        targets = self.param("targetLevels", TARGET_LEVELS)
        speeds = self.param("speedLevels", SPEED_LEVELS)
        return self.build_2d_staircase(
            [{"nTargets": n} for n in targets],
            [{"speed": s} for s in speeds],
        )

    def _draw_arena(self) -> None:
        image = render_mot(self._state, self._arena_px)
        if self.kit.has_widget("stim:arena"):
            self.kit.update_widget_image("stim:arena", image)
        else:
            self.add_stimulus("stim:arena", image, (0.5, 0.5), ARENA_FRACTION)

    def build_trial(self, params: dict) -> TrialSetup:
        spec = MOTSpec(
            n_circles=self.n_circles,
            n_targets=params["nTargets"],
            speed=params["speed"],
        )
        self._state = init_mot(spec, self.rng)
        is_target = self._state.queried_index in self._state.target_set

        def show_cue():
            self._state.phase = "cue"
            self._draw_arena()

        def start_track():
            self._state.phase = "track"
            self._draw_arena()

        def track_tick():
            self._state = step_mot(self._state)
            self._draw_arena()

        def on_response_enter():
            self._state.phase = "query"
            self._draw_arena()
            for label, center in BUTTONS.items():
                glyph = "O" if label == "yes" else "X"
                self.add_response_button(
                    label, glyph_image(glyph, 36, (240, 240, 240), bg=(60, 60, 60)),
                    center, 0.1,
                )

        return TrialSetup(
            truth="yes" if is_target else "no",
            descriptor={
                "nTargets": params["nTargets"],
                "speed": params["speed"],
                "nCircles": self.n_circles,
                "queryIsTarget": is_target,
            },
            options=[ResponseOption(lab, c) for lab, c in BUTTONS.items()],
            pre_phases=[
                PhaseSpec("cue", self.cue_steps, on_enter=show_cue),
                PhaseSpec("track", self.track_steps, on_enter=start_track, on_tick=track_tick),
            ],
            on_response_enter=on_response_enter,
        )

    @property
    def n_alternatives(self) -> int:
        return 2
