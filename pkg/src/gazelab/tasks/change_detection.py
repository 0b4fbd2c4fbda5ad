"""Sequential-comparison change detection.

A sample array shows for a fixed time, a blank retention period follows,
then the test array returns together with same/different buttons. The 2D
staircase climbs set size and retention delay independently.
"""

from ..stimuli.change import gen_change_arrays, render_change_array
from ..stimuli.draw import glyph_image
from .base import PhaseSpec, ResponseOption, Task, TrialSetup

SET_SIZE_LEVELS = [1, 2, 3, 4, 6]
DELAY_LEVELS = [30, 60, 120]
ARRAY_FRACTION = 0.7
BUTTONS = {"same": (0.15, 0.08), "different": (0.85, 0.08)}


class ChangeDetectionTask(Task):
    name = "change_detection"

    def __init__(self, ctx):
        self.sample_steps = int(ctx.config.task_params.get("sampleSteps", 60))
        super().__init__(ctx)

    def make_staircase(self):
        sizes = self.param("setSizeLevels", SET_SIZE_LEVELS)
        delays = self.param("delayLevels", DELAY_LEVELS)
        return self.build_2d_staircase(
            [{"setSize": n} for n in sizes],
            [{"delay": d} for d in delays],
        )

    def build_trial(self, params: dict) -> TrialSetup:
        changed = bool(self.rng.integers(2))
        arrays = gen_change_arrays(params["setSize"], changed, self.rng)
        array_px = round(ARRAY_FRACTION * self.cfg.screen_width)
        sample_img = render_change_array(arrays.sample, array_px)
        test_img = render_change_array(arrays.test, array_px)

        def show_sample():
            self.add_stimulus("stim:sample", sample_img, (0.5, 0.5), ARRAY_FRACTION)

        def hide_sample():
            if self.kit.has_widget("stim:sample"):
                self.kit.remove_widget("stim:sample")

        def on_response_enter():
            self.add_stimulus("stim:test", test_img, (0.5, 0.5), ARRAY_FRACTION)
            for label, center in BUTTONS.items():
                glyph = "=" if label == "same" else "/="
                self.add_response_button(
                    label, glyph_image(glyph, 36, (240, 240, 240), bg=(60, 60, 60)),
                    center, 0.1,
                )

        return TrialSetup(
            truth="different" if changed else "same",
            descriptor={
                "setSize": params["setSize"],
                "delay": params["delay"],
                "changed": changed,
                "changedFeature": arrays.changed_feature,
            },
            options=[ResponseOption(lab, c) for lab, c in BUTTONS.items()],
            pre_phases=[
                PhaseSpec("stimulus", self.sample_steps, on_enter=show_sample),
                PhaseSpec("retention", params["delay"], on_enter=hide_sample),
            ],
            on_response_enter=on_response_enter,
        )

    @property
    def n_alternatives(self) -> int:
        return 2
