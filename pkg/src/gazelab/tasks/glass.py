"""Glass pattern detection, 2AFC: saccade to the concentric pattern.

Two dot patches appear left and right of center; one is the coherent
pattern, the other a density-matched noise patch. Difficulty descends
through pattern coherence. Polarity (white/black/mixed dots) is fixed
per episode by config.
"""

from ..stimuli.draw import to_rgba
from ..stimuli.glass import GlassSpec, gen_glass_pair, render_glass_patch
from .base import ResponseOption, Task, TrialSetup, require

COHERENCE_LEVELS = [1.0, 0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1]
PATCH_FRACTION = 0.34
CENTERS = {"left": (0.27, 0.5), "right": (0.73, 0.5)}


class GlassTask(Task):
    name = "glass"

    def __init__(self, ctx):
        polarity = ctx.config.task_params.get("polarity", "white")
        require(polarity in ("white", "black", "mixed"), f"polarity: bad value {polarity!r}")
        self.polarity = polarity
        self.n_dipoles = int(ctx.config.task_params.get("nDipoles", 100))
        self.dipole_offset = float(ctx.config.task_params.get("dipoleOffset", 3.0))
        super().__init__(ctx)

    def make_staircase(self):
        levels = self.param("coherenceLevels", COHERENCE_LEVELS)
        return self.build_1d_staircase(
            [{"coherence": c} for c in levels], fixed_params={"coherence": levels[0]}
        )

    def build_trial(self, params: dict) -> TrialSetup:
        patch_px = round(PATCH_FRACTION * self.cfg.screen_width)
        spec = GlassSpec(
            n_dipoles=self.n_dipoles,
            coherence=params["coherence"],
            polarity=self.polarity,
            dipole_offset=self.dipole_offset,
            patch_radius=patch_px // 2,
            background=self.cfg.screen_background,
        )
        target, distractor = gen_glass_pair(spec, self.rng)
        target_side = "left" if self.rng.integers(2) == 0 else "right"
        images = {
            target_side: to_rgba(render_glass_patch(target)),
            ("right" if target_side == "left" else "left"): to_rgba(
                render_glass_patch(distractor)
            ),
        }

        def on_response_enter():
            for side, center in CENTERS.items():
                self.add_response_button(side, images[side], center, PATCH_FRACTION)

        return TrialSetup(
            truth=target_side,
            descriptor={
                "coherence": params["coherence"],
                "polarity": self.polarity,
                "targetSide": target_side,
                "nDipoles": self.n_dipoles,
            },
            options=[ResponseOption(s, c) for s, c in CENTERS.items()],
            on_response_enter=on_response_enter,
        )

    @property
    def n_alternatives(self) -> int:
        return 2
