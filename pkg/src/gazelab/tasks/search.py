"""Visual search: find the magenta T and hold gaze on it.

Every array item is a response widget; holding any item commits it, and
only the target is correct. Set size is blocked per episode by default
(the reaction-time analysis regresses over blocks); a staircase over set
size can be enabled instead.
"""

from ..stimuli.draw import glyph_image
from ..stimuli.search import SEARCH_MODES, gen_search_array
from .base import ResponseOption, Task, TrialSetup, require

SET_SIZE_LEVELS = [4, 8, 12, 16]
ITEM_SIZE = 0.10
GRID = 4


class SearchTask(Task):
    name = "search"

    def __init__(self, ctx):
        mode = ctx.config.task_params.get("mode", "conjunction")
        require(mode in SEARCH_MODES, f"mode: must be one of {SEARCH_MODES}, got {mode!r}")
        self.mode = mode
        self.blocked_set_size = int(ctx.config.task_params.get("setSize", 8))
        require(
            1 <= self.blocked_set_size <= GRID * GRID,
            f"setSize: must be in 1..{GRID * GRID}",
        )
        super().__init__(ctx)
        self._array = None

    def make_staircase(self):
        levels = self.param("setSizeLevels", SET_SIZE_LEVELS)
        return self.build_1d_staircase(
            [{"setSize": n} for n in levels],
            fixed_params={"setSize": self.blocked_set_size},
            default_on=False,  # blocked set sizes unless explicitly staircased
        )

    def build_trial(self, params: dict) -> TrialSetup:
        array = gen_search_array(
            self.mode, params["setSize"], self.rng, grid=GRID, item_size=ITEM_SIZE
        )
        self._array = array

        def on_response_enter():
            for i, item in enumerate(array.items):
                self.add_response_button(
                    f"item:{i}",
                    glyph_image(item.glyph, 36, item.color),
                    item.center,
                    ITEM_SIZE,
                )

        return TrialSetup(
            truth=f"item:{array.target_index}",
            descriptor={
                "mode": self.mode,
                "setSize": array.set_size,
                "targetIndex": array.target_index,
            },
            options=[
                ResponseOption(f"item:{i}", item.center)
                for i, item in enumerate(array.items)
            ],
            on_response_enter=on_response_enter,
        )

    def privileged_extras(self) -> dict:
        if self._array is None or self.phase != "response":
            return {"searchItems": None}
        items = []
        for i in self._array.raster_order():
            item = self._array.items[i]
            items.append(
                {
                    "label": f"item:{i}",
                    "center": [item.center[0], item.center[1]],
                    "isTarget": i == self._array.target_index,
                }
            )
        return {"searchItems": items}

    @property
    def n_alternatives(self) -> int:
        return self.blocked_set_size
