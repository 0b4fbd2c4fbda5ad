"""Shared trial state machine.

Every paradigm runs the same skeleton: a red fixation cross must be held
for fixationHoldSteps to start a trial; the staircase samples difficulty
parameters; the concrete task lays out stimuli and (possibly after timed
presentation/retention phases) response widgets; holding gaze on a
response widget for responseHoldSteps commits the answer; the judged
outcome pays reward, feeds the staircase, and emits one TrialRecord;
a blank intertrial pause leads back to the fixation cross. A response
phase that outlives responseTimeoutSteps ends the trial as incorrect.
"""

from dataclasses import dataclass, field
from typing import Callable, List, Optional

import numpy as np

from ..staircase import DifficultyLadder, Staircase, Staircase2D
from ..stimuli.draw import fixation_cross_image
from ..triallog import TrialRecord
from ..widgets import Widget
from ..errors import ConfigError

PHASE_AWAIT_FIXATION = "awaitFixation"
PHASE_RESPONSE = "response"
PHASE_INTERTRIAL = "intertrial"

FIXATION_WIDGET = "fixation"
FIXATION_SIZE = 0.07


@dataclass
class ResponseOption:
    label: str
    center: tuple  # (fx, fy) screen fractions


@dataclass
class PhaseSpec:
    """A timed phase before the response opens (presentation, retention, ...)."""

    name: str
    duration: int
    on_enter: Optional[Callable] = None
    on_tick: Optional[Callable] = None


@dataclass
class TrialSetup:
    truth: str
    descriptor: dict
    options: List[ResponseOption]
    pre_phases: List[PhaseSpec] = field(default_factory=list)
    on_response_enter: Optional[Callable] = None
    on_response_tick: Optional[Callable] = None


class Task:
    """Base driver; concrete paradigms implement the hooks at the bottom."""

    name = "task"

    def __init__(self, ctx):
        self.ctx = ctx
        self.cfg = ctx.config
        self.kit = ctx.kit
        self.rng = ctx.rng
        self.phase = PHASE_AWAIT_FIXATION
        self.trial_index = 0
        self.staircase = self.make_staircase()
        self._setup: Optional[TrialSetup] = None
        self._case = None
        self._trial_widgets: List[str] = []
        self._pending_phases: List[PhaseSpec] = []
        self._current_phase: Optional[PhaseSpec] = None
        self._phase_entered_step = 0
        self._trial_start_step = 0
        self._response_onset = 0

    # -- configuration helpers ---------------------------------------------

    def param(self, key: str, default):
        """Read a key from taskParams with its documented default."""
        return self.cfg.task_params.get(key, default)

    def staircase_on(self, default: bool = True) -> bool:
        enabled = self.cfg.staircase_enabled
        return default if enabled is None else enabled

    def build_1d_staircase(self, levels, fixed_params: dict, default_on: bool = True):
        if not self.staircase_on(default_on):
            levels = [fixed_params]
        return Staircase(
            DifficultyLadder(levels),
            w_min=self.cfg.staircase_w_min,
            initial_level=min(self.cfg.staircase_initial_level, len(levels)),
        )

    def build_2d_staircase(self, levels1, levels2):
        return Staircase2D(
            (DifficultyLadder(levels1), DifficultyLadder(levels2)),
            w_min=self.cfg.staircase_w_min,
            initial_level=self.cfg.staircase_initial_level,
        )

    # -- episode / phase driver ---------------------------------------------

    def on_episode_start(self) -> None:
        self.staircase.reset()
        self.trial_index = 0
        self._show_fixation_cross()

    def _show_fixation_cross(self) -> None:
        self.phase = PHASE_AWAIT_FIXATION
        half = FIXATION_SIZE / 2.0
        self.kit.add_widget(
            Widget(
                FIXATION_WIDGET,
                fixation_cross_image(48),
                pos=(0.5 - half, 0.5 - half),
                size=(FIXATION_SIZE, FIXATION_SIZE),
                on_hover=self._fixation_hover,
            )
        )

    def _fixation_hover(self, _widget, hover_time: int) -> None:
        if self.phase == PHASE_AWAIT_FIXATION and hover_time >= self.cfg.fixation_hold_steps:
            self._start_trial()

    def _start_trial(self) -> None:
        params, case = self.staircase.next_trial(self.ctx.stair_rng)
        self._case = case
        self._setup = self.build_trial(params)
        self._trial_start_step = self.ctx.current_step()
        self.kit.remove_widget(FIXATION_WIDGET)
        self._pending_phases = list(self._setup.pre_phases)
        self._advance_phase()

    def _advance_phase(self) -> None:
        if self._pending_phases:
            spec = self._pending_phases.pop(0)
            self.phase = spec.name
            self._current_phase = spec
            self._phase_entered_step = self.ctx.current_step()
            if spec.on_enter:
                spec.on_enter()
            return
        self._current_phase = None
        self.phase = PHASE_RESPONSE
        self._phase_entered_step = self.ctx.current_step()
        self._response_onset = self._phase_entered_step
        if self._setup.on_response_enter:
            self._setup.on_response_enter()

    def on_tick(self) -> None:
        now = self.ctx.current_step()
        if self.phase == PHASE_AWAIT_FIXATION:
            return
        if self.phase == PHASE_INTERTRIAL:
            if now - self._phase_entered_step >= self.cfg.intertrial_steps:
                self._show_fixation_cross()
            return
        if self.phase == PHASE_RESPONSE:
            if self._setup.on_response_tick:
                self._setup.on_response_tick()
            if now - self._response_onset >= self.cfg.response_timeout_steps:
                self._finish_trial(
                    label="",
                    correct=False,
                    reaction=self.cfg.response_timeout_steps,
                    timed_out=True,
                )
            return
        spec = self._current_phase
        if spec is None:
            return
        if spec.on_tick:
            spec.on_tick()
        if now - self._phase_entered_step >= spec.duration:
            self._advance_phase()

    # -- widget helpers -------------------------------------------------------

    def add_trial_widget(self, widget: Widget) -> None:
        self._trial_widgets.append(widget.name)
        self.kit.add_widget(widget)

    def add_stimulus(self, name: str, image: np.ndarray, center: tuple, size) -> None:
        if isinstance(size, (int, float)):
            size = (size, size)
        pos = (center[0] - size[0] / 2.0, center[1] - size[1] / 2.0)
        self.add_trial_widget(Widget(name, image, pos, size))

    def add_response_button(self, label: str, image: np.ndarray, center: tuple, size) -> None:
        if isinstance(size, (int, float)):
            size = (size, size)
        pos = (center[0] - size[0] / 2.0, center[1] - size[1] / 2.0)
        self.add_trial_widget(
            Widget(
                f"resp:{label}",
                image,
                pos,
                size,
                on_hover=self._response_hover,
                user_data={"label": label},
            )
        )

    def _response_hover(self, widget: Widget, hover_time: int) -> None:
        if self.phase == PHASE_RESPONSE and hover_time >= self.cfg.response_hold_steps:
            label = widget.user_data["label"]
            reaction = self.ctx.current_step() - self._response_onset
            self._finish_trial(
                label=label,
                correct=self.judge(label, self._setup.truth),
                reaction=reaction,
                timed_out=False,
            )

    # -- trial completion -------------------------------------------------------

    def _finish_trial(self, label: str, correct: bool, reaction: int, timed_out: bool) -> None:
        reward = self.ctx.trial_reward(correct)
        if reward:
            self.kit.add_reward(reward)
        now = self.ctx.current_step()
        descriptor = dict(self._setup.descriptor)
        descriptor["timedOut"] = timed_out
        self.ctx.emit_record(
            TrialRecord(
                trial_index=self.trial_index,
                task_name=self.name,
                trial_case_kind=self._case.kind,
                difficulty_levels=list(self._case.sampled_levels),
                stimulus_descriptor=descriptor,
                response_label=label,
                correct=bool(correct),
                reaction_steps=int(reaction),
                reward=float(reward),
                start_step=self._trial_start_step,
                end_step=now,
            )
        )
        self.staircase.record_outcome(self._case, correct)
        self.trial_index += 1
        for name in self._trial_widgets:
            if self.kit.has_widget(name):
                self.kit.remove_widget(name)
        self._trial_widgets = []
        self._setup = None
        self._case = None
        self.phase = PHASE_INTERTRIAL
        self._phase_entered_step = now

    # -- information channels ----------------------------------------------------

    def info_fields(self) -> dict:
        options = None
        if self.phase == PHASE_RESPONSE and self._setup is not None:
            options = [[o.label, [o.center[0], o.center[1]]] for o in self._setup.options]
        return {
            "responseOptions": options,
            "fixationPoint": [0.5, 0.5] if self.phase == PHASE_AWAIT_FIXATION else None,
        }

    def gaze_target_fraction(self) -> tuple:
        if self.phase == PHASE_RESPONSE and self._setup is not None:
            for option in self._setup.options:
                if option.label == self._setup.truth:
                    return option.center
        return (0.5, 0.5)

    def privileged_fields(self) -> dict:
        target = self.gaze_target_fraction()
        fields = {
            "groundTruth": self._setup.truth if self._setup else None,
            "gazeTarget": list(self.ctx.env.angles_for_fraction(*target)),
            "trialCase": self._case.kind if self._case else None,
            "levels": list(self._case.sampled_levels) if self._case else None,
            "descriptor": dict(self._setup.descriptor) if self._setup else None,
        }
        fields.update(self.privileged_extras())
        return fields

    def privileged_extras(self) -> dict:
        return {}

    # -- hooks for concrete paradigms ---------------------------------------------

    def make_staircase(self):
        raise NotImplementedError

    def build_trial(self, params: dict) -> TrialSetup:
        raise NotImplementedError

    def judge(self, label: str, truth: str) -> bool:
        return label == truth

    @property
    def n_alternatives(self) -> int:
        raise NotImplementedError

    @property
    def chance_level(self) -> float:
        return 1.0 / self.n_alternatives


def require(condition: bool, message: str) -> None:
    if not condition:
        raise ConfigError(message)
