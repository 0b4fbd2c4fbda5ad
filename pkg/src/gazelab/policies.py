"""Scripted observers.

All policies steer gaze with the same proportional controller (turn
toward a target point, rate-capped). They differ in how they pick the
target: the oracle reads the privileged ground truth, the random
responder picks a uniformly random response option per trial, the serial
scanner walks search items in raster order, and the noisy oracle answers
correctly with a level-dependent probability (the staircase test load).
"""

from typing import Optional

import numpy as np

from .env import Environment
from .errors import UsageError
from .geometry import GazeAction
from .rngutil import named_rng

CONTROLLER_GAIN = 0.4


class GazeController:
    """Proportional controller: turn toward target angles, capped at max rate."""

    def __init__(self, max_rate: float, gain: float = CONTROLLER_GAIN):
        self.max_rate = max_rate
        self.gain = gain

    def toward(self, gaze: tuple, target: tuple) -> GazeAction:
        d_yaw = self.gain * (target[0] - gaze[0])
        d_pitch = self.gain * (target[1] - gaze[1])
        cap = self.max_rate
        return GazeAction(
            min(max(d_yaw, -cap), cap), min(max(d_pitch, -cap), cap)
        )


class Policy:
    """act(observation, info) -> GazeAction; begin_episode reseeds per episode."""

    name = "policy"
    needs_privileged = False

    def __init__(self, env: Environment):
        self.env = env
        if self.needs_privileged and not env.config.privileged_info:
            raise UsageError(
                f"{self.name} policy requires privilegedInfo=true on the environment"
            )
        self.controller = GazeController(env.config.max_gaze_rate)
        self.rng = np.random.default_rng(0)

    def begin_episode(self, seed: int) -> None:
        self.rng = named_rng(seed, f"policy-{self.name}")

    def act(self, observation, info: dict) -> GazeAction:
        raise NotImplementedError

    # -- shared helpers ------------------------------------------------------

    def _go_to_fraction(self, info: dict, fraction: tuple) -> GazeAction:
        target = self.env.angles_for_fraction(fraction[0], fraction[1])
        return self.controller.toward(info["gaze"], target)

    def _hold_center(self, info: dict) -> GazeAction:
        return self._go_to_fraction(info, (0.5, 0.5))


class RandomWalkPolicy(Policy):
    """Uniform random gaze deltas; a floor baseline, not a chance-level one."""

    name = "randomwalk"

    def act(self, observation, info: dict) -> GazeAction:
        cap = self.env.config.max_gaze_rate
        d = self.rng.uniform(-cap, cap, size=2)
        return GazeAction(float(d[0]), float(d[1]))


class RandomResponderPolicy(Policy):
    """Fixates, then commits a uniformly random response option each trial.

    Response choice is independent of the stimulus, so accuracy sits at
    exactly 1/k for k uniformly-labeled alternatives.
    """

    name = "random"

    def __init__(self, env: Environment):
        super().__init__(env)
        self._trial: Optional[int] = None
        self._choice: Optional[tuple] = None

    def begin_episode(self, seed: int) -> None:
        super().begin_episode(seed)
        self._trial, self._choice = None, None

    def act(self, observation, info: dict) -> GazeAction:
        options = info.get("responseOptions")
        if options:
            if self._trial != info["trialIndex"] or self._choice is None:
                self._trial = info["trialIndex"]
                self._choice = options[self.rng.integers(len(options))]
            return self._go_to_fraction(info, self._choice[1])
        self._choice = None
        point = info.get("fixationPoint")
        if point:
            return self._go_to_fraction(info, point)
        return self._hold_center(info)


class OraclePolicy(Policy):
    """Follows the privileged gaze target; completes every trial correctly."""

    name = "oracle"
    needs_privileged = True

    def act(self, observation, info: dict) -> GazeAction:
        target = info["privileged"]["gazeTarget"]
        return self.controller.toward(info["gaze"], target)


class NoisyOraclePolicy(Policy):
    """Oracle that errs on purpose: correct with probability accuracy(level).

    `accuracy_by_level` maps a 1-based difficulty level to a probability;
    wrong answers pick uniformly among the other options. Drives the
    staircase convergence checks.
    """

    name = "noisy"
    needs_privileged = True

    def __init__(self, env: Environment, accuracy_by_level):
        super().__init__(env)
        self.accuracy_by_level = accuracy_by_level
        self._trial: Optional[int] = None
        self._target_label: Optional[str] = None

    def begin_episode(self, seed: int) -> None:
        super().begin_episode(seed)
        self._trial, self._target_label = None, None

    @classmethod
    def step_profile(cls, env: Environment, easy_max_level: int, easy: float, hard: float):
        return cls(env, lambda level: easy if level <= easy_max_level else hard)

    def act(self, observation, info: dict) -> GazeAction:
        options = info.get("responseOptions")
        if options:
            if self._trial != info["trialIndex"] or self._target_label is None:
                self._trial = info["trialIndex"]
                self._target_label = self._pick_label(info, options)
            for label, center in options:
                if label == self._target_label:
                    return self._go_to_fraction(info, center)
        point = info.get("fixationPoint")
        if point:
            return self._go_to_fraction(info, point)
        return self._hold_center(info)

    def _pick_label(self, info: dict, options: list) -> str:
        priv = info["privileged"]
        truth = priv["groundTruth"]
        level = max(priv["levels"])  # 2D tasks: the harder of the two dimensions
        if self.rng.uniform() < self.accuracy_by_level(level):
            return truth
        wrong = [label for label, _ in options if label != truth]
        return wrong[self.rng.integers(len(wrong))]


class SerialScannerPolicy(Policy):
    """Visual search only: inspect items in raster order, commit on the target.

    Dwells `identify_steps` on each distractor (well under the commit
    hold), so reaction time grows linearly with the target's scan
    position; that is the serial-search signature.
    """

    name = "scanner"
    needs_privileged = True

    def __init__(self, env: Environment, identify_steps: int = None):
        super().__init__(env)
        hold = env.config.response_hold_steps
        if identify_steps is None:
            identify_steps = max(1, min(6, hold // 2))
        if identify_steps >= hold:
            raise UsageError("identify dwell must stay below the response hold time")
        self.identify_steps = identify_steps
        self._trial: Optional[int] = None
        self._scan_index = 0
        self._dwell = 0

    def begin_episode(self, seed: int) -> None:
        super().begin_episode(seed)
        self._trial, self._scan_index, self._dwell = None, 0, 0

    def act(self, observation, info: dict) -> GazeAction:
        items = info["privileged"].get("searchItems")
        if not items:
            self._trial = None
            point = info.get("fixationPoint")
            if point:
                return self._go_to_fraction(info, point)
            return self._hold_center(info)

        if self._trial != info["trialIndex"]:
            self._trial = info["trialIndex"]
            self._scan_index, self._dwell = 0, 0
        item = items[min(self._scan_index, len(items) - 1)]
        action = self._go_to_fraction(info, item["center"])
        if self._on_point(info, item["center"]):
            if item["isTarget"]:
                return action  # stay until the hold commits
            self._dwell += 1
            if self._dwell >= self.identify_steps:
                self._scan_index += 1
                self._dwell = 0
        return action

    def _on_point(self, info: dict, fraction: tuple) -> bool:
        target = self.env.angles_for_fraction(fraction[0], fraction[1])
        gaze = info["gaze"]
        return abs(gaze[0] - target[0]) < 1.2 and abs(gaze[1] - target[1]) < 1.2


def make_policy(spec: str, env: Environment) -> Policy:
    """Build a policy from its CLI spec (random | randomwalk | oracle | scanner | noisy:L:EASY:HARD)."""
    if spec == "random":
        return RandomResponderPolicy(env)
    if spec == "randomwalk":
        return RandomWalkPolicy(env)
    if spec == "oracle":
        return OraclePolicy(env)
    if spec == "scanner":
        return SerialScannerPolicy(env)
    if spec.startswith("noisy:"):
        parts = spec.split(":")
        if len(parts) != 4:
            raise UsageError("noisy policy spec is noisy:LEVEL:EASY_ACC:HARD_ACC")
        return NoisyOraclePolicy.step_profile(
            env, int(parts[1]), float(parts[2]), float(parts[3])
        )
    raise UsageError(f"unknown policy {spec!r}")
