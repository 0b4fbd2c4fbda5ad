"""Shared helpers: fast-paced configs and scripted gaze drivers."""

import numpy as np
import pytest

from gazelab import EnvConfig, Environment
from gazelab.policies import Policy


def fast_config(task: str, **overrides) -> EnvConfig:
    """Defaults with short holds/delays so trials complete in tens of steps."""
    task_params = overrides.pop("task_params", {})
    if task == "change_detection":
        task_params.setdefault("sampleSteps", 10)
        task_params.setdefault("delayLevels", [4, 8, 16])
    if task == "mot":
        task_params.setdefault("cueSteps", 8)
        task_params.setdefault("trackSteps", 30)
    cfg = dict(
        task=task,
        seed=0,
        fixation_hold_steps=5,
        response_hold_steps=5,
        response_timeout_steps=200,
        intertrial_steps=3,
        episode_length_steps=200000,
        privileged_info=True,
        task_params=task_params,
    )
    cfg.update(overrides)
    return EnvConfig(**cfg).validate()


class LabelPolicy(Policy):
    """Navigates to the option chosen by pick(info) each trial (test scripting)."""

    name = "label"

    def __init__(self, env: Environment, pick):
        super().__init__(env)
        self._pick = pick
        self._trial = None
        self._label = None

    def act(self, observation, info):
        options = info.get("responseOptions")
        if options:
            if self._trial != info["trialIndex"] or self._label is None:
                self._trial = info["trialIndex"]
                self._label = self._pick(info)
            for label, center in options:
                if label == self._label:
                    return self._go_to_fraction(info, center)
        point = info.get("fixationPoint")
        if point:
            return self._go_to_fraction(info, point)
        return self._hold_center(info)


def run_trials(env: Environment, policy: Policy, n_trials: int, seed: int = 7):
    """Step until n_trials records exist; returns the records."""
    from gazelab.runner import run_episodes

    records, _ = run_episodes(
        env, policy, n_episodes=50, seed=seed, max_trials=n_trials,
        hash_observations=False,
    )
    return records


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
