"""The step/reset simulation loop tying gaze, widgets, tasks, and rendering together."""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .config import EnvConfig
from .datasets import make_image_source
from .errors import ConfigError, InputError, UsageError
from .fovea import build_fovea_map, foveate
from .geometry import (
    GazeAction,
    GazeState,
    apply_action,
    gaze_for_screen_fraction,
    gaze_to_screen_point,
)
from .rendering import Renderer
from .rngutil import named_rng
from .triallog import TrialRecord
from .widgets import WidgetKit


@dataclass
class StepResult:
    observation: np.ndarray
    reward: float
    done: bool
    info: dict


@dataclass
class TaskContext:
    """Everything a task state machine needs from its host environment."""

    config: EnvConfig
    kit: WidgetKit
    rng: np.random.Generator
    stair_rng: np.random.Generator
    image_source: object
    env: "Environment"

    def current_step(self) -> int:
        return self.env.current_step

    def emit_record(self, record: TrialRecord) -> None:
        self.env._emit_record(record)

    def trial_reward(self, correct: bool) -> float:
        if correct:
            return 1.0
        return -1.0 if self.config.reward_scheme == "penalize_incorrect" else 0.0


class Environment:
    """One deterministic episode machine. Single-threaded; instances are independent."""

    def __init__(self, config: EnvConfig):
        config.validate()
        from .tasks import make_task  # deferred: tasks import env types

        self._make_task = make_task
        if config.task not in self.available_tasks():
            raise ConfigError(f"unknown task: {config.task!r}")
        self.config = config
        self.geom = config.geometry()

        if config.fovea is not None:
            render_lines = config.fovea[0]
            self._fovea_maps = (
                build_fovea_map(config.fovea[0], config.fovea[1]),
                build_fovea_map(config.fovea[0], config.fovea[1]),
            )
            render_w = render_h = render_lines
        else:
            self._fovea_maps = None
            render_w, render_h = config.observation_width, config.observation_height
        self.renderer = Renderer(
            self.geom, render_w, render_h, bilinear=config.bilinear_sampling
        )

        self.image_source = make_image_source(config.image_dataset_dir)
        self.gaze = GazeState()
        self.current_step = 0
        self.episode_seed: Optional[int] = None
        self.episode_id = ""
        self.episode_return = 0.0
        self.trial_records: list = []
        self.record_sink = None  # optional callable(TrialRecord)
        self._done = False
        self._was_reset = False
        # construct the task now so bad task parameters fail at configuration
        # time, not at the first reset; reset() rebuilds it per episode
        self.kit = self._fresh_kit()
        self.task = self._make_task(config.task, self._fresh_ctx(config.seed))

    @staticmethod
    def available_tasks() -> tuple:
        from .tasks import TASK_NAMES

        return TASK_NAMES

    # -- episode control ----------------------------------------------------

    def _fresh_kit(self) -> WidgetKit:
        kit = WidgetKit(
            self.geom.screen_width,
            self.geom.screen_height,
            background=self.config.screen_background,
        )
        kit.set_offscreen_color(self.config.world_background)
        return kit

    def _fresh_ctx(self, seed: int) -> TaskContext:
        return TaskContext(
            config=self.config,
            kit=self.kit,
            rng=named_rng(seed, "task"),
            stair_rng=named_rng(seed, "staircase"),
            image_source=self.image_source,
            env=self,
        )

    def reset(self, seed: Optional[int] = None, episode_id: str = "") -> np.ndarray:
        """Start a fresh episode; all randomness derives from `seed`."""
        self.episode_seed = int(self.config.seed if seed is None else seed)
        self.episode_id = episode_id or f"ep-{self.episode_seed}"
        self.kit = self._fresh_kit()
        self.task = self._make_task(self.config.task, self._fresh_ctx(self.episode_seed))
        self.gaze = GazeState(0.0, 0.0)
        self.current_step = 0
        self.episode_return = 0.0
        self.trial_records = []
        self._done = False
        self._was_reset = True
        self.task.on_episode_start()
        self.kit.drain_reward()  # setup must not leak reward into step 0
        return self._render()

    def step(self, action) -> StepResult:
        if not self._was_reset:
            raise UsageError("step() before reset()")
        if self._done:
            raise UsageError("step() after the episode ended; call reset()")
        action = self._as_action(action)
        cfg = self.config
        self.gaze = apply_action(
            self.gaze,
            action,
            max_rate=cfg.max_gaze_rate,
            max_yaw=cfg.max_gaze_yaw,
            max_pitch=cfg.max_gaze_pitch,
        )
        point = gaze_to_screen_point(self.gaze, self.geom)
        self.kit.dispatch_tick(point)
        self.task.on_tick()
        self.kit.composite_if_dirty()

        observation = self._render()
        reward = self.kit.drain_reward()
        self.episode_return += reward
        self.current_step += 1
        self._done = self.current_step >= cfg.episode_length_steps
        return StepResult(observation, reward, self._done, self._info())

    @property
    def done(self) -> bool:
        return self._done

    # -- internals ------------------------------------------------------------

    @staticmethod
    def _as_action(action) -> GazeAction:
        if isinstance(action, GazeAction):
            return action
        try:
            d_yaw, d_pitch = action
            return GazeAction(float(d_yaw), float(d_pitch))
        except (TypeError, ValueError) as exc:
            raise InputError(f"bad action {action!r}") from exc

    def _render(self) -> np.ndarray:
        obs = self.renderer.render(self.kit, self.gaze)
        if self._fovea_maps is not None:
            obs = foveate(obs, self._fovea_maps[0], self._fovea_maps[1])
        return obs

    def _emit_record(self, record: TrialRecord) -> None:
        record.episode_id = self.episode_id
        record.seed = self.episode_seed
        self.trial_records.append(record)
        if self.record_sink is not None:
            self.record_sink(record)

    def angles_for_fraction(self, fx: float, fy: float) -> tuple:
        gaze = gaze_for_screen_fraction(fx, fy, self.geom)
        return (gaze.yaw, gaze.pitch)

    def _info(self) -> dict:
        info = {
            "stepIndex": self.current_step,
            "trialIndex": self.task.trial_index,
            "phase": self.task.phase,
            "gaze": (self.gaze.yaw, self.gaze.pitch),
        }
        info.update(self.task.info_fields())
        if self.config.privileged_info:
            info["privileged"] = self.task.privileged_fields()
        return info


# discrete wrapper: noop + {left, right, up, down} x {small, large}
_DIRECTIONS = ((-1, 0), (1, 0), (0, 1), (0, -1))  # left, right, up, down


class DiscreteActionWrapper:
    """Nine-action view for agents with discrete action spaces."""

    def __init__(self, env: Environment, small: float = 0.5, large: Optional[float] = None):
        self.env = env
        large = env.config.max_gaze_rate if large is None else large
        actions = [GazeAction(0.0, 0.0)]
        for magnitude in (small, large):
            for dx, dy in _DIRECTIONS:
                actions.append(GazeAction(dx * magnitude, dy * magnitude))
        self.actions = tuple(actions)

    @property
    def n(self) -> int:
        return len(self.actions)

    def reset(self, seed: Optional[int] = None, episode_id: str = "") -> np.ndarray:
        return self.env.reset(seed=seed, episode_id=episode_id)

    def step(self, action_index: int) -> StepResult:
        if not 0 <= int(action_index) < len(self.actions):
            raise InputError(f"discrete action {action_index} outside 0..{len(self.actions) - 1}")
        return self.env.step(self.actions[int(action_index)])
