"""Episode runner: drives (env, policy) pairs and streams trial records."""

import hashlib
from dataclasses import dataclass, field
from typing import List, Optional

from .env import Environment
from .policies import Policy
from .rngutil import derive_seed
from .triallog import TrialLogWriter, TrialRecord


@dataclass
class RunSummary:
    episodes: int = 0
    steps: int = 0
    trials: int = 0
    correct: int = 0
    total_reward: float = 0.0
    observation_sha256: str = ""
    episode_returns: List[float] = field(default_factory=list)
    episode_correct: List[int] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "episodes": self.episodes,
            "steps": self.steps,
            "trials": self.trials,
            "correct": self.correct,
            "accuracy": (self.correct / self.trials) if self.trials else None,
            "totalReward": self.total_reward,
            "observationSha256": self.observation_sha256,
        }


def run_episodes(
    env: Environment,
    policy: Policy,
    n_episodes: int,
    seed: int,
    writer: Optional[TrialLogWriter] = None,
    max_trials: Optional[int] = None,
    hash_observations: bool = True,
) -> tuple:
    """Run `n_episodes` episodes; returns (records, RunSummary).

    Episode i runs on a child seed of `seed`, the policy on its own child
    seed, so the whole run is a pure function of (seed, policy, config).
    Records stream to `writer` as they happen; the log flushes per episode.
    An episode ends early once `max_trials` total trials have completed.
    """
    records: List[TrialRecord] = []
    summary = RunSummary()
    digest = hashlib.sha256()

    def sink(record: TrialRecord) -> None:
        records.append(record)
        if writer is not None:
            writer.append(record)

    env.record_sink = sink
    try:
        for episode in range(n_episodes):
            episode_seed = derive_seed(seed, f"episode-{episode}")
            observation = env.reset(seed=episode_seed, episode_id=f"ep{episode:04d}")
            policy.begin_episode(derive_seed(seed, f"policy-{episode}"))
            if hash_observations:
                digest.update(observation.tobytes())
            info = {"stepIndex": 0, "trialIndex": 0, "phase": env.task.phase,
                    "gaze": (0.0, 0.0)}
            info.update(env.task.info_fields())
            if env.config.privileged_info:
                info["privileged"] = env.task.privileged_fields()
            while not env.done:
                action = policy.act(observation, info)
                result = env.step(action)
                observation, info = result.observation, result.info
                if hash_observations:
                    digest.update(observation.tobytes())
                summary.steps += 1
                if max_trials is not None and len(records) >= max_trials:
                    break
            summary.episodes += 1
            summary.episode_returns.append(env.episode_return)
            summary.episode_correct.append(
                sum(1 for r in env.trial_records if r.correct)
            )
            if writer is not None:
                writer.flush()
            if max_trials is not None and len(records) >= max_trials:
                break
    finally:
        env.record_sink = None

    summary.trials = len(records)
    summary.correct = sum(1 for r in records if r.correct)
    summary.total_reward = float(sum(summary.episode_returns))
    summary.observation_sha256 = digest.hexdigest() if hash_observations else ""
    return records, summary
