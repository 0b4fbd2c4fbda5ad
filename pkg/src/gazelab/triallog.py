"""Trial records and the newline-delimited JSON log.

One line per trial, append-only. Every record carries schemaVersion so
the format can evolve; reading a line back yields a record equal to the
one written.
"""

import json
from dataclasses import dataclass, field
from typing import List, Optional

from .errors import InputError

SCHEMA_VERSION = 1

_FIELDS = [
    ("schemaVersion", "schema_version"),
    ("episodeId", "episode_id"),
    ("trialIndex", "trial_index"),
    ("taskName", "task_name"),
    ("trialCaseKind", "trial_case_kind"),
    ("difficultyLevels", "difficulty_levels"),
    ("stimulusDescriptor", "stimulus_descriptor"),
    ("responseLabel", "response_label"),
    ("correct", "correct"),
    ("reactionSteps", "reaction_steps"),
    ("reward", "reward"),
    ("startStep", "start_step"),
    ("endStep", "end_step"),
    ("seed", "seed"),
]


@dataclass
class TrialRecord:
    episode_id: str = ""
    trial_index: int = 0
    task_name: str = ""
    trial_case_kind: str = "base"
    difficulty_levels: list = field(default_factory=list)
    stimulus_descriptor: dict = field(default_factory=dict)
    response_label: str = ""
    correct: bool = False
    reaction_steps: int = 0
    reward: float = 0.0
    start_step: int = 0
    end_step: int = 0
    seed: int = 0
    schema_version: int = SCHEMA_VERSION

    def to_json_dict(self) -> dict:
        return {key: getattr(self, attr) for key, attr in _FIELDS}

    @classmethod
    def from_json_dict(cls, data: dict) -> "TrialRecord":
        kwargs = {}
        for key, attr in _FIELDS:
            if key not in data:
                raise InputError(f"record missing field {key!r}")
            kwargs[attr] = data[key]
        return cls(**kwargs)


def record_to_line(record: TrialRecord) -> str:
    return json.dumps(record.to_json_dict(), sort_keys=True, separators=(",", ":"))


def append_trial_record(sink, record: TrialRecord) -> None:
    """Write one record to an open text sink as a single line."""
    sink.write(record_to_line(record))
    sink.write("\n")


class TrialLogWriter:
    """Append-only log file; flushes on demand (the runner flushes per episode)."""

    def __init__(self, path: str):
        self.path = path
        self._fh = open(path, "a", encoding="utf-8")

    def append(self, record: TrialRecord) -> None:
        append_trial_record(self._fh, record)

    def flush(self) -> None:
        self._fh.flush()

    def close(self) -> None:
        self._fh.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def read_trial_log(path: str) -> List[TrialRecord]:
    """Parse a log file; malformed lines raise with their line number."""
    records = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                data = json.loads(line)
                records.append(TrialRecord.from_json_dict(data))
            except (json.JSONDecodeError, InputError, TypeError) as exc:
                raise InputError(f"{path}:{lineno}: bad trial record: {exc}") from exc
    return records


def filter_records(
    records: List[TrialRecord],
    task_name: Optional[str] = None,
    correct_only: bool = False,
) -> List[TrialRecord]:
    out = records
    if task_name is not None:
        out = [r for r in out if r.task_name == task_name]
    if correct_only:
        out = [r for r in out if r.correct]
    return out
