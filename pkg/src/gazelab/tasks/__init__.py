"""Task registry: paradigm name -> state machine factory."""

from ..errors import ConfigError
from .base import PHASE_AWAIT_FIXATION, PHASE_INTERTRIAL, PHASE_RESPONSE, Task
from .change_detection import ChangeDetectionTask
from .glass import GlassTask
from .landolt import LandoltTask
from .memory import ContinuousRecognitionTask, VisuomotorMappingTask
from .mot import MOTTask
from .motion import MotionTask
from .search import SearchTask

_REGISTRY = {
    task.name: task
    for task in (
        LandoltTask,
        GlassTask,
        MotionTask,
        SearchTask,
        ChangeDetectionTask,
        MOTTask,
        ContinuousRecognitionTask,
        VisuomotorMappingTask,
    )
}

TASK_NAMES = tuple(sorted(_REGISTRY))


def make_task(name: str, ctx) -> Task:
    cls = _REGISTRY.get(name)
    if cls is None:
        raise ConfigError(f"unknown task: {name!r} (available: {', '.join(TASK_NAMES)})")
    return cls(ctx)


__all__ = [
    "Task",
    "TASK_NAMES",
    "make_task",
    "PHASE_AWAIT_FIXATION",
    "PHASE_RESPONSE",
    "PHASE_INTERTRIAL",
]
