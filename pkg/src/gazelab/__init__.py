"""gazelab: a deterministic gaze-controlled psychophysics environment.

Scripted agents (and humans, through the session server plus browser
client) perform classical visual psychophysics tasks on a virtual
monitor: trials start by fixating a red cross, answers are saccades held
on response widgets, difficulty follows an adaptive staircase, and every
trial lands in an analyzable log.
"""

from .config import EnvConfig, load_config
from .env import DiscreteActionWrapper, Environment, StepResult
from .errors import (
    ConfigError,
    DatasetError,
    GazeLabError,
    InputError,
    StimulusError,
    UsageError,
    WireError,
)
from .geometry import GazeAction, GazeState, MonitorGeometry, ScreenPoint
from .fovea import FoveaMap, build_fovea_map, foveate
from .staircase import DifficultyLadder, Staircase, Staircase2D
from .triallog import TrialRecord, read_trial_log

__version__ = "0.1.0"

__all__ = [
    "EnvConfig",
    "load_config",
    "Environment",
    "DiscreteActionWrapper",
    "StepResult",
    "GazeAction",
    "GazeState",
    "MonitorGeometry",
    "ScreenPoint",
    "FoveaMap",
    "build_fovea_map",
    "foveate",
    "DifficultyLadder",
    "Staircase",
    "Staircase2D",
    "TrialRecord",
    "read_trial_log",
    "GazeLabError",
    "ConfigError",
    "InputError",
    "UsageError",
    "StimulusError",
    "DatasetError",
    "WireError",
]
