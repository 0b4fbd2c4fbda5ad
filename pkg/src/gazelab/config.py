"""Environment configuration: the dataclass, defaults, and the file loader.

Config files are YAML with camelCase keys (see KEY_MAP for the full set).
An empty file yields all defaults; unknown keys, type mismatches, and
constraint violations are rejected with the offending key named.
"""

from dataclasses import asdict, dataclass, field, replace
from typing import Optional

import yaml

from .errors import ConfigError
from .geometry import MonitorGeometry

REWARD_SCHEMES = ("default", "penalize_incorrect")


@dataclass
class EnvConfig:
    # task selection
    task: str = "landolt"
    task_params: dict = field(default_factory=dict)
    seed: int = 0
    episode_length_steps: int = 10800

    # monitor geometry and rendering
    distance: float = 1.0
    monitor_width: float = 1.0
    monitor_height: float = 1.0
    screen_width: int = 512
    screen_height: int = 512
    fov_degrees: float = 60.0
    observation_width: int = 84
    observation_height: int = 84
    world_background: tuple = (40, 40, 40)
    screen_background: tuple = (127, 127, 127)
    bilinear_sampling: bool = False
    fovea: Optional[tuple] = None  # (renderLines, keptLines) per axis

    # gaze kinematics
    max_gaze_yaw: float = 60.0
    max_gaze_pitch: float = 60.0
    max_gaze_rate: float = 2.5

    # reward and information channels
    reward_scheme: str = "default"
    privileged_info: bool = False

    # trial pacing (steps)
    fixation_hold_steps: int = 30
    response_hold_steps: int = 20
    response_timeout_steps: int = 600
    intertrial_steps: int = 30

    # staircase
    staircase_w_min: int = 3
    staircase_initial_level: int = 1
    staircase_enabled: Optional[bool] = None  # None = task default

    # stimulus images
    image_dataset_dir: Optional[str] = None

    def geometry(self) -> MonitorGeometry:
        return MonitorGeometry(
            distance=self.distance,
            monitor_width=self.monitor_width,
            monitor_height=self.monitor_height,
            screen_width=self.screen_width,
            screen_height=self.screen_height,
            fov_degrees=self.fov_degrees,
        )

    def validate(self) -> "EnvConfig":
        self.geometry().validate()
        _require(self.episode_length_steps >= 1, "episodeLengthSteps", "must be >= 1")
        _require(self.observation_width >= 8, "observationWidth", "must be >= 8")
        _require(self.observation_height >= 8, "observationHeight", "must be >= 8")
        _require(self.max_gaze_rate > 0, "maxGazeRate", "must be > 0")
        _require(0 < self.max_gaze_yaw < 90, "maxGazeYaw", "must be in (0, 90)")
        _require(0 < self.max_gaze_pitch < 90, "maxGazePitch", "must be in (0, 90)")
        _require(
            self.reward_scheme in REWARD_SCHEMES,
            "rewardScheme",
            f"must be one of {REWARD_SCHEMES}",
        )
        _require(self.fixation_hold_steps >= 1, "fixationHoldSteps", "must be >= 1")
        _require(self.response_hold_steps >= 1, "responseHoldSteps", "must be >= 1")
        _require(self.response_timeout_steps >= 1, "responseTimeoutSteps", "must be >= 1")
        _require(self.intertrial_steps >= 0, "intertrialSteps", "must be >= 0")
        _require(self.staircase_w_min >= 1, "staircaseWMin", "must be >= 1")
        _require(self.staircase_initial_level >= 1, "staircaseInitialLevel", "must be >= 1")
        for name, value in (("worldBackground", self.world_background),
                            ("screenBackground", self.screen_background)):
            _require(
                len(value) == 3 and all(0 <= int(c) <= 255 for c in value),
                name,
                "must be three 0..255 components",
            )
        if self.fovea is not None:
            n_in, n_out = self.fovea
            _require(1 <= n_out <= n_in, "fovea", "needs keptLines <= renderLines")
        return self


# camelCase file key -> dataclass field
KEY_MAP = {
    "task": "task",
    "taskParams": "task_params",
    "seed": "seed",
    "episodeLengthSteps": "episode_length_steps",
    "distance": "distance",
    "monitorWidth": "monitor_width",
    "monitorHeight": "monitor_height",
    "screenWidth": "screen_width",
    "screenHeight": "screen_height",
    "fovDegrees": "fov_degrees",
    "observationWidth": "observation_width",
    "observationHeight": "observation_height",
    "worldBackground": "world_background",
    "screenBackground": "screen_background",
    "bilinearSampling": "bilinear_sampling",
    "fovea": "fovea",
    "maxGazeYaw": "max_gaze_yaw",
    "maxGazePitch": "max_gaze_pitch",
    "maxGazeRate": "max_gaze_rate",
    "rewardScheme": "reward_scheme",
    "privilegedInfo": "privileged_info",
    "fixationHoldSteps": "fixation_hold_steps",
    "responseHoldSteps": "response_hold_steps",
    "responseTimeoutSteps": "response_timeout_steps",
    "intertrialSteps": "intertrial_steps",
    "staircaseWMin": "staircase_w_min",
    "staircaseInitialLevel": "staircase_initial_level",
    "staircaseEnabled": "staircase_enabled",
    "imageDatasetDir": "image_dataset_dir",
}

_INT_FIELDS = {
    "seed", "episode_length_steps", "screen_width", "screen_height",
    "observation_width", "observation_height", "fixation_hold_steps",
    "response_hold_steps", "response_timeout_steps", "intertrial_steps",
    "staircase_w_min", "staircase_initial_level",
}
_FLOAT_FIELDS = {
    "distance", "monitor_width", "monitor_height", "fov_degrees",
    "max_gaze_yaw", "max_gaze_pitch", "max_gaze_rate",
}
_BOOL_FIELDS = {"bilinear_sampling", "privileged_info", "staircase_enabled"}


def _require(ok: bool, key: str, message: str) -> None:
    if not ok:
        raise ConfigError(f"{key}: {message}")


def _coerce(key: str, attr: str, value):
    if attr in _INT_FIELDS:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"{key}: expected an integer, got {value!r}")
        return value
    if attr in _FLOAT_FIELDS:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{key}: expected a number, got {value!r}")
        return float(value)
    if attr in _BOOL_FIELDS:
        if not isinstance(value, bool):
            raise ConfigError(f"{key}: expected a boolean, got {value!r}")
        return value
    if attr in ("world_background", "screen_background"):
        if not isinstance(value, (list, tuple)) or len(value) != 3:
            raise ConfigError(f"{key}: expected [r, g, b]")
        return tuple(int(c) for c in value)
    if attr == "fovea":
        return parse_fovea(value, key=key)
    if attr == "task_params":
        if not isinstance(value, dict):
            raise ConfigError(f"{key}: expected a mapping")
        return dict(value)
    if attr in ("task", "reward_scheme", "image_dataset_dir"):
        if not isinstance(value, str):
            raise ConfigError(f"{key}: expected a string, got {value!r}")
        return value
    return value


def parse_fovea(value, key: str = "fovea") -> tuple:
    """Accept "168:84" or [168, 84]; returns (renderLines, keptLines)."""
    if isinstance(value, str):
        parts = value.split(":")
        if len(parts) != 2:
            raise ConfigError(f"{key}: expected 'renderLines:keptLines'")
        try:
            pair = (int(parts[0]), int(parts[1]))
        except ValueError:
            raise ConfigError(f"{key}: expected integers, got {value!r}") from None
    elif isinstance(value, (list, tuple)) and len(value) == 2:
        pair = (int(value[0]), int(value[1]))
    else:
        raise ConfigError(f"{key}: expected 'nIn:nOut' or [nIn, nOut], got {value!r}")
    return pair


def config_from_mapping(mapping: dict, base: EnvConfig = None) -> EnvConfig:
    """Apply file keys over `base` (or the defaults) and validate."""
    cfg = base if base is not None else EnvConfig()
    updates = {}
    for key, value in (mapping or {}).items():
        attr = KEY_MAP.get(key)
        if attr is None:
            raise ConfigError(f"unknown config key: {key!r}")
        updates[attr] = _coerce(key, attr, value)
    return replace(cfg, **updates).validate()


def load_config(path: str, base: EnvConfig = None) -> EnvConfig:
    """Load a YAML config file; an empty file yields all defaults."""
    with open(path, "r", encoding="utf-8") as fh:
        raw = yaml.safe_load(fh)
    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: top level must be a mapping")
    return config_from_mapping(raw, base=base)


def config_summary(cfg: EnvConfig) -> dict:
    """Compact, JSON-friendly view (used by the protocol handshake)."""
    out_w, out_h = cfg.observation_width, cfg.observation_height
    if cfg.fovea is not None:
        out_w = out_h = cfg.fovea[1]
    return {
        "task": cfg.task,
        "observationWidth": out_w,
        "observationHeight": out_h,
        "episodeLengthSteps": cfg.episode_length_steps,
        "fovea": list(cfg.fovea) if cfg.fovea else None,
        "privilegedInfo": cfg.privileged_info,
    }


def as_dict(cfg: EnvConfig) -> dict:
    return asdict(cfg)
