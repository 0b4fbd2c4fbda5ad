"""Session wire protocol.

Every message is one self-delimiting frame:

    4 bytes  payload length, big-endian unsigned
    1 byte   type tag
    N bytes  payload

Control payloads (HELLO, CONFIG_ACK, RESET, STEP, ERROR, BYE) are UTF-8
JSON for debuggability. OBS payloads are binary for throughput: a
13-byte header ``>HHIfB`` (width, height, step index, reward, done flag)
followed by exactly 3*width*height RGB bytes.
"""

import json
import struct
from dataclasses import dataclass, field

from .errors import WireError

PROTOCOL_VERSION = 1
MAX_PAYLOAD = 32 * 1024 * 1024

TAG_HELLO = 1
TAG_CONFIG_ACK = 2
TAG_RESET = 3
TAG_STEP = 4
TAG_OBS = 5
TAG_ERROR = 6
TAG_BYE = 7

_HEADER = struct.Struct(">IB")
_OBS_HEADER = struct.Struct(">HHIfB")
OBS_HEADER_BYTES = _OBS_HEADER.size  # 13


@dataclass(frozen=True)
class Hello:
    version: int = PROTOCOL_VERSION
    config: dict = field(default_factory=dict)


@dataclass(frozen=True)
class ConfigAck:
    summary: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Reset:
    seed: int = 0


@dataclass(frozen=True)
class Step:
    d_yaw: float = 0.0
    d_pitch: float = 0.0


@dataclass(frozen=True)
class Obs:
    width: int
    height: int
    step: int
    reward: float
    done: bool
    pixels: bytes

    def __post_init__(self):
        expected = 3 * self.width * self.height
        if len(self.pixels) != expected:
            raise WireError(
                f"OBS pixels: expected {expected} bytes for "
                f"{self.width}x{self.height}, got {len(self.pixels)}"
            )


@dataclass(frozen=True)
class Error:
    code: str
    message: str = ""


@dataclass(frozen=True)
class Bye:
    pass


def _json_payload(data: dict) -> bytes:
    return json.dumps(data, sort_keys=True, separators=(",", ":")).encode("utf-8")


def encode_message(message) -> bytes:
    """Message object -> one complete frame."""
    if isinstance(message, Hello):
        tag, payload = TAG_HELLO, _json_payload(
            {"version": message.version, "config": message.config}
        )
    elif isinstance(message, ConfigAck):
        tag, payload = TAG_CONFIG_ACK, _json_payload({"summary": message.summary})
    elif isinstance(message, Reset):
        tag, payload = TAG_RESET, _json_payload({"seed": message.seed})
    elif isinstance(message, Step):
        tag, payload = TAG_STEP, _json_payload(
            {"dYaw": message.d_yaw, "dPitch": message.d_pitch}
        )
    elif isinstance(message, Obs):
        tag = TAG_OBS
        payload = (
            _OBS_HEADER.pack(
                message.width,
                message.height,
                message.step,
                message.reward,
                1 if message.done else 0,
            )
            + message.pixels
        )
    elif isinstance(message, Error):
        tag, payload = TAG_ERROR, _json_payload(
            {"code": message.code, "message": message.message}
        )
    elif isinstance(message, Bye):
        tag, payload = TAG_BYE, b"{}"
    else:
        raise WireError(f"cannot encode {type(message).__name__}")
    return _HEADER.pack(len(payload), tag) + payload


def _decode_json(payload: bytes, tag: int) -> dict:
    try:
        data = json.loads(payload.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise WireError(f"tag {tag}: bad JSON payload: {exc}") from exc
    if not isinstance(data, dict):
        raise WireError(f"tag {tag}: payload must be a JSON object")
    return data


def decode_body(tag: int, payload: bytes):
    """(tag, payload) -> message object."""
    if tag == TAG_HELLO:
        data = _decode_json(payload, tag)
        return Hello(version=int(data.get("version", 0)), config=data.get("config") or {})
    if tag == TAG_CONFIG_ACK:
        return ConfigAck(summary=_decode_json(payload, tag).get("summary") or {})
    if tag == TAG_RESET:
        return Reset(seed=int(_decode_json(payload, tag).get("seed", 0)))
    if tag == TAG_STEP:
        data = _decode_json(payload, tag)
        try:
            return Step(d_yaw=float(data["dYaw"]), d_pitch=float(data["dPitch"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise WireError(f"STEP payload needs numeric dYaw/dPitch: {exc}") from exc
    if tag == TAG_OBS:
        if len(payload) < OBS_HEADER_BYTES:
            raise WireError(f"OBS payload too short: {len(payload)} bytes")
        width, height, step, reward, done = _OBS_HEADER.unpack_from(payload)
        pixels = payload[OBS_HEADER_BYTES:]
        if len(pixels) != 3 * width * height:
            raise WireError(
                f"OBS length mismatch: header says {width}x{height}, "
                f"got {len(pixels)} pixel bytes"
            )
        return Obs(width, height, step, reward, bool(done), pixels)
    if tag == TAG_ERROR:
        data = _decode_json(payload, tag)
        return Error(code=str(data.get("code", "")), message=str(data.get("message", "")))
    if tag == TAG_BYE:
        return Bye()
    raise WireError(f"unknown message tag: {tag}")


def decode_message(frame: bytes):
    """One complete frame -> message object. Rejects short/oversized/mismatched frames."""
    if len(frame) < _HEADER.size:
        raise WireError(f"frame too short: {len(frame)} bytes")
    length, tag = _HEADER.unpack_from(frame)
    if length > MAX_PAYLOAD:
        raise WireError(f"payload of {length} bytes exceeds limit {MAX_PAYLOAD}")
    if len(frame) != _HEADER.size + length:
        raise WireError(
            f"frame length mismatch: header says {length}, "
            f"frame carries {len(frame) - _HEADER.size}"
        )
    return decode_body(tag, frame[_HEADER.size :])


def read_message(recv_exact):
    """Read one message via recv_exact(n) -> bytes (raises on EOF)."""
    header = recv_exact(_HEADER.size)
    length, tag = _HEADER.unpack(header)
    if length > MAX_PAYLOAD:
        raise WireError(f"payload of {length} bytes exceeds limit {MAX_PAYLOAD}")
    payload = recv_exact(length) if length else b""
    return decode_body(tag, payload)
