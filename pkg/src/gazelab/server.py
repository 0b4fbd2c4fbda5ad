"""Session server: one environment per connection, raw TCP or WebSocket.

Both transports carry identical protocol frames on one port; the first
bytes of a connection pick the transport (an HTTP ``GET`` starts the
WebSocket upgrade used by browsers, anything else is raw framing).
Sessions run on daemon threads and share nothing. Writes carry a send
timeout, so a stalled client gets disconnected instead of wedging its
session thread.
"""

import base64
import hashlib
import socket
import struct
import threading
from dataclasses import replace
from typing import Optional

from .config import EnvConfig, config_from_mapping, config_summary
from .env import Environment
from .errors import ConfigError, GazeLabError, WireError
from . import protocol as proto

SEND_TIMEOUT_S = 30.0
_WS_GUID = "258EAFA5-E914-47DA-95CA-C5AB0DC85B11"


class _Disconnect(Exception):
    pass


class RawTransport:
    """Protocol frames straight on the TCP stream."""

    def __init__(self, sock: socket.socket):
        self.sock = sock

    def recv_exact(self, n: int) -> bytes:
        chunks = []
        remaining = n
        while remaining:
            chunk = self.sock.recv(min(remaining, 65536))
            if not chunk:
                raise _Disconnect()
            chunks.append(chunk)
            remaining -= len(chunk)
        return b"".join(chunks)

    def recv_message(self):
        return proto.read_message(self.recv_exact)

    def _bounded_send(self, data: bytes) -> None:
        # a stalled client must not wedge the session thread
        self.sock.settimeout(SEND_TIMEOUT_S)
        try:
            self.sock.sendall(data)
        except socket.timeout:
            raise _Disconnect() from None
        finally:
            self.sock.settimeout(None)

    def send_frame(self, frame: bytes) -> None:
        self._bounded_send(frame)


class WebSocketTransport(RawTransport):
    """RFC 6455 server side, binary messages only; each message is one frame."""

    def handshake(self, consumed: bytes) -> None:
        data = consumed
        while b"\r\n\r\n" not in data:
            chunk = self.sock.recv(4096)
            if not chunk:
                raise _Disconnect()
            data += chunk
            if len(data) > 65536:
                raise WireError("oversized websocket handshake")
        head = data.split(b"\r\n\r\n", 1)[0].decode("latin-1")
        key = None
        for line in head.split("\r\n")[1:]:
            name, _, value = line.partition(":")
            if name.strip().lower() == "sec-websocket-key":
                key = value.strip()
        if key is None:
            raise WireError("websocket handshake lacks Sec-WebSocket-Key")
        accept = base64.b64encode(
            hashlib.sha1((key + _WS_GUID).encode("latin-1")).digest()
        ).decode("ascii")
        self.sock.sendall(
            (
                "HTTP/1.1 101 Switching Protocols\r\n"
                "Upgrade: websocket\r\n"
                "Connection: Upgrade\r\n"
                f"Sec-WebSocket-Accept: {accept}\r\n\r\n"
            ).encode("latin-1")
        )

    def _recv_ws_frame(self) -> tuple:
        b0, b1 = self.recv_exact(2)
        fin = b0 & 0x80
        opcode = b0 & 0x0F
        masked = b1 & 0x80
        length = b1 & 0x7F
        if length == 126:
            (length,) = struct.unpack(">H", self.recv_exact(2))
        elif length == 127:
            (length,) = struct.unpack(">Q", self.recv_exact(8))
        if length > proto.MAX_PAYLOAD:
            raise WireError(f"websocket frame of {length} bytes exceeds limit")
        mask = self.recv_exact(4) if masked else b""
        data = self.recv_exact(length)
        if masked:
            data = bytes(b ^ mask[i % 4] for i, b in enumerate(data))
        return fin, opcode, data

    def _recv_ws_message(self) -> bytes:
        parts = []
        expecting_continuation = False
        while True:
            fin, opcode, data = self._recv_ws_frame()
            if opcode == 8:  # close
                try:
                    self.sock.sendall(b"\x88\x00")
                except OSError:
                    pass
                raise _Disconnect()
            if opcode == 9:  # ping -> pong
                self.send_raw(b"\x8a" + bytes([len(data)]) + data)
                continue
            if opcode == 10:  # pong
                continue
            if opcode == 2 or (opcode == 0 and expecting_continuation):
                parts.append(data)
                if fin:
                    return b"".join(parts)
                expecting_continuation = True
                continue
            raise WireError(f"unsupported websocket opcode {opcode}")

    def recv_message(self):
        message = self._recv_ws_message()
        return proto.decode_message(message)

    def send_raw(self, data: bytes) -> None:
        self._bounded_send(data)

    def send_frame(self, frame: bytes) -> None:
        n = len(frame)
        if n < 126:
            head = bytes([0x82, n])
        elif n < 1 << 16:
            head = b"\x82\x7e" + struct.pack(">H", n)
        else:
            head = b"\x82\x7f" + struct.pack(">Q", n)
        self._bounded_send(head + frame)


class Server:
    """Accepts connections and runs one Session per connection."""

    def __init__(
        self,
        base_config: EnvConfig,
        host: str = "127.0.0.1",
        port: int = 0,
        privileged: Optional[bool] = None,
        fovea: Optional[tuple] = None,
    ):
        self.base_config = base_config
        if privileged is not None:
            self.base_config = replace(self.base_config, privileged_info=privileged)
        if fovea is not None:
            self.base_config = replace(self.base_config, fovea=fovea)
        self.base_config.validate()
        self._listener = socket.create_server((host, port))
        self.host, self.port = self._listener.getsockname()[:2]
        self._stop = threading.Event()
        self._thread: Optional[threading.Thread] = None

    def start(self) -> None:
        self._thread = threading.Thread(target=self.serve_forever, daemon=True)
        self._thread.start()

    def serve_forever(self) -> None:
        self._listener.settimeout(0.25)
        while not self._stop.is_set():
            try:
                sock, _addr = self._listener.accept()
            except socket.timeout:
                continue
            except OSError:
                break
            threading.Thread(
                target=self._handle, args=(sock,), daemon=True
            ).start()
        self._listener.close()

    def stop(self) -> None:
        self._stop.set()
        if self._thread is not None:
            self._thread.join(timeout=5.0)

    def _handle(self, sock: socket.socket) -> None:
        try:
            sock.settimeout(SEND_TIMEOUT_S)
            # one byte settles the transport: raw frames open with a length
            # byte far below ASCII 'G' (payload cap), HTTP opens with "GET"
            first = sock.recv(1, socket.MSG_PEEK)
            if not first:
                return
            sock.settimeout(None)
            if first == b"G":
                transport = WebSocketTransport(sock)
                transport.handshake(b"")
            else:
                transport = RawTransport(sock)
            Session(transport, self.base_config).run()
        except (_Disconnect, OSError, WireError):
            pass
        finally:
            try:
                sock.close()
            except OSError:
                pass


class Session:
    """Protocol state machine for one connection: HELLO, then RESET/STEP."""

    def __init__(self, transport, base_config: EnvConfig):
        self.transport = transport
        self.base_config = base_config
        self.env: Optional[Environment] = None
        self._was_reset = False

    def send(self, message) -> None:
        self.transport.send_frame(proto.encode_message(message))

    def run(self) -> None:
        try:
            message = self.transport.recv_message()
        except WireError as exc:
            self.send(proto.Error(code="frame", message=str(exc)))
            return
        if not isinstance(message, proto.Hello):
            self.send(proto.Error(code="state", message="expected HELLO first"))
            return
        if message.version != proto.PROTOCOL_VERSION:
            self.send(
                proto.Error(
                    code="version",
                    message=f"server speaks version {proto.PROTOCOL_VERSION}",
                )
            )
            return
        try:
            config = config_from_mapping(message.config, base=self.base_config)
            self.env = Environment(config)
        except (ConfigError, GazeLabError) as exc:
            self.send(proto.Error(code="config", message=str(exc)))
            return
        self.send(proto.ConfigAck(summary=config_summary(config)))

        while True:
            try:
                message = self.transport.recv_message()
            except WireError as exc:
                self.send(proto.Error(code="frame", message=str(exc)))
                return  # framing is unrecoverable: close
            if isinstance(message, proto.Bye):
                return
            if isinstance(message, proto.Reset):
                observation = self.env.reset(seed=message.seed)
                self._was_reset = True
                self.send(self._obs(observation, 0, 0.0, False))
            elif isinstance(message, proto.Step):
                if not self._was_reset:
                    self.send(proto.Error(code="state", message="STEP before RESET"))
                    continue
                if self.env.done:
                    self.send(
                        proto.Error(code="state", message="episode done; RESET first")
                    )
                    continue
                result = self.env.step((message.d_yaw, message.d_pitch))
                self.send(
                    self._obs(
                        result.observation,
                        result.info["stepIndex"],
                        result.reward,
                        result.done,
                    )
                )
            else:
                self.send(proto.Error(code="state", message="unexpected message"))

    @staticmethod
    def _obs(observation, step: int, reward: float, done: bool) -> proto.Obs:
        height, width = observation.shape[:2]
        return proto.Obs(
            width=width,
            height=height,
            step=step,
            reward=float(reward),
            done=done,
            pixels=observation.tobytes(),
        )
