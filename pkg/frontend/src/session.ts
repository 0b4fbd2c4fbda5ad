/**
 * Lockstep session client.
 *
 * Exactly one STEP is ever in flight: the 60 Hz pacer only marks that a
 * step is due, and the next STEP goes out when the previous OBS has
 * arrived. Humans therefore face the same causal observation/action
 * alignment as agents stepping the environment directly. Idle frames
 * send zero-delta STEPs so the episode clock advances regardless.
 */

import {
  Frame,
  ObsMessage,
  Tag,
  decodeControl,
  decodeFrame,
  decodeObs,
  encodeBye,
  encodeHello,
  encodeReset,
  encodeStep,
} from "./protocol.js";

/** Transport abstraction so tests can inject scripted sockets. */
export interface FrameSocket {
  send(frame: Uint8Array): void;
  close(): void;
  onFrame: ((frame: Uint8Array) => void) | null;
  onClose: (() => void) | null;
}

export interface InputSource {
  /** Drain accumulated (dYaw, dPitch) since the last call. */
  take(): [number, number];
}

export type SessionState =
  | "idle"
  | "configuring"
  | "ready"
  | "running"
  | "done"
  | "closed"
  | "error";

export interface SessionView {
  state: SessionState;
  summary: Record<string, unknown> | null;
  frame: ObsMessage | null;
  cumulativeReward: number;
  trialsCompleted: number;
  stepsSent: number;
  lastError: string;
}

export interface SessionEvents {
  onObs?: (obs: ObsMessage) => void;
  onStateChange?: (state: SessionState) => void;
  onError?: (message: string) => void;
}

export const STEP_INTERVAL_MS = 1000 / 60;

export class SessionClient {
  readonly view: SessionView = {
    state: "idle",
    summary: null,
    frame: null,
    cumulativeReward: 0,
    trialsCompleted: 0,
    stepsSent: 0,
    lastError: "",
  };

  private socket: FrameSocket;
  private input: InputSource;
  private events: SessionEvents;
  private awaitingObs = false;
  private stepDue = false;
  private pacer: ReturnType<typeof setInterval> | null = null;
  private pendingAck: ((summary: Record<string, unknown>) => void) | null = null;
  private pendingObs: ((obs: ObsMessage) => void) | null = null;

  constructor(socket: FrameSocket, input: InputSource, events: SessionEvents = {}) {
    this.socket = socket;
    this.input = input;
    this.events = events;
    socket.onFrame = (bytes) => this.handleFrame(bytes);
    socket.onClose = () => this.setState(this.view.state === "error" ? "error" : "closed");
  }

  private setState(state: SessionState): void {
    if (this.view.state !== state) {
      this.view.state = state;
      this.events.onStateChange?.(state);
    }
  }

  private fail(message: string): void {
    this.view.lastError = message;
    this.setState("error");
    this.events.onError?.(message);
    this.stopPacing();
  }

  /** HELLO/CONFIG_ACK handshake; resolves with the server's config summary. */
  configure(config: Record<string, unknown> = {}): Promise<Record<string, unknown>> {
    this.setState("configuring");
    const promise = new Promise<Record<string, unknown>>((resolve, reject) => {
      this.pendingAck = (summary) => {
        this.view.summary = summary;
        this.setState("ready");
        resolve(summary);
      };
      const prevFail = this.events.onError;
      this.events.onError = (message) => {
        prevFail?.(message);
        reject(new Error(message));
      };
    });
    // handler is registered before sending: replies may arrive synchronously
    this.socket.send(encodeHello(config));
    return promise;
  }

  /** RESET; resolves with the first observation. */
  reset(seed: number): Promise<ObsMessage> {
    if (this.view.state !== "ready" && this.view.state !== "done") {
      return Promise.reject(new Error(`cannot reset in state ${this.view.state}`));
    }
    this.view.cumulativeReward = 0;
    this.view.trialsCompleted = 0;
    this.view.stepsSent = 0;
    this.awaitingObs = true; // the RESET's OBS must land before any STEP
    const promise = new Promise<ObsMessage>((resolve) => {
      this.pendingObs = (obs) => {
        this.setState("running");
        resolve(obs);
      };
    });
    this.socket.send(encodeReset(seed));
    return promise;
  }

  /** Start the 60 Hz pacer (idle hands send zero-delta steps). */
  startPacing(intervalMs: number = STEP_INTERVAL_MS): void {
    this.stopPacing();
    this.pacer = setInterval(() => this.tick(), intervalMs);
  }

  stopPacing(): void {
    if (this.pacer !== null) {
      clearInterval(this.pacer);
      this.pacer = null;
    }
  }

  /** One pacer tick: mark a step due and send it unless one is in flight. */
  tick(): void {
    if (this.view.state !== "running") {
      return;
    }
    this.stepDue = true;
    this.pumpStep();
  }

  private pumpStep(): void {
    if (!this.stepDue || this.awaitingObs || this.view.state !== "running") {
      return;
    }
    const [dYaw, dPitch] = this.input.take();
    this.stepDue = false;
    this.awaitingObs = true;
    this.view.stepsSent += 1;
    this.socket.send(encodeStep(dYaw, dPitch));
  }

  bye(): void {
    this.socket.send(encodeBye());
    this.stopPacing();
    this.socket.close();
  }

  private handleFrame(bytes: Uint8Array): void {
    let frame: Frame;
    try {
      frame = decodeFrame(bytes);
    } catch (err) {
      this.fail(`bad frame: ${(err as Error).message}`);
      return;
    }
    switch (frame.tag) {
      case Tag.ConfigAck: {
        const ack = decodeControl(frame);
        this.pendingAck?.((ack.summary ?? {}) as Record<string, unknown>);
        this.pendingAck = null;
        return;
      }
      case Tag.Obs: {
        let obs: ObsMessage;
        try {
          obs = decodeObs(frame);
        } catch (err) {
          this.fail(`bad observation: ${(err as Error).message}`);
          return;
        }
        this.awaitingObs = false;
        this.view.frame = obs;
        if (obs.reward > 0) {
          this.view.cumulativeReward += obs.reward;
          this.view.trialsCompleted += 1;
        } else {
          this.view.cumulativeReward += obs.reward;
        }
        if (this.pendingObs) {
          const resolve = this.pendingObs;
          this.pendingObs = null;
          resolve(obs);
        }
        this.events.onObs?.(obs);
        if (obs.done) {
          this.setState("done");
          this.stopPacing();
        } else {
          this.pumpStep(); // a tick may have come due while we waited
        }
        return;
      }
      case Tag.Error: {
        const err = decodeControl(frame);
        this.fail(`server error [${err.code}]: ${err.message}`);
        return;
      }
      default:
        this.fail(`unexpected message tag ${frame.tag}`);
    }
  }
}
