/**
 * End-to-end against the real session server: connect over WebSocket,
 * initiate a trial by fixating the red cross, find the magenta target in
 * a color-search array by sight, hold it, and collect the reward.
 * The transport trace is checked for the lockstep invariant afterwards.
 */

import { spawn, ChildProcess } from "node:child_process";
import net from "node:net";

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ScriptedInput } from "../src/input.js";
import { ObsMessage, Tag, decodeFrame } from "../src/protocol.js";
import { SessionClient } from "../src/session.js";
import { NodeWebSocketFrameSocket } from "./wsclient.js";

function freePort(): Promise<number> {
  return new Promise((resolve) => {
    const srv = net.createServer();
    srv.listen(0, "127.0.0.1", () => {
      const port = (srv.address() as net.AddressInfo).port;
      srv.close(() => resolve(port));
    });
  });
}

let server: ChildProcess | null = null;
let port = 0;

beforeAll(async () => {
  port = await freePort();
  server = spawn("python3", ["-m", "gazelab.cli", "serve", "--port", String(port)], {
    cwd: "..",
    stdio: ["ignore", "ignore", "pipe"],
  });
  await new Promise<void>((resolve, reject) => {
    server!.stderr!.once("data", () => resolve());
    server!.once("exit", (code) => reject(new Error(`server exited early (${code})`)));
    setTimeout(() => reject(new Error("server startup timed out")), 20000);
  });
}, 30000);

afterAll(() => {
  server?.kill();
});

/** Centroid of pixels matching a predicate; null when none match. */
function centroid(
  obs: ObsMessage,
  match: (r: number, g: number, b: number) => boolean,
): [number, number] | null {
  let sx = 0;
  let sy = 0;
  let n = 0;
  for (let y = 0; y < obs.height; y++) {
    for (let x = 0; x < obs.width; x++) {
      const i = 3 * (y * obs.width + x);
      if (match(obs.pixels[i], obs.pixels[i + 1], obs.pixels[i + 2])) {
        sx += x;
        sy += y;
        n += 1;
      }
    }
  }
  return n === 0 ? null : [sx / n, sy / n];
}

const isRed = (r: number, g: number, b: number) => r > 150 && g < 110 && b < 110;
const isMagenta = (r: number, g: number, b: number) => r > 160 && b > 160 && g < 110;

/** Steer toward whatever matters: the magenta target if visible, else the cross. */
function steer(obs: ObsMessage): [number, number] {
  const target = centroid(obs, isMagenta) ?? centroid(obs, isRed);
  if (!target) {
    return [0, 0];
  }
  const degPerPixel = 60 / obs.height; // small-angle approximation of the fov
  const dx = target[0] - (obs.width - 1) / 2;
  const dy = target[1] - (obs.height - 1) / 2;
  const clamp = (v: number) => Math.max(-2.5, Math.min(2.5, v));
  return [clamp(0.4 * dx * degPerPixel), clamp(-0.4 * dy * degPerPixel)];
}

function assertLockstep(trace: Array<{ dir: string; tag: Tag }>): void {
  let owed = 0;
  for (const event of trace) {
    if (event.dir === "c2s" && (event.tag === Tag.Step || event.tag === Tag.Reset)) {
      expect(owed, "STEP sent without a prior OBS").toBe(0);
      owed += 1;
    } else if (event.dir === "s2c" && event.tag === Tag.Obs) {
      owed -= 1;
    }
  }
}

describe("human-in-the-loop search trial (scripted eyes)", () => {
  it(
    "connects, fixates to start a trial, finds the target, gets reward 1",
    async () => {
      const raw = await NodeWebSocketFrameSocket.connect(port);
      const trace: Array<{ dir: "c2s" | "s2c"; tag: Tag }> = [];
      const socket = {
        send(frame: Uint8Array): void {
          trace.push({ dir: "c2s", tag: decodeFrame(frame).tag });
          raw.send(frame);
        },
        close: () => raw.close(),
        onFrame: null as ((frame: Uint8Array) => void) | null,
        onClose: null as (() => void) | null,
      };
      raw.onFrame = (frame) => {
        trace.push({ dir: "s2c", tag: decodeFrame(frame).tag });
        socket.onFrame?.(frame);
      };
      raw.onClose = () => socket.onClose?.();

      const input = new ScriptedInput();
      const client = new SessionClient(socket, input);
      const summary = await client.configure({
        task: "search",
        screenWidth: 256,
        screenHeight: 256,
        fixationHoldSteps: 10,
        responseHoldSteps: 10,
        intertrialSteps: 5,
        taskParams: { mode: "color", setSize: 4 },
      });
      expect(summary.task).toBe("search");

      let obs = await client.reset(77);
      expect(obs.width).toBe(84);
      // the fixation cross is on screen from the first frame
      expect(centroid(obs, isRed)).not.toBeNull();

      let sawTarget = false;
      for (let step = 0; step < 2500 && client.view.cumulativeReward < 1; step++) {
        const delta = steer(obs);
        sawTarget = sawTarget || centroid(obs, isMagenta) !== null;
        input.push(delta[0], delta[1]);
        const next = new Promise<ObsMessage>((resolve) => {
          const prev = client["events"].onObs;
          (client as unknown as { events: { onObs: (o: ObsMessage) => void } }).events.onObs =
            (o: ObsMessage) => {
              prev?.(o);
              resolve(o);
            };
        });
        client.tick();
        obs = await next;
      }

      expect(sawTarget).toBe(true); // the stimulus array actually appeared
      expect(client.view.cumulativeReward).toBeGreaterThanOrEqual(1);
      expect(client.view.trialsCompleted).toBeGreaterThanOrEqual(1);
      client.bye();
      assertLockstep(trace);
    },
    60000,
  );
});
