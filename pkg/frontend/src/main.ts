/**
 * Page wiring: connect, acquire pointer lock, play.
 *
 * Query parameters:
 *   server      ws URL (default ws://127.0.0.1:8765)
 *   sensitivity degrees of gaze per mouse count (default 0.08)
 *   scale       canvas pixels per observation pixel (default 8)
 *   seed        episode seed for RESET (default: random)
 */

import { PointerLockInput } from "./input.js";
import { FrameRenderer } from "./render.js";
import { SessionClient } from "./session.js";
import { WebSocketFrameSocket } from "./transport.js";

function param(name: string, fallback: string): string {
  return new URLSearchParams(window.location.search).get(name) ?? fallback;
}

function el<T extends HTMLElement>(id: string): T {
  return document.getElementById(id) as T;
}

async function start(): Promise<void> {
  const serverUrl = param("server", "ws://127.0.0.1:8765");
  const sensitivity = parseFloat(param("sensitivity", "0.08"));
  const scale = parseInt(param("scale", "8"), 10);
  const seed = parseInt(param("seed", String(Math.floor(Math.random() * 1e9))), 10);

  const canvas = el<HTMLCanvasElement>("view");
  const hudState = el<HTMLSpanElement>("state");
  const hudReward = el<HTMLSpanElement>("reward");
  const hudTrials = el<HTMLSpanElement>("trials");
  const banner = el<HTMLDivElement>("banner");
  const renderer = new FrameRenderer(canvas);
  const input = new PointerLockInput(canvas, sensitivity);

  const socket = new WebSocketFrameSocket(serverUrl);
  const client = new SessionClient(socket, input, {
    onObs: (obs) => {
      renderer.draw(obs);
      hudReward.textContent = client.view.cumulativeReward.toFixed(0);
      hudTrials.textContent = String(client.view.trialsCompleted);
      if (obs.done) {
        banner.textContent =
          `episode complete - reward ${client.view.cumulativeReward.toFixed(0)} ` +
          `over ${client.view.trialsCompleted} trials; click to start a new episode`;
        banner.style.display = "block";
      }
    },
    onStateChange: (state) => {
      hudState.textContent = state;
    },
    onError: (message) => {
      banner.textContent = `error: ${message}`;
      banner.style.display = "block";
    },
  });

  input.onLockChange = (locked) => {
    if (locked) {
      banner.style.display = "none";
      client.startPacing();
    } else {
      client.stopPacing(); // no lock, no steps: the episode freezes for us
      if (client.view.state === "running") {
        banner.textContent = "pointer lock lost - click the canvas to resume";
        banner.style.display = "block";
      }
    }
  };

  canvas.addEventListener("click", async () => {
    if (client.view.state === "done") {
      await client.reset(seed + 1 + Math.floor(Math.random() * 1e6));
      banner.style.display = "none";
    }
    input.request();
  });

  try {
    await socket.waitOpen();
    const summary = await client.configure({});
    el<HTMLSpanElement>("config").textContent =
      `${summary.task} ${summary.observationWidth}x${summary.observationHeight}` +
      (summary.fovea ? ` fovea ${(summary.fovea as number[]).join(":")}` : "");
    const firstObs = await client.reset(seed);
    canvas.width = firstObs.width * scale;
    canvas.height = firstObs.height * scale;
    renderer.draw(firstObs);
    banner.textContent = "click the canvas to take pointer lock and begin";
    banner.style.display = "block";
  } catch (err) {
    banner.textContent = `connection failed: ${(err as Error).message}`;
    banner.style.display = "block";
  }
}

window.addEventListener("DOMContentLoaded", () => {
  void start();
});
