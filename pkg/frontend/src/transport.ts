/** Browser FrameSocket over a binary WebSocket (one ws message = one frame). */

import { FrameSocket } from "./session.js";

export class WebSocketFrameSocket implements FrameSocket {
  onFrame: ((frame: Uint8Array) => void) | null = null;
  onClose: (() => void) | null = null;
  private ws: WebSocket;

  constructor(url: string) {
    this.ws = new WebSocket(url);
    this.ws.binaryType = "arraybuffer";
    this.ws.onmessage = (event) => {
      this.onFrame?.(new Uint8Array(event.data as ArrayBuffer));
    };
    this.ws.onclose = () => this.onClose?.();
    this.ws.onerror = () => this.ws.close();
  }

  waitOpen(): Promise<void> {
    if (this.ws.readyState === WebSocket.OPEN) {
      return Promise.resolve();
    }
    return new Promise((resolve, reject) => {
      this.ws.addEventListener("open", () => resolve(), { once: true });
      this.ws.addEventListener("error", () => reject(new Error("connect failed")), {
        once: true,
      });
    });
  }

  send(frame: Uint8Array): void {
    this.ws.send(frame);
  }

  close(): void {
    this.ws.close();
  }
}
