/**
 * Pointer-lock mouse-look input.
 *
 * While the target element holds pointer lock, mouse movement accumulates
 * into gaze deltas: moving right yields positive dYaw, moving the mouse
 * away from you (up) yields positive dPitch. Without the lock nothing
 * accumulates, so the session pacer sends zero-delta steps.
 */

import { InputSource } from "./session.js";

export class PointerLockInput implements InputSource {
  sensitivity: number;
  private element: Element;
  private doc: Document;
  private dx = 0;
  private dy = 0;
  onLockChange: ((locked: boolean) => void) | null = null;

  constructor(element: Element, sensitivity = 0.08, doc: Document = document) {
    this.element = element;
    this.doc = doc;
    this.sensitivity = sensitivity;
    doc.addEventListener("mousemove", this.handleMove);
    doc.addEventListener("pointerlockchange", this.handleLockChange);
  }

  request(): void {
    this.element.requestPointerLock();
  }

  get locked(): boolean {
    return this.doc.pointerLockElement === this.element;
  }

  private handleMove = (event: MouseEvent): void => {
    if (this.locked) {
      this.dx += event.movementX;
      this.dy += event.movementY;
    }
  };

  private handleLockChange = (): void => {
    if (!this.locked) {
      this.dx = 0;
      this.dy = 0;
    }
    this.onLockChange?.(this.locked);
  };

  take(): [number, number] {
    const dYaw = this.dx * this.sensitivity;
    // screen y grows downward; avoid emitting -0 for an idle axis
    const dPitch = this.dy === 0 ? 0 : -this.dy * this.sensitivity;
    this.dx = 0;
    this.dy = 0;
    return [dYaw, dPitch];
  }

  dispose(): void {
    this.doc.removeEventListener("mousemove", this.handleMove);
    this.doc.removeEventListener("pointerlockchange", this.handleLockChange);
  }
}

/** Fixed-size accumulator used by tests and scripted sessions. */
export class ScriptedInput implements InputSource {
  private queue: Array<[number, number]> = [];

  push(dYaw: number, dPitch: number): void {
    this.queue.push([dYaw, dPitch]);
  }

  take(): [number, number] {
    return this.queue.shift() ?? [0, 0];
  }
}
