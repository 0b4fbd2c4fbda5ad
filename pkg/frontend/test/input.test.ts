import { describe, expect, it } from "vitest";

import { PointerLockInput } from "../src/input.js";

type Handler = (event: unknown) => void;

/** Enough of Document/Element for pointer-lock input, no DOM needed. */
class FakeDoc {
  pointerLockElement: unknown = null;
  private handlers = new Map<string, Handler[]>();

  addEventListener(type: string, handler: Handler): void {
    this.handlers.set(type, [...(this.handlers.get(type) ?? []), handler]);
  }

  removeEventListener(type: string, handler: Handler): void {
    this.handlers.set(
      type,
      (this.handlers.get(type) ?? []).filter((h) => h !== handler),
    );
  }

  emit(type: string, event: unknown): void {
    for (const handler of this.handlers.get(type) ?? []) {
      handler(event);
    }
  }
}

function makeInput(sensitivity: number) {
  const doc = new FakeDoc();
  const element = { requestPointerLock: () => {} } as unknown as Element;
  const input = new PointerLockInput(element, sensitivity, doc as unknown as Document);
  doc.pointerLockElement = element; // lock acquired
  doc.emit("pointerlockchange", {});
  return { doc, input, element };
}

describe("pointer-lock input", () => {
  it("moving the mouse right yields positive dYaw", () => {
    const { doc, input } = makeInput(0.1);
    doc.emit("mousemove", { movementX: 30, movementY: 0 });
    const [dYaw, dPitch] = input.take();
    expect(dYaw).toBeCloseTo(3.0);
    expect(dPitch).toBe(0);
  });

  it("moving the mouse up (negative movementY) yields positive dPitch", () => {
    const { doc, input } = makeInput(0.1);
    doc.emit("mousemove", { movementX: 0, movementY: -20 });
    expect(input.take()[1]).toBeCloseTo(2.0);
  });

  it("doubling sensitivity doubles the delta per count", () => {
    const a = makeInput(0.05);
    const b = makeInput(0.1);
    a.doc.emit("mousemove", { movementX: 10, movementY: 4 });
    b.doc.emit("mousemove", { movementX: 10, movementY: 4 });
    const [yawA, pitchA] = a.input.take();
    const [yawB, pitchB] = b.input.take();
    expect(yawB).toBeCloseTo(2 * yawA);
    expect(pitchB).toBeCloseTo(2 * pitchA);
  });

  it("accumulates across events and clears on take", () => {
    const { doc, input } = makeInput(1.0);
    doc.emit("mousemove", { movementX: 1, movementY: 0 });
    doc.emit("mousemove", { movementX: 2, movementY: 0 });
    expect(input.take()[0]).toBe(3);
    expect(input.take()[0]).toBe(0);
  });

  it("ignores movement without the lock and resets on lock loss", () => {
    const { doc, input, element } = makeInput(1.0);
    doc.emit("mousemove", { movementX: 5, movementY: 0 });
    doc.pointerLockElement = null; // lock lost before the deltas were taken
    doc.emit("pointerlockchange", {});
    doc.emit("mousemove", { movementX: 50, movementY: 50 });
    expect(input.take()).toEqual([0, 0]);
    doc.pointerLockElement = element;
    doc.emit("pointerlockchange", {});
    doc.emit("mousemove", { movementX: 7, movementY: 0 });
    expect(input.take()[0]).toBe(7);
  });

  it("reports lock transitions", () => {
    const { doc, input, element } = makeInput(1.0);
    const seen: boolean[] = [];
    input.onLockChange = (locked) => seen.push(locked);
    doc.pointerLockElement = null;
    doc.emit("pointerlockchange", {});
    doc.pointerLockElement = element;
    doc.emit("pointerlockchange", {});
    expect(seen).toEqual([false, true]);
  });
});
