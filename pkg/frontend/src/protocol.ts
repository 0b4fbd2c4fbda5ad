/**
 * Frame protocol: 4-byte big-endian payload length, 1-byte tag, payload.
 * Control payloads are JSON; OBS payloads are a 13-byte binary header
 * (width u16, height u16, step u32, reward f32, done u8) plus raw RGB.
 * Byte-compatible with the session server.
 */

export const enum Tag {
  Hello = 1,
  ConfigAck = 2,
  Reset = 3,
  Step = 4,
  Obs = 5,
  Error = 6,
  Bye = 7,
}

export interface Frame {
  tag: Tag;
  payload: Uint8Array;
}

export interface ObsMessage {
  width: number;
  height: number;
  step: number;
  reward: number;
  done: boolean;
  pixels: Uint8Array; // 3 * width * height RGB bytes
}

const HEADER_BYTES = 5;
export const OBS_HEADER_BYTES = 13;
export const PROTOCOL_VERSION = 1;

const textEncoder = new TextEncoder();
const textDecoder = new TextDecoder();

export function encodeFrame(tag: Tag, payload: Uint8Array): Uint8Array {
  const frame = new Uint8Array(HEADER_BYTES + payload.length);
  new DataView(frame.buffer).setUint32(0, payload.length, false);
  frame[4] = tag;
  frame.set(payload, HEADER_BYTES);
  return frame;
}

/** Rebuild objects with sorted keys so encodings are byte-stable. */
function sortDeep(value: unknown): unknown {
  if (Array.isArray(value)) {
    return value.map(sortDeep);
  }
  if (value !== null && typeof value === "object") {
    const out: Record<string, unknown> = {};
    for (const key of Object.keys(value as Record<string, unknown>).sort()) {
      out[key] = sortDeep((value as Record<string, unknown>)[key]);
    }
    return out;
  }
  return value;
}

function encodeJson(tag: Tag, body: unknown): Uint8Array {
  return encodeFrame(tag, textEncoder.encode(JSON.stringify(sortDeep(body))));
}

export function encodeHello(config: Record<string, unknown> = {}): Uint8Array {
  return encodeJson(Tag.Hello, { version: PROTOCOL_VERSION, config });
}

export function encodeReset(seed: number): Uint8Array {
  return encodeJson(Tag.Reset, { seed });
}

export function encodeStep(dYaw: number, dPitch: number): Uint8Array {
  return encodeJson(Tag.Step, { dYaw, dPitch });
}

export function encodeBye(): Uint8Array {
  return encodeJson(Tag.Bye, {});
}

export function decodeFrame(data: Uint8Array): Frame {
  if (data.length < HEADER_BYTES) {
    throw new Error(`frame too short: ${data.length} bytes`);
  }
  const view = new DataView(data.buffer, data.byteOffset, data.byteLength);
  const length = view.getUint32(0, false);
  const tag = data[4] as Tag;
  if (data.length !== HEADER_BYTES + length) {
    throw new Error(
      `frame length mismatch: header says ${length}, carries ${data.length - HEADER_BYTES}`,
    );
  }
  if (tag < Tag.Hello || tag > Tag.Bye) {
    throw new Error(`unknown message tag: ${tag}`);
  }
  return { tag, payload: data.subarray(HEADER_BYTES) };
}

export function decodeControl(frame: Frame): Record<string, unknown> {
  return JSON.parse(textDecoder.decode(frame.payload)) as Record<string, unknown>;
}

export function decodeObs(frame: Frame): ObsMessage {
  if (frame.tag !== Tag.Obs) {
    throw new Error(`expected OBS, got tag ${frame.tag}`);
  }
  const p = frame.payload;
  if (p.length < OBS_HEADER_BYTES) {
    throw new Error(`OBS payload too short: ${p.length}`);
  }
  const view = new DataView(p.buffer, p.byteOffset, p.byteLength);
  const width = view.getUint16(0, false);
  const height = view.getUint16(2, false);
  const step = view.getUint32(4, false);
  const reward = view.getFloat32(8, false);
  const done = p[12] !== 0;
  const pixels = p.subarray(OBS_HEADER_BYTES);
  if (pixels.length !== 3 * width * height) {
    throw new Error(
      `OBS length mismatch: ${width}x${height} needs ${3 * width * height}, got ${pixels.length}`,
    );
  }
  return { width, height, step, reward, done, pixels };
}
