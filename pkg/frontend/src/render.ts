/**
 * Frame blitting: RGB observation bytes onto a canvas with nearest-neighbor
 * upscaling, preserving the blocky low-resolution condition instead of
 * smoothing it away.
 */

import { ObsMessage } from "./protocol.js";

export class FrameRenderer {
  private canvas: HTMLCanvasElement;
  private ctx: CanvasRenderingContext2D;
  private staging: HTMLCanvasElement;
  private stagingCtx: CanvasRenderingContext2D;
  private imageData: ImageData | null = null;

  constructor(canvas: HTMLCanvasElement) {
    this.canvas = canvas;
    const ctx = canvas.getContext("2d");
    if (!ctx) {
      throw new Error("2d canvas context unavailable");
    }
    this.ctx = ctx;
    this.ctx.imageSmoothingEnabled = false;
    this.staging = document.createElement("canvas");
    this.stagingCtx = this.staging.getContext("2d")!;
  }

  draw(obs: ObsMessage): void {
    if (
      !this.imageData ||
      this.imageData.width !== obs.width ||
      this.imageData.height !== obs.height
    ) {
      this.staging.width = obs.width;
      this.staging.height = obs.height;
      this.imageData = this.stagingCtx.createImageData(obs.width, obs.height);
    }
    rgbToRgba(obs.pixels, this.imageData.data);
    this.stagingCtx.putImageData(this.imageData, 0, 0);
    this.ctx.imageSmoothingEnabled = false;
    this.ctx.drawImage(
      this.staging,
      0, 0, obs.width, obs.height,
      0, 0, this.canvas.width, this.canvas.height,
    );
  }
}

/** Expand packed RGB into the canvas's RGBA layout (alpha opaque). */
export function rgbToRgba(rgb: Uint8Array, rgba: Uint8ClampedArray): void {
  const pixels = rgb.length / 3;
  for (let i = 0, j = 0; i < pixels; i++, j += 4) {
    rgba[j] = rgb[i * 3];
    rgba[j + 1] = rgb[i * 3 + 1];
    rgba[j + 2] = rgb[i * 3 + 2];
    rgba[j + 3] = 255;
  }
}
