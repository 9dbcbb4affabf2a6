import { COLORS, type Ctx2D, type ImageDataLike } from "../render.js";
import type { SectionPayload } from "../types.js";

function decodeBase64(text: string): Uint8Array {
  if (typeof atob === "function") {
    const raw = atob(text);
    const out = new Uint8Array(raw.length);
    for (let i = 0; i < raw.length; i++) out[i] = raw.charCodeAt(i);
    return out;
  }
  return new Uint8Array(Buffer.from(text, "base64"));
}

/** Expand the server's packed RGB bytes into an opaque RGBA image. */
export function decodeSection(payload: SectionPayload): ImageDataLike {
  const rgb = decodeBase64(payload.rgb_base64);
  const n = payload.nx * payload.ny;
  if (rgb.length !== n * 3) {
    throw new Error(`rgb payload has ${rgb.length} bytes, expected ${n * 3}`);
  }
  const rgba = new Uint8ClampedArray(n * 4);
  for (let i = 0; i < n; i++) {
    rgba[4 * i] = rgb[3 * i];
    rgba[4 * i + 1] = rgb[3 * i + 1];
    rgba[4 * i + 2] = rgb[3 * i + 2];
    rgba[4 * i + 3] = 255;
  }
  return { width: payload.nx, height: payload.ny, data: rgba };
}

/** Colormapped horizontal section with layer/altitude annotation. */
export class CspView {
  constructor(
    public readonly width: number,
    public readonly height: number,
  ) {}

  render(ctx: Ctx2D, payload: SectionPayload): void {
    ctx.clearRect(0, 0, this.width, this.height);
    const image = decodeSection(payload);
    ctx.putImageData(image, 0, 0);
    ctx.fillStyle = COLORS.label;
    ctx.textAlign = "left";
    const altitude = payload.altitude === null ? "" : ` @ ${payload.altitude}m`;
    ctx.fillText(
      `${payload.member} ${payload.variable} z=${payload.z}${altitude}`,
      4,
      this.height - 6,
    );
  }
}
