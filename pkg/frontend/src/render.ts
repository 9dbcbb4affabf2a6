/** Canvas 2D subset the views draw against; tests inject a recording stub. */

export interface ImageDataLike {
  width: number;
  height: number;
  data: Uint8ClampedArray;
}

export interface Ctx2D {
  strokeStyle: string;
  fillStyle: string;
  lineWidth: number;
  globalAlpha: number;
  font: string;
  textAlign: string;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  bezierCurveTo(
    c1x: number, c1y: number,
    c2x: number, c2y: number,
    x: number, y: number,
  ): void;
  closePath(): void;
  stroke(): void;
  fill(): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  rect(x: number, y: number, w: number, h: number): void;
  fillRect(x: number, y: number, w: number, h: number): void;
  clearRect(x: number, y: number, w: number, h: number): void;
  fillText(text: string, x: number, y: number): void;
  setLineDash(segments: number[]): void;
  putImageData(image: ImageDataLike, dx: number, dy: number): void;
}

export const COLORS = {
  member: "#3a6ea5",
  selected: "#d62728",
  trueStateOutline: "#111111",
  axis: "#555555",
  band: "#c8c8c8",
  label: "#222222",
  notice: "#666666",
} as const;
