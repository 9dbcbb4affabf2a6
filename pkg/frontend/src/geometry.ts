/** Plot-space helpers: the server's coordinates are axis index on x, [0,1] on y. */

export type Point = [number, number];

/** Maps plot space to pixels with a flipped y axis. */
export class PlotTransform {
  constructor(
    public readonly nAxes: number,
    public readonly width: number,
    public readonly height: number,
    public readonly margin = 36,
  ) {}

  get gap(): number {
    return (this.width - 2 * this.margin) / Math.max(this.nAxes - 1, 1);
  }

  get plotHeight(): number {
    return this.height - 2 * this.margin;
  }

  x(px: number): number {
    return this.margin + px * this.gap;
  }

  y(py: number): number {
    return this.margin + (1 - py) * this.plotHeight;
  }

  point(p: Point): Point {
    return [this.x(p[0]), this.y(p[1])];
  }

  /** Inverse maps for hit testing. */
  plotX(x: number): number {
    return (x - this.margin) / this.gap;
  }

  plotY(y: number): number {
    return 1 - (y - this.margin) / this.plotHeight;
  }
}

export function cubicAt(p0: Point, p1: Point, p2: Point, p3: Point, t: number): Point {
  const u = 1 - t;
  const c = (a: number, b: number, bb: number, bbb: number) =>
    u * u * u * a + 3 * u * u * t * b + 3 * u * t * t * bb + t * t * t * bbb;
  return [c(p0[0], p1[0], p2[0], p3[0]), c(p0[1], p1[1], p2[1], p3[1])];
}

/** Sample the composite curve of one pair (7 control points, two cubics). */
export function samplePairCurve(cps: Point[], perSegment = 12): Point[] {
  const [e0, a, b, mid, c, d, e1] = cps;
  const out: Point[] = [];
  for (let i = 0; i < perSegment; i++) {
    out.push(cubicAt(e0, a, b, mid, i / (perSegment - 1)));
  }
  for (let i = 1; i < perSegment; i++) {
    out.push(cubicAt(mid, c, d, e1, i / (perSegment - 1)));
  }
  return out;
}

export function pointSegmentDistance(p: Point, a: Point, b: Point): number {
  const dx = b[0] - a[0];
  const dy = b[1] - a[1];
  const len2 = dx * dx + dy * dy;
  let t = 0;
  if (len2 > 0) {
    t = ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2;
    t = Math.max(0, Math.min(1, t));
  }
  const qx = a[0] + t * dx;
  const qy = a[1] + t * dy;
  return Math.hypot(p[0] - qx, p[1] - qy);
}

export function pointPolylineDistance(p: Point, pts: Point[]): number {
  let best = Infinity;
  for (let i = 1; i < pts.length; i++) {
    best = Math.min(best, pointSegmentDistance(p, pts[i - 1], pts[i]));
  }
  return best;
}
