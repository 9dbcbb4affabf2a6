import { PlotTransform } from "../geometry.js";
import { COLORS, type Ctx2D } from "../render.js";
import type { BpcpPayload } from "../types.js";

/**
 * Binned bands for the selected member. Cells arrive sorted by count
 * (ascending) so later draws land on top: the heaviest band ends up
 * frontmost, with opacity proportional to its count.
 */
export class BpcpView {
  constructor(
    public readonly width: number,
    public readonly height: number,
  ) {}

  axisNames(payload: BpcpPayload): string[] {
    if (!payload.pairs.length) return [];
    return [payload.pairs[0].axes[0], ...payload.pairs.map((p) => p.axes[1])];
  }

  render(ctx: Ctx2D, payload: BpcpPayload, brushed: Record<string, [number, number]>): void {
    const axes = this.axisNames(payload);
    const tf = new PlotTransform(axes.length, this.width, this.height);
    ctx.clearRect(0, 0, this.width, this.height);
    ctx.setLineDash([]);

    ctx.fillStyle = COLORS.label;
    ctx.textAlign = "center";
    ctx.fillText(
      `member ${payload.member} (${payload.active_count}/${payload.n_points} points)`,
      this.width / 2,
      16,
    );

    if (payload.active_count === 0) {
      ctx.fillStyle = COLORS.notice;
      ctx.fillText("no points in current brush", this.width / 2, this.height / 2);
    }

    const maxCount = Math.max(
      1,
      ...payload.pairs.flatMap((p) => p.cells.map((c) => c.count)),
    );
    for (let a = 0; a < payload.pairs.length; a++) {
      const pair = payload.pairs[a];
      for (const cell of pair.cells) {
        const el0 = pair.bin_edges_left[cell.bl];
        const el1 = pair.bin_edges_left[cell.bl + 1];
        const er0 = pair.bin_edges_right[cell.br];
        const er1 = pair.bin_edges_right[cell.br + 1];
        ctx.globalAlpha = 0.1 + 0.9 * (cell.count / maxCount);
        ctx.fillStyle = COLORS.member;
        ctx.beginPath();
        ctx.moveTo(tf.x(a), tf.y(el0));
        ctx.lineTo(tf.x(a), tf.y(el1));
        ctx.lineTo(tf.x(a + 1), tf.y(er1));
        ctx.lineTo(tf.x(a + 1), tf.y(er0));
        ctx.closePath();
        ctx.fill();
      }
    }
    ctx.globalAlpha = 1;

    ctx.strokeStyle = COLORS.axis;
    ctx.lineWidth = 1;
    for (let a = 0; a < axes.length; a++) {
      ctx.beginPath();
      ctx.moveTo(tf.x(a), tf.y(0));
      ctx.lineTo(tf.x(a), tf.y(1));
      ctx.stroke();
      ctx.fillStyle = COLORS.label;
      ctx.fillText(axes[a], tf.x(a), tf.y(0) + 16);
    }

    // brushed intervals drawn as thick ticks on their axes
    ctx.strokeStyle = COLORS.selected;
    ctx.lineWidth = 4;
    for (const [name, [lo, hi]] of Object.entries(brushed)) {
      const a = axes.indexOf(name);
      if (a < 0) continue;
      ctx.beginPath();
      ctx.moveTo(tf.x(a), tf.y(lo));
      ctx.lineTo(tf.x(a), tf.y(hi));
      ctx.stroke();
    }
    ctx.lineWidth = 1;
  }

  /** Nearest axis index for a pixel x, or null when outside the plot. */
  axisAt(payload: BpcpPayload, x: number, tolerancePx = 20): number | null {
    const axes = this.axisNames(payload);
    const tf = new PlotTransform(axes.length, this.width, this.height);
    let best: number | null = null;
    let bestDist = tolerancePx;
    for (let a = 0; a < axes.length; a++) {
      const d = Math.abs(x - tf.x(a));
      if (d <= bestDist) {
        best = a;
        bestDist = d;
      }
    }
    return best;
  }

  /** Normalized axis value for a pixel y, clamped to [0, 1]. */
  valueAt(payload: BpcpPayload, y: number): number {
    const axes = this.axisNames(payload);
    const tf = new PlotTransform(axes.length, this.width, this.height);
    return Math.max(0, Math.min(1, tf.plotY(y)));
  }
}
