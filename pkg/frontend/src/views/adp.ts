import { COLORS, type Ctx2D } from "../render.js";
import type { AdpPayload } from "../types.js";

/**
 * Enlarged scatter of (angle mean, angle variance) for one interaxis pair;
 * the selected member is highlighted in red, others blue, the true state
 * with a dark outline ring.
 */
export class AdpView {
  constructor(
    public readonly width: number,
    public readonly height: number,
    public readonly margin = 42,
  ) {}

  private sx(payload: AdpPayload, x: number): number {
    const { band } = payload;
    const t = (x - band.x0) / (band.x1 - band.x0 || 1);
    return this.margin + t * (this.width - 2 * this.margin);
  }

  private sy(payload: AdpPayload, y: number): number {
    const { band } = payload;
    const t = (y - band.y0) / (band.y1 - band.y0 || 1);
    return this.height - this.margin - t * (this.height - 2 * this.margin);
  }

  render(ctx: Ctx2D, payload: AdpPayload, selectedMember: string | null): void {
    ctx.clearRect(0, 0, this.width, this.height);
    ctx.setLineDash([]);

    ctx.strokeStyle = COLORS.axis;
    ctx.lineWidth = 1;
    ctx.beginPath();
    ctx.rect(
      this.margin,
      this.margin,
      this.width - 2 * this.margin,
      this.height - 2 * this.margin,
    );
    ctx.stroke();

    ctx.fillStyle = COLORS.label;
    ctx.textAlign = "center";
    ctx.fillText(
      `${payload.axes[0]} | ${payload.axes[1]}  (pair ${payload.pair})` +
        (payload.rescale ? "  [rescaled]" : ""),
      this.width / 2,
      this.margin - 10,
    );
    ctx.fillText(
      `mean ${payload.mean_range[0].toFixed(3)} .. ${payload.mean_range[1].toFixed(3)}`,
      this.width / 2,
      this.height - this.margin + 16,
    );
    ctx.fillText(
      `var ${payload.var_range[0].toFixed(3)} .. ${payload.var_range[1].toFixed(3)}`,
      this.width / 2,
      this.height - this.margin + 30,
    );

    const rest = payload.points.filter((p) => p.member !== selectedMember);
    const selected = payload.points.filter((p) => p.member === selectedMember);
    for (const point of rest) {
      const cx = this.sx(payload, point.x);
      const cy = this.sy(payload, point.y);
      if (point.true_state) {
        ctx.strokeStyle = COLORS.trueStateOutline;
        ctx.lineWidth = 2;
        ctx.beginPath();
        ctx.arc(cx, cy, 7, 0, 2 * Math.PI);
        ctx.stroke();
      }
      ctx.fillStyle = COLORS.member;
      ctx.beginPath();
      ctx.arc(cx, cy, 4, 0, 2 * Math.PI);
      ctx.fill();
    }
    for (const point of selected) {
      const cx = this.sx(payload, point.x);
      const cy = this.sy(payload, point.y);
      ctx.fillStyle = COLORS.selected;
      ctx.beginPath();
      ctx.arc(cx, cy, 6, 0, 2 * Math.PI);
      ctx.fill();
    }
  }
}
