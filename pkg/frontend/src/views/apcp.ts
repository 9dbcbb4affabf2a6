import { PlotTransform, pointPolylineDistance, samplePairCurve } from "../geometry.js";
import type { Point } from "../geometry.js";
import { COLORS, type Ctx2D } from "../render.js";
import type { ApcpPayload, MemberCurve } from "../types.js";

export type ApcpHit =
  | { kind: "member"; id: string }
  | { kind: "pair"; pair: number }
  | null;

const HIT_RADIUS_PX = 6;

/**
 * Overview of every member as one bundled curve across all axes.
 *
 * Members draw in blue, the true state with a dark outline, and the
 * selected member in red on top of everything else.
 */
export class ApcpView {
  constructor(
    public readonly width: number,
    public readonly height: number,
  ) {}

  private transform(payload: ApcpPayload): PlotTransform {
    return new PlotTransform(payload.order.length, this.width, this.height);
  }

  render(ctx: Ctx2D, payload: ApcpPayload, selectedMember: string | null): void {
    const tf = this.transform(payload);
    ctx.clearRect(0, 0, this.width, this.height);

    ctx.strokeStyle = COLORS.axis;
    ctx.lineWidth = 1;
    ctx.setLineDash([]);
    for (let a = 0; a < payload.order.length; a++) {
      ctx.beginPath();
      ctx.moveTo(tf.x(a), tf.y(0));
      ctx.lineTo(tf.x(a), tf.y(1));
      ctx.stroke();
      ctx.fillStyle = COLORS.label;
      ctx.textAlign = "center";
      ctx.fillText(payload.order[a], tf.x(a), tf.y(0) + 16);
    }

    ctx.strokeStyle = COLORS.band;
    for (const layout of payload.layouts) {
      const { band } = layout;
      ctx.beginPath();
      ctx.rect(
        tf.x(band.x0),
        tf.y(band.y1),
        tf.x(band.x1) - tf.x(band.x0),
        tf.y(band.y0) - tf.y(band.y1),
      );
      ctx.stroke();
    }

    const selected = payload.members.filter((m) => m.id === selectedMember);
    const rest = payload.members.filter((m) => m.id !== selectedMember);
    for (const member of rest) {
      if (member.true_state) {
        this.strokeCurve(ctx, tf, member, COLORS.trueStateOutline, 3.5, []);
      }
      this.strokeCurve(ctx, tf, member, COLORS.member, 1.4, []);
    }
    // selected member last so it sits on top
    for (const member of selected) {
      this.strokeCurve(ctx, tf, member, COLORS.selected, 2.2, []);
    }

    for (const layout of payload.layouts) {
      for (const point of layout.points) {
        const isSelected = point.member === selectedMember;
        ctx.fillStyle = isSelected ? COLORS.selected : COLORS.member;
        ctx.beginPath();
        ctx.arc(tf.x(point.x), tf.y(point.y), isSelected ? 4 : 2.5, 0, 2 * Math.PI);
        ctx.fill();
      }
    }
  }

  private strokeCurve(
    ctx: Ctx2D,
    tf: PlotTransform,
    member: MemberCurve,
    color: string,
    width: number,
    dash: number[],
  ): void {
    ctx.strokeStyle = color;
    ctx.lineWidth = width;
    ctx.setLineDash(dash);
    ctx.beginPath();
    const first = member.paths[0].control_points[0];
    ctx.moveTo(tf.x(first[0]), tf.y(first[1]));
    for (const path of member.paths) {
      const cp = path.control_points;
      ctx.bezierCurveTo(
        tf.x(cp[1][0]), tf.y(cp[1][1]),
        tf.x(cp[2][0]), tf.y(cp[2][1]),
        tf.x(cp[3][0]), tf.y(cp[3][1]),
      );
      ctx.bezierCurveTo(
        tf.x(cp[4][0]), tf.y(cp[4][1]),
        tf.x(cp[5][0]), tf.y(cp[5][1]),
        tf.x(cp[6][0]), tf.y(cp[6][1]),
      );
    }
    ctx.stroke();
    ctx.setLineDash([]);
  }

  /** Nearest curve within tolerance wins; the selected member wins ties. */
  hitTest(payload: ApcpPayload, x: number, y: number, selectedMember: string | null): ApcpHit {
    const tf = this.transform(payload);
    const probe: Point = [x, y];
    const ordered = [
      ...payload.members.filter((m) => m.id === selectedMember),
      ...payload.members.filter((m) => m.id !== selectedMember),
    ];
    let bestId: string | null = null;
    let bestDist = HIT_RADIUS_PX;
    for (const member of ordered) {
      for (const path of member.paths) {
        const pts = samplePairCurve(path.control_points as Point[]).map((p) =>
          tf.point(p),
        );
        const d = pointPolylineDistance(probe, pts);
        if (d < bestDist) {
          bestDist = d;
          bestId = member.id;
        }
      }
    }
    if (bestId !== null) {
      return { kind: "member", id: bestId };
    }
    for (const layout of payload.layouts) {
      const { band } = layout;
      const px = tf.plotX(x);
      const py = tf.plotY(y);
      if (px >= band.x0 && px <= band.x1 && py >= band.y0 && py <= band.y1) {
        return { kind: "pair", pair: layout.pair };
      }
    }
    return null;
  }
}
