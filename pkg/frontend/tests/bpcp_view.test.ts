import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { COLORS } from "../src/render.js";
import type { BpcpPayload, SectionPayload } from "../src/types.js";
import { BpcpView } from "../src/views/bpcp.js";
import { decodeSection } from "../src/views/csp.js";
import { RecordingContext } from "./helpers/recording_ctx.js";

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), "fixtures");

function fixture<T>(name: string): T {
  return JSON.parse(readFileSync(join(FIXTURES, name), "utf-8")) as T;
}

describe("BpcpView", () => {
  const payload = fixture<BpcpPayload>("bpcp_m000.json");

  it("derives the axis sequence from the pair payloads", () => {
    const view = new BpcpView(720, 380);
    expect(view.axisNames(payload)).toEqual(["w", "qc", "pt"]);
  });

  it("draws one band per cell with count-proportional opacity, largest last", () => {
    const ctx = new RecordingContext();
    new BpcpView(720, 380).render(ctx, payload, {});
    const bands = ctx.paths.filter(
      (p) => p.kind === "fill" && p.style === COLORS.member && p.ops.includes("Z"),
    );
    const totalCells = payload.pairs.reduce((n, p) => n + p.cells.length, 0);
    expect(bands).toHaveLength(totalCells);
    // cells arrive count-ascending; opacity must be non-decreasing per pair
    let cursor = 0;
    for (const pair of payload.pairs) {
      const alphas = bands.slice(cursor, cursor + pair.cells.length).map((b) => b.alpha);
      for (let i = 1; i < alphas.length; i++) {
        expect(alphas[i]).toBeGreaterThanOrEqual(alphas[i - 1]);
      }
      cursor += pair.cells.length;
    }
  });

  it("announces an empty brushed selection", () => {
    const empty = fixture<BpcpPayload>("bpcp_m000_empty.json");
    const ctx = new RecordingContext();
    new BpcpView(720, 380).render(ctx, empty, { w: [0, 0], qc: [1, 1] });
    expect(empty.active_count).toBe(0);
    expect(ctx.texts.some((t) => t.text.includes("no points"))).toBe(true);
  });

  it("marks brushed intervals on their axes", () => {
    const ctx = new RecordingContext();
    new BpcpView(720, 380).render(ctx, payload, { qc: [0.25, 0.75] });
    const marks = ctx.strokesOf(COLORS.selected);
    expect(marks).toHaveLength(1);
  });

  it("maps pixels back to axes and values for brushing", () => {
    const view = new BpcpView(720, 380);
    const axisX = 36 + (720 - 72) / 2; // middle axis of three
    expect(view.axisAt(payload, axisX)).toBe(1);
    expect(view.axisAt(payload, axisX + 100)).toBeNull();
    expect(view.valueAt(payload, 36)).toBeCloseTo(1, 10);
    expect(view.valueAt(payload, 380 - 36)).toBeCloseTo(0, 10);
  });
});

describe("decodeSection", () => {
  it("expands packed RGB into opaque RGBA of the right size", () => {
    const section = fixture<SectionPayload>("section_m000_w_0.json");
    const image = decodeSection(section);
    expect(image.width).toBe(section.nx);
    expect(image.height).toBe(section.ny);
    expect(image.data).toHaveLength(section.nx * section.ny * 4);
    for (let i = 3; i < image.data.length; i += 4) {
      expect(image.data[i]).toBe(255);
    }
    // first pixel matches the raw payload bytes
    const raw = Buffer.from(section.rgb_base64, "base64");
    expect([image.data[0], image.data[1], image.data[2]]).toEqual([
      raw[0], raw[1], raw[2],
    ]);
  });
});
