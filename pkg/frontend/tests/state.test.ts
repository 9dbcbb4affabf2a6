import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { Store } from "../src/state.js";
import type { MetaPayload } from "../src/types.js";

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), "fixtures");
const meta: MetaPayload = JSON.parse(readFileSync(join(FIXTURES, "meta.json"), "utf-8"));

function loadedStore(): Store {
  const store = new Store();
  store.init(meta);
  return store;
}

describe("Store", () => {
  it("initializes axis order and defaults from metadata", () => {
    const store = loadedStore();
    const state = store.current;
    expect(state.axisOrder).toEqual(["w", "qc", "pt"]);
    expect(state.selectedPair).toBe(0);
    expect(state.selectedMember).toBeNull();
    expect(state.cspVariable).toBe("w");
  });

  it("bumps the version on every mutation and notifies subscribers", () => {
    const store = loadedStore();
    const seen: number[] = [];
    store.subscribe((_s, version) => seen.push(version));
    const v0 = store.version;
    store.selectMember("m001");
    store.setZIndex(2);
    expect(store.version).toBe(v0 + 2);
    expect(seen).toEqual([v0 + 1, v0 + 2]);
  });

  it("ignores no-op mutations", () => {
    const store = loadedStore();
    const v0 = store.version;
    store.selectMember(null);
    store.setZIndex(0);
    store.setAdpRescale(false);
    expect(store.version).toBe(v0);
  });

  it("rejects unknown members and out-of-range selections", () => {
    const store = loadedStore();
    expect(() => store.selectMember("m999")).toThrow(/unknown member/);
    expect(() => store.selectPair(2)).toThrow(/out of range/);
    expect(() => store.setZIndex(4)).toThrow(/out of range/);
    expect(() => store.setCspVariable("zz")).toThrow(/unknown variable/);
  });

  it("keeps brush intervals inside [0, 1]", () => {
    const store = loadedStore();
    store.setBrush("w", 0.25, 0.75);
    expect(store.current.brush).toEqual({ w: [0.25, 0.75] });
    expect(() => store.setBrush("w", 0.8, 0.2)).toThrow(/brush/);
    expect(() => store.setBrush("w", -0.1, 0.5)).toThrow(/brush/);
    expect(() => store.setBrush("zz", 0, 1)).toThrow(/unknown variable/);
    store.clearBrush("w");
    expect(store.current.brush).toEqual({});
  });

  it("validates axis order permutations and clamps the selected pair", () => {
    const store = loadedStore();
    store.selectPair(1);
    store.setAxisOrder(["pt", "w", "qc"]);
    expect(store.current.axisOrder).toEqual(["pt", "w", "qc"]);
    expect(store.current.selectedPair).toBe(1);
    expect(() => store.setAxisOrder(["w", "qc"])).toThrow(/permutation/);
    expect(() => store.setAxisOrder(["w", "qc", "qc"])).toThrow(/permutation/);
  });

  it("exposes snapshots, not live references", () => {
    const store = loadedStore();
    const snapshot = store.current;
    snapshot.brush.w = [0, 0.1];
    expect(store.current.brush).toEqual({});
  });
});
