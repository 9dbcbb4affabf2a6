import type { BrushMap, MetaPayload } from "./types.js";

export interface UiState {
  selectedMember: string | null;
  selectedPair: number | null;
  brush: BrushMap;
  axisOrder: string[];
  zIndex: number;
  cspVariable: string | null;
  adpRescale: boolean;
}

export type Listener = (state: UiState, version: number) => void;

/**
 * Single source of truth for the client's interaction state.
 *
 * Every mutation bumps `version`; fetch cycles key their responses on the
 * version they started from so stale responses are dropped, never rendered.
 * Mutations validate against the loaded dataset metadata.
 */
export class Store {
  private state: UiState = {
    selectedMember: null,
    selectedPair: null,
    brush: {},
    axisOrder: [],
    zIndex: 0,
    cspVariable: null,
    adpRescale: false,
  };
  private listeners: Listener[] = [];
  private meta_: MetaPayload | null = null;
  version = 0;

  get current(): UiState {
    return { ...this.state, brush: { ...this.state.brush } };
  }

  get meta(): MetaPayload {
    if (!this.meta_) throw new Error("metadata not loaded");
    return this.meta_;
  }

  get loaded(): boolean {
    return this.meta_ !== null;
  }

  init(meta: MetaPayload): void {
    this.meta_ = meta;
    this.state.axisOrder = meta.variables.map((v) => v.name);
    this.state.selectedPair = meta.variables.length >= 2 ? 0 : null;
    this.state.cspVariable = meta.variables[0]?.name ?? null;
    this.bump();
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private bump(): void {
    this.version += 1;
    const snapshot = this.current;
    for (const listener of [...this.listeners]) listener(snapshot, this.version);
  }

  selectMember(id: string | null): void {
    if (id !== null && !this.meta.members.some((m) => m.id === id)) {
      throw new Error(`unknown member ${id}`);
    }
    if (this.state.selectedMember === id) return;
    this.state.selectedMember = id;
    this.bump();
  }

  selectPair(pair: number | null): void {
    const nPairs = this.state.axisOrder.length - 1;
    if (pair !== null && (pair < 0 || pair >= nPairs)) {
      throw new Error(`pair ${pair} out of range [0, ${nPairs})`);
    }
    if (this.state.selectedPair === pair) return;
    this.state.selectedPair = pair;
    this.bump();
  }

  setBrush(variable: string, lo: number, hi: number): void {
    if (!this.meta.variables.some((v) => v.name === variable)) {
      throw new Error(`unknown variable ${variable}`);
    }
    if (!(lo >= 0 && hi <= 1 && lo <= hi)) {
      throw new Error(`brush [${lo}, ${hi}] must satisfy 0 <= lo <= hi <= 1`);
    }
    this.state.brush = { ...this.state.brush, [variable]: [lo, hi] };
    this.bump();
  }

  clearBrush(variable?: string): void {
    if (variable === undefined) {
      if (Object.keys(this.state.brush).length === 0) return;
      this.state.brush = {};
    } else {
      if (!(variable in this.state.brush)) return;
      const next = { ...this.state.brush };
      delete next[variable];
      this.state.brush = next;
    }
    this.bump();
  }

  setAxisOrder(order: string[]): void {
    const known = this.meta.variables.map((v) => v.name);
    const sorted = [...order].sort();
    const expect = [...known].sort();
    if (
      sorted.length !== expect.length ||
      sorted.some((name, i) => name !== expect[i])
    ) {
      throw new Error(`axis order must be a permutation of ${known.join(",")}`);
    }
    this.state.axisOrder = [...order];
    const nPairs = order.length - 1;
    if (this.state.selectedPair !== null && this.state.selectedPair >= nPairs) {
      this.state.selectedPair = nPairs - 1;
    }
    this.bump();
  }

  setZIndex(z: number): void {
    const nz = this.meta.grid_dims.nz;
    if (!(Number.isInteger(z) && z >= 0 && z < nz)) {
      throw new Error(`z ${z} out of range [0, ${nz})`);
    }
    if (this.state.zIndex === z) return;
    this.state.zIndex = z;
    this.bump();
  }

  setCspVariable(name: string): void {
    if (!this.meta.variables.some((v) => v.name === name)) {
      throw new Error(`unknown variable ${name}`);
    }
    if (this.state.cspVariable === name) return;
    this.state.cspVariable = name;
    this.bump();
  }

  setAdpRescale(on: boolean): void {
    if (this.state.adpRescale === on) return;
    this.state.adpRescale = on;
    this.bump();
  }
}
