import { ApiClient } from "./api.js";
import type { Ctx2D } from "./render.js";
import { Store, type UiState } from "./state.js";
import type {
  AdpPayload,
  ApcpPayload,
  BpcpPayload,
  SectionPayload,
} from "./types.js";
import { AdpView } from "./views/adp.js";
import { ApcpView, type ApcpHit } from "./views/apcp.js";
import { BpcpView } from "./views/bpcp.js";
import { CspView } from "./views/csp.js";

export interface Surface {
  ctx: Ctx2D;
  width: number;
  height: number;
}

export interface Surfaces {
  apcp: Surface;
  adp: Surface;
  bpcp: Surface;
  csp: Surface;
  notice?: (message: string) => void;
}

interface Payloads {
  apcp: ApcpPayload | null;
  adp: AdpPayload | null;
  bpcp: BpcpPayload | null;
  section: SectionPayload | null;
}

/**
 * Wires the four coordinated views to the store and the API.
 *
 * Every store mutation starts one fetch cycle keyed by the store version at
 * that moment; responses landing after a newer mutation are dropped, so a
 * view never shows data for a stale selection. The client computes nothing
 * itself: every rendered number comes from an API payload.
 */
export class App {
  readonly store = new Store();
  readonly payloads: Payloads = { apcp: null, adp: null, bpcp: null, section: null };
  readonly apcpView: ApcpView;
  readonly adpView: AdpView;
  readonly bpcpView: BpcpView;
  readonly cspView: CspView;

  private readonly inflight = new Set<Promise<void>>();
  private readonly apcpCache = new Map<string, ApcpPayload>();
  private readonly adpCache = new Map<string, AdpPayload>();

  constructor(
    private readonly client: ApiClient,
    private readonly surfaces: Surfaces,
  ) {
    this.apcpView = new ApcpView(surfaces.apcp.width, surfaces.apcp.height);
    this.adpView = new AdpView(surfaces.adp.width, surfaces.adp.height);
    this.bpcpView = new BpcpView(surfaces.bpcp.width, surfaces.bpcp.height);
    this.cspView = new CspView(surfaces.csp.width, surfaces.csp.height);
  }

  async start(): Promise<void> {
    const meta = await this.client.meta();
    this.store.subscribe((state, version) => {
      this.track(this.refresh(state, version));
    });
    this.store.init(meta);
    await this.whenIdle();
  }

  /** Resolves once every in-flight fetch cycle has settled. */
  async whenIdle(): Promise<void> {
    while (this.inflight.size) {
      await Promise.allSettled([...this.inflight]);
    }
  }

  private track(p: Promise<void>): void {
    this.inflight.add(p);
    p.finally(() => this.inflight.delete(p));
  }

  private fresh(version: number): boolean {
    return this.store.version === version;
  }

  private async refresh(state: UiState, version: number): Promise<void> {
    const jobs: Promise<void>[] = [this.loadApcp(state, version)];
    if (state.selectedPair !== null) {
      jobs.push(this.loadAdp(state, version));
    } else {
      this.payloads.adp = null;
    }
    if (state.selectedMember !== null) {
      jobs.push(this.loadBpcp(state, version));
      if (state.cspVariable !== null) {
        jobs.push(this.loadSection(state, version));
      }
    } else {
      this.payloads.bpcp = null;
      this.payloads.section = null;
    }
    await Promise.all(jobs.map((j) => j.catch((err) => this.report(err))));
    if (!this.fresh(version)) return; // a newer cycle will render
    this.renderAll(state);
  }

  private report(err: unknown): void {
    const message = err instanceof Error ? err.message : String(err);
    this.surfaces.notice?.(`view update skipped: ${message}`);
  }

  private async loadApcp(state: UiState, version: number): Promise<void> {
    const key = state.axisOrder.join(",");
    let payload = this.apcpCache.get(key);
    if (!payload) {
      payload = await this.client.apcp(state.axisOrder);
      this.apcpCache.set(key, payload);
    }
    if (!this.fresh(version)) return;
    this.payloads.apcp = payload;
  }

  private async loadAdp(state: UiState, version: number): Promise<void> {
    const key = `${state.selectedPair}|${state.adpRescale}|${state.axisOrder.join(",")}`;
    let payload = this.adpCache.get(key);
    if (!payload) {
      payload = await this.client.adp(
        state.selectedPair as number,
        state.adpRescale,
        state.axisOrder,
      );
      this.adpCache.set(key, payload);
    }
    if (!this.fresh(version)) return;
    this.payloads.adp = payload;
  }

  private async loadBpcp(state: UiState, version: number): Promise<void> {
    const payload = await this.client.bpcp(state.selectedMember as string, state.brush);
    if (!this.fresh(version)) return;
    this.payloads.bpcp = payload;
  }

  private async loadSection(state: UiState, version: number): Promise<void> {
    const payload = await this.client.section(
      state.selectedMember as string,
      state.cspVariable as string,
      state.zIndex,
    );
    if (!this.fresh(version)) return;
    this.payloads.section = payload;
  }

  renderAll(state: UiState): void {
    if (this.payloads.apcp) {
      this.apcpView.render(this.surfaces.apcp.ctx, this.payloads.apcp, state.selectedMember);
    }
    if (this.payloads.adp) {
      this.adpView.render(this.surfaces.adp.ctx, this.payloads.adp, state.selectedMember);
    } else {
      this.surfaces.adp.ctx.clearRect(0, 0, this.adpView.width, this.adpView.height);
    }
    if (this.payloads.bpcp) {
      this.bpcpView.render(this.surfaces.bpcp.ctx, this.payloads.bpcp, state.brush);
    } else {
      this.clearWithNotice(this.surfaces.bpcp, this.bpcpView.width, this.bpcpView.height);
    }
    if (this.payloads.section) {
      this.cspView.render(this.surfaces.csp.ctx, this.payloads.section);
    } else {
      this.clearWithNotice(this.surfaces.csp, this.cspView.width, this.cspView.height);
    }
  }

  private clearWithNotice(surface: Surface, width: number, height: number): void {
    surface.ctx.clearRect(0, 0, width, height);
    surface.ctx.fillStyle = "#666666";
    surface.ctx.textAlign = "center";
    surface.ctx.fillText("select a member", width / 2, height / 2);
  }

  /** Click routing for the overview canvas. */
  onApcpClick(x: number, y: number): ApcpHit {
    if (!this.payloads.apcp) return null;
    const hit = this.apcpView.hitTest(
      this.payloads.apcp,
      x,
      y,
      this.store.current.selectedMember,
    );
    if (hit?.kind === "member") this.store.selectMember(hit.id);
    else if (hit?.kind === "pair") this.store.selectPair(hit.pair);
    return hit;
  }
}
