import type {
  AdpPayload,
  ApcpPayload,
  BpcpPayload,
  BrushMap,
  MetaPayload,
  SectionPayload,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly detail: string,
  ) {
    super(`API error ${status}: ${detail}`);
  }
}

export type FetchLike = (url: string) => Promise<{
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}>;

/** Encode a brush map as the server's comma-joined var:lo:hi triples. */
export function encodeBrush(brush: BrushMap): string {
  return Object.entries(brush)
    .map(([name, [lo, hi]]) => `${name}:${lo}:${hi}`)
    .join(",");
}

export class ApiClient {
  private readonly fetchImpl: FetchLike;

  constructor(
    public readonly baseUrl: string,
    fetchImpl?: FetchLike,
  ) {
    this.fetchImpl = fetchImpl ?? ((url) => fetch(url));
  }

  private async get<T>(path: string, params: Record<string, string>): Promise<T> {
    const query = new URLSearchParams(params).toString();
    const url = `${this.baseUrl}${path}${query ? `?${query}` : ""}`;
    const response = await this.fetchImpl(url);
    if (!response.ok) {
      let detail = "";
      try {
        const body = (await response.json()) as { detail?: string };
        detail = body.detail ?? "";
      } catch {
        // non-JSON error body
      }
      throw new ApiError(response.status, detail);
    }
    return (await response.json()) as T;
  }

  meta(): Promise<MetaPayload> {
    return this.get<MetaPayload>("/api/meta", {});
  }

  apcp(order?: string[], rescale = false): Promise<ApcpPayload> {
    const params: Record<string, string> = {};
    if (order && order.length) params.order = order.join(",");
    if (rescale) params.rescale = "true";
    return this.get<ApcpPayload>("/api/apcp", params);
  }

  adp(pair: number, rescale = false, order?: string[]): Promise<AdpPayload> {
    const params: Record<string, string> = { pair: String(pair) };
    if (rescale) params.rescale = "true";
    if (order && order.length) params.order = order.join(",");
    return this.get<AdpPayload>("/api/adp", params);
  }

  bpcp(member: string, brush: BrushMap = {}, rule?: string): Promise<BpcpPayload> {
    const params: Record<string, string> = { member };
    const encoded = encodeBrush(brush);
    if (encoded) params.brush = encoded;
    if (rule) params.rule = rule;
    return this.get<BpcpPayload>("/api/bpcp", params);
  }

  section(member: string, variable: string, z: number): Promise<SectionPayload> {
    return this.get<SectionPayload>("/api/section", {
      member,
      var: variable,
      z: String(z),
    });
  }
}
