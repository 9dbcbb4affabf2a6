/** Wire-format types for the analytics server's JSON API (snake_case as served). */

export interface VariableInfo {
  name: string;
  unit: string;
  index: number;
}

export interface MemberInfo {
  id: string;
  index: number;
  true_state: boolean;
}

export interface MetaPayload {
  grid_dims: { nx: number; ny: number; nz: number };
  n_points: number;
  time_index: number;
  n_times: number;
  times: number[];
  variables: VariableInfo[];
  members: MemberInfo[];
  palette: { positions: number[]; colors: number[][] };
  altitudes: number[] | null;
  rule: string;
  thresholds: { positive_max: number; negative_min: number };
}

export interface BandRect {
  x0: number;
  y0: number;
  x1: number;
  y1: number;
}

export interface AdpPoint {
  member: string;
  index: number;
  true_state: boolean;
  x: number;
  y: number;
  mean: number;
  variance: number;
  label: string;
}

export interface LayoutPayload {
  pair: number;
  axes: [string, string];
  band: BandRect;
  mean_range: [number, number];
  var_range: [number, number];
  points: AdpPoint[];
}

export interface AdpPayload extends LayoutPayload {
  order: string[];
  rescale: boolean;
}

export interface MemberCurve {
  id: string;
  index: number;
  true_state: boolean;
  means: number[];
  paths: { pair: number; control_points: [number, number][] }[];
}

export interface ApcpPayload {
  time_index: number;
  order: string[];
  rescale: boolean;
  n_points: number;
  members: MemberCurve[];
  layouts: LayoutPayload[];
}

export interface HistogramCell {
  bl: number;
  br: number;
  count: number;
}

export interface PairHistogramPayload {
  pair: number;
  axes: [string, string];
  bins_left: number;
  bins_right: number;
  bin_edges_left: number[];
  bin_edges_right: number[];
  cells: HistogramCell[];
}

export interface BpcpPayload {
  member: string;
  index: number;
  rule: string;
  active_count: number;
  n_points: number;
  brush: Record<string, [number, number]>;
  pairs: PairHistogramPayload[];
}

export interface SectionPayload {
  member: string;
  index: number;
  variable: string;
  var_index: number;
  z: number;
  nx: number;
  ny: number;
  altitude: number | null;
  values: number[][];
  normalized: number[][];
  rgb_base64: string;
}

/** Normalized [lo, hi] interval per variable name; conjunctive filter. */
export type BrushMap = Record<string, [number, number]>;
