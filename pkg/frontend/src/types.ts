// Mirrors of the session service's JSON bodies. The UI never computes
// pipeline math; every rendered number comes from one of these fields.

export interface Scale {
  l: number;
  z: number;
}

/** One evaluation cell: judgment interval then reliability interval. */
export type Cell = [number, number, number, number];

/** expert -> alternative -> cell */
export type Grid = Record<string, Record<string, Cell>>;

export interface SessionDefinition {
  scale: Scale;
  eta: number;
  alpha: number;
  experts: string[];
  alternatives: string[];
}

export interface SessionDoc extends SessionDefinition {
  schema: string;
  status: "open" | "finalized";
  rounds: { index: number; entries: Grid }[];
}

export interface SessionState {
  id: string;
  revision: number;
  session: SessionDoc;
}

export interface RoundFeedback {
  rounds: number;
  uncertainty_totals: Record<string, number>;
  deviation_totals: Record<string, number>;
  distance_grid: Record<string, Record<string, number>>;
  aggregate_grid: Grid;
  round_index?: number;
  revision?: number;
  warnings?: string[];
}

export interface FittedVector {
  expert: string;
  vector: number[];
  eigenvalue: number;
  residual: number;
}

export interface Report {
  schema: string;
  experts: string[];
  alternatives: string[];
  eta: number;
  alpha: number;
  normalize_rows: boolean;
  lambda1: number[];
  lambda2: number[];
  lambda: number[];
  uncertainty_totals: number[];
  zeta: number[];
  fitted: FittedVector[];
  group_vector: number[];
  ranking: string[];
  ties: string[][];
  warnings: string[];
}

export interface ApiErrorBody {
  code: string;
  message: string;
  details: string[];
}
