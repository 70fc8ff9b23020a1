// Pure projections of service JSON into renderable view models. The
// only arithmetic here is max-normalization for bar widths and heatmap
// intensity; every displayed value is a verbatim service field.

import type { Report, RoundFeedback } from "./types.js";

export interface Bar {
  label: string;
  value: number;
  /** 0..1 share of the largest bar, for widths */
  fraction: number;
}

export function bars(totals: Record<string, number>): Bar[] {
  const entries = Object.entries(totals);
  const max = Math.max(...entries.map(([, v]) => v), 0);
  return entries.map(([label, value]) => ({
    label,
    value,
    fraction: max > 0 ? value / max : 0,
  }));
}

export interface HeatCell {
  expert: string;
  alternative: string;
  value: number;
  /** 0..1 intensity relative to the hottest cell */
  intensity: number;
}

export function heatmap(
  grid: Record<string, Record<string, number>>,
  experts: string[],
  alternatives: string[],
): HeatCell[] {
  let max = 0;
  for (const e of experts) {
    for (const a of alternatives) {
      max = Math.max(max, grid[e]?.[a] ?? 0);
    }
  }
  const cells: HeatCell[] = [];
  for (const e of experts) {
    for (const a of alternatives) {
      const value = grid[e]?.[a] ?? 0;
      cells.push({ expert: e, alternative: a, value, intensity: max > 0 ? value / max : 0 });
    }
  }
  return cells;
}

export function feedbackView(fb: RoundFeedback, experts: string[], alternatives: string[]) {
  return {
    rounds: fb.rounds,
    uncertaintyBars: bars(fb.uncertainty_totals),
    deviationBars: bars(fb.deviation_totals),
    heat: heatmap(fb.distance_grid, experts, alternatives),
  };
}

/** "a5 ≻ a1 ≻ ..." with tied blocks joined by ≈. */
export function rankingText(ranking: string[], ties: string[][]): string {
  const tied = new Map<string, string[]>();
  for (const block of ties) {
    for (const id of block) tied.set(id, block);
  }
  const parts: string[] = [];
  let i = 0;
  while (i < ranking.length) {
    const block = tied.get(ranking[i]);
    if (block) {
      parts.push(block.join(" ≈ "));
      i += block.length;
    } else {
      parts.push(ranking[i]);
      i += 1;
    }
  }
  return parts.join(" ≻ ");
}

export interface WeightRow {
  expert: string;
  lambda1: number;
  lambda2: number;
  lambda: number;
}

export function weightRows(report: Report): WeightRow[] {
  return report.experts.map((expert, i) => ({
    expert,
    lambda1: report.lambda1[i],
    lambda2: report.lambda2[i],
    lambda: report.lambda[i],
  }));
}

export interface FittedRow {
  expert: string;
  vector: number[];
  eigenvalue: number;
  residual: number;
}

export function fittedRows(report: Report): FittedRow[] {
  return report.fitted.map((f) => ({
    expert: f.expert,
    vector: f.vector,
    eigenvalue: f.eigenvalue,
    residual: f.residual,
  }));
}

export function reportView(report: Report) {
  return {
    weights: weightRows(report),
    fitted: fittedRows(report),
    groupVector: report.alternatives.map((alternative, j) => ({
      alternative,
      value: report.group_vector[j],
    })),
    ranking: rankingText(report.ranking, report.ties),
    hasTies: report.ties.length > 0,
    warnings: report.warnings,
  };
}
