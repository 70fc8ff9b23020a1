// Round-grid editing model: draft cells, inline validation mirroring the
// service's canonicalization rules, CSV paste-import and export. All
// pure functions so the form logic is testable without a DOM.

import type { Cell, Grid, Scale } from "./types.js";

/** A cell mid-entry: any subscript may still be blank. */
export type DraftCell = [number | null, number | null, number | null, number | null];

export type DraftGrid = Record<string, Record<string, DraftCell>>;

export interface CellCheck {
  problems: string[];
  /** an interval is reversed; autoSwapCell would repair it */
  reversed: boolean;
  complete: boolean;
}

export function emptyGrid(experts: string[], alternatives: string[]): DraftGrid {
  const grid: DraftGrid = {};
  for (const e of experts) {
    grid[e] = {};
    for (const a of alternatives) {
      grid[e][a] = [null, null, null, null];
    }
  }
  return grid;
}

export function checkCell(cell: DraftCell, scale: Scale): CellCheck {
  const problems: string[] = [];
  const names = ["a", "b", "c", "d"] as const;
  const bounds = [scale.l - 1, scale.l - 1, scale.z - 1, scale.z - 1];
  let complete = true;
  cell.forEach((x, i) => {
    if (x === null) {
      complete = false;
      return;
    }
    if (!Number.isFinite(x)) {
      problems.push(`${names[i]} is not a number`);
    } else if (x < 0) {
      problems.push(`${names[i]} is negative`);
    } else if (x > bounds[i]) {
      problems.push(`${names[i]} exceeds the scale bound ${bounds[i]}`);
    }
  });
  const [a, b, c, d] = cell;
  const reversed =
    (a !== null && b !== null && a > b) || (c !== null && d !== null && c > d);
  if (reversed) problems.push("interval endpoints are reversed (swap available)");
  return { problems, reversed, complete };
}

export function autoSwapCell(cell: DraftCell): DraftCell {
  const [a, b, c, d] = cell;
  const swap = (lo: number | null, hi: number | null): [number | null, number | null] =>
    lo !== null && hi !== null && lo > hi ? [hi, lo] : [lo, hi];
  return [...swap(a, b), ...swap(c, d)] as DraftCell;
}

export function missingCells(grid: DraftGrid): string[] {
  const missing: string[] = [];
  for (const [e, row] of Object.entries(grid)) {
    for (const [a, cell] of Object.entries(row)) {
      if (cell.some((x) => x === null)) missing.push(`${e}/${a}`);
    }
  }
  return missing;
}

/** True when every cell is filled and valid; the submit gate. */
export function gridReady(grid: DraftGrid, scale: Scale): boolean {
  return Object.values(grid).every((row) =>
    Object.values(row).every((cell) => {
      const check = checkCell(cell, scale);
      return check.complete && check.problems.length === 0;
    }),
  );
}

export function toSubmission(grid: DraftGrid): Grid {
  const out: Grid = {};
  for (const [e, row] of Object.entries(grid)) {
    out[e] = {};
    for (const [a, cell] of Object.entries(row)) {
      if (cell.some((x) => x === null)) {
        throw new Error(`cell ${e}/${a} is incomplete`);
      }
      out[e][a] = cell.slice() as Cell;
    }
  }
  return out;
}

const CSV_HEADER = ["expert", "alternative", "a", "b", "c", "d"];

/**
 * Apply pasted CSV (same layout the batch CLI accepts) onto a copy of
 * the grid. Unknown experts or alternatives are reported, not silently
 * dropped. With ``allowBlanks`` empty subscript fields stay null, which
 * makes export-then-import of a half-entered round lossless.
 */
export function importCsv(
  grid: DraftGrid,
  text: string,
  allowBlanks = false,
): { grid: DraftGrid; errors: string[] } {
  const lines = text
    .split(/\r?\n/)
    .map((l) => l.trim())
    .filter((l) => l.length > 0);
  const errors: string[] = [];
  if (lines.length === 0) return { grid, errors: ["empty paste"] };
  const header = lines[0].split(",").map((h) => h.trim().toLowerCase());
  if (CSV_HEADER.some((h) => !header.includes(h))) {
    return { grid, errors: [`header must contain ${CSV_HEADER.join(",")}`] };
  }
  const col = (name: string) => header.indexOf(name);
  const next: DraftGrid = JSON.parse(JSON.stringify(grid));
  lines.slice(1).forEach((line, i) => {
    const parts = line.split(",").map((p) => p.trim());
    const expert = parts[col("expert")];
    const alt = parts[col("alternative")];
    if (!(expert in next)) {
      errors.push(`line ${i + 2}: unknown expert ${expert}`);
      return;
    }
    if (!(alt in next[expert])) {
      errors.push(`line ${i + 2}: unknown alternative ${alt}`);
      return;
    }
    const cell: (number | null)[] = [];
    for (const name of ["a", "b", "c", "d"]) {
      const raw = parts[col(name)] ?? "";
      if (raw === "" && allowBlanks) {
        cell.push(null);
        continue;
      }
      const x = Number(raw);
      if (raw === "" || Number.isNaN(x)) {
        errors.push(`line ${i + 2}: non-numeric subscript ${name}`);
        return;
      }
      cell.push(x);
    }
    next[expert][alt] = cell as DraftCell;
  });
  return { grid: next, errors };
}

/** Export the draft (blanks as empty fields) so partial work can be
 * saved and re-imported exactly. */
export function exportCsv(grid: DraftGrid): string {
  const rows = [CSV_HEADER.join(",")];
  for (const [e, row] of Object.entries(grid)) {
    for (const [a, cell] of Object.entries(row)) {
      rows.push([e, a, ...cell.map((x) => (x === null ? "" : String(x)))].join(","));
    }
  }
  return rows.join("\n") + "\n";
}

/** Seed a draft grid from service-side round entries (for review or
 * resubmission after a conflict). */
export function fromEntries(entries: Grid): DraftGrid {
  const grid: DraftGrid = {};
  for (const [e, row] of Object.entries(entries)) {
    grid[e] = {};
    for (const [a, cell] of Object.entries(row)) {
      grid[e][a] = cell.slice() as DraftCell;
    }
  }
  return grid;
}
