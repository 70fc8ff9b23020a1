// Display formatting: 3 decimals on screen, full precision in tooltips.

export function display(x: number): string {
  return x.toFixed(3);
}

/** Full-precision value for title/tooltip attributes. */
export function full(x: number): string {
  return String(x);
}

export function cellText(cell: readonly (number | null)[]): string {
  const f = (x: number | null) => (x === null ? "_" : String(x));
  return `([s${f(cell[0])},s${f(cell[1])}],[s${f(cell[2])},s${f(cell[3])}])`;
}
