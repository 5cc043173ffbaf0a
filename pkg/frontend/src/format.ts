/** Render a JSON float exactly as the server serializes it, so table cells
 *  are byte-identical to the API payload (integral doubles keep their ".0"). */
export function jsonFloat(x: number): string {
  if (Number.isFinite(x) && Number.isInteger(x) && Math.abs(x) < 1e16) {
    return `${x}.0`;
  }
  return String(x);
}

export function siOps(x: number): string {
  if (x >= 1e12) return `${(x / 1e12).toFixed(2)} TOPS/s`;
  if (x >= 1e9) return `${(x / 1e9).toFixed(2)} GOPS/s`;
  if (x >= 1e6) return `${(x / 1e6).toFixed(2)} MOPS/s`;
  return `${x.toFixed(0)} OPS/s`;
}
