import { jsonFloat } from "./format.js";
import type { RooflineReportDto } from "./types.js";

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

/** Per-layer table. Numeric cells show the server's numbers verbatim
 *  (byte-identical to the JSON payload); nothing is recomputed here. */
export function renderLayerTable(report: RooflineReportDto): string {
  const rows = report.points
    .map(
      (p) => `<tr class="${p.variant === "raw" ? "row-raw" : "row-partial"}">
  <td>${esc(p.layer)}</td>
  <td>${p.variant}</td>
  <td class="num" data-field="ops_per_bit">${jsonFloat(p.ops_per_bit)}</td>
  <td class="num" data-field="required_ops_per_s">${jsonFloat(p.required_ops_per_s)}</td>
  <td class="cls-${esc(p.classification)}">${esc(p.classification)}${p.borderline ? " *" : ""}</td>
</tr>`,
    )
    .join("\n");
  return `<table class="layer-table">
<thead><tr><th>layer</th><th>variant</th><th>OPS/bit</th><th>required OPS/s</th><th>classification</th></tr></thead>
<tbody>
${rows}
</tbody>
</table>`;
}

export function renderSummary(report: RooflineReportDto): string {
  return `<dl class="summary">
<dt>compute ceiling (OPS/s)</dt><dd data-field="compute_ceiling">${jsonFloat(report.compute_ceiling_ops_per_s)}</dd>
<dt>bandwidth (bits/s)</dt><dd data-field="bandwidth">${jsonFloat(report.bandwidth_bits_per_s)}</dd>
<dt>ridge point (OPS/bit)</dt><dd data-field="ridge">${jsonFloat(report.ridge_point_ops_per_bit)}</dd>
<dt>PE array</dt><dd data-field="array">${report.sizing.array[0]}x${report.sizing.array[1]} (${report.sizing.pe_count} PEs)</dd>
<dt>est. power (mW)</dt><dd data-field="power">${jsonFloat(report.sizing.est_power_mw)}</dd>
</dl>`;
}
