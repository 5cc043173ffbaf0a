import type { PinnedReport } from "./state.js";
import type { RooflineReportDto } from "./types.js";

// Log-log roofline drawn with plain vector primitives so snapshots stay
// stable: decade gridlines, horizontal compute ceiling, diagonal memory
// ceiling, ridge marker, red raw dots and green partial-sum dots. Pinned
// reports overlay their ceilings dashed in per-pin colors.

const RAW_COLOR = "#d62728";
const PARTIAL_COLOR = "#2ca02c";
const CEILING_COLOR = "#1f77b4";
const PIN_COLORS = ["#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#e377c2"];

const WIDTH = 720;
const HEIGHT = 480;
const MARGIN = { left: 64, right: 16, top: 28, bottom: 44 };

interface LogScale {
  lo: number;
  hi: number;
  toPx(v: number): number;
}

function decadeRange(values: number[]): [number, number] {
  const lo = Math.pow(10, Math.floor(Math.log10(Math.min(...values))));
  let hi = Math.pow(10, Math.ceil(Math.log10(Math.max(...values))));
  if (hi <= lo * 10) hi = lo * 100;
  return [lo, hi];
}

function xScale(lo: number, hi: number): LogScale {
  const span = Math.log10(hi) - Math.log10(lo);
  const width = WIDTH - MARGIN.left - MARGIN.right;
  return { lo, hi, toPx: (v) => MARGIN.left + (width * (Math.log10(v) - Math.log10(lo))) / span };
}

function yScale(lo: number, hi: number): LogScale {
  const span = Math.log10(hi) - Math.log10(lo);
  const height = HEIGHT - MARGIN.top - MARGIN.bottom;
  return { lo, hi, toPx: (v) => MARGIN.top + (height * (Math.log10(hi) - Math.log10(v))) / span };
}

function decades(scale: LogScale): number[] {
  const out: number[] = [];
  for (let e = Math.ceil(Math.log10(scale.lo)); e <= Math.floor(Math.log10(scale.hi)); e++) {
    out.push(e);
  }
  return out;
}

function ceilingLines(
  report: RooflineReportDto,
  x: LogScale,
  y: LogScale,
  color: string,
  dashed: boolean,
  label: string,
): string {
  const parts: string[] = [];
  const dash = dashed ? ' stroke-dasharray="6 4"' : "";
  const ceiling = report.compute_ceiling_ops_per_s;
  const bw = report.bandwidth_bits_per_s;
  if (ceiling >= y.lo && ceiling <= y.hi) {
    parts.push(
      `<line class="compute-ceiling" data-pin="${label}" x1="${MARGIN.left}" ` +
        `y1="${y.toPx(ceiling).toFixed(1)}" x2="${WIDTH - MARGIN.right}" ` +
        `y2="${y.toPx(ceiling).toFixed(1)}" stroke="${color}" stroke-width="2"${dash}/>`,
    );
  }
  // diagonal y = bandwidth * x, clipped to the plot box
  const xAtLo = Math.max(x.lo, y.lo / bw);
  const xAtHi = Math.min(x.hi, y.hi / bw);
  if (xAtLo < xAtHi) {
    parts.push(
      `<line class="memory-ceiling" data-pin="${label}" x1="${x.toPx(xAtLo).toFixed(1)}" ` +
        `y1="${y.toPx(xAtLo * bw).toFixed(1)}" x2="${x.toPx(xAtHi).toFixed(1)}" ` +
        `y2="${y.toPx(xAtHi * bw).toFixed(1)}" stroke="${color}" stroke-width="2"${dash}/>`,
    );
  }
  const ridge = report.ridge_point_ops_per_bit;
  if (ridge >= x.lo && ridge <= x.hi && ceiling >= y.lo && ceiling <= y.hi) {
    parts.push(
      `<circle class="ridge" data-pin="${label}" cx="${x.toPx(ridge).toFixed(1)}" ` +
        `cy="${y.toPx(ceiling).toFixed(1)}" r="5" fill="none" stroke="${color}" stroke-width="2"${dash}/>`,
    );
  }
  return parts.join("\n");
}

export function renderRooflineChart(
  report: RooflineReportDto,
  pinboard: readonly PinnedReport[] = [],
): string {
  const reports = [report, ...pinboard.map((p) => p.report)];
  const xs: number[] = [];
  const ys: number[] = [];
  for (const r of reports) {
    xs.push(r.ridge_point_ops_per_bit, ...r.points.map((p) => p.ops_per_bit));
    ys.push(r.compute_ceiling_ops_per_s, ...r.points.map((p) => p.required_ops_per_s));
  }
  const [xlo, xhi] = decadeRange(xs);
  const [ylo, yhi] = decadeRange(ys);
  const x = xScale(xlo, xhi);
  const y = yScale(ylo, yhi);

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${WIDTH} ${HEIGHT}" ` +
      `width="${WIDTH}" height="${HEIGHT}" font-family="system-ui, sans-serif" font-size="11">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${WIDTH - MARGIN.left - MARGIN.right}" ` +
      `height="${HEIGHT - MARGIN.top - MARGIN.bottom}" fill="none" stroke="#333"/>`,
  );

  for (const e of decades(x)) {
    const px = x.toPx(Math.pow(10, e)).toFixed(1);
    parts.push(
      `<line class="grid" x1="${px}" y1="${MARGIN.top}" x2="${px}" ` +
        `y2="${HEIGHT - MARGIN.bottom}" stroke="#e3e3e3"/>`,
      `<text x="${px}" y="${HEIGHT - MARGIN.bottom + 16}" text-anchor="middle">1e${e}</text>`,
    );
  }
  for (const e of decades(y)) {
    const py = y.toPx(Math.pow(10, e)).toFixed(1);
    parts.push(
      `<line class="grid" x1="${MARGIN.left}" y1="${py}" x2="${WIDTH - MARGIN.right}" ` +
        `y2="${py}" stroke="#e3e3e3"/>`,
      `<text x="${MARGIN.left - 6}" y="${py}" dy="4" text-anchor="end">1e${e}</text>`,
    );
  }

  pinboard.forEach((pin, i) => {
    const color = PIN_COLORS[i % PIN_COLORS.length];
    parts.push(ceilingLines(pin.report, x, y, color, true, pin.label));
  });
  parts.push(ceilingLines(report, x, y, CEILING_COLOR, false, "current"));

  for (const p of report.points) {
    const color = p.variant === "raw" ? RAW_COLOR : PARTIAL_COLOR;
    const cls = p.variant === "raw" ? "point-raw" : "point-partial-sum";
    const title =
      `${p.layer} [${p.variant}] ops/bit=${p.ops_per_bit} ` +
      `ops/s=${p.required_ops_per_s} ${p.classification}` +
      (p.borderline ? " (borderline)" : "");
    parts.push(
      `<circle class="${cls}" data-layer="${p.layer}" cx="${x.toPx(p.ops_per_bit).toFixed(1)}" ` +
        `cy="${y.toPx(p.required_ops_per_s).toFixed(1)}" r="4" fill="${color}">` +
        `<title>${title}</title></circle>`,
    );
  }

  parts.push(
    `<text x="${(MARGIN.left + WIDTH - MARGIN.right) / 2}" y="${HEIGHT - 8}" ` +
      `text-anchor="middle">operations per bit</text>`,
    `<text x="14" y="${(MARGIN.top + HEIGHT - MARGIN.bottom) / 2}" text-anchor="middle" ` +
      `transform="rotate(-90 14 ${(MARGIN.top + HEIGHT - MARGIN.bottom) / 2})">operations per second</text>`,
  );
  parts.push("</svg>");
  return parts.join("\n");
}
