"""Hand-emitted SVG roofline charts (log-log, no plotting dependency).

Conventions: horizontal compute ceiling, diagonal memory ceiling, ridge-point
marker where they meet, red dots for raw per-layer points and green dots for
their partial-sum equivalents. Axes are log10 with decade gridlines.
"""

from __future__ import annotations

import math

from .roofline import RAW, RooflineReport

RAW_COLOR = "#d62728"
PARTIAL_COLOR = "#2ca02c"
CEILING_COLOR = "#1f77b4"
GRID_COLOR = "#dddddd"


def _decades(lo: float, hi: float) -> list[int]:
    return list(range(math.floor(math.log10(lo)), math.ceil(math.log10(hi)) + 1))


def _fmt_pow10(e: int) -> str:
    return f"1e{e}"


def roofline_svg(report: RooflineReport, width: int = 760, height: int = 560) -> str:
    ceiling = report.compute_ceiling
    bandwidth = report.bandwidth_bits_per_s
    ridge = report.ridge_point

    xs = [p.ops_per_bit for p in report.points] + [ridge]
    ys = [p.required_ops for p in report.points] + [ceiling]
    x_lo = 10 ** math.floor(math.log10(min(xs)))
    x_hi = 10 ** math.ceil(math.log10(max(xs)))
    y_lo = 10 ** math.floor(math.log10(min(ys)))
    y_hi = 10 ** math.ceil(math.log10(max(ys)))
    if x_hi <= x_lo * 10:
        x_hi = x_lo * 100
    if y_hi <= y_lo * 10:
        y_hi = y_lo * 100

    margin_l, margin_r, margin_t, margin_b = 70, 20, 36, 50
    plot_w = width - margin_l - margin_r
    plot_h = height - margin_t - margin_b

    def px(x: float) -> float:
        return margin_l + plot_w * (math.log10(x) - math.log10(x_lo)) / (
            math.log10(x_hi) - math.log10(x_lo)
        )

    def py(y: float) -> float:
        return margin_t + plot_h * (math.log10(y_hi) - math.log10(y)) / (
            math.log10(y_hi) - math.log10(y_lo)
        )

    out: list[str] = []
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">'
    )
    out.append(f'<rect width="{width}" height="{height}" fill="white"/>')
    out.append(
        f'<rect x="{margin_l}" y="{margin_t}" width="{plot_w}" height="{plot_h}" '
        f'fill="none" stroke="black"/>'
    )

    for e in _decades(x_lo, x_hi):
        x = 10.0 ** e
        if x_lo <= x <= x_hi:
            out.append(
                f'<line class="grid" x1="{px(x):.1f}" y1="{margin_t}" x2="{px(x):.1f}" '
                f'y2="{margin_t + plot_h}" stroke="{GRID_COLOR}"/>'
            )
            out.append(
                f'<text x="{px(x):.1f}" y="{margin_t + plot_h + 16}" '
                f'text-anchor="middle">{_fmt_pow10(e)}</text>'
            )
    for e in _decades(y_lo, y_hi):
        y = 10.0 ** e
        if y_lo <= y <= y_hi:
            out.append(
                f'<line class="grid" x1="{margin_l}" y1="{py(y):.1f}" '
                f'x2="{margin_l + plot_w}" y2="{py(y):.1f}" stroke="{GRID_COLOR}"/>'
            )
            out.append(
                f'<text x="{margin_l - 6}" y="{py(y) + 4:.1f}" '
                f'text-anchor="end">{_fmt_pow10(e)}</text>'
            )

    # compute ceiling (horizontal) and memory ceiling (diagonal y = bandwidth * x)
    if y_lo <= ceiling <= y_hi:
        out.append(
            f'<line class="compute-ceiling" x1="{margin_l}" y1="{py(ceiling):.1f}" '
            f'x2="{margin_l + plot_w}" y2="{py(ceiling):.1f}" '
            f'stroke="{CEILING_COLOR}" stroke-width="2"/>'
        )
    diag = []
    for x in (x_lo, x_hi):
        y = bandwidth * x
        diag.append((x, y))
    (xa, ya), (xb, yb) = diag
    ya_c = min(max(ya, y_lo), y_hi)
    yb_c = min(max(yb, y_lo), y_hi)
    xa_c = ya_c / bandwidth
    xb_c = yb_c / bandwidth
    out.append(
        f'<line class="memory-ceiling" x1="{px(xa_c):.1f}" y1="{py(ya_c):.1f}" '
        f'x2="{px(xb_c):.1f}" y2="{py(yb_c):.1f}" '
        f'stroke="{CEILING_COLOR}" stroke-width="2"/>'
    )
    if x_lo <= ridge <= x_hi and y_lo <= ceiling <= y_hi:
        out.append(
            f'<circle class="ridge" cx="{px(ridge):.1f}" cy="{py(ceiling):.1f}" r="5" '
            f'fill="none" stroke="{CEILING_COLOR}" stroke-width="2"/>'
        )

    for p in report.points:
        color = RAW_COLOR if p.variant == RAW else PARTIAL_COLOR
        cls = "point-raw" if p.variant == RAW else "point-partial-sum"
        title = (
            f"{p.layer_name} [{p.variant}] ops/bit={p.ops_per_bit:.3g} "
            f"ops/s={p.required_ops:.4g} {p.classification}"
            + (" (borderline)" if p.borderline else "")
        )
        out.append(
            f'<circle class="{cls}" cx="{px(p.ops_per_bit):.1f}" '
            f'cy="{py(p.required_ops):.1f}" r="4" fill="{color}">'
            f"<title>{title}</title></circle>"
        )

    out.append(
        f'<text x="{margin_l + plot_w / 2:.0f}" y="{height - 12}" '
        f'text-anchor="middle">operations per bit</text>'
    )
    out.append(
        f'<text x="16" y="{margin_t + plot_h / 2:.0f}" text-anchor="middle" '
        f'transform="rotate(-90 16 {margin_t + plot_h / 2:.0f})">operations per second</text>'
    )
    out.append(
        f'<text x="{margin_l}" y="{margin_t - 12}">'
        f"{report.network_name}: array {report.array[0]}x{report.array[1]}, "
        f"{report.spill} partial sums</text>"
    )
    legend_y = margin_t + 14
    out.append(
        f'<circle cx="{margin_l + plot_w - 150}" cy="{legend_y}" r="4" fill="{RAW_COLOR}"/>'
        f'<text x="{margin_l + plot_w - 142}" y="{legend_y + 4}">raw</text>'
    )
    out.append(
        f'<circle cx="{margin_l + plot_w - 100}" cy="{legend_y}" r="4" fill="{PARTIAL_COLOR}"/>'
        f'<text x="{margin_l + plot_w - 92}" y="{legend_y + 4}">partial-sum</text>'
    )
    out.append("</svg>")
    return "\n".join(out) + "\n"
