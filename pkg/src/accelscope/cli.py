"""Command-line front end.

Exit codes: 0 success, 1 input/validation error, 2 infeasible sizing or
environment error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from . import configio, hwmodel, netmodel, regression, roofline, svgplot, timeline
from .errors import ParseError, SizingError, ValidationError

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INFEASIBLE = 2


def _print_table(headers: list[str], rows: list[list], out=None):
    out = out or sys.stdout
    cells = [[str(c) for c in row] for row in rows]
    widths = [max(len(h), *(len(r[i]) for r in cells)) if cells else len(h) for i, h in enumerate(headers)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    print(fmt.format(*headers), file=out)
    print("  ".join("-" * w for w in widths), file=out)
    for row in cells:
        print(fmt.format(*row), file=out)


def _traffic_model(args) -> netmodel.TrafficModel:
    variant = getattr(args, "traffic", None) or netmodel.SINGLE_PASS
    if variant == netmodel.SINGLE_PASS:
        return netmodel.TrafficModel()
    return netmodel.TrafficModel(
        variant, group_in=args.group_in, group_out=args.group_out
    )


def _apply_bits(network, args, hw_config=None):
    if getattr(args, "bits", None):
        return network.with_bits(args.bits, args.bits)
    if hw_config is not None:
        return network.with_bits(*hw_config.traffic_bits)
    return network


def cmd_analyze(args) -> int:
    network = configio.resolve_network(args.network)
    hw = mem = None
    if args.hw:
        hw, mem = configio.load_hardware(args.hw)
    network = _apply_bits(network, args, hw)
    totals = netmodel.network_totals(network, _traffic_model(args))

    if hw is not None and mem is not None:
        sizing = hwmodel.size_pe_array(hw)
        for row in totals["layers"]:
            layer = network.layer(row["name"])
            point = roofline.raw_point(layer, hw.frequency_hz)
            label, borderline = roofline.classify(point, sizing, mem)
            row["classification"] = label
            row["borderline"] = borderline
        totals["sizing"] = sizing.to_dict()

    if args.json:
        print(json.dumps(totals, indent=2))
        return EXIT_OK
    if args.csv:
        writer = csv.writer(sys.stdout)
        head = ["layer", "n", "m", "k", "out", "b_w", "b_a", "ops", "bops",
                "compute_cost", "total_bits", "ops_per_bit"]
        if "classification" in totals["layers"][0]:
            head.append("classification")
        writer.writerow(head)
        for r in totals["layers"]:
            row = [r["name"], r["n"], r["m"], r["k"], f"{r['out_h']}x{r['out_w']}",
                   r["b_w"], r["b_a"], r["ops"], r["bops"], r["compute_cost"],
                   r["traffic"]["total_bits"], f"{r['ops_per_bit']:.4f}"]
            if "classification" in r:
                row.append(r["classification"])
            writer.writerow(row)
        return EXIT_OK

    headers = ["layer", "n", "m", "out", "bits", "MACs", "BOPS", "OPS/bit"]
    has_class = totals["layers"] and "classification" in totals["layers"][0]
    if has_class:
        headers.append("class")
    rows = []
    for r in totals["layers"]:
        row = [r["name"], r["n"], r["m"], f"{r['out_h']}x{r['out_w']}",
               f"{r['b_w']}/{r['b_a']}", r["ops"], r["bops"], f"{r['ops_per_bit']:.2f}"]
        if has_class:
            row.append(r["classification"] + ("*" if r.get("borderline") else ""))
        rows.append(row)
    _print_table(headers, rows)
    t = totals["totals"]
    print(f"\ntotals: ops={t['ops']} bops={t['bops']} "
          f"bits={t['traffic']['total_bits']} ops/bit={t['ops_per_bit']:.2f}")
    return EXIT_OK


def _report_from_args(args):
    network = configio.resolve_network(args.network)
    hw, mem = configio.load_hardware(args.hw)
    if mem is None:
        raise ValidationError(f"{args.hw}: roofline analysis needs a [mem] section")
    array = None
    if args.array:
        r, c = args.array.lower().split("x")
        array = (int(r), int(c))
    return roofline.build_report(network, hw, mem, array=array, spill=args.spill)


def cmd_roofline(args) -> int:
    report = _report_from_args(args)
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(svgplot.roofline_svg(report))
        print(f"wrote {args.svg}")
        return EXIT_OK
    if args.csv:
        sys.stdout.write(roofline.report_to_csv(report))
        return EXIT_OK
    if args.json:
        print(json.dumps(report.to_dict(), indent=2))
        return EXIT_OK
    rows = [
        [p.layer_name, p.variant, f"{p.ops_per_bit:.2f}", f"{p.required_ops / 1e9:.1f}",
         p.classification + ("*" if p.borderline else "")]
        for p in report.points
    ]
    _print_table(["layer", "variant", "OPS/bit", "GOPS/s", "class"], rows)
    print(f"\ncompute ceiling: {report.compute_ceiling / 1e9:.1f} GOPS/s   "
          f"bandwidth: {report.bandwidth_bits_per_s / 1e9:.1f} Gbit/s   "
          f"ridge: {report.ridge_point:.2f} OPS/bit")
    return EXIT_OK


def cmd_size(args) -> int:
    if args.area_um2:
        area = args.area_um2
    elif args.area_mm2:
        area = args.area_mm2 * 1e6
    else:
        raise ValidationError("size: needs --area-mm2 or --area-um2")
    profile = configio.resolve_profile(args.calibration)
    config = hwmodel.AcceleratorConfig(
        area_um2=area,
        frequency_hz=args.freq_mhz * 1e6,
        kind=hwmodel.FLOAT32 if args.float else hwmodel.FIXED,
        b_w=args.bits or 8,
        b_a=args.bits or 8,
        k=args.k,
        profile=profile,
    )
    sizing = hwmodel.size_pe_array(config)
    if args.json:
        print(json.dumps(sizing.to_dict(), indent=2))
        return EXIT_OK
    d = sizing.to_dict()
    for key, val in d.items():
        print(f"{key}: {val}")
    return EXIT_OK


def _read_xy_csv(path) -> list[tuple[float, float]]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or set(reader.fieldnames) != {"x", "y"}:
            raise ValidationError(f"{path}: expected CSV header 'x,y'")
        return [(float(r["x"]), float(r["y"])) for r in reader]


def cmd_fit(args) -> int:
    result = regression.fit(_read_xy_csv(args.csv), degree=args.degree)
    if args.json:
        print(json.dumps(result.to_dict(), indent=2))
        return EXIT_OK
    coeffs = ", ".join(f"{c:.6g}" for c in result.coefficients)
    print(f"degree {result.degree} fit: [{coeffs}]")
    print(f"R^2 = {result.r_squared:.9f}   max relative error = {result.max_rel_error:.3%}")
    return EXIT_OK


def cmd_compare(args) -> int:
    samples = []
    with open(args.csv, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        expected = {"n", "m", "k", "b_w", "b_a", "area"}
        if reader.fieldnames is None or set(reader.fieldnames) != expected:
            raise ValidationError(f"{args.csv}: expected CSV header n,m,k,b_w,b_a,area")
        for r in reader:
            cfg = {key: int(r[key]) for key in ("n", "m", "k", "b_w", "b_a")}
            samples.append((cfg, float(r["area"])))
    result = regression.compare_metrics(samples)
    if args.json:
        print(json.dumps(result.to_dict(), indent=2))
        return EXIT_OK
    print(f"bops         max leave-one-out error: {result.bops_max_loo_error:.3%}")
    print(f"compute_cost max leave-one-out error: {result.cc_max_loo_error:.3%}")
    print(f"verdict: {result.verdict}")
    return EXIT_OK


def cmd_timeline(args) -> int:
    network = configio.resolve_network(args.network)
    layer = network.layer(args.layer) if args.layer else network.layers[0]
    if args.bits:
        layer = layer.with_bits(args.bits, args.bits)
    trace = timeline.simulate(
        layer, args.bus_bits, per_feature=args.per_feature, batch=args.batch
    )
    text = timeline.trace_to_csv(trace)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {args.out}: cycles={trace.total_cycles} "
              f"stalls={trace.stall_cycles} utilization={trace.utilization:.3f}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_serve(args) -> int:
    from . import server

    try:
        httpd = server.create_server(args.host, args.port, static_dir=args.static)
    except OSError as exc:
        print(f"error: cannot bind {args.host}:{args.port}: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    host, port = httpd.server_address[:2]
    print(f"serving on http://{host}:{port} (ctrl-c to stop)")
    try:
        httpd.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        httpd.server_close()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="accelscope",
        description="Early-stage cost and roofline exploration for quantized CNN accelerators",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="per-layer work, complexity, and traffic table")
    p.add_argument("network", help="network JSON file or preset name")
    p.add_argument("--hw", help="hardware description file (TOML or JSON)")
    p.add_argument("--bits", type=int, help="re-quantize all layers to this bitwidth")
    p.add_argument("--traffic", choices=netmodel.TRAFFIC_VARIANTS,
                   default=netmodel.SINGLE_PASS)
    p.add_argument("--group-in", type=int, default=None)
    p.add_argument("--group-out", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("roofline", help="roofline report (table, JSON, CSV, or SVG)")
    p.add_argument("network")
    p.add_argument("--hw", required=True)
    p.add_argument("--array", help="partial-sum array dims, e.g. 16x16")
    p.add_argument("--spill", choices=(roofline.ONCHIP, roofline.SPILL),
                   default=roofline.ONCHIP)
    p.add_argument("--json", action="store_true")
    p.add_argument("--csv", action="store_true")
    p.add_argument("--svg", metavar="PATH")
    p.set_defaults(func=cmd_roofline)

    p = sub.add_parser("size", help="PE array sizing under an area budget")
    p.add_argument("--area-mm2", type=float)
    p.add_argument("--area-um2", type=float)
    p.add_argument("--bits", type=int)
    p.add_argument("--float", action="store_true", help="32-bit floating point PEs")
    p.add_argument("--freq-mhz", type=float, required=True)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--calibration")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_size)

    p = sub.add_parser("fit", help="least-squares fit of x,y CSV data")
    p.add_argument("--csv", required=True)
    p.add_argument("--degree", type=int, choices=(1, 2), default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("compare", help="bops vs compute_cost predictive power")
    p.add_argument("--csv", required=True, help="CSV with header n,m,k,b_w,b_a,area")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("timeline", help="per-layer memory access trace (CSV)")
    p.add_argument("network")
    p.add_argument("--layer", help="layer name (default: first layer)")
    p.add_argument("--bus-bits", type=int, required=True)
    p.add_argument("--bits", type=int)
    p.add_argument("--per-feature", dest="per_feature", action="store_true", default=True)
    p.add_argument("--no-per-feature", dest="per_feature", action="store_false")
    p.add_argument("--batch", type=int, default=1)
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_timeline)

    p = sub.add_parser("serve", help="JSON API server (and static UI host)")
    p.add_argument("--port", type=int, default=8008)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--static", help="directory of static UI assets")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ValidationError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SizingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
