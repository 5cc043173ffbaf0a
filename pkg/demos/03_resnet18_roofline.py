#!/usr/bin/env python3
# Full-network roofline for the shipped ResNet-18 preset on a 16x16 PE array
# at 800 MHz. Sweeps 4/3/2-bit quantization, prints the bound classification
# per layer, and writes one SVG chart per bitwidth next to this script.

from pathlib import Path

from accelscope import AcceleratorConfig, MemoryConfig, build_report, load_network
from accelscope.svgplot import roofline_svg

HERE = Path(__file__).resolve().parent
PRESET = HERE.parent / "src" / "accelscope" / "presets" / "resnet18.json"

net = load_network(PRESET)
mem = MemoryConfig(transfer_rate=2.4e9, bus_width=64)

for bits in (4, 3, 2):
    accel = AcceleratorConfig(1e6, 800e6, "fixed", bits, bits, 3,
                              explicit_array=(16, 16))
    report = build_report(net, accel, mem, spill="onchip")
    ps = [p for p in report.points if p.variant == "partial-sum"]
    bound = [p.layer_name for p in ps if "memory" in p.classification]
    print(f"\n{bits}-bit, 16x16 array @ 800 MHz "
          f"(ceiling {report.compute_ceiling / 1e9:.0f} GOPS/s, "
          f"ridge {report.ridge_point:.1f} OPS/bit)")
    print(f"  memory-bound after partial-sum transform: "
          f"{len(bound)}/{len(ps)} {bound if bound else ''}")
    out = HERE / f"resnet18_roofline_{bits}bit.svg"
    out.write_text(roofline_svg(report))
    print(f"  wrote {out.name}")
