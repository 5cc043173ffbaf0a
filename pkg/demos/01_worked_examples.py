#!/usr/bin/env python3
# Reproduces the two worked accelerator studies end to end: a deep
# compute-heavy layer on a small fast die, and an early memory-heavy layer
# on a big slow die. Prints the capacity/density table for each candidate
# design and where the layer lands against the ceilings.

from accelscope import (
    AcceleratorConfig,
    Layer,
    MemoryConfig,
    Network,
    build_report,
)

DDR4 = MemoryConfig(transfer_rate=2.4e9, bus_width=64)  # 153.6 Gbit/s

LAYER11 = Layer("layer11", k=3, n=256, m=256, out_h=14, out_w=14, b_w=8, b_a=8)
LAYER2 = Layer("layer2", k=3, n=64, m=64, out_h=56, out_w=56, b_w=8, b_a=8)


def study(title, layer, area_um2, freq_hz, designs):
    print(f"\n=== {title} ===")
    print(f"silicon {area_um2 / 1e6:g} mm^2, clock {freq_hz / 1e6:g} MHz, "
          f"DDR-4 2.4 GHz x 64 bit")
    net = Network(layer.name, (layer,))
    print(f"{'design':<14}{'GOPS/s':>10}{'OPS/bit':>10}  verdict")
    for label, kind, bits in designs:
        if kind == "float32":
            accel = AcceleratorConfig(area_um2, freq_hz, "float32", k=3)
        else:
            accel = AcceleratorConfig(area_um2, freq_hz, "fixed", bits, bits, 3)
        report = build_report(net, accel, DDR4)
        raw = report.points[0]
        verdict = raw.classification + (" (borderline)" if raw.borderline else "")
        print(f"{label:<14}{report.compute_ceiling / 1e9:>10.4g}"
              f"{raw.ops_per_bit:>10.4g}  {verdict}")
    print(f"required: {report.points[0].required_ops / 1e12:g} TOPS/s")


if __name__ == "__main__":
    study("example 1: ResNet-18 layer 11 (256x256 @ 14x14)",
          LAYER11, 1e6, 800e6,
          [("32-bit float", "float32", None), ("32-bit fixed", "fixed", 32),
           ("16-bit", "fixed", 16), ("8-bit", "fixed", 8)])

    study("example 2: ResNet-18 layer 2 (64x64 @ 56x56)",
          LAYER2, 6e6, 100e6,
          [("32-bit float", "float32", None), ("32-bit fixed", "fixed", 32),
           ("16-bit", "fixed", 16), ("8-bit", "fixed", 8), ("4-bit", "fixed", 4)])
