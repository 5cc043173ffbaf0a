#!/usr/bin/env python3
# PE area vs bitwidth, array sizing under a budget, and the power estimate.
# Shows both area estimators: the quadratic bitwidth fit and the linear
# bit-operations fit.

from accelscope import (
    AcceleratorConfig,
    default_profile,
    estimate_accelerator_area,
    estimate_power,
    pe_area,
    size_pe_array,
)

profile = default_profile()

print("PE area vs bitwidth (quadratic fit, 3x3 kernel):")
for b in (2, 4, 6, 8, 16, 32):
    cfg = AcceleratorConfig(1e6, 800e6, "fixed", b, b, 3, profile=profile)
    area = pe_area(cfg)
    power = estimate_power(area, profile)
    print(f"  b={b:<3d} area {area:9.1f} um^2   dynamic power {power:7.3f} mW")

print("\n1 mm^2 @ 800 MHz, array sizing:")
for label, kind, bits in (("float32", "float32", None), ("fixed32", "fixed", 32),
                          ("16-bit", "fixed", 16), ("8-bit", "fixed", 8),
                          ("4-bit", "fixed", 4)):
    if kind == "float32":
        cfg = AcceleratorConfig(1e6, 800e6, "float32", k=3, profile=profile)
    else:
        cfg = AcceleratorConfig(1e6, 800e6, "fixed", bits, bits, 3, profile=profile)
    s = size_pe_array(cfg)
    print(f"  {label:<8} {s.pe_count:6d} PEs -> {s.array_rows}x{s.array_cols} array, "
          f"{s.capacity_ops_per_s / 1e9:8.1f} GOPS/s, ~{s.est_power_mw:7.1f} mW")

print("\nlinear bit-ops fit: area of an n x m PE block (8-bit, 3x3):")
for nm in (1, 2, 4, 8, 16):
    area = estimate_accelerator_area(nm, nm, 3, 8, 8, profile)
    print(f"  {nm:>2}x{nm:<2} block: {area / 1e3:9.2f} k-um^2")
