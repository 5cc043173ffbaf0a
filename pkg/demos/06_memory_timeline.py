#!/usr/bin/env python3
# Per-layer memory access pattern: prefetch burst at full bus speed, then the
# steady-state trickle with a spike at every output row that pulls in a new
# input row. Sweeps the bus width to show the stall behavior.

from accelscope import Layer, simulate, trace_to_csv

layer = Layer("demo", k=3, n=4, m=4, out_h=8, out_w=8, b_w=8, b_a=8)

print("bus sweep for a small 4x4-feature layer:")
print(f"{'bus bits':>9} {'prefetch':>9} {'stalls':>7} {'cycles':>7} {'util':>6}")
for bus in (16, 32, 64, 128, 256, 1024):
    t = simulate(layer, bus)
    print(f"{bus:>9} {t.prefetch_end:>9} {t.stall_cycles:>7} "
          f"{t.total_cycles:>7} {t.utilization:>6.2f}")

t = simulate(layer, 64)
print(f"\ntrace at 64-bit bus ({t.total_bits} bits total, run-length segments):")
print(trace_to_csv(t))
