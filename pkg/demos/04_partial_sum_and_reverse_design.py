#!/usr/bin/env python3
# The partial-sum what-if: a layer too big for the array is split into
# channel groups processed over multiple clocks, trading throughput for
# feasibility. Then the reverse flow: fix the silicon budget first and
# derive the clock and bandwidth that keep the array fully fed.

from accelscope import (
    Layer,
    MemoryConfig,
    Network,
    layer_required_ops,
    partial_sum_transform,
    reverse_design,
)

LAYER11 = Layer("layer11", k=3, n=256, m=256, out_h=14, out_w=14, b_w=4, b_a=4)
mem = MemoryConfig(transfer_rate=2.4e9, bus_width=64)

print("layer 11 (256x256 @ 14x14), 4-bit, 800 MHz clock")
print(f"  raw requirement: {layer_required_ops(LAYER11, 800e6) / 1e12:.3f} TOPS/s")
for side in (64, 32, 16, 8):
    point = partial_sum_transform(LAYER11, (side, side), 800e6, spill="onchip")
    capacity = side * side * 10 * 800e6
    print(f"  {side:>2}x{side:<2} array: required {point.required_ops / 1e9:8.1f} GOPS/s"
          f" (capacity {capacity / 1e9:8.1f}), ops/bit {point.ops_per_bit:6.2f}")

print("\nreverse design: 6 mm^2 at 8 bit, layer 2 only")
net = Network("layer2-only",
              (Layer("layer2", k=3, n=64, m=64, out_h=56, out_w=56, b_w=8, b_a=8),))
result = reverse_design(net, 6e6, (8, 8), mem)
print(f"  array {result.array[0]}x{result.array[1]} "
      f"({result.sizing.pe_count} PEs placed)")
print(f"  max clock before the memory wall: {result.max_frequency_hz / 1e6:.0f} MHz "
      f"(limited by {result.limiting_layer})")
print(f"  bandwidth needed at that clock: "
      f"{result.required_bandwidth_bits_per_s / 1e9:.1f} Gbit/s")

at_100 = reverse_design(net, 6e6, (8, 8), mem, frequency_hz=100e6)
print(f"  ... or at 100 MHz: "
      f"{at_100.required_bandwidth_bits_per_s / 1e9:.1f} Gbit/s")
