"""Per-layer memory access timeline: prefetch burst, steady-state trickle, stalls.

The simulated pattern: weights and the first kernel-height rows of input are
burst in at full bus speed before any compute starts; then one output pixel
is produced per issue slot, each slot demanding one new input value per
feature map (``per_feature=True``) plus the output write, with an extra
k-value burst at the start of every output row that consumes a new input row.

Accounting notes:

* With ``per_feature=True`` (default) the streamed input covers all n
  feature maps and the trace total equals the single-pass traffic total
  exactly. With ``per_feature=False`` one value per cycle is streamed in
  total, which cannot cover n maps, so only the internal invariant
  (segment bits sum to total_bits) holds.
* Output rows with a single pixel (out_w == 1) take their whole input burst
  in that one slot; a 1-row output (out_h == 1) prefetches the full input.
* ``batch`` divides weight traffic (weights loaded once per batch); bit
  conservation against single-pass traffic holds for batch == 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ValidationError
from .netmodel import Layer, TrafficModel, layer_traffic


@dataclass(frozen=True)
class TraceSegment:
    start: int  # first issue slot of the run, inclusive
    end: int  # last issue slot, inclusive
    bits_per_cycle: int  # demand per slot; above the bus width it stalls
    phase: str  # prefetch | row-start | steady

    @property
    def cycles(self) -> int:
        return self.end - self.start + 1

    @property
    def bits(self) -> int:
        return self.cycles * self.bits_per_cycle


@dataclass(frozen=True)
class TimelineTrace:
    prefetch_end: int  # number of prefetch slots
    row_starts: tuple[int, ...]  # issue-slot index of each output row
    segments: tuple[TraceSegment, ...]
    total_cycles: int  # prefetch + compute slots + stall cycles
    total_bits: int
    stall_cycles: int
    utilization: float  # total_bits / (total_cycles * bus width)

    def to_dict(self) -> dict:
        return {
            "prefetch_end": self.prefetch_end,
            "row_starts": list(self.row_starts),
            "total_cycles": self.total_cycles,
            "total_bits": self.total_bits,
            "stall_cycles": self.stall_cycles,
            "utilization": self.utilization,
            "segments": [
                {
                    "cycle_start": s.start,
                    "cycle_end": s.end,
                    "bits_per_cycle": s.bits_per_cycle,
                    "phase": s.phase,
                }
                for s in self.segments
            ],
        }


CSV_HEADER = "cycle_start,cycle_end,bits_per_cycle,phase"


def trace_to_csv(trace: TimelineTrace) -> str:
    lines = [CSV_HEADER]
    for s in trace.segments:
        lines.append(f"{s.start},{s.end},{s.bits_per_cycle},{s.phase}")
    return "\n".join(lines) + "\n"


def _spread(total: int, slots: int) -> list[tuple[int, int]]:
    """Run-length split of `total` units over `slots` slots, as (slot_count, units)."""
    if slots == 0:
        return []
    base, extra = divmod(total, slots)
    runs = []
    if extra:
        runs.append((extra, base + 1))
    if slots - extra:
        runs.append((slots - extra, base))
    return runs


def simulate(
    layer: Layer,
    bus_bits_per_cycle: int,
    per_feature: bool = True,
    batch: int = 1,
) -> TimelineTrace:
    if not isinstance(bus_bits_per_cycle, int) or bus_bits_per_cycle < 1:
        raise ValidationError(
            f"bus_bits_per_cycle must be a positive integer (got {bus_bits_per_cycle!r})"
        )
    if batch < 1:
        raise ValidationError(f"batch must be >= 1 (got {batch})")

    k, n, m = layer.k, layer.n, layer.m
    out_h, out_w, in_h, in_w = layer.out_h, layer.out_w, layer.in_h, layer.in_w
    b_w, b_a = layer.b_w, layer.b_a
    feat = n if per_feature else 1
    bus = bus_bits_per_cycle

    weight_bits = (n * m * k * k * b_w + batch - 1) // batch
    prefetch_rows = in_h if out_h == 1 else min(k, in_h)
    prefetch_bits = weight_bits + n * prefetch_rows * in_w * b_a
    prefetch_cycles = math.ceil(prefetch_bits / bus)

    segments: list[TraceSegment] = []
    slot = 0

    def emit(cycles: int, bits_per_cycle: int, phase: str):
        nonlocal slot
        if cycles <= 0:
            return
        prev = segments[-1] if segments else None
        if prev and prev.end == slot - 1 and prev.bits_per_cycle == bits_per_cycle and prev.phase == phase:
            segments[-1] = TraceSegment(prev.start, slot + cycles - 1, bits_per_cycle, phase)
        else:
            segments.append(TraceSegment(slot, slot + cycles - 1, bits_per_cycle, phase))
        slot += cycles

    if prefetch_cycles > 1:
        emit(prefetch_cycles - 1, bus, "prefetch")
    emit(1, prefetch_bits - (prefetch_cycles - 1) * bus, "prefetch")

    # Remaining input rows, dealt out across output rows 2..out_h.
    remaining_rows = in_h - prefetch_rows
    if out_h > 1:
        base, extra = divmod(remaining_rows, out_h - 1)
        rows_in = [0] + [base + (1 if i < extra else 0) for i in range(out_h - 1)]
    else:
        rows_in = [0]

    out_bits = m * b_a  # one full pixel written per slot
    row_starts = []
    stall_cycles = 0

    def demand_stalls(cycles: int, bits: int) -> int:
        return cycles * (math.ceil(bits / bus) - 1) if bits > bus else 0

    for q in rows_in:
        row_starts.append(slot)
        if q == 0:
            emit(out_w, out_bits, "steady")
            stall_cycles += demand_stalls(out_w, out_bits)
            continue
        row_values = q * in_w * feat
        burst_values = q * min(k, in_w) * feat if out_w > 1 else row_values
        burst_bits = burst_values * b_a + out_bits
        emit(1, burst_bits, "row-start")
        stall_cycles += demand_stalls(1, burst_bits)
        for cycles, values in _spread(row_values - burst_values, out_w - 1):
            bits = values * b_a + out_bits
            emit(cycles, bits, "steady")
            stall_cycles += demand_stalls(cycles, bits)

    total_bits = sum(s.bits for s in segments)
    total_cycles = prefetch_cycles + out_h * out_w + stall_cycles
    utilization = total_bits / (total_cycles * bus)
    return TimelineTrace(
        prefetch_end=prefetch_cycles,
        row_starts=tuple(row_starts),
        segments=tuple(segments),
        total_cycles=total_cycles,
        total_bits=total_bits,
        stall_cycles=stall_cycles,
        utilization=utilization,
    )


def conservation_check(layer: Layer, trace: TimelineTrace) -> bool:
    """trace total equals the single-pass bus traffic (per_feature=True, batch=1)."""
    return trace.total_bits == layer_traffic(layer, TrafficModel()).total_bits
