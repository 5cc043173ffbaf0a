"""Operation-density roofline: ceilings, layer placement, bound classification.

The x axis is operations per bit moved over the memory bus, the y axis is
operations per second. A design is feasible for a layer when the layer's
required throughput sits below both the horizontal compute ceiling (array
capacity) and the diagonal memory ceiling (ops_per_bit x bandwidth).

Report construction is pure and deterministic: identical inputs produce
identical reports, layer order is preserved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from . import netmodel
from .errors import ValidationError
from .hwmodel import AcceleratorConfig, CalibrationProfile, SizingResult, size_pe_array
from .netmodel import (
    GROUPED_ONCHIP,
    GROUPED_SPILL,
    Layer,
    Network,
    TrafficModel,
    ops_per_pixel,
)

RAW = "raw"
PARTIAL_SUM = "partial-sum"

FEASIBLE = "feasible"
COMPUTE_BOUND = "compute-bound"
MEMORY_BOUND = "memory-bound"
COMPUTE_AND_MEMORY_BOUND = "compute-and-memory-bound"

ONCHIP = "onchip"
SPILL = "spill"


def _spill_variant(spill: str) -> str:
    if spill == ONCHIP:
        return GROUPED_ONCHIP
    if spill == SPILL:
        return GROUPED_SPILL
    raise ValidationError(f"spill mode must be '{ONCHIP}' or '{SPILL}' (got {spill!r})")


@dataclass(frozen=True)
class MemoryConfig:
    """External memory characterized by transfer rate and bus width."""

    transfer_rate: float  # transfers per second
    bus_width: int  # bits per transfer
    derating: float = 1.0  # effective-bandwidth factor; 1.0 = ideal

    def __post_init__(self):
        if not self.transfer_rate > 0:
            raise ValidationError(f"transfer_rate must be > 0 (got {self.transfer_rate})")
        if not self.bus_width > 0:
            raise ValidationError(f"bus_width must be > 0 (got {self.bus_width})")
        if not 0 < self.derating <= 1:
            raise ValidationError(f"derating must be in (0, 1] (got {self.derating})")

    @property
    def bandwidth_bits_per_s(self) -> float:
        return self.transfer_rate * self.bus_width * self.derating

    def to_dict(self) -> dict:
        return {
            "transfer_rate": self.transfer_rate,
            "bus_width": self.bus_width,
            "derating": self.derating,
            "bandwidth_bits_per_s": self.bandwidth_bits_per_s,
        }


@dataclass(frozen=True)
class RooflinePoint:
    layer_name: str
    ops_per_bit: float
    required_ops: float  # ops per second
    variant: str = RAW
    classification: str | None = None
    borderline: bool = False

    def __post_init__(self):
        if not self.ops_per_bit > 0:
            raise ValidationError("ops_per_bit must be > 0")
        if not self.required_ops > 0:
            raise ValidationError("required_ops must be > 0")
        if self.variant not in (RAW, PARTIAL_SUM):
            raise ValidationError(f"variant must be '{RAW}' or '{PARTIAL_SUM}'")

    def to_dict(self) -> dict:
        return {
            "layer": self.layer_name,
            "variant": self.variant,
            "ops_per_bit": self.ops_per_bit,
            "required_ops_per_s": self.required_ops,
            "classification": self.classification,
            "borderline": self.borderline,
        }


@dataclass(frozen=True)
class RooflineReport:
    network_name: str
    compute_ceiling: float  # ops per second
    bandwidth_bits_per_s: float
    points: tuple[RooflinePoint, ...]
    sizing: SizingResult
    memory: MemoryConfig
    array: tuple[int, int]
    spill: str
    frequency_hz: float

    @property
    def ridge_point(self) -> float:
        """ops/bit where the memory diagonal meets the compute ceiling."""
        return self.compute_ceiling / self.bandwidth_bits_per_s

    def to_dict(self) -> dict:
        return {
            "network": self.network_name,
            "frequency_hz": self.frequency_hz,
            "array": list(self.array),
            "spill": self.spill,
            "compute_ceiling_ops_per_s": self.compute_ceiling,
            "bandwidth_bits_per_s": self.bandwidth_bits_per_s,
            "ridge_point_ops_per_bit": self.ridge_point,
            "sizing": self.sizing.to_dict(),
            "memory": self.memory.to_dict(),
            "points": [p.to_dict() for p in self.points],
        }


CSV_HEADER = "layer,variant,ops_per_bit,required_ops,classification,borderline"


def report_to_csv(report: RooflineReport) -> str:
    lines = [CSV_HEADER]
    for p in report.points:
        lines.append(
            f"{p.layer_name},{p.variant},{p.ops_per_bit!r},{p.required_ops!r},"
            f"{p.classification},{str(p.borderline).lower()}"
        )
    return "\n".join(lines) + "\n"


def layer_required_ops(layer: Layer, frequency_hz: float) -> float:
    """Throughput needed to produce one full output pixel per clock."""
    if not frequency_hz > 0:
        raise ValidationError(f"frequency must be > 0 (got {frequency_hz})")
    return ops_per_pixel(layer) * frequency_hz


def classify(
    point: RooflinePoint,
    sizing: SizingResult,
    mem: MemoryConfig,
    borderline_tol: float = 0.05,
) -> tuple[str, bool]:
    """Place a point against both ceilings.

    Returns (classification, borderline). Borderline means the required
    throughput is within ``borderline_tol`` of the compute ceiling, i.e. the
    array is nearly exactly provisioned for the layer.
    """
    capacity = sizing.capacity_ops_per_s
    compute_bound = point.required_ops > capacity
    memory_bound = point.required_ops > point.ops_per_bit * mem.bandwidth_bits_per_s
    if compute_bound and memory_bound:
        label = COMPUTE_AND_MEMORY_BOUND
    elif compute_bound:
        label = COMPUTE_BOUND
    elif memory_bound:
        label = MEMORY_BOUND
    else:
        label = FEASIBLE
    borderline = abs(point.required_ops - capacity) / capacity <= borderline_tol
    return label, borderline


def raw_point(layer: Layer, frequency_hz: float) -> RooflinePoint:
    return RooflinePoint(
        layer_name=layer.name,
        ops_per_bit=netmodel.ops_per_bit(layer),
        required_ops=layer_required_ops(layer, frequency_hz),
        variant=RAW,
    )


def partial_sum_transform(
    layer: Layer,
    array: tuple[int, int],
    frequency_hz: float,
    spill: str = ONCHIP,
) -> RooflinePoint:
    """Recompute a layer's point for group-wise processing on a small array.

    An array of (g_in, g_out) PEs covers g_in input and g_out output features
    per clock, so each pixel takes P = ceil(n/g_in)*ceil(m/g_out) passes: the
    required throughput drops by P while the traffic (and so ops/bit) follows
    the corresponding grouped model.
    """
    g_in, g_out = array
    if g_in < 1 or g_out < 1:
        raise ValidationError("array group dims must be >= 1")
    passes = math.ceil(layer.n / g_in) * math.ceil(layer.m / g_out)
    model = TrafficModel(_spill_variant(spill), group_in=g_in, group_out=g_out)
    return RooflinePoint(
        layer_name=layer.name,
        ops_per_bit=netmodel.ops_per_bit(layer, model),
        required_ops=layer_required_ops(layer, frequency_hz) / passes,
        variant=PARTIAL_SUM,
    )


def partial_sum_passes(layer: Layer, array: tuple[int, int]) -> int:
    return math.ceil(layer.n / array[0]) * math.ceil(layer.m / array[1])


def build_report(
    network: Network,
    accel: AcceleratorConfig,
    mem: MemoryConfig,
    array: tuple[int, int] | None = None,
    spill: str = ONCHIP,
    borderline_tol: float = 0.05,
) -> RooflineReport:
    """One raw and one partial-sum point per layer, classified, in layer order."""
    _spill_variant(spill)  # validate early
    sizing = size_pe_array(accel)
    if array is None:
        array = (sizing.array_rows, sizing.array_cols)
    b_w, b_a = accel.traffic_bits
    points = []
    for layer in network.layers:
        layer = layer.with_bits(b_w, b_a)
        for point in (
            raw_point(layer, accel.frequency_hz),
            partial_sum_transform(layer, array, accel.frequency_hz, spill),
        ):
            label, borderline = classify(point, sizing, mem, borderline_tol)
            points.append(replace(point, classification=label, borderline=borderline))
    return RooflineReport(
        network_name=network.name,
        compute_ceiling=sizing.capacity_ops_per_s,
        bandwidth_bits_per_s=mem.bandwidth_bits_per_s,
        points=tuple(points),
        sizing=sizing,
        memory=mem,
        array=tuple(array),
        spill=spill,
        frequency_hz=accel.frequency_hz,
    )


@dataclass(frozen=True)
class ReverseDesignResult:
    """Array sized from an area budget, plus the frequency/bandwidth envelope."""

    sizing: SizingResult
    array: tuple[int, int]
    max_frequency_hz: float  # largest clock at which no layer is memory-bound
    memory_limited: bool  # False when bandwidth never binds (max_frequency inf)
    limiting_layer: str | None
    frequency_hz: float | None  # operating point used for required_bandwidth
    required_bandwidth_bits_per_s: float | None

    def to_dict(self) -> dict:
        return {
            "sizing": self.sizing.to_dict(),
            "array": list(self.array),
            "max_frequency_hz": self.max_frequency_hz if math.isfinite(self.max_frequency_hz) else None,
            "memory_limited": self.memory_limited,
            "limiting_layer": self.limiting_layer,
            "frequency_hz": self.frequency_hz,
            "required_bandwidth_bits_per_s": self.required_bandwidth_bits_per_s,
        }


def reverse_design(
    network: Network,
    area_um2: float,
    bits: tuple[int, int],
    mem: MemoryConfig,
    profile: CalibrationProfile | None = None,
    k: int = 3,
    spill: str = ONCHIP,
    frequency_hz: float | None = None,
) -> ReverseDesignResult:
    """Size the array from silicon first, then derive the clock/bandwidth envelope.

    For each layer, full utilization under partial-sum processing needs
    f <= ops_per_bit * bandwidth * passes / ops_per_pixel; the reported
    max_frequency is the minimum over layers. required_bandwidth inverts the
    same relation at ``frequency_hz`` (defaults to max_frequency, where it
    reproduces the given memory's bandwidth).
    """
    b_w, b_a = bits
    config = AcceleratorConfig(
        area_um2=area_um2, frequency_hz=1.0, kind="fixed", b_w=b_w, b_a=b_a, k=k,
        profile=profile,
    )
    sizing = size_pe_array(config)
    array = (sizing.array_rows, sizing.array_cols)
    variant = _spill_variant(spill)
    bandwidth = mem.bandwidth_bits_per_s

    max_f = math.inf
    limiting = None
    per_layer = []
    for layer in network.layers:
        layer = layer.with_bits(b_w, b_a)
        passes = partial_sum_passes(layer, array)
        model = TrafficModel(variant, group_in=array[0], group_out=array[1])
        opb = netmodel.ops_per_bit(layer, model)
        per_layer.append((layer.name, passes, opb, ops_per_pixel(layer)))
        f_bound = opb * bandwidth * passes / ops_per_pixel(layer)
        assert f_bound > 0  # every layer admits some positive clock
        if f_bound < max_f:
            max_f = f_bound
            limiting = layer.name

    f_used = frequency_hz if frequency_hz is not None else (
        max_f if math.isfinite(max_f) else None
    )
    required_bw = None
    if f_used is not None:
        required_bw = max(
            f_used * opp / (opb * passes) for _, passes, opb, opp in per_layer
        )
        # sizing above ran at a 1 Hz placeholder; report capacity at the
        # operating point
        sizing = replace(sizing, capacity_ops_per_s=sizing.capacity_ops_per_s * f_used)
    return ReverseDesignResult(
        sizing=sizing,
        array=array,
        max_frequency_hz=max_f,
        memory_limited=math.isfinite(max_f),
        limiting_layer=limiting if math.isfinite(max_f) else None,
        frequency_hz=f_used,
        required_bandwidth_bits_per_s=required_bw,
    )
