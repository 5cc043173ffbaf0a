"""accelscope: early-stage cost and roofline exploration for quantized CNN accelerators.

The library predicts, before any RTL exists, the silicon area, power, compute
capacity, and memory-bandwidth feasibility of a quantized convolution
accelerator, and places network layers on an operations-per-bit roofline so
that hardware/quantization trade-offs can be explored interactively.
"""

from .errors import ParseError, SizingError, ValidationError
from .hwmodel import (
    AcceleratorConfig,
    CalibrationProfile,
    SizingResult,
    default_profile,
    estimate_accelerator_area,
    estimate_power,
    load_profile,
    pe_area,
    size_pe_array,
)
from .netmodel import (
    Layer,
    Network,
    TrafficBreakdown,
    TrafficModel,
    accumulator_bits,
    compute_cost,
    layer_bops,
    layer_total_ops,
    layer_traffic,
    load_network,
    network_bops,
    network_totals,
    ops_per_bit,
    ops_per_pixel,
    parse_network,
)
from .regression import FitResult, MetricComparison, compare_metrics, fit
from .roofline import (
    MemoryConfig,
    ReverseDesignResult,
    RooflinePoint,
    RooflineReport,
    build_report,
    classify,
    layer_required_ops,
    partial_sum_transform,
    reverse_design,
)
from .timeline import TimelineTrace, simulate, trace_to_csv

__version__ = "0.1.0"
