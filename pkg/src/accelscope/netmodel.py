"""Network and layer model: arithmetic work, bit-level complexity, memory traffic.

Only plain convolutional layers are modelled. A layer is described by its
kernel side ``k``, input/output feature counts ``n``/``m``, spatial
dimensions, and the weight/activation bitwidths ``b_w``/``b_a``. All counts
are exact Python integers (no overflow); ratios are double precision.

Every function here is pure and all types are frozen, so concurrent use
needs no coordination.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from typing import Any, Mapping

from .errors import ParseError, ValidationError

MAX_BITWIDTH = 64

SINGLE_PASS = "single-pass"
GROUPED_ONCHIP = "grouped-onchip"
GROUPED_SPILL = "grouped-spill"
TRAFFIC_VARIANTS = (SINGLE_PASS, GROUPED_ONCHIP, GROUPED_SPILL)


def ceil_log2(value: int) -> int:
    """Smallest integer w with 2**w >= value, for value >= 1."""
    if value < 1:
        raise ValidationError(f"ceil_log2 needs a positive argument (got {value})")
    return (value - 1).bit_length()


@dataclass(frozen=True)
class Layer:
    """One convolution: m output features from n input features, k x k kernel.

    ``in_h``/``in_w`` default to the output dimensions (stride-1 padded
    convolution); pass them explicitly for strided layers.
    """

    name: str
    k: int
    n: int
    m: int
    out_h: int
    out_w: int
    b_w: int
    b_a: int
    in_h: int | None = None
    in_w: int | None = None

    def __post_init__(self):
        if self.in_h is None:
            object.__setattr__(self, "in_h", self.out_h)
        if self.in_w is None:
            object.__setattr__(self, "in_w", self.out_w)
        for name in ("k", "n", "m", "out_h", "out_w", "in_h", "in_w"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 1:
                raise ValidationError(
                    f"layer {self.name!r}: {name} must be a positive integer (got {v!r})"
                )
        for name in ("b_w", "b_a"):
            v = getattr(self, name)
            if not isinstance(v, int) or not 1 <= v <= MAX_BITWIDTH:
                raise ValidationError(
                    f"layer {self.name!r}: {name} must be an integer in "
                    f"[1, {MAX_BITWIDTH}] (got {v!r})"
                )

    def with_bits(self, b_w: int, b_a: int) -> "Layer":
        """Same layer re-quantized to new weight/activation widths."""
        return replace(self, b_w=b_w, b_a=b_a)


@dataclass(frozen=True)
class Network:
    name: str
    layers: tuple[Layer, ...]
    metadata: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))
        if not self.layers:
            raise ValidationError(f"network {self.name!r}: needs at least one layer")
        seen = set()
        for layer in self.layers:
            if layer.name in seen:
                raise ValidationError(
                    f"network {self.name!r}: duplicate layer name {layer.name!r}"
                )
            seen.add(layer.name)

    def layer(self, name: str) -> Layer:
        for layer in self.layers:
            if layer.name == name:
                return layer
        raise ValidationError(f"network {self.name!r}: no layer named {name!r}")

    def with_bits(self, b_w: int, b_a: int) -> "Network":
        return replace(self, layers=tuple(l.with_bits(b_w, b_a) for l in self.layers))


@dataclass(frozen=True)
class TrafficModel:
    """How a layer's data crosses the memory bus.

    ``single-pass`` reads weights and inputs once and writes outputs once.
    The grouped variants model a PE array covering only group_in x group_out
    features per clock: inputs are re-read once per output-feature group, and
    ``grouped-spill`` additionally writes and re-reads partial sums between
    input-group passes. ``accumulator_bits`` overrides the derived partial-sum
    width when set.
    """

    variant: str = SINGLE_PASS
    group_in: int | None = None
    group_out: int | None = None
    accumulator_bits: int | None = None

    def __post_init__(self):
        if self.variant not in TRAFFIC_VARIANTS:
            raise ValidationError(
                f"unknown traffic variant {self.variant!r}; expected one of {TRAFFIC_VARIANTS}"
            )
        if self.variant != SINGLE_PASS:
            for name in ("group_in", "group_out"):
                v = getattr(self, name)
                if not isinstance(v, int) or v < 1:
                    raise ValidationError(
                        f"traffic variant {self.variant!r} requires {name} >= 1 (got {v!r})"
                    )
        if self.accumulator_bits is not None and self.accumulator_bits < 1:
            raise ValidationError("accumulator_bits override must be >= 1")


@dataclass(frozen=True)
class TrafficBreakdown:
    """Bits moved over the memory bus for one layer, by category."""

    weight_bits: int
    input_bits: int
    output_bits: int
    spill_bits: int = 0
    total_bits: int = -1

    def __post_init__(self):
        for name in ("weight_bits", "input_bits", "output_bits", "spill_bits"):
            if getattr(self, name) < 0:
                raise ValidationError(f"{name} must be nonnegative")
        total = self.weight_bits + self.input_bits + self.output_bits + self.spill_bits
        if self.total_bits == -1:
            object.__setattr__(self, "total_bits", total)
        elif self.total_bits != total:
            raise ValidationError(
                f"total_bits {self.total_bits} != component sum {total}"
            )

    def to_dict(self) -> dict:
        return {
            "weight_bits": self.weight_bits,
            "input_bits": self.input_bits,
            "output_bits": self.output_bits,
            "spill_bits": self.spill_bits,
            "total_bits": self.total_bits,
        }


def ops_per_pixel(layer: Layer) -> int:
    """MAC operations to produce one output pixel across all features: n*m*(k^2+1)."""
    return layer.n * layer.m * (layer.k ** 2 + 1)


def layer_total_ops(layer: Layer) -> int:
    return ops_per_pixel(layer) * layer.out_h * layer.out_w


def accumulator_bits(layer: Layer, model: TrafficModel | None = None) -> int:
    """Width holding a full dot-product sum: b_a + b_w + ceil(log2(n*k^2))."""
    if model is not None and model.accumulator_bits is not None:
        return model.accumulator_bits
    return layer.b_a + layer.b_w + ceil_log2(layer.n * layer.k ** 2)


def layer_bops(layer: Layer, log2_mode: str = "ceil") -> int | float:
    """Bit operations for the layer: m*n*k^2*(b_a*b_w + b_a + b_w + log2(n*k^2)).

    The log2 term is the accumulator growth; by default it is rounded up to
    an integer width (``ceil``). ``log2_mode="exact"`` keeps the real value
    for side-by-side comparisons with analytically derived numbers.
    """
    nk2 = layer.n * layer.k ** 2
    if log2_mode == "ceil":
        log_term: int | float = ceil_log2(nk2)
    elif log2_mode == "exact":
        log_term = math.log2(nk2)
    else:
        raise ValidationError(f"log2_mode must be 'ceil' or 'exact' (got {log2_mode!r})")
    return layer.m * nk2 * (layer.b_a * layer.b_w + layer.b_a + layer.b_w + log_term)


def network_bops(network: Network, log2_mode: str = "ceil") -> int | float:
    return sum(layer_bops(l, log2_mode) for l in network.layers)


def compute_cost(layer: Layer) -> int:
    """The bitwidth-linear rival complexity metric: m*n*k^2*(b_a + b_w)."""
    return layer.m * layer.n * layer.k ** 2 * (layer.b_a + layer.b_w)


def layer_traffic(layer: Layer, model: TrafficModel = TrafficModel()) -> TrafficBreakdown:
    """Bits over the bus for one frame under the given traffic model."""
    weight_bits = layer.n * layer.m * layer.k ** 2 * layer.b_w
    input_bits = layer.n * layer.in_h * layer.in_w * layer.b_a
    output_bits = layer.m * layer.out_h * layer.out_w * layer.b_a
    spill_bits = 0
    if model.variant != SINGLE_PASS:
        out_groups = math.ceil(layer.m / model.group_out)
        input_bits *= out_groups
        if model.variant == GROUPED_SPILL:
            in_groups = math.ceil(layer.n / model.group_in)
            spill_bits = (
                2
                * (in_groups - 1)
                * layer.m
                * layer.out_h
                * layer.out_w
                * accumulator_bits(layer, model)
            )
    return TrafficBreakdown(weight_bits, input_bits, output_bits, spill_bits)


def ops_per_bit(layer: Layer, model: TrafficModel = TrafficModel()) -> float:
    """Operation density: layer MACs divided by total bits moved."""
    return layer_total_ops(layer) / layer_traffic(layer, model).total_bits


def network_totals(network: Network, model: TrafficModel = TrafficModel()) -> dict:
    """Per-layer metric table plus aggregates, in layer order."""
    rows = []
    agg_ops = agg_bops = agg_cc = 0
    agg_traffic = [0, 0, 0, 0]
    for layer in network.layers:
        traffic = layer_traffic(layer, model)
        ops = layer_total_ops(layer)
        bops = layer_bops(layer)
        cc = compute_cost(layer)
        rows.append(
            {
                "name": layer.name,
                "k": layer.k,
                "n": layer.n,
                "m": layer.m,
                "out_h": layer.out_h,
                "out_w": layer.out_w,
                "b_w": layer.b_w,
                "b_a": layer.b_a,
                "ops": ops,
                "bops": bops,
                "compute_cost": cc,
                "traffic": traffic.to_dict(),
                "ops_per_bit": ops / traffic.total_bits,
            }
        )
        agg_ops += ops
        agg_bops += bops
        agg_cc += cc
        for i, v in enumerate(
            (traffic.weight_bits, traffic.input_bits, traffic.output_bits, traffic.spill_bits)
        ):
            agg_traffic[i] += v
    total_bits = sum(agg_traffic)
    return {
        "network": network.name,
        "layers": rows,
        "totals": {
            "ops": agg_ops,
            "bops": agg_bops,
            "compute_cost": agg_cc,
            "traffic": TrafficBreakdown(*agg_traffic).to_dict(),
            "ops_per_bit": agg_ops / total_bits,
        },
    }


_LAYER_REQUIRED = ("name", "k", "n", "m", "out_h", "out_w", "b_w", "b_a")
_LAYER_OPTIONAL = ("in_h", "in_w")
_NETWORK_KEYS = ("name", "layers", "metadata")


def _require_int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(f"{where}: expected an integer (got {value!r})")
    return value


def layer_from_dict(obj: Mapping[str, Any], where: str = "layer") -> Layer:
    if not isinstance(obj, Mapping):
        raise ValidationError(f"{where}: expected an object")
    unknown = set(obj) - set(_LAYER_REQUIRED) - set(_LAYER_OPTIONAL)
    if unknown:
        raise ValidationError(f"{where}: unknown field(s) {sorted(unknown)}")
    missing = [f for f in _LAYER_REQUIRED if f not in obj]
    if missing:
        raise ValidationError(f"{where}: missing field(s) {missing}")
    if not isinstance(obj["name"], str):
        raise ValidationError(f"{where}.name: expected a string")
    kwargs = {"name": obj["name"]}
    for f in _LAYER_REQUIRED[1:]:
        kwargs[f] = _require_int(obj[f], f"{where}.{f}")
    for f in _LAYER_OPTIONAL:
        if f in obj:
            kwargs[f] = _require_int(obj[f], f"{where}.{f}")
    return Layer(**kwargs)


def network_from_dict(obj: Mapping[str, Any]) -> Network:
    if not isinstance(obj, Mapping):
        raise ValidationError("network document: expected a top-level object")
    unknown = set(obj) - set(_NETWORK_KEYS)
    if unknown:
        raise ValidationError(f"network document: unknown field(s) {sorted(unknown)}")
    if "name" not in obj or not isinstance(obj["name"], str):
        raise ValidationError("network document: missing or non-string 'name'")
    if "layers" not in obj or not isinstance(obj["layers"], list):
        raise ValidationError("network document: missing or non-list 'layers'")
    layers = [
        layer_from_dict(l, where=f"layers[{i}]") for i, l in enumerate(obj["layers"])
    ]
    metadata = obj.get("metadata", {})
    if not isinstance(metadata, Mapping):
        raise ValidationError("network document: 'metadata' must be an object")
    return Network(name=obj["name"], layers=tuple(layers), metadata=dict(metadata))


def parse_network(text: str) -> Network:
    """Parse a JSON network description; all defaults resolved, unknown fields rejected."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"network document: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return network_from_dict(obj)


def load_network(path) -> Network:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_network(fh.read())


def layer_to_dict(layer: Layer) -> dict:
    return {
        "name": layer.name,
        "k": layer.k,
        "n": layer.n,
        "m": layer.m,
        "out_h": layer.out_h,
        "out_w": layer.out_w,
        "in_h": layer.in_h,
        "in_w": layer.in_w,
        "b_w": layer.b_w,
        "b_a": layer.b_a,
    }


def network_to_dict(network: Network) -> dict:
    d = {"name": network.name, "layers": [layer_to_dict(l) for l in network.layers]}
    if network.metadata:
        d["metadata"] = dict(network.metadata)
    return d
