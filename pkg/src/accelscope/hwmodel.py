"""Calibrated silicon cost models: PE area, array sizing, capacity, power.

The numbers come from a calibration profile (synthesis results for one
process node); the shipped ``tsmc28`` profile carries 28 nm standard-cell
sweep constants. Profiles live in data files so they can be re-fitted from
new synthesis runs with the :mod:`accelscope.regression` module.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources
from typing import Mapping

from .errors import ParseError, SizingError, ValidationError
from .netmodel import ceil_log2

QUADRATIC_BITWIDTH = "quadratic-bitwidth"
LINEAR_BOPS = "linear-bops"

FLOAT32 = "float32"
FIXED = "fixed"

# Counting tolerance when packing PEs into the budget: a PE that overshoots
# by at most 5% of its own footprint is still placed. Calibration areas are
# published to 4-5 significant digits, so a strict floor is over-precise.
PACKING_SLACK = 0.05


@dataclass(frozen=True)
class CalibrationProfile:
    """Area/power fit coefficients for one process and PE design family.

    quad_*: PE area as a2*b^2 + a1*b + a0 (um^2, equal weight/activation
    bitwidth b). lin_*: area vs bit-operation count (um^2 per bit-op, um^2).
    ``fixed32_pe_area`` pins the 32-bit point explicitly (the quadratic
    extrapolates poorly that far out). ``overrides`` pins individual
    bitwidths to measured areas and wins over everything else.
    """

    name: str
    quad_a2: float
    quad_a1: float
    quad_a0: float
    lin_slope: float
    lin_intercept: float
    fixed32_pe_area: float
    float_mult_area: float
    power_density: float  # mW per um^2, dynamic
    overrides: Mapping[int, float] | None = None

    def __post_init__(self):
        positive = {
            "quad_a2": self.quad_a2,
            "quad_a1": self.quad_a1,
            "fixed32_pe_area": self.fixed32_pe_area,
            "float_mult_area": self.float_mult_area,
            "power_density": self.power_density,
        }
        for name, v in positive.items():
            if not v > 0:
                raise ValidationError(f"profile {self.name!r}: {name} must be > 0 (got {v})")
        if self.lin_slope < 0:
            raise ValidationError(f"profile {self.name!r}: lin_slope must be >= 0")
        for b in range(1, 33):
            if self.quadratic(b) <= 0:
                raise ValidationError(
                    f"profile {self.name!r}: quadratic fit non-positive at b={b}"
                )
        if self.overrides:
            for b, area in self.overrides.items():
                if not (isinstance(b, int) and 1 <= b <= 64) or not area > 0:
                    raise ValidationError(
                        f"profile {self.name!r}: bad override {b!r}: {area!r}"
                    )

    def quadratic(self, b: int | float) -> float:
        return self.quad_a2 * b * b + self.quad_a1 * b + self.quad_a0

    def linear(self, bops: int | float) -> float:
        return self.lin_slope * bops + self.lin_intercept


def profile_from_dict(obj: Mapping, source: str = "calibration profile") -> CalibrationProfile:
    try:
        quad = obj["quad"]
        lin = obj["lin"]
        return CalibrationProfile(
            name=obj["name"],
            quad_a2=float(quad[0]),
            quad_a1=float(quad[1]),
            quad_a0=float(quad[2]),
            lin_slope=float(lin[0]),
            lin_intercept=float(lin[1]),
            fixed32_pe_area=float(obj["fixed32_pe_area"]),
            float_mult_area=float(obj["float_mult_area"]),
            power_density=float(obj["power_density"]),
            overrides={int(k): float(v) for k, v in obj.get("overrides", {}).items()}
            or None,
        )
    except (KeyError, IndexError) as exc:
        raise ParseError(f"{source}: missing coefficient {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{source}: {exc}") from exc


def profile_to_dict(profile: CalibrationProfile) -> dict:
    d = {
        "name": profile.name,
        "quad": [profile.quad_a2, profile.quad_a1, profile.quad_a0],
        "lin": [profile.lin_slope, profile.lin_intercept],
        "fixed32_pe_area": profile.fixed32_pe_area,
        "float_mult_area": profile.float_mult_area,
        "power_density": profile.power_density,
    }
    if profile.overrides:
        d["overrides"] = {str(k): v for k, v in profile.overrides.items()}
    return d


def load_profile(path) -> CalibrationProfile:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: line {exc.lineno}: {exc.msg}") from exc
    return profile_from_dict(obj, source=str(path))


def default_profile() -> CalibrationProfile:
    """The shipped 28 nm profile."""
    text = resources.files("accelscope").joinpath("presets/tsmc28.json").read_text()
    return profile_from_dict(json.loads(text), source="presets/tsmc28.json")


@dataclass(frozen=True)
class AcceleratorConfig:
    """One candidate accelerator: silicon budget, clock, arithmetic, kernel."""

    area_um2: float
    frequency_hz: float
    kind: str = FIXED
    b_w: int = 8
    b_a: int = 8
    k: int = 3
    profile: CalibrationProfile | None = None
    explicit_array: tuple[int, int] | None = None

    def __post_init__(self):
        if not self.area_um2 > 0:
            raise ValidationError(f"area_um2 must be > 0 (got {self.area_um2})")
        if not self.frequency_hz > 0:
            raise ValidationError(f"frequency_hz must be > 0 (got {self.frequency_hz})")
        if self.kind not in (FLOAT32, FIXED):
            raise ValidationError(f"kind must be '{FLOAT32}' or '{FIXED}' (got {self.kind!r})")
        if self.k < 1:
            raise ValidationError("k must be >= 1")
        if self.kind == FIXED:
            for name in ("b_w", "b_a"):
                v = getattr(self, name)
                if not isinstance(v, int) or not 1 <= v <= 64:
                    raise ValidationError(f"{name} must be an integer in [1, 64] (got {v!r})")
        if self.explicit_array is not None:
            r, c = self.explicit_array
            if r < 1 or c < 1:
                raise ValidationError("explicit_array dims must be >= 1")
        if self.profile is None:
            object.__setattr__(self, "profile", default_profile())

    @property
    def traffic_bits(self) -> tuple[int, int]:
        """(b_w, b_a) the datapath moves over the bus; float32 moves 32-bit words."""
        if self.kind == FLOAT32:
            return (32, 32)
        return (self.b_w, self.b_a)


@dataclass(frozen=True)
class SizingResult:
    pe_area: float
    pe_count: int
    array_rows: int
    array_cols: int
    capacity_ops_per_s: float
    est_power_mw: float

    @property
    def array_side(self) -> int:
        if self.array_rows != self.array_cols:
            raise ValueError("array is not square; use array_rows/array_cols")
        return self.array_rows

    def to_dict(self) -> dict:
        return {
            "pe_area_um2": self.pe_area,
            "pe_count": self.pe_count,
            "array": [self.array_rows, self.array_cols],
            "capacity_ops_per_s": self.capacity_ops_per_s,
            "est_power_mw": self.est_power_mw,
        }


def pe_area(config: AcceleratorConfig, estimator: str = QUADRATIC_BITWIDTH) -> float:
    """Area of one processing engine in um^2.

    float32 PEs are k^2 multipliers (accumulator area excluded). Fixed-point
    PEs use either the quadratic area-vs-bitwidth fit (requires b_w == b_a;
    the 32-bit point uses the profile's explicit extrapolation) or the linear
    area-vs-bit-operations fit evaluated on a single-channel PE.
    """
    prof = config.profile
    if config.kind == FLOAT32:
        return config.k ** 2 * prof.float_mult_area
    if estimator == QUADRATIC_BITWIDTH:
        if config.b_w != config.b_a:
            raise ValidationError(
                "quadratic-bitwidth estimator requires b_w == b_a; "
                "use the linear-bops estimator for mixed widths"
            )
        b = config.b_w
        if prof.overrides and b in prof.overrides:
            return prof.overrides[b]
        if b == 32:
            return prof.fixed32_pe_area
        return prof.quadratic(b)
    if estimator == LINEAR_BOPS:
        k2 = config.k ** 2
        pe_bops = k2 * (
            config.b_a * config.b_w + config.b_a + config.b_w + ceil_log2(k2)
        )
        return prof.linear(pe_bops)
    raise ValidationError(f"unknown estimator {estimator!r}")


def _packed_count(budget: float, unit_area: float) -> int:
    return math.floor(budget / unit_area + PACKING_SLACK)


def size_pe_array(config: AcceleratorConfig, estimator: str = QUADRATIC_BITWIDTH) -> SizingResult:
    """Fill the area budget with PEs and tile the largest square array.

    float32 budgets are packed with multipliers first (k^2 multipliers per
    PE). ``explicit_array`` skips the budget-derived sizing entirely.
    """
    area = pe_area(config, estimator)
    if config.explicit_array is not None:
        rows, cols = config.explicit_array
        pe_count = rows * cols
    else:
        if config.kind == FLOAT32:
            mults = _packed_count(config.area_um2, config.profile.float_mult_area)
            pe_count = mults // config.k ** 2
        else:
            pe_count = _packed_count(config.area_um2, area)
        if pe_count < 1:
            raise SizingError(
                f"area budget {config.area_um2} um^2 fits no complete PE "
                f"(one PE needs {area:.1f} um^2)"
            )
        rows = cols = math.isqrt(pe_count)
    ops_per_cycle = rows * cols * (config.k ** 2 + 1)
    capacity = ops_per_cycle * config.frequency_hz
    power = estimate_power(area * rows * cols, config.profile)
    return SizingResult(
        pe_area=area,
        pe_count=pe_count,
        array_rows=rows,
        array_cols=cols,
        capacity_ops_per_s=capacity,
        est_power_mw=power,
    )


def estimate_power(area_um2: float, profile: CalibrationProfile | None = None) -> float:
    """Dynamic power of PE logic occupying ``area_um2``, in mW."""
    if not area_um2 > 0:
        raise ValidationError(f"area must be > 0 (got {area_um2})")
    if profile is None:
        profile = default_profile()
    return area_um2 * profile.power_density


def estimate_accelerator_area(
    n: int,
    m: int,
    k: int,
    b_w: int,
    b_a: int,
    profile: CalibrationProfile | None = None,
) -> float:
    """Area of an n-input x m-output PE block from the linear bit-ops fit."""
    for name, v in {"n": n, "m": m, "k": k, "b_w": b_w, "b_a": b_a}.items():
        if not isinstance(v, int) or v < 1:
            raise ValidationError(f"{name} must be a positive integer (got {v!r})")
    if profile is None:
        profile = default_profile()
    bops = n * m * k ** 2 * (b_a * b_w + b_a + b_w + ceil_log2(n * k ** 2))
    return profile.linear(bops)
