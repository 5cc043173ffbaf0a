"""Shared loading/resolution of network, hardware, memory, and calibration inputs.

The CLI and the JSON API both funnel through these helpers so that identical
inputs produce identical analyses. Hardware descriptions are TOML or JSON
files (or, via the API, plain objects) with unit-suffixed keys:

    area_mm2 = 1.0            # or area_um2
    freq_mhz = 800            # or freq_hz
    kind = "fixed"            # or "float32"
    b_w = 8
    b_a = 8
    k = 3
    calibration = "tsmc28"    # optional: preset name or file path
    array = [16, 16]          # optional explicit PE array
    [mem]
    transfer_rate_mhz = 2400  # or transfer_rate_hz
    bus_width_bits = 64
    derating = 1.0            # optional
"""

from __future__ import annotations

import json
import os
from importlib import resources
from typing import Any, Mapping

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from . import hwmodel, netmodel
from .errors import ParseError, ValidationError
from .hwmodel import AcceleratorConfig, CalibrationProfile
from .roofline import MemoryConfig

_HW_KEYS = {
    "area_mm2", "area_um2", "freq_mhz", "freq_hz", "kind", "b_w", "b_a", "bits",
    "k", "calibration", "array", "mem",
}
_MEM_KEYS = {"transfer_rate_mhz", "transfer_rate_hz", "bus_width_bits", "derating"}


def _presets_dir():
    return resources.files("accelscope").joinpath("presets")


def list_presets() -> dict:
    networks = []
    calibrations = []
    for entry in sorted(_presets_dir().iterdir(), key=lambda e: e.name):
        if not entry.name.endswith(".json"):
            continue
        stem = entry.name[: -len(".json")]
        obj = json.loads(entry.read_text())
        if "layers" in obj:
            networks.append(stem)
        else:
            calibrations.append(stem)
    return {"networks": networks, "calibrations": calibrations}


def read_preset(name: str) -> dict:
    base = name[: -len(".json")] if name.endswith(".json") else name
    entry = _presets_dir().joinpath(base + ".json")
    if not entry.is_file():
        raise FileNotFoundError(f"no preset named {name!r}")
    return json.loads(entry.read_text())


def resolve_network(source: str | Mapping[str, Any]) -> netmodel.Network:
    """A network from a dict, a file path, or a shipped preset name."""
    if isinstance(source, Mapping):
        return netmodel.network_from_dict(source)
    if os.path.exists(source):
        return netmodel.load_network(source)
    try:
        return netmodel.network_from_dict(read_preset(source))
    except FileNotFoundError:
        raise FileNotFoundError(f"network file or preset not found: {source}") from None


def resolve_profile(source: str | Mapping[str, Any] | None) -> CalibrationProfile:
    if source is None:
        return hwmodel.default_profile()
    if isinstance(source, Mapping):
        return hwmodel.profile_from_dict(source)
    if os.path.exists(source):
        return hwmodel.load_profile(source)
    try:
        return hwmodel.profile_from_dict(read_preset(source), source=source)
    except FileNotFoundError:
        raise FileNotFoundError(f"calibration file or preset not found: {source}") from None


def _load_structured(path: str) -> dict:
    with open(path, "rb") as fh:
        raw = fh.read()
    if path.endswith(".toml"):
        try:
            return tomllib.loads(raw.decode("utf-8"))
        except tomllib.TOMLDecodeError as exc:
            raise ParseError(f"{path}: {exc}") from exc
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno}: {exc.msg}") from exc


def memory_from_dict(obj: Mapping[str, Any], where: str = "mem") -> MemoryConfig:
    unknown = set(obj) - _MEM_KEYS
    if unknown:
        raise ValidationError(f"{where}: unknown field(s) {sorted(unknown)}")
    if "transfer_rate_hz" in obj:
        rate = float(obj["transfer_rate_hz"])
    elif "transfer_rate_mhz" in obj:
        rate = float(obj["transfer_rate_mhz"]) * 1e6
    else:
        raise ValidationError(f"{where}: needs transfer_rate_mhz or transfer_rate_hz")
    if "bus_width_bits" not in obj:
        raise ValidationError(f"{where}: needs bus_width_bits")
    return MemoryConfig(
        transfer_rate=rate,
        bus_width=int(obj["bus_width_bits"]),
        derating=float(obj.get("derating", 1.0)),
    )


def hardware_from_dict(
    obj: Mapping[str, Any], where: str = "hardware"
) -> tuple[AcceleratorConfig, MemoryConfig | None]:
    unknown = set(obj) - _HW_KEYS
    if unknown:
        raise ValidationError(f"{where}: unknown field(s) {sorted(unknown)}")
    if "area_um2" in obj:
        area = float(obj["area_um2"])
    elif "area_mm2" in obj:
        area = float(obj["area_mm2"]) * 1e6
    else:
        raise ValidationError(f"{where}: needs area_mm2 or area_um2")
    if "freq_hz" in obj:
        freq = float(obj["freq_hz"])
    elif "freq_mhz" in obj:
        freq = float(obj["freq_mhz"]) * 1e6
    else:
        raise ValidationError(f"{where}: needs freq_mhz or freq_hz")
    kind = obj.get("kind", hwmodel.FIXED)
    bits = obj.get("bits")
    b_w = int(obj.get("b_w", bits if bits is not None else 8))
    b_a = int(obj.get("b_a", bits if bits is not None else 8))
    array = obj.get("array")
    if array is not None:
        if not (isinstance(array, (list, tuple)) and len(array) == 2):
            raise ValidationError(f"{where}: array must be [rows, cols]")
        array = (int(array[0]), int(array[1]))
    config = AcceleratorConfig(
        area_um2=area,
        frequency_hz=freq,
        kind=kind,
        b_w=b_w,
        b_a=b_a,
        k=int(obj.get("k", 3)),
        profile=resolve_profile(obj.get("calibration")),
        explicit_array=array,
    )
    mem = memory_from_dict(obj["mem"], where=f"{where}.mem") if "mem" in obj else None
    return config, mem


def load_hardware(path: str) -> tuple[AcceleratorConfig, MemoryConfig | None]:
    if not os.path.exists(path):
        raise FileNotFoundError(f"hardware file not found: {path}")
    return hardware_from_dict(_load_structured(path), where=path)
