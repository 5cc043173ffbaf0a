"""Acceptance suite: one test per release criterion, one printed line each.

Criterion 6 pins the on-chip partial-sum traffic variant; the companion
xfail test records that the spill variant cannot satisfy the same gate
(every heavy layer lands above the memory ceiling once partial sums travel
to memory at accumulator width). See the project decisions log.
"""

import random
import time
from pathlib import Path

import pytest

import oracles
from accelscope import hwmodel, netmodel, regression, roofline, timeline
from accelscope.hwmodel import FIXED, FLOAT32, AcceleratorConfig
from accelscope.netmodel import Layer, Network, TrafficModel
from accelscope.roofline import MemoryConfig

PRESETS = Path(__file__).resolve().parents[1] / "src" / "accelscope" / "presets"
DDR4 = MemoryConfig(transfer_rate=2.4e9, bus_width=64)

LAYER11 = Layer("layer11", 3, 256, 256, 14, 14, 8, 8)
LAYER2 = Layer("layer2", 3, 64, 64, 56, 56, 8, 8)


def accel(area, freq, kind, bits=None):
    if kind == FLOAT32:
        return AcceleratorConfig(area, freq, FLOAT32, k=3)
    return AcceleratorConfig(area, freq, FIXED, bits, bits, 3)


def ok(criterion, text):
    print(f"[criterion {criterion}] PASS - {text}")


def make_layer(d, name="l"):
    return Layer(name, d["k"], d["n"], d["m"], d["out_h"], d["out_w"],
                 d["b_w"], d["b_a"], d["in_h"], d["in_w"])


def test_criterion_1_table_example1():
    start = time.perf_counter()
    net = Network("example1", (LAYER11,))
    expected = {
        (FLOAT32, None): (72.00, 0.005, 5.82),
        (FIXED, 32): (392.0, 0.05, 5.82),
        (FIXED, 16): (1568.0, 0.5, 11.63),
        (FIXED, 8): (5408.0, 0.5, 23.26),
    }
    for (kind, bits), (gops, gops_tol, opb) in expected.items():
        report = roofline.build_report(net, accel(1e6, 8e8, kind, bits), DDR4)
        raw = report.points[0]
        assert abs(report.compute_ceiling / 1e9 - gops) <= gops_tol, (kind, bits)
        assert abs(raw.ops_per_bit - opb) <= 0.005, (kind, bits)
        assert raw.required_ops == 524.288e12
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    ok(1, f"example-1 GOPS/s and OPS/bit match at printed precision ({elapsed:.2f}s)")


def test_criterion_2_table_example2():
    start = time.perf_counter()
    net = Network("example2", (LAYER2,))
    expected = {
        (FLOAT32, None): (49.00, 0.005, 9.16),
        (FIXED, 32): (324.0, 0.05, 9.16),
        (FIXED, 16): (1296.0, 0.5, 18.32),
        (FIXED, 8): (3969.0, 0.5, 36.64),
        (FIXED, 4): (11236.0, 0.5, 73.27),
    }
    raw_points = {}
    for (kind, bits), (gops, gops_tol, opb) in expected.items():
        report = roofline.build_report(net, accel(6e6, 1e8, kind, bits), DDR4)
        raw = report.points[0]
        raw_points[(kind, bits)] = raw
        assert abs(report.compute_ceiling / 1e9 - gops) <= gops_tol, (kind, bits)
        assert abs(raw.ops_per_bit - opb) <= 0.005, (kind, bits)
    # classifications per the worked-example narrative
    for key in ((FLOAT32, None), (FIXED, 32), (FIXED, 16)):
        assert "compute" in raw_points[key].classification, key
    eight = raw_points[(FIXED, 8)]
    assert eight.classification == roofline.COMPUTE_BOUND
    assert eight.borderline  # within 5% of the ceiling
    assert raw_points[(FIXED, 4)].classification == roofline.FEASIBLE
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    ok(2, f"example-2 GOPS/s, OPS/bit, and classifications match ({elapsed:.2f}s)")


def test_criterion_3_pe_sizing():
    sizes = {}
    for kind, bits in ((FLOAT32, None), (FIXED, 32), (FIXED, 16), (FIXED, 8)):
        sizes[(kind, bits)] = hwmodel.size_pe_array(accel(1e6, 8e8, kind, bits))
    assert sizes[(FLOAT32, None)].pe_count == 9
    assert sizes[(FIXED, 32)].pe_count == 60
    assert sizes[(FIXED, 16)].pe_count == 220
    eight = sizes[(FIXED, 8)]
    assert eight.pe_count == 681
    assert abs(eight.pe_count - 683) / 683 <= 0.005
    assert eight.array_side == 26
    assert eight.capacity_ops_per_s == 5408e9
    ok(3, "1 mm^2 packs 9 float / 60 fixed-32 / 220 16-bit PEs; "
          "8-bit gives 681 (within 0.5% of 683), side 26, 5408 GOPS/s")


def test_criterion_4_calibration_fits():
    profile = hwmodel.default_profile()
    for b, expected in ((4, 528.5), (8, 1467.5), (16, 4534.9)):
        area = hwmodel.pe_area(accel(1e6, 8e8, FIXED, b))
        assert abs(area - expected) <= 0.1, b
    assert hwmodel.estimate_power(1489, profile) == pytest.approx(1.053, rel=1e-9)
    ok(4, "quadratic PE areas at 4/8/16 bit within 0.1 um^2; 1489 um^2 -> 1.053 mW")


def test_criterion_5_partial_sum_full_utilization():
    point = roofline.partial_sum_transform(LAYER11.with_bits(4, 4), (16, 16), 8e8)
    passes = roofline.partial_sum_passes(LAYER11, (16, 16))
    capacity = 16 * 16 * 10 * 8e8
    assert passes == 256
    assert point.required_ops == capacity == 2048e9
    ok(5, "layer-11 on a 16x16 array needs 256 passes and exactly fills 2048 GOPS/s")


def _memory_bound_counts(spill):
    net = netmodel.load_network(PRESETS / "resnet18.json")
    counts = {}
    for bits in (4, 3, 2):
        config = AcceleratorConfig(1e6, 8e8, FIXED, bits, bits, 3,
                                   explicit_array=(16, 16))
        report = roofline.build_report(net, config, DDR4, spill=spill)
        counts[bits] = sum(
            1 for p in report.points
            if p.variant == roofline.PARTIAL_SUM and "memory" in p.classification
        )
    return counts


def test_criterion_6_resnet_quantization_sweep():
    # variant pinned: on-chip partial-sum accumulation (see module docstring)
    counts = _memory_bound_counts("onchip")
    assert counts[4] >= counts[3] >= counts[2]
    assert counts[2] <= 3
    ok(6, f"memory-bound partial-sum layers 4/3/2-bit = "
          f"{counts[4]}/{counts[3]}/{counts[2]} (non-increasing, <=3 at 2-bit; "
          f"onchip variant pinned)")


@pytest.mark.xfail(
    strict=True,
    reason="spill-variant traffic puts 19/20 layers above the memory ceiling at "
    "every bitwidth; the <=3 gate is only attainable with on-chip accumulation",
)
def test_criterion_6_spill_variant_cannot_pass():
    counts = _memory_bound_counts("spill")
    assert counts[4] >= counts[3] >= counts[2]
    assert counts[2] <= 3


def test_criterion_7_regression_properties():
    xs = [2, 4, 6, 8, 16, 32]
    exact = regression.fit(
        [(x, 12.39 * x * x + 86.07 * x - 14.02) for x in xs], degree=2
    )
    assert exact.r_squared == pytest.approx(1.0, abs=1e-9)

    rng = random.Random(61)
    pts = [(x, 0.4 * x * x + 3 * x + rng.gauss(0, 4)) for x in range(10)]
    assert regression.fit(pts, 2).r_squared >= regression.fit(pts, 1).r_squared

    profile = hwmodel.default_profile()
    samples = [
        ({"n": nm, "m": nm, "k": 3, "b_w": b, "b_a": b},
         hwmodel.estimate_accelerator_area(nm, nm, 3, b, b, profile))
        for nm in (4, 8, 16) for b in (4, 6, 8)
    ]
    cmp = regression.compare_metrics(samples)
    assert cmp.bops_max_loo_error < cmp.cc_max_loo_error
    assert cmp.verdict == regression.BOPS_METRIC
    ok(7, f"exact recovery R^2=1; degree-2 >= degree-1; leave-one-out error "
          f"{cmp.bops_max_loo_error:.2e} (bops) < {cmp.cc_max_loo_error:.2%} (compute_cost)")


def test_criterion_8_timeline_conservation_and_monotonicity():
    start = time.perf_counter()
    rng = random.Random(1234)
    widths = [8 << i for i in range(10)]
    for i in range(50):
        layer = make_layer(oracles.random_layer_dims(rng), name=f"r{i}")
        expected = sum(oracles.traffic_single(
            layer.n, layer.m, layer.k, layer.b_w, layer.b_a,
            layer.out_h, layer.out_w, layer.in_h, layer.in_w,
        ))
        stalls = []
        for bus in widths:
            trace = timeline.simulate(layer, bus)
            assert trace.total_bits == expected
            stalls.append(trace.stall_cycles)
        assert stalls == sorted(stalls, reverse=True)
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0
    ok(8, f"50 random layers conserve bits exactly; stalls monotone over "
          f"10 bus widths ({elapsed:.2f}s)")


def test_criterion_9_oracle_equivalence():
    rng = random.Random(777)
    for i in range(100):
        d = oracles.random_layer_dims(rng)
        layer = make_layer(d, name=f"r{i}")
        assert netmodel.layer_bops(layer) == oracles.bops(
            d["n"], d["m"], d["k"], d["b_w"], d["b_a"])
        assert netmodel.compute_cost(layer) == oracles.compute_cost(
            d["n"], d["m"], d["k"], d["b_w"], d["b_a"])
        single = netmodel.layer_traffic(layer)
        assert single.total_bits == sum(oracles.traffic_single(
            d["n"], d["m"], d["k"], d["b_w"], d["b_a"],
            d["out_h"], d["out_w"], d["in_h"], d["in_w"]))
        g_in = rng.randint(1, d["n"])
        g_out = rng.randint(1, d["m"])
        for variant, spill in ((netmodel.GROUPED_ONCHIP, False),
                               (netmodel.GROUPED_SPILL, True)):
            grouped = netmodel.layer_traffic(
                layer, TrafficModel(variant, group_in=g_in, group_out=g_out))
            assert grouped.total_bits == sum(oracles.traffic_grouped(
                d["n"], d["m"], d["k"], d["b_w"], d["b_a"],
                d["out_h"], d["out_w"], d["in_h"], d["in_w"],
                g_in, g_out, spill))
    ok(9, "bops, compute_cost, and traffic totals match the straight-line "
          "oracle exactly on 100 random layers")
