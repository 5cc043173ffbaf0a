import math
import random

import pytest

import oracles
from accelscope.errors import ValidationError
from accelscope.netmodel import Layer, layer_traffic
from accelscope.timeline import simulate, trace_to_csv

EXAMPLE = Layer("ex", k=3, n=4, m=4, out_h=8, out_w=8, b_w=8, b_a=8)


def make_layer(d):
    return Layer("l", d["k"], d["n"], d["m"], d["out_h"], d["out_w"],
                 d["b_w"], d["b_a"], d["in_h"], d["in_w"])


def test_worked_example_prefetch():
    # weights 4*4*9*8 = 1152, first 3 input rows 4*3*8*8 = 768 -> 1920 bits
    trace = simulate(EXAMPLE, bus_bits_per_cycle=64)
    assert trace.prefetch_end == 30  # ceil(1920/64)
    prefetch_bits = sum(s.bits for s in trace.segments if s.phase == "prefetch")
    assert prefetch_bits == 1920


def test_worked_example_conservation_and_stalls():
    trace = simulate(EXAMPLE, bus_bits_per_cycle=64)
    assert trace.total_bits == layer_traffic(EXAMPLE).total_bits == 5248
    # five row-start bursts (rows consuming a fresh input row) at 128 bits
    # on a 64-bit bus: one stall each
    assert trace.stall_cycles == 5
    assert trace.total_cycles == 30 + 64 + 5
    assert trace.utilization == pytest.approx(5248 / (99 * 64))
    assert len(trace.row_starts) == 8


def test_prefetch_cycles_exact_ceiling():
    rng = random.Random(17)
    for _ in range(20):
        d = oracles.random_layer_dims(rng)
        layer = make_layer(d)
        bus = rng.choice([8, 32, 64, 256, 1024])
        trace = simulate(layer, bus)
        pre_rows = layer.in_h if layer.out_h == 1 else min(layer.k, layer.in_h)
        pre_bits = (layer.n * layer.m * layer.k ** 2 * layer.b_w
                    + layer.n * pre_rows * layer.in_w * layer.b_a)
        assert trace.prefetch_end == math.ceil(pre_bits / bus)


def test_huge_bus_one_cycle_burst_no_stalls():
    trace = simulate(EXAMPLE, bus_bits_per_cycle=1 << 30)
    assert trace.stall_cycles == 0
    assert trace.prefetch_end == 1
    assert trace.total_cycles == EXAMPLE.out_h * EXAMPLE.out_w + 1


def test_single_pixel_output_degenerates():
    layer = Layer("one", k=3, n=5, m=7, out_h=1, out_w=1, b_w=6, b_a=6,
                  in_h=3, in_w=3)
    trace = simulate(layer, 16)
    assert trace.total_bits == layer_traffic(layer).total_bits
    assert len(trace.row_starts) == 1


def test_conservation_random_layers():
    rng = random.Random(29)
    for _ in range(30):
        layer = make_layer(oracles.random_layer_dims(rng))
        trace = simulate(layer, rng.choice([16, 64, 512]))
        w, i, o = oracles.traffic_single(
            layer.n, layer.m, layer.k, layer.b_w, layer.b_a,
            layer.out_h, layer.out_w, layer.in_h, layer.in_w,
        )
        assert trace.total_bits == w + i + o


def test_stalls_and_cycles_monotone_in_bus_width():
    rng = random.Random(31)
    for _ in range(10):
        layer = make_layer(oracles.random_layer_dims(rng))
        widths = [8 << i for i in range(10)]
        traces = [simulate(layer, w) for w in widths]
        for narrow, wide in zip(traces, traces[1:]):
            assert wide.stall_cycles <= narrow.stall_cycles
            assert wide.total_cycles <= narrow.total_cycles


def test_per_feature_false_internal_consistency():
    layer = Layer("l", 3, 16, 16, 12, 12, 8, 8)
    trace = simulate(layer, 64, per_feature=False)
    assert trace.total_bits == sum(s.bits for s in trace.segments)
    # one value per cycle in total moves less input than n feature maps need
    assert trace.total_bits < layer_traffic(layer).total_bits


def test_batch_divides_weight_traffic():
    layer = Layer("l", 3, 8, 8, 10, 10, 8, 8)
    t1 = simulate(layer, 64, batch=1)
    t4 = simulate(layer, 64, batch=4)
    weight_bits = layer.n * layer.m * 9 * layer.b_w
    assert t1.total_bits - t4.total_bits == weight_bits - weight_bits // 4


def test_segments_are_run_length_consistent():
    trace = simulate(EXAMPLE, 64)
    covered = 0
    prev_end = -1
    for seg in trace.segments:
        assert seg.start == prev_end + 1
        prev_end = seg.end
        covered += seg.cycles
    assert covered == trace.prefetch_end + EXAMPLE.out_h * EXAMPLE.out_w
    assert sum(s.bits for s in trace.segments) == trace.total_bits


def test_csv_output():
    trace = simulate(EXAMPLE, 64)
    text = trace_to_csv(trace)
    lines = text.strip().split("\n")
    assert lines[0] == "cycle_start,cycle_end,bits_per_cycle,phase"
    assert len(lines) == len(trace.segments) + 1
    assert any("prefetch" in l for l in lines[1:])
    assert any("row-start" in l for l in lines[1:])


def test_bad_inputs():
    with pytest.raises(ValidationError):
        simulate(EXAMPLE, 0)
    with pytest.raises(ValidationError):
        simulate(EXAMPLE, 64, batch=0)
