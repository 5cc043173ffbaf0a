import random

import numpy as np
import pytest

from accelscope import hwmodel, regression
from accelscope.errors import ValidationError
from accelscope.regression import compare_metrics, fit


def test_exact_quadratic_recovery():
    xs = [2, 4, 6, 8, 16, 32]
    pts = [(x, 12.39 * x * x + 86.07 * x - 14.02) for x in xs]
    result = fit(pts, degree=2)
    a, b, c = result.coefficients
    assert a == pytest.approx(12.39, rel=1e-6)
    assert b == pytest.approx(86.07, rel=1e-6)
    assert c == pytest.approx(-14.02, rel=1e-6)
    assert result.r_squared == pytest.approx(1.0, abs=1e-9)


def test_noisy_linear_recovery_seeded():
    rng = random.Random(20240817)
    xs = [100.0 * 1.35 ** i for i in range(24)]
    pts = [(x, (1.694 * x + 153.46) * (1 + rng.uniform(-0.01, 0.01))) for x in xs]
    result = fit(pts, degree=1)
    slope = result.coefficients[0]
    assert abs(slope - 1.694) / 1.694 < 0.03
    assert result.r_squared > 0.99


def test_degenerate_inputs():
    with pytest.raises(ValidationError, match="degenerate"):
        fit([(1, 1), (2, 2)], degree=2)
    with pytest.raises(ValidationError, match="identical"):
        fit([(3, 1), (3, 2), (3, 3), (3, 4)], degree=1)
    with pytest.raises(ValidationError, match="degree"):
        fit([(1, 1), (2, 2), (3, 3), (4, 4), (5, 5)], degree=3)


def test_scale_equivariance():
    rng = random.Random(99)
    pts = [(x, 3.5 * x + 7 + rng.gauss(0, 2)) for x in range(1, 20)]
    c = 137.5
    base = fit(pts, degree=1)
    scaled = fit([(x, c * y) for x, y in pts], degree=1)
    for b_coef, s_coef in zip(base.coefficients, scaled.coefficients):
        assert s_coef == pytest.approx(c * b_coef, rel=1e-9)
    assert scaled.r_squared == pytest.approx(base.r_squared, rel=1e-9)


def test_degree2_r2_at_least_degree1():
    rng = random.Random(4)
    for _ in range(20):
        pts = [(x, rng.uniform(-5, 5) + 0.3 * x * x) for x in range(8)]
        assert fit(pts, 2).r_squared >= fit(pts, 1).r_squared - 1e-12


def test_fit_residuals_recompute_r2():
    rng = random.Random(8)
    pts = [(x, 2 * x + rng.gauss(0, 1)) for x in range(12)]
    result = fit(pts, degree=1)
    ys = np.array(result.ys)
    ss_res = sum(r * r for r in result.residuals)
    ss_tot = float(np.sum((ys - ys.mean()) ** 2))
    assert result.r_squared == pytest.approx(1 - ss_res / ss_tot, rel=1e-12)


def synthetic_grid_samples():
    profile = hwmodel.default_profile()
    samples = []
    for nm in (4, 8, 16):
        for b in (4, 6, 8):
            area = hwmodel.estimate_accelerator_area(nm, nm, 3, b, b, profile)
            samples.append(({"n": nm, "m": nm, "k": 3, "b_w": b, "b_a": b}, area))
    return samples


def test_compare_metrics_synthetic_grid():
    result = compare_metrics(synthetic_grid_samples())
    # ground truth is linear in the bit-op count, so its LOO error is ~0
    assert result.bops_max_loo_error < 1e-9
    assert result.cc_max_loo_error > result.bops_max_loo_error
    assert result.verdict == regression.BOPS_METRIC


def test_compare_metrics_order_invariant():
    samples = synthetic_grid_samples()
    shuffled = list(samples)
    random.Random(1).shuffle(shuffled)
    a = compare_metrics(samples)
    b = compare_metrics(shuffled)
    assert a.verdict == b.verdict
    assert a.bops_max_loo_error == pytest.approx(b.bops_max_loo_error, rel=1e-12)
    assert a.cc_max_loo_error == pytest.approx(b.cc_max_loo_error, rel=1e-12)


def test_compare_metrics_single_nm_indistinguishable():
    profile = hwmodel.default_profile()
    samples = [
        ({"n": 8, "m": 8, "k": 3, "b_w": b, "b_a": b},
         hwmodel.estimate_accelerator_area(8, 8, 3, b, b, profile))
        for b in (2, 4, 6, 8)
    ]
    assert compare_metrics(samples).verdict == regression.INDISTINGUISHABLE


def test_compare_metrics_needs_four_samples():
    samples = synthetic_grid_samples()[:3]
    with pytest.raises(ValidationError, match="4 samples"):
        compare_metrics(samples)


def test_compare_metrics_systematic_grouping_of_compute_cost():
    # the compute-cost metric puts each (n,m) group on its own prediction
    # line: per-group fits shrink the residuals by orders of magnitude
    # relative to the single global line
    result = compare_metrics(synthetic_grid_samples())
    xs, ys, resid = result.cc_fit.xs, result.cc_fit.ys, result.cc_fit.residuals
    for start in (0, 3, 6):
        group = slice(start, start + 3)
        per_group = fit(list(zip(xs[group], ys[group])), degree=1)
        global_sse = sum(r * r for r in resid[group])
        group_sse = sum(r * r for r in per_group.residuals)
        assert group_sse < 0.1 * global_sse
