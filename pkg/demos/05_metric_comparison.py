#!/usr/bin/env python3
# Which complexity metric predicts silicon area better? Generates a grid of
# PE-block designs (n=m in {4,8,16}, b in {4,6,8}), takes their areas from
# the calibrated linear fit, and scores both metrics by leave-one-out
# prediction error.

from accelscope import compare_metrics, default_profile, estimate_accelerator_area

profile = default_profile()
samples = []
for nm in (4, 8, 16):
    for b in (4, 6, 8):
        area = estimate_accelerator_area(nm, nm, 3, b, b, profile)
        samples.append(({"n": nm, "m": nm, "k": 3, "b_w": b, "b_a": b}, area))
        print(f"  n=m={nm:<3d} b={b}  area {area / 1e3:9.2f} k-um^2")

result = compare_metrics(samples)
print(f"\nbops         leave-one-out error: {result.bops_max_loo_error:.2%}")
print(f"compute_cost leave-one-out error: {result.cc_max_loo_error:.2%}")
print(f"verdict: {result.verdict}")
print("\ncompute_cost residuals cluster by (n, m) group — each group forms "
      "its own prediction line:")
for i, (dims, _) in enumerate(samples):
    print(f"  n=m={dims['n']:<3d} b={dims['b_w']}: "
          f"residual {result.cc_fit.residuals[i]:+12.1f} um^2")
