"""Least-squares fitting (degree 1 or 2) and the area-metric comparison harness."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import ValidationError
from .netmodel import Layer, ceil_log2


@dataclass(frozen=True)
class FitResult:
    degree: int
    coefficients: tuple[float, ...]  # highest degree first
    r_squared: float
    residuals: tuple[float, ...]
    max_rel_error: float
    xs: tuple[float, ...]
    ys: tuple[float, ...]

    def predict(self, x: float) -> float:
        y = 0.0
        for c in self.coefficients:
            y = y * x + c
        return y

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "coefficients": list(self.coefficients),
            "r_squared": self.r_squared,
            "max_rel_error": self.max_rel_error,
            "residuals": list(self.residuals),
        }


def fit(points: Iterable[tuple[float, float]], degree: int) -> FitResult:
    """Ordinary least squares for y = p(x), degree 1 or 2.

    x is centered before solving to keep the system well conditioned at the
    magnitudes calibration data reaches (areas ~1e6, bit-op counts ~1e8).
    """
    if degree not in (1, 2):
        raise ValidationError(f"degree must be 1 or 2 (got {degree})")
    pts = [(float(x), float(y)) for x, y in points]
    if len(pts) < degree + 2:
        raise ValidationError(
            f"degenerate input: need at least {degree + 2} points for degree {degree} "
            f"(got {len(pts)})"
        )
    x = np.array([p[0] for p in pts])
    y = np.array([p[1] for p in pts])
    if np.all(x == x[0]):
        raise ValidationError("degenerate input: all x values identical")

    center = float(x.mean())
    xc = x - center
    vander = np.vander(xc, degree + 1)
    coef_c, *_ = np.linalg.lstsq(vander, y, rcond=None)

    if degree == 1:
        a, b = (float(v) for v in coef_c)
        coeffs = (a, b - a * center)
    else:
        a, b, c = (float(v) for v in coef_c)
        coeffs = (a, b - 2 * a * center, a * center * center - b * center + c)

    pred = np.polyval(coeffs, x)
    resid = y - pred
    ss_res = float(np.sum(resid ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    if ss_tot > 0:
        r2 = 1.0 - ss_res / ss_tot
    else:
        r2 = 1.0 if ss_res == 0 else 0.0
    r2 = max(0.0, min(1.0, r2))

    nonzero = np.abs(y) > 0
    max_rel = float(np.max(np.abs(resid[nonzero]) / np.abs(y[nonzero]))) if nonzero.any() else 0.0
    return FitResult(
        degree=degree,
        coefficients=coeffs,
        r_squared=r2,
        residuals=tuple(float(r) for r in resid),
        max_rel_error=max_rel,
        xs=tuple(float(v) for v in x),
        ys=tuple(float(v) for v in y),
    )


BOPS_METRIC = "bops"
COMPUTE_COST_METRIC = "compute_cost"
INDISTINGUISHABLE = "indistinguishable"


@dataclass(frozen=True)
class MetricComparison:
    bops_fit: FitResult
    cc_fit: FitResult
    bops_max_loo_error: float
    cc_max_loo_error: float
    verdict: str

    def to_dict(self) -> dict:
        return {
            "bops_fit": self.bops_fit.to_dict(),
            "compute_cost_fit": self.cc_fit.to_dict(),
            "bops_max_loo_error": self.bops_max_loo_error,
            "compute_cost_max_loo_error": self.cc_max_loo_error,
            "verdict": self.verdict,
        }


def _sample_dims(config) -> tuple[int, int, int, int, int]:
    if isinstance(config, Layer):
        return config.n, config.m, config.k, config.b_w, config.b_a
    if isinstance(config, Mapping):
        try:
            return (
                int(config["n"]),
                int(config["m"]),
                int(config["k"]),
                int(config["b_w"]),
                int(config["b_a"]),
            )
        except KeyError as exc:
            raise ValidationError(f"sample config missing field {exc}") from exc
    raise ValidationError(f"sample config must be a Layer or mapping (got {type(config)})")


def _bops_value(n: int, m: int, k: int, b_w: int, b_a: int) -> int:
    return n * m * k ** 2 * (b_a * b_w + b_a + b_w + ceil_log2(n * k ** 2))


def _cc_value(n: int, m: int, k: int, b_w: int, b_a: int) -> int:
    return n * m * k ** 2 * (b_a + b_w)


def _max_loo_error(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Max relative error predicting each held-out point from the others."""
    worst = 0.0
    for i in range(len(xs)):
        rest = [(xs[j], ys[j]) for j in range(len(xs)) if j != i]
        loo = fit(rest, degree=1)
        err = abs(loo.predict(xs[i]) - ys[i]) / abs(ys[i])
        worst = max(worst, err)
    return worst


def compare_metrics(samples: Iterable[tuple[object, float]]) -> MetricComparison:
    """Which complexity metric predicts area better on held-out designs.

    Each sample is (layer config, measured area). Both metrics get a linear
    fit and a leave-one-out evaluation; the verdict names the metric with the
    smaller worst-case relative prediction error. With a single (n, m) value
    in the sample set both metrics collapse to one prediction line per se,
    so the verdict is "indistinguishable".
    """
    rows = []
    for config, area in samples:
        dims = _sample_dims(config)
        area = float(area)
        if not area > 0:
            raise ValidationError(f"sample area must be > 0 (got {area})")
        rows.append((dims, area))
    if len(rows) < 4:
        raise ValidationError(f"need at least 4 samples (got {len(rows)})")

    bops_xs = [float(_bops_value(*dims)) for dims, _ in rows]
    cc_xs = [float(_cc_value(*dims)) for dims, _ in rows]
    areas = [area for _, area in rows]

    bops_fit = fit(zip(bops_xs, areas), degree=1)
    cc_fit = fit(zip(cc_xs, areas), degree=1)
    bops_err = _max_loo_error(bops_xs, areas)
    cc_err = _max_loo_error(cc_xs, areas)

    distinct_nm = {dims[:2] for dims, _ in rows}
    if len(distinct_nm) < 2 or bops_err == cc_err:
        verdict = INDISTINGUISHABLE
    elif bops_err < cc_err:
        verdict = BOPS_METRIC
    else:
        verdict = COMPUTE_COST_METRIC
    return MetricComparison(
        bops_fit=bops_fit,
        cc_fit=cc_fit,
        bops_max_loo_error=bops_err,
        cc_max_loo_error=cc_err,
        verdict=verdict,
    )
