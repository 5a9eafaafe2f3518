"""Inflation as a lagged linear function of labor-force growth.

The model is

    pi(t) = a1 * dLF(t - lag)/LF(t - lag) + a2

and the calibration is constrained least squares on cumulative curves: among
all (a1, a2) whose predicted cumulative inflation matches the measured
cumulative inflation exactly at the final overlapping year, pick the pair
minimizing the sum of squared gaps between the two cumulative curves. The
terminal constraint pins a2 given a1, so the problem reduces to a one-
dimensional least squares with a closed form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CollinearError, LengthError, RangeError
from .series import Series, align, cumulative, growth_rate, moving_average, shift, subtract

__all__ = [
    "ModelCoefficients",
    "PredictorSet",
    "CalibrationResult",
    "predict_inflation",
    "calibrate_cumulative",
    "build_predictor_set",
    "redistribute_revisions",
    "evaluate_subperiods",
]


@dataclass(frozen=True)
class ModelCoefficients:
    a1: float
    a2: float
    lag: int = 2

    def __post_init__(self):
        if self.lag < 0:
            raise RangeError(f"lag must be >= 0, got {self.lag}")


@dataclass(frozen=True)
class CalibrationResult:
    coefficients: ModelCoefficients
    terminal_residual: float  # relative gap of the cumulative curves at the end
    n: int


@dataclass(frozen=True)
class PredictorSet:
    """The six predictor variants; the half-year pair may be absent.

    predicted2/shifted2 sit at the labor-force year (they lead the target by
    `lag` years); predicted/shifted are the same values relabeled `lag` years
    later so they align with the inflation they predict. ma2/ma3 are trailing
    moving averages of the synchronized predicted series.
    """

    predicted: Series
    predicted2: Series
    ma2: Series
    ma3: Series
    shifted: Series | None = None
    shifted2: Series | None = None

    def available(self) -> dict:
        out = {
            "predicted": self.predicted,
            "predicted2": self.predicted2,
            "ma2": self.ma2,
            "ma3": self.ma3,
        }
        if self.shifted is not None:
            out["shifted"] = self.shifted
            out["shifted2"] = self.shifted2
        return out


def predict_inflation(lf: Series, c: ModelCoefficients) -> Series:
    """Predicted inflation aligned to the year it predicts."""
    if len(lf) < c.lag + 2:
        raise LengthError(f"labor force series too short for lag {c.lag}")
    g = growth_rate(lf)
    predicted = Series(
        f"predicted({lf.name})",
        g.start_year + c.lag,
        tuple(c.a1 * v + c.a2 for v in g.values),
    )
    return predicted


def calibrate_cumulative(measured: Series, lf: Series, lag: int = 2) -> CalibrationResult:
    """Fit (a1, a2) on cumulative curves with an exact terminal match.

    With G(t) the running sum of the lagged growth rate, k(t) = 1..n, and
    C(t) the running sum of measured inflation, the constraint
    a1*G(T) + a2*n = C(T) eliminates a2, leaving the closed form

        a1 = sum(u*v) / sum(u*u),
        u(t) = G(t) - G(T)*k(t)/n,   v(t) = C(t) - C(T)*k(t)/n.
    """
    if lag < 0:
        raise RangeError(f"lag must be >= 0, got {lag}")
    g = shift(growth_rate(lf), lag)
    m_al, g_al = align(measured, g)
    n = len(m_al)
    if n < 3:
        raise LengthError(f"only {n} overlapping years; need at least 3")
    C = cumulative(m_al).to_numpy()
    G = cumulative(g_al).to_numpy()
    k = np.arange(1.0, n + 1.0)
    u = G - G[-1] * k / n
    v = C - C[-1] * k / n
    denom = float(u @ u)
    scale = max(float(np.abs(G).max()), 1.0)
    if denom <= (1e-12 * scale) ** 2 * n:
        raise CollinearError("labor-force growth has no variance; a1 is not identified")
    a1 = float(u @ v) / denom
    a2 = (C[-1] - a1 * G[-1]) / n
    coefs = ModelCoefficients(a1=a1, a2=float(a2), lag=lag)

    # achieved terminal match, relative to the cumulative scale
    predicted = predict_inflation(lf, coefs)
    m2, p2 = align(measured, predicted)
    c_m = cumulative(m2).to_numpy()[-1]
    c_p = cumulative(p2).to_numpy()[-1]
    denom_scale = max(abs(c_m), 1.0)
    return CalibrationResult(
        coefficients=coefs,
        terminal_residual=abs(c_m - c_p) / denom_scale,
        n=n,
    )


def build_predictor_set(lf: Series, lf_halfyear: Series | None,
                        c: ModelCoefficients) -> PredictorSet:
    """All predictor variants; half-year ones only when the fixture exists."""
    predicted = predict_inflation(lf, c)
    predicted2 = shift(predicted, -c.lag).with_name(f"{predicted.name}2")
    shifted = shifted2 = None
    if lf_halfyear is not None:
        shifted = predict_inflation(lf_halfyear, c).with_name(f"shifted({lf.name})")
        shifted2 = shift(shifted, -c.lag).with_name(f"shifted2({lf.name})")
    ma2 = moving_average(predicted, 2)
    ma3 = moving_average(predicted, 3)
    return PredictorSet(
        predicted=predicted,
        predicted2=predicted2,
        ma2=ma2,
        ma3=ma3,
        shifted=shifted,
        shifted2=shifted2,
    )


def redistribute_revisions(lf: Series, revision_years) -> Series:
    """Spread step-like revision jumps back over the years they accrued.

    For each revision year r (processed in order), the preceding anchor a is
    the series start or the previous revision year. The expected change at r
    is the mean first difference over (a, r); the excess of the actual change
    over that expectation is spread uniformly across the m = r - a years in
    (a, r]. Cumulating the corrected differences from the original first
    level preserves the total change over the full period exactly.
    """
    years = sorted(set(int(y) for y in revision_years))
    values = np.array(lf.values, dtype=float)
    if not years:
        return Series(f"smoothed({lf.name})", lf.start_year, tuple(values))
    deltas = np.diff(values)
    first = lf.start_year + 1  # year of the first difference
    anchor = lf.start_year
    for r in years:
        if r <= lf.start_year or r > lf.end_year:
            raise RangeError(f"revision year {r} outside {lf.start_year + 1}..{lf.end_year}")
        if r <= anchor:
            raise RangeError(f"revision year {r} not after previous anchor {anchor}")
        i_r = r - first               # index of delta at year r
        i_a = anchor - first + 1      # first delta index inside (a, r]
        m = i_r - i_a + 1
        if m < 1:
            raise RangeError(f"revision year {r} has no preceding interval")
        if m == 1:
            anchor = r
            continue  # no earlier years to absorb the step
        trend = float(deltas[i_a:i_r].mean())
        excess = float(deltas[i_r]) - trend
        deltas[i_r] = trend
        deltas[i_a:i_r + 1] += excess / m
        anchor = r
    out = np.concatenate([[values[0]], values[0] + np.cumsum(deltas)])
    return Series(f"smoothed({lf.name})", lf.start_year, tuple(out))


def evaluate_subperiods(measured: Series, predicted: Series, breakpoints) -> dict:
    """RMSFE per segment split after each breakpoint year, plus full period."""
    m, p = align(measured, predicted)
    gap = subtract(m, p).to_numpy()
    years = list(m.years)
    cuts = sorted(int(b) for b in breakpoints)
    for b in cuts:
        if not years[0] <= b < years[-1]:
            raise RangeError(f"breakpoint {b} outside {years[0]}..{years[-1] - 1}")
    bounds = [years[0] - 1] + cuts + [years[-1]]
    out = {}
    for lo, hi in zip(bounds, bounds[1:]):
        seg = gap[(lo + 1 - years[0]):(hi + 1 - years[0])]
        if seg.size == 0:
            raise LengthError(f"segment {lo + 1}..{hi} is empty")
        out[(lo + 1, hi)] = float(np.sqrt((seg ** 2).mean()))
    out["full"] = float(np.sqrt((gap ** 2).mean()))
    return out
