"""Cointegration tests: Engle-Granger two-step and the Johansen trace test.

Engle-Granger regresses one level series on the other (with intercept) and
applies a no-deterministics ADF to the residuals, judged against
response-surface critical values for estimated residuals (two-variable,
constant case) rather than raw ADF tables.

The Johansen trace test runs the standard reduced-rank regression: residuals
R0 (differences) and R1 (lagged levels, plus a restricted constant when
requested) from short-run regressors give moment matrices S00, S11, S01, and
the generalized eigenproblem

    det(lambda * S11 - S10 * S00^-1 * S01) = 0

is reduced to an ordinary symmetric eigenproblem through a Cholesky factor
of S11. Three deterministic cases are supported: an unrestricted constant
among the short-run regressors ("constant"), a constant restricted to the
cointegrating relation ("rconstant"), and none.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CollinearError, DegenerateInput, DofError, RangeError
from .ols import RegressionFit, ols_fit
from .series import Series, align, moving_average, subtract, summary, SummaryStats
from .ols import skew_kurt_test, TestResult
from .unit_root import TrendSpec, UnitRootResult, adf_test, dfgls_test

__all__ = [
    "EGResult",
    "JohansenSpec",
    "RankTestResult",
    "DifferenceTestReport",
    "engle_granger",
    "eg_critical_value",
    "johansen_trace",
    "johansen_critical",
    "difference_test",
]

# response-surface coefficients (two variables, constant case):
# cv(T) = b_inf + b1/T + b2/T^2
_EG_SURFACE = {
    "1%": (-3.89644, -10.9519, -33.527),
    "5%": (-3.33613, -6.1101, -6.823),
    "10%": (-3.04445, -4.2412, -2.720),
}

# 5% trace critical values for a bivariate system, by deterministic case and
# rank deficit (number of non-cointegrating directions under the null)
_JOHANSEN_CV_5 = {
    "constant": {2: 15.41, 1: 3.76},
    "rconstant": {2: 19.96, 1: 9.42},
    "none": {2: 12.53, 1: 3.84},
}


def eg_critical_value(level: str, n: int) -> float:
    """Engle-Granger residual-test critical value from the response surface."""
    if level not in _EG_SURFACE:
        raise RangeError(f"unsupported level {level!r}")
    if n < 20:
        raise RangeError(f"critical values supported for n >= 20, got {n}")
    b_inf, b1, b2 = _EG_SURFACE[level]
    return b_inf + b1 / n + b2 / (n * n)


@dataclass(frozen=True)
class EGResult:
    first_stage: RegressionFit
    residual_test: UnitRootResult
    cointegrated_at: str | None

    def to_dict(self) -> dict:
        return {
            "first_stage": self.first_stage.to_dict(),
            "residual_test": self.residual_test.to_dict(),
            "cointegrated_at": self.cointegrated_at,
        }


def engle_granger(y: Series, x: Series, residual_lags: int = 0) -> EGResult:
    """Two-step residual-based cointegration test of y against x."""
    first = ols_fit(y, [x], intercept=True)
    resid = first.residuals.to_numpy()
    scale = max(float(np.abs(y.to_numpy()).max()), 1.0)
    if float(np.abs(resid).max()) <= 1e-12 * scale:
        raise DegenerateInput("first-stage residuals are identically zero")
    base = adf_test(first.residuals, lags=residual_lags, spec=TrendSpec.NONE)
    cvs = {level: eg_critical_value(level, base.n_effective) for level in ("1%", "5%", "10%")}
    test = UnitRootResult(
        statistic=base.statistic,
        lags=base.lags,
        spec=base.spec,
        critical_values=cvs,
        n_effective=base.n_effective,
        test="engle-granger",
    )
    level_found = None
    for level in ("1%", "5%", "10%"):
        if test.statistic < cvs[level]:
            level_found = level
            break
    return EGResult(first_stage=first, residual_test=test, cointegrated_at=level_found)


@dataclass(frozen=True)
class JohansenSpec:
    trend: str = "constant"
    lags: int = 2

    def __post_init__(self):
        if self.trend not in _JOHANSEN_CV_5:
            raise RangeError(f"unknown trend case {self.trend!r}; "
                             f"use one of {tuple(_JOHANSEN_CV_5)}")
        if self.lags < 1:
            raise RangeError(f"lags must be >= 1, got {self.lags}")


@dataclass(frozen=True)
class RankTestResult:
    rows: tuple
    selected_rank: int
    eigenvalues: tuple
    beta: np.ndarray
    n_effective: int
    spec: JohansenSpec
    log_likelihoods: tuple

    def cointegrating_vector(self) -> np.ndarray:
        """Leading eigenvector scaled to a unit first element."""
        v = self.beta[:, 0]
        if abs(v[0]) < 1e-300:
            raise DegenerateInput("leading eigenvector has a zero first element")
        return v / v[0]

    def to_dict(self) -> dict:
        return {
            "spec": {"trend": self.spec.trend, "lags": self.spec.lags},
            "n_effective": self.n_effective,
            "selected_rank": self.selected_rank,
            "rows": [dict(r) for r in self.rows],
        }


def johansen_critical(spec: JohansenSpec | str, rank_deficit: int, level: str = "5%") -> float:
    """Embedded 5% trace critical value for the bivariate system."""
    trend = spec.trend if isinstance(spec, JohansenSpec) else str(spec)
    if trend not in _JOHANSEN_CV_5:
        raise RangeError(f"unknown trend case {trend!r}")
    if level != "5%":
        raise RangeError(f"only the 5% level is tabulated, got {level!r}")
    table = _JOHANSEN_CV_5[trend]
    if rank_deficit not in table:
        raise RangeError(f"rank deficit {rank_deficit} outside the bivariate table")
    return table[rank_deficit]


def _residualize(target: np.ndarray, regressors: np.ndarray | None) -> np.ndarray:
    if regressors is None or regressors.shape[1] == 0:
        return target
    beta, _, _, _ = np.linalg.lstsq(regressors, target, rcond=None)
    return target - regressors @ beta


def johansen_moments(Y: np.ndarray, trend: str, p: int):
    """Reduced-rank regression moment matrices (S00, S11, S01) and n_eff."""
    T, K = Y.shape
    DY = Y[1:] - Y[:-1]
    n_eff = T - p
    if n_eff < 3:
        raise DofError(f"effective sample {n_eff} too small for lags={p}")
    dy_t = DY[p - 1:]
    z_cols = []
    for j in range(1, p):
        z_cols.append(DY[p - 1 - j:len(DY) - j])
    if trend == "constant":
        z_cols.append(np.ones((n_eff, 1)))
    Z = np.hstack(z_cols) if z_cols else None
    levels = Y[p - 1:T - 1]
    if trend == "rconstant":
        levels = np.hstack([levels, np.ones((n_eff, 1))])
    n_z = Z.shape[1] if Z is not None else 0
    if n_eff <= n_z + levels.shape[1]:
        raise DofError(f"effective sample {n_eff} cannot support "
                       f"{n_z + levels.shape[1]} regressors")
    R0 = _residualize(dy_t, Z)
    R1 = _residualize(levels, Z)
    S00 = R0.T @ R0 / n_eff
    S11 = R1.T @ R1 / n_eff
    S01 = R0.T @ R1 / n_eff
    return S00, S11, S01, n_eff


def _solve_eigen(S00, S11, S01):
    """Generalized eigenvalues/vectors via Cholesky symmetric reduction."""
    try:
        W = np.linalg.cholesky(S11)
        L00 = np.linalg.cholesky(S00)
    except np.linalg.LinAlgError:
        raise CollinearError("moment matrix is singular; inputs are collinear") from None
    # S00^-1 S01 through triangular solves against the Cholesky factor
    tmp = np.linalg.solve(L00, S01)
    S10_S00inv_S01 = tmp.T @ tmp
    inner = np.linalg.solve(W, S10_S00inv_S01)
    A = np.linalg.solve(W, inner.T).T
    A = 0.5 * (A + A.T)
    eigvals, eigvecs = np.linalg.eigh(A)
    order = np.argsort(eigvals)[::-1]
    eigvals = np.clip(eigvals[order], 0.0, 1.0 - 1e-15)
    eigvecs = eigvecs[:, order]
    beta = np.linalg.solve(W.T, eigvecs)
    return eigvals, beta


def johansen_trace(data, spec: JohansenSpec) -> RankTestResult:
    """Johansen trace test for the cointegrating rank of two series."""
    if len(data) != 2:
        raise RangeError(f"the trace test is implemented for 2 series, got {len(data)}")
    s1, s2 = align(*data)
    Y = np.column_stack([s1.to_numpy(), s2.to_numpy()])
    K = 2
    S00, S11, S01, n_eff = johansen_moments(Y, spec.trend, spec.lags)
    eigvals, beta = _solve_eigen(S00, S11, S01)
    lam = eigvals[:K]  # at most K nonzero generalized eigenvalues

    sign, logdet_S00 = np.linalg.slogdet(S00)
    if sign <= 0:
        raise CollinearError("difference moment matrix is not positive definite")
    base_ll = -0.5 * K * n_eff * (math.log(2.0 * math.pi) + 1.0) - 0.5 * n_eff * logdet_S00

    log1m = np.log(1.0 - lam)
    lls = tuple(float(base_ll - 0.5 * n_eff * log1m[:r].sum()) for r in range(K + 1))
    traces = [float(-n_eff * log1m[r:].sum()) for r in range(K)]

    p = spec.lags
    k_aug = K + 1 if spec.trend == "rconstant" else K
    unrestricted_const = K if spec.trend == "constant" else 0

    selected = K
    for r in range(K):
        if traces[r] < johansen_critical(spec, K - r):
            selected = r
            break

    rows = []
    for r in range(K + 1):
        rows.append({
            "rank": r,
            "parms": K * K * (p - 1) + unrestricted_const + K * r + r * (k_aug - r),
            "log_likelihood": lls[r],
            "eigenvalue": float(lam[r - 1]) if r >= 1 else None,
            "trace_statistic": traces[r] if r < K else None,
            "critical_5%": johansen_critical(spec, K - r) if r < K else None,
            "selected": r == selected,
        })
    return RankTestResult(
        rows=tuple(rows),
        selected_rank=selected,
        eigenvalues=tuple(float(v) for v in lam),
        beta=beta,
        n_effective=n_eff,
        spec=spec,
        log_likelihoods=lls,
    )


@dataclass(frozen=True)
class DifferenceTestReport:
    difference: Series
    adf: UnitRootResult
    dfgls: dict
    stats: SummaryStats
    normality: TestResult

    def to_dict(self) -> dict:
        return {
            "adf": self.adf.to_dict(),
            "dfgls": {lag: res.to_dict() for lag, res in self.dfgls.items()},
            "mean": self.stats.mean,
            "stdev": self.stats.stdev,
            "normality": self.normality.to_dict(),
        }


def difference_test(measured: Series, predicted: Series, variant: str = "direct",
                    adf_lags: int = 0, dfgls_lags: tuple = (1, 2),
                    spec: TrendSpec | str = TrendSpec.CONSTANT) -> DifferenceTestReport:
    """Stationarity battery on the gap between measured and a predictor."""
    variant = variant.lower()
    if variant == "direct":
        target = predicted
    elif variant == "ma2":
        target = moving_average(predicted, 2)
    elif variant == "ma3":
        target = moving_average(predicted, 3)
    else:
        raise RangeError(f"unknown variant {variant!r}; use direct, ma2, or ma3")
    gap = subtract(measured, target, name=f"diff({measured.name},{target.name})")
    return DifferenceTestReport(
        difference=gap,
        adf=adf_test(gap, lags=adf_lags, spec=spec),
        dfgls={lag: dfgls_test(gap, lags=lag, spec=TrendSpec.CONSTANT) for lag in dfgls_lags},
        stats=summary(gap),
        normality=skew_kurt_test(gap),
    )
