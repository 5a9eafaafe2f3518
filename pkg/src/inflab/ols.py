"""Ordinary least squares plus the residual-diagnostics battery.

The regression core is one array-level routine (linear_fit_arrays) reused by
the unit-root, cointegration, and VAR modules, so every t-statistic in the
package comes from the same covariance conventions: classical errors with
s^2 = SSR/(n-k).

Diagnostics follow the common textbook forms:

* Durbin-Watson on the fit residuals,
* Breusch-Godfrey LM with zero-prefilled lagged residuals, chi2(lags),
* ARCH LM from squared residuals on their lags, chi2(lags),
* Ramsey RESET with powers 2..p of the standardized fitted values (the
  spanned column space is identical to raw powers when an intercept is
  present, and the conditioning is far better),
* Breusch-Pagan score test (LM = explained sum of squares of scaled squared
  residuals on fitted values, divided by 2), chi2(1),
* D'Agostino (skewness) and Anscombe-Glynn (kurtosis) normal approximations
  with the combined 2-df chi-squared omnibus statistic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    CollinearError,
    DegenerateFit,
    DegenerateResiduals,
    DofError,
    LengthError,
)
from .series import Series, align
from .special import chi2_sf, f_sf, normal_sf, t_sf

__all__ = [
    "ArrayFit",
    "RegressionFit",
    "TestResult",
    "linear_fit_arrays",
    "ols_fit",
    "durbin_watson",
    "breusch_godfrey",
    "arch_lm",
    "ramsey_reset",
    "het_test",
    "skew_kurt_test",
]

# singular values below s_max * this are treated as rank deficiency
_RANK_RTOL = 1e-10


@dataclass(frozen=True)
class ArrayFit:
    """Array-level OLS result shared across modules."""

    beta: np.ndarray
    std_errors: np.ndarray
    t_stats: np.ndarray
    residuals: np.ndarray
    fitted: np.ndarray
    ssr: float
    n: int
    k: int

    @property
    def sigma2(self) -> float:
        """Classical residual variance SSR/(n-k)."""
        return self.ssr / (self.n - self.k)


def linear_fit_arrays(y: np.ndarray, X: np.ndarray, *, rank_check: bool = True) -> ArrayFit:
    """OLS of y on the columns of X with classical standard errors."""
    y = np.asarray(y, dtype=float).ravel()
    X = np.atleast_2d(np.asarray(X, dtype=float))
    n, k = X.shape
    if len(y) != n:
        raise LengthError(f"y has {len(y)} rows, X has {n}")
    if n <= k:
        raise DofError(f"n={n} observations cannot identify k={k} parameters")
    if rank_check:
        svals = np.linalg.svd(X, compute_uv=False)
        if svals[-1] <= svals[0] * _RANK_RTOL:
            raise CollinearError(
                f"design matrix is rank deficient (condition {svals[0] / max(svals[-1], 1e-300):.3g})"
            )
    beta, _, _, _ = np.linalg.lstsq(X, y, rcond=None)
    fitted = X @ beta
    resid = y - fitted
    ssr = float(resid @ resid)
    sigma2 = ssr / (n - k)
    xtx_inv = np.linalg.pinv(X.T @ X)
    se = np.sqrt(np.clip(sigma2 * np.diag(xtx_inv), 0.0, None))
    with np.errstate(divide="ignore", invalid="ignore"):
        tstats = np.where(se > 0, beta / se, np.inf * np.sign(beta))
    return ArrayFit(beta=beta, std_errors=se, t_stats=tstats, residuals=resid,
                    fitted=fitted, ssr=ssr, n=n, k=k)


@dataclass(frozen=True)
class TestResult:
    """A test statistic with its reference distribution tail probability."""

    statistic: float
    p_value: float
    df: object
    null_hypothesis: str
    components: dict = field(default_factory=dict)
    test: str = ""

    def to_dict(self) -> dict:
        out = {
            "test": self.test,
            "statistic": self.statistic,
            "p_value": self.p_value,
            "df": list(self.df) if isinstance(self.df, tuple) else self.df,
            "null_hypothesis": self.null_hypothesis,
        }
        if self.components:
            out["components"] = dict(self.components)
        return out


@dataclass(frozen=True)
class RegressionFit:
    """OLS estimates with residuals kept as a year-indexed Series.

    coefficients holds the slope coefficients in regressor order with the
    intercept last (when present); std_errors and t_stats match that order.
    """

    coefficients: np.ndarray
    std_errors: np.ndarray
    t_stats: np.ndarray
    residuals: Series
    fitted: Series
    r_squared: float
    rmse: float
    n: int
    k: int
    intercept: bool
    regressor_names: tuple[str, ...]
    design: np.ndarray = field(repr=False)
    y: np.ndarray = field(repr=False)

    @property
    def coef_p_values(self) -> np.ndarray:
        return np.array([2.0 * t_sf(abs(t), self.n - self.k) for t in self.t_stats])

    def to_dict(self) -> dict:
        return {
            "coefficients": dict(zip(self.regressor_names, map(float, self.coefficients))),
            "std_errors": dict(zip(self.regressor_names, map(float, self.std_errors))),
            "t_stats": dict(zip(self.regressor_names, map(float, self.t_stats))),
            "r_squared": self.r_squared,
            "rmse": self.rmse,
            "n": self.n,
            "k": self.k,
        }


def ols_fit(y: Series, x: list[Series] | tuple[Series, ...], intercept: bool = True) -> RegressionFit:
    """Fit y on the given regressors over their common years."""
    regressors = list(x)
    aligned = align(y, *regressors) if regressors else (y,)
    ya, xa = aligned[0], aligned[1:]
    n = len(ya)
    yv = ya.to_numpy()
    cols = [s.to_numpy() for s in xa]
    names = [s.name for s in xa]
    if intercept:
        cols.append(np.ones(n))
        names.append("const")
    if not cols:
        raise DofError("no regressors and no intercept")
    X = np.column_stack(cols)
    fit = linear_fit_arrays(yv, X)

    sst = float(((yv - yv.mean()) ** 2).sum()) if intercept else float((yv ** 2).sum())
    if sst <= 0.0:
        # constant regressand with an intercept: R^2 undefined, fit is exact
        r2 = 1.0 if fit.ssr <= 1e-30 else 0.0
    else:
        r2 = 1.0 - fit.ssr / sst
    rmse = float(np.sqrt(fit.ssr / n))
    resid = Series(f"resid({ya.name})", ya.start_year, tuple(fit.residuals))
    fitted = Series(f"fitted({ya.name})", ya.start_year, tuple(fit.fitted))
    return RegressionFit(
        coefficients=fit.beta,
        std_errors=fit.std_errors,
        t_stats=fit.t_stats,
        residuals=resid,
        fitted=fitted,
        r_squared=float(r2),
        rmse=rmse,
        n=fit.n,
        k=fit.k,
        intercept=intercept,
        regressor_names=tuple(names),
        design=X,
        y=yv,
    )


def durbin_watson(fit: RegressionFit) -> float:
    """DW = sum of squared residual changes over the residual sum of squares."""
    e = fit.residuals.to_numpy()
    if len(e) < 2:
        raise LengthError("Durbin-Watson needs at least 2 residuals")
    denom = float(e @ e)
    scale = float(np.abs(fit.y).max()) if fit.y.size else 1.0
    if denom <= (1e-14 * max(scale, 1.0)) ** 2 * len(e):
        raise DegenerateResiduals("residuals are identically zero")
    return float(np.sum(np.diff(e) ** 2) / denom)


def breusch_godfrey(fit: RegressionFit, lags: int = 1) -> TestResult:
    """LM serial-correlation test: n * R^2 of the auxiliary regression."""
    if lags < 1:
        raise DofError(f"lags must be positive, got {lags}")
    e = fit.residuals.to_numpy()
    n = len(e)
    if n <= fit.k + lags:
        raise DofError(f"n={n} too small for k={fit.k} regressors plus {lags} lags")
    lagged = np.column_stack([
        np.concatenate([np.zeros(j), e[:-j]]) for j in range(1, lags + 1)
    ])
    X_aux = np.column_stack([fit.design, lagged])
    aux = linear_fit_arrays(e, X_aux, rank_check=False)
    sst = float(((e - e.mean()) ** 2).sum())
    if sst <= 0.0:
        raise DegenerateResiduals("residuals have no variance")
    r2_aux = 1.0 - aux.ssr / sst
    stat = n * r2_aux
    return TestResult(
        statistic=float(stat),
        p_value=chi2_sf(stat, lags),
        df=lags,
        null_hypothesis="no serial correlation",
        test="breusch_godfrey",
    )


def arch_lm(fit: RegressionFit, lags: int = 1) -> TestResult:
    """LM test for ARCH: squared residuals regressed on their own lags."""
    if lags < 1:
        raise DofError(f"lags must be positive, got {lags}")
    e2 = fit.residuals.to_numpy() ** 2
    n = len(e2)
    if n <= lags + 1:
        raise DofError(f"n={n} too small for {lags} lags")
    y_aux = e2[lags:]
    cols = [e2[lags - j:n - j] for j in range(1, lags + 1)]
    cols.append(np.ones(len(y_aux)))
    X_aux = np.column_stack(cols)
    sst = float(((y_aux - y_aux.mean()) ** 2).sum())
    if sst <= 0.0:
        raise DegenerateResiduals("squared residuals have no variance")
    aux = linear_fit_arrays(y_aux, X_aux, rank_check=False)
    stat = len(y_aux) * (1.0 - aux.ssr / sst)
    return TestResult(
        statistic=float(stat),
        p_value=chi2_sf(stat, lags),
        df=lags,
        null_hypothesis="no ARCH effect",
        test="arch_lm",
    )


def ramsey_reset(fit: RegressionFit, powers: int = 4) -> TestResult:
    """RESET F-test on powers 2..powers of the fitted values."""
    if powers < 2:
        raise DofError(f"powers must be >= 2, got {powers}")
    f = fit.fitted.to_numpy()
    spread = float(f.max() - f.min())
    scale = max(float(np.abs(f).max()), 1e-30)
    if spread <= 1e-12 * scale:
        raise DegenerateFit("fitted values are constant")
    q = powers - 1
    n = fit.n
    if n <= fit.k + q:
        raise DofError(f"n={n} too small for k={fit.k} plus {q} power terms")
    # standardizing before powering spans the same space as raw powers
    # whenever an intercept is present, but conditions the matrix far better
    if fit.intercept:
        z = (f - f.mean()) / f.std()
    else:
        z = f / scale
    extra = np.column_stack([z ** p for p in range(2, powers + 1)])
    X_aug = np.column_stack([fit.design, extra])
    ssr_restricted = float(fit.residuals.to_numpy() @ fit.residuals.to_numpy())
    aug = linear_fit_arrays(fit.y, X_aug, rank_check=False)
    ssr_unrestricted = aug.ssr
    df2 = n - fit.k - q
    if ssr_restricted <= 1e-28 * max(scale, 1.0) ** 2 * n:
        # the base fit is already exact; augmentation cannot improve it
        return TestResult(statistic=0.0, p_value=1.0, df=(q, df2),
                          null_hypothesis="no omitted variables",
                          test="ramsey_reset")
    stat = ((ssr_restricted - ssr_unrestricted) / q) / (ssr_unrestricted / df2)
    stat = max(float(stat), 0.0)
    return TestResult(
        statistic=stat,
        p_value=f_sf(stat, q, df2),
        df=(q, df2),
        null_hypothesis="no omitted variables",
        test="ramsey_reset",
    )


def het_test(fit: RegressionFit) -> TestResult:
    """Breusch-Pagan score test of constant variance against fitted values."""
    if fit.n <= 3:
        raise DofError(f"n={fit.n} too small for the variance test")
    e = fit.residuals.to_numpy()
    f = fit.fitted.to_numpy()
    spread = float(f.max() - f.min())
    scale = max(float(np.abs(f).max()), 1e-30)
    if spread <= 1e-12 * scale:
        raise DegenerateFit("fitted values are constant")
    sigma2 = float(e @ e) / fit.n
    if sigma2 <= 0.0:
        raise DegenerateResiduals("residuals are identically zero")
    g = e ** 2 / sigma2
    X_aux = np.column_stack([f, np.ones(fit.n)])
    aux = linear_fit_arrays(g, X_aux, rank_check=False)
    ess = float(((aux.fitted - g.mean()) ** 2).sum())
    stat = ess / 2.0
    return TestResult(
        statistic=float(stat),
        p_value=chi2_sf(stat, 1),
        df=1,
        null_hypothesis="constant variance",
        test="het_score",
    )


def _skewness_z(g1: float, n: int) -> float:
    """D'Agostino (1970) normal approximation for sample skewness."""
    y = g1 * np.sqrt((n + 1.0) * (n + 3.0) / (6.0 * (n - 2.0)))
    beta2 = (3.0 * (n ** 2 + 27.0 * n - 70.0) * (n + 1.0) * (n + 3.0)
             / ((n - 2.0) * (n + 5.0) * (n + 7.0) * (n + 9.0)))
    w2 = -1.0 + np.sqrt(2.0 * (beta2 - 1.0))
    delta = 1.0 / np.sqrt(0.5 * np.log(w2))
    alpha = np.sqrt(2.0 / (w2 - 1.0))
    y = y / alpha
    return float(delta * np.log(y + np.sqrt(y * y + 1.0)))


def _kurtosis_z(g2: float, n: int) -> float:
    """Anscombe-Glynn (1983) normal approximation for sample kurtosis."""
    mean_b2 = 3.0 * (n - 1.0) / (n + 1.0)
    var_b2 = (24.0 * n * (n - 2.0) * (n - 3.0)
              / ((n + 1.0) ** 2 * (n + 3.0) * (n + 5.0)))
    x = (g2 - mean_b2) / np.sqrt(var_b2)
    sqrt_beta1 = (6.0 * (n * n - 5.0 * n + 2.0) / ((n + 7.0) * (n + 9.0))
                  * np.sqrt(6.0 * (n + 3.0) * (n + 5.0) / (n * (n - 2.0) * (n - 3.0))))
    a = 6.0 + 8.0 / sqrt_beta1 * (2.0 / sqrt_beta1 + np.sqrt(1.0 + 4.0 / sqrt_beta1 ** 2))
    term = (1.0 - 2.0 / a) / (1.0 + x * np.sqrt(2.0 / (a - 4.0)))
    term = np.sign(term) * np.abs(term) ** (1.0 / 3.0)
    return float((1.0 - 2.0 / (9.0 * a) - term) / np.sqrt(2.0 / (9.0 * a)))


def skew_kurt_test(residuals: Series | np.ndarray) -> TestResult:
    """Skewness/kurtosis normality test with separate and combined p-values."""
    e = residuals.to_numpy() if isinstance(residuals, Series) else np.asarray(residuals, float)
    n = len(e)
    if n < 8:
        raise LengthError(f"normality test needs n >= 8, got {n}")
    centered = e - e.mean()
    m2 = float((centered ** 2).mean())
    if m2 <= 0.0:
        raise DegenerateResiduals("sample has no variance")
    g1 = float((centered ** 3).mean() / m2 ** 1.5)
    g2 = float((centered ** 4).mean() / m2 ** 2)
    z1 = _skewness_z(g1, n)
    z2 = _kurtosis_z(g2, n)
    p_skew = 2.0 * normal_sf(abs(z1))
    p_kurt = 2.0 * normal_sf(abs(z2))
    stat = z1 * z1 + z2 * z2
    return TestResult(
        statistic=float(stat),
        p_value=chi2_sf(stat, 2),
        df=2,
        null_hypothesis="normality",
        test="skew_kurt",
        components={
            "skewness": g1,
            "kurtosis": g2,
            "z_skew": z1,
            "z_kurt": z2,
            "p_skew": float(min(p_skew, 1.0)),
            "p_kurt": float(min(p_kurt, 1.0)),
        },
    )
