"""VAR and VECM estimation, stability, Granger causality, and RMSFE.

Estimation is per-equation OLS throughout (every equation shares the same
regressor matrix, so single-equation OLS is the system MLE for the VAR).
The VECM takes its cointegrating vector from the Johansen eigenproblem,
normalizes the first element to one, and estimates adjustment plus short-run
coefficients by OLS on the error-correction form.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .cointegration import JohansenSpec, johansen_trace
from .errors import CollinearError, DofError, LengthError
from .ols import TestResult, linear_fit_arrays
from .series import Series, align, subtract
from .special import chi2_sf

__all__ = [
    "VarModel",
    "VecmModel",
    "var_fit",
    "companion_matrix",
    "companion_eigen",
    "var_lm_autocorr",
    "residual_normality",
    "granger_causality",
    "vecm_fit",
    "rmsfe",
]


@dataclass(frozen=True)
class VarModel:
    labels: tuple[str, ...]
    p: int
    lag_matrices: tuple            # A_1..A_p, each K x K
    exog_coefs: np.ndarray         # K x m
    exog_labels: tuple[str, ...]
    intercepts: np.ndarray         # K
    coef_std_errors: tuple         # per equation, aligned with design columns
    residuals: tuple               # per equation, Series
    r_squared: tuple
    rmsfe: tuple
    sigma: np.ndarray              # residual covariance, K x K
    n_effective: int
    regressor_names: tuple[str, ...]
    design: np.ndarray = field(repr=False)
    y_block: np.ndarray = field(repr=False)

    @property
    def n_endog(self) -> int:
        return len(self.labels)

    def to_dict(self) -> dict:
        return {
            "labels": list(self.labels),
            "p": self.p,
            "lag_matrices": [m.tolist() for m in self.lag_matrices],
            "exog_coefs": self.exog_coefs.tolist(),
            "exog_labels": list(self.exog_labels),
            "intercepts": self.intercepts.tolist(),
            "r_squared": list(self.r_squared),
            "rmsfe": list(self.rmsfe),
            "n_effective": self.n_effective,
        }


def _stack_lags(Y: np.ndarray, p: int):
    """Regressor rows [y_{t-1}, ..., y_{t-p}] flattened lag-major."""
    T = Y.shape[0]
    rows = []
    for t in range(p, T):
        parts = [Y[t - j] for j in range(1, p + 1)]
        rows.append(np.concatenate(parts))
    return np.asarray(rows)


def var_fit(endog, exog=(), p: int = 2, intercept: bool = True) -> VarModel:
    """Equation-by-equation OLS for a VAR(p) with optional exogenous terms."""
    endog = list(endog)
    exog = list(exog)
    if p < 1:
        raise DofError(f"lag order must be >= 1, got {p}")
    if not endog:
        raise DofError("no endogenous series")
    aligned = align(*endog, *exog)
    en = aligned[:len(endog)]
    ex = aligned[len(endog):]
    K = len(en)
    T = len(en[0])
    n_eff = T - p
    Y = np.column_stack([s.to_numpy() for s in en])
    names = []
    for j in range(1, p + 1):
        names.extend(f"{s.name}.L{j}" for s in en)
    cols = [_stack_lags(Y, p)]
    for s in ex:
        cols.append(s.to_numpy()[p:, None])
        names.append(s.name)
    if intercept:
        cols.append(np.ones((n_eff, 1)))
        names.append("const")
    X = np.hstack(cols)
    if n_eff <= X.shape[1]:
        raise DofError(f"effective sample {n_eff} cannot support {X.shape[1]} regressors")

    y_block = Y[p:]
    resid_cols = []
    r2 = []
    rms = []
    ses = []
    betas = []
    start = en[0].start_year + p
    resid_series = []
    for i in range(K):
        fit = linear_fit_arrays(y_block[:, i], X)
        betas.append(fit.beta)
        ses.append(fit.std_errors)
        resid_cols.append(fit.residuals)
        sst = float(((y_block[:, i] - y_block[:, i].mean()) ** 2).sum())
        if sst <= 0.0:
            raise CollinearError(f"endogenous series {en[i].name!r} has no variance")
        r2.append(1.0 - fit.ssr / sst)
        rms.append(math.sqrt(fit.ssr / n_eff))
        resid_series.append(Series(f"resid({en[i].name})", start, tuple(fit.residuals)))
    U = np.column_stack(resid_cols)
    B = np.vstack(betas)                      # K x n_regressors
    lag_mats = tuple(B[:, j * K:(j + 1) * K] for j in range(p))
    m = len(ex)
    exog_coefs = B[:, p * K:p * K + m]
    intercepts = B[:, -1] if intercept else np.zeros(K)
    return VarModel(
        labels=tuple(s.name for s in en),
        p=p,
        lag_matrices=lag_mats,
        exog_coefs=exog_coefs,
        exog_labels=tuple(s.name for s in ex),
        intercepts=intercepts,
        coef_std_errors=tuple(ses),
        residuals=tuple(resid_series),
        r_squared=tuple(float(v) for v in r2),
        rmsfe=tuple(float(v) for v in rms),
        sigma=U.T @ U / n_eff,
        n_effective=n_eff,
        regressor_names=tuple(names),
        design=X,
        y_block=y_block,
    )


def companion_matrix(lag_matrices) -> np.ndarray:
    """Companion form of the lag polynomial: block top row, identity below."""
    mats = [np.atleast_2d(np.asarray(m, dtype=float)) for m in lag_matrices]
    K = mats[0].shape[0]
    p = len(mats)
    dim = K * p
    C = np.zeros((dim, dim))
    C[:K, :] = np.hstack(mats)
    if p > 1:
        C[K:, :K * (p - 1)] = np.eye(K * (p - 1))
    return C


def companion_eigen(model_or_matrices) -> tuple:
    """Moduli of the companion eigenvalues, descending; stable iff all < 1."""
    mats = (model_or_matrices.lag_matrices
            if isinstance(model_or_matrices, VarModel) else model_or_matrices)
    eigvals = np.linalg.eigvals(companion_matrix(mats))
    return tuple(sorted((float(abs(v)) for v in eigvals), reverse=True))


def _lagged_block(U: np.ndarray, lag: int) -> np.ndarray:
    """Residuals lagged by `lag` with zero prefill (keeps the sample size)."""
    out = np.zeros_like(U)
    out[lag:] = U[:-lag]
    return out


def var_lm_autocorr(model: VarModel, max_lag: int = 4) -> list:
    """Per-lag multivariate LM test for residual autocorrelation."""
    if max_lag < 1:
        raise DofError(f"max_lag must be >= 1, got {max_lag}")
    U = np.column_stack([r.to_numpy() for r in model.residuals])
    n, K = U.shape
    sigma = model.sigma
    results = []
    for lag in range(1, max_lag + 1):
        X_aux = np.hstack([model.design, _lagged_block(U, lag)])
        if n <= X_aux.shape[1]:
            raise DofError(f"effective sample {n} too small for lag {lag} auxiliary regression")
        beta, _, _, _ = np.linalg.lstsq(X_aux, U, rcond=None)
        E = U - X_aux @ beta
        sigma_aux = E.T @ E / n
        stat = n * (K - float(np.trace(np.linalg.solve(sigma, sigma_aux))))
        stat = max(stat, 0.0)
        results.append(TestResult(
            statistic=stat,
            p_value=chi2_sf(stat, K * K),
            df=K * K,
            null_hypothesis=f"no residual autocorrelation at lag {lag}",
            test="var_lm",
            components={"lag": lag},
        ))
    return results


def _jarque_bera(e: np.ndarray):
    n = len(e)
    centered = e - e.mean()
    m2 = float((centered ** 2).mean())
    if m2 <= 0.0:
        raise LengthError("residuals have no variance")
    skew = float((centered ** 3).mean() / m2 ** 1.5)
    kurt = float((centered ** 4).mean() / m2 ** 2)
    jb = n * (skew * skew / 6.0 + (kurt - 3.0) ** 2 / 24.0)
    return jb, skew, kurt


def residual_normality(model: VarModel) -> TestResult:
    """Jarque-Bera-type statistic per equation, summed across the system."""
    per_eq = {}
    total = 0.0
    n = model.n_effective
    if n < 8:
        raise LengthError(f"normality test needs n >= 8, got {n}")
    for label, resid in zip(model.labels, model.residuals):
        jb, skew, kurt = _jarque_bera(resid.to_numpy())
        per_eq[label] = {
            "jb": jb,
            "skewness": skew,
            "kurtosis": kurt,
            "p_value": chi2_sf(jb, 2),
        }
        total += jb
    df = 2 * model.n_endog
    return TestResult(
        statistic=float(total),
        p_value=chi2_sf(total, df),
        df=df,
        null_hypothesis="residuals are normal",
        test="residual_normality",
        components=per_eq,
    )


def granger_causality(endog, p: int = 2) -> list:
    """Wald exclusion tests in both directions of a bivariate VAR(p)."""
    endog = list(endog)
    if len(endog) != 2:
        raise DofError(f"Granger test needs exactly 2 series, got {len(endog)}")
    model = var_fit(endog, (), p=p, intercept=True)
    K = 2
    X = model.design
    xtx_inv = np.linalg.pinv(X.T @ X)
    n_eff = model.n_effective
    k = X.shape[1]
    results = []
    B = []
    for i in range(K):
        fit = linear_fit_arrays(model.y_block[:, i], X, rank_check=False)
        B.append(fit)
    for i in range(K):          # equation for variable i
        j = 1 - i               # excluded variable
        sel = [lag * K + j for lag in range(p)]
        fit = B[i]
        sigma2 = fit.ssr / (n_eff - k)
        V = sigma2 * xtx_inv[np.ix_(sel, sel)]
        b = fit.beta[sel]
        try:
            stat = float(b @ np.linalg.solve(V, b))
        except np.linalg.LinAlgError:
            raise CollinearError("singular covariance block in the Wald test") from None
        results.append(TestResult(
            statistic=stat,
            p_value=chi2_sf(stat, p),
            df=p,
            null_hypothesis=(f"{model.labels[j]!r} does not Granger-cause "
                             f"{model.labels[i]!r}"),
            components={"equation": model.labels[i], "excluded": model.labels[j]},
            test="granger_wald",
        ))
    return results


@dataclass(frozen=True)
class VecmModel:
    labels: tuple[str, ...]
    beta: tuple                    # cointegrating vector, first element 1
    alpha: np.ndarray              # adjustment coefficients per equation
    alpha_se: np.ndarray
    gamma: tuple                   # short-run K x K matrices for lags 1..p-1
    intercepts: np.ndarray
    p: int
    trend: str
    r_squared: tuple
    rmsfe: tuple
    residuals: tuple
    n_effective: int
    rank_result: object
    regressor_names: tuple[str, ...]
    design: np.ndarray = field(repr=False)

    def to_dict(self) -> dict:
        return {
            "labels": list(self.labels),
            "beta": list(self.beta),
            "alpha": self.alpha.tolist(),
            "alpha_se": self.alpha_se.tolist(),
            "gamma": [g.tolist() for g in self.gamma],
            "intercepts": self.intercepts.tolist(),
            "p": self.p,
            "trend": self.trend,
            "r_squared": list(self.r_squared),
            "rmsfe": list(self.rmsfe),
            "n_effective": self.n_effective,
        }


def vecm_fit(endog, rank: int = 1, p: int = 2, trend: str = "constant") -> VecmModel:
    """Estimate a bivariate VECM with the given cointegrating rank (1)."""
    endog = list(endog)
    if len(endog) != 2:
        raise DofError(f"the VECM is implemented for 2 series, got {len(endog)}")
    if rank != 1:
        raise DofError(f"only rank 1 is supported for a bivariate system, got {rank}")
    spec = JohansenSpec(trend=trend, lags=p)
    rank_result = johansen_trace(endog, spec)
    if rank_result.selected_rank != rank:
        warnings.warn(
            f"trace test selects rank {rank_result.selected_rank}, "
            f"estimating with rank {rank} anyway",
            stacklevel=2,
        )
    beta = rank_result.cointegrating_vector()

    s1, s2 = align(*endog)
    Y = np.column_stack([s1.to_numpy(), s2.to_numpy()])
    T, K = Y.shape
    n_eff = T - p
    DY = Y[1:] - Y[:-1]
    dy_t = DY[p - 1:]
    levels = Y[p - 1:T - 1]
    if trend == "rconstant":
        levels = np.hstack([levels, np.ones((n_eff, 1))])
    ec = levels @ beta

    scale = max(float(np.abs(Y).max()), 1.0)
    if float(ec.std()) <= 1e-12 * scale:
        raise CollinearError("error-correction term has no variance")

    names = ["ec.L1"]
    cols = [ec[:, None]]
    for j in range(1, p):
        cols.append(DY[p - 1 - j:len(DY) - j])
        names.extend(f"d({s.name}).L{j}" for s in (s1, s2))
    if trend == "constant":
        cols.append(np.ones((n_eff, 1)))
        names.append("const")
    X = np.hstack(cols)
    if n_eff <= X.shape[1]:
        raise DofError(f"effective sample {n_eff} cannot support {X.shape[1]} regressors")

    alphas = []
    alpha_ses = []
    gammas = np.zeros((p - 1, K, K))
    consts = np.zeros(K)
    r2 = []
    rms = []
    resid_series = []
    start = s1.start_year + p
    for i in range(K):
        fit = linear_fit_arrays(dy_t[:, i], X)
        alphas.append(fit.beta[0])
        alpha_ses.append(fit.std_errors[0])
        for j in range(p - 1):
            gammas[j, i, :] = fit.beta[1 + j * K:1 + (j + 1) * K]
        if trend == "constant":
            consts[i] = fit.beta[-1]
        sst = float(((dy_t[:, i] - dy_t[:, i].mean()) ** 2).sum())
        if sst <= 0.0:
            raise CollinearError(f"difference of {endog[i].name!r} has no variance")
        r2.append(1.0 - fit.ssr / sst)
        rms.append(math.sqrt(fit.ssr / n_eff))
        resid_series.append(Series(f"resid(d({endog[i].name}))", start, tuple(fit.residuals)))
    return VecmModel(
        labels=(s1.name, s2.name),
        beta=tuple(float(b) for b in beta),
        alpha=np.asarray(alphas),
        alpha_se=np.asarray(alpha_ses),
        gamma=tuple(gammas[j] for j in range(p - 1)),
        intercepts=consts,
        p=p,
        trend=trend,
        r_squared=tuple(float(v) for v in r2),
        rmsfe=tuple(float(v) for v in rms),
        residuals=tuple(resid_series),
        n_effective=n_eff,
        rank_result=rank_result,
        regressor_names=tuple(names),
        design=X,
    )


def rmsfe(predicted: Series, actual: Series) -> float:
    """Root mean squared gap between two series on their common years."""
    gap = subtract(predicted, actual)
    arr = gap.to_numpy()
    if arr.size == 0:
        raise LengthError("series share no overlapping years")
    return float(np.sqrt((arr ** 2).mean()))
