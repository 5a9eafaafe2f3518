"""Seeded data-generating processes for size/power studies and tests."""

from __future__ import annotations

import numpy as np

from .errors import RangeError
from .series import Series
from .unit_root import adf_test

__all__ = [
    "white_noise",
    "random_walk",
    "ar1",
    "cointegrated_pair",
    "leadlag_pair",
    "var_sim",
]


def _rng(seed):
    return np.random.default_rng(seed)


def _check_n(n: int):
    if n < 2:
        raise RangeError(f"need n >= 2, got {n}")


def white_noise(n: int, sd: float = 1.0, seed=0, name: str = "wn",
                start_year: int = 0) -> Series:
    _check_n(n)
    values = _rng(seed).normal(0.0, sd, n)
    return Series(name, start_year, tuple(values))


def random_walk(n: int, sd: float = 1.0, seed=0, drift: float = 0.0,
                name: str = "rw", start_year: int = 0) -> Series:
    _check_n(n)
    steps = _rng(seed).normal(drift, sd, n)
    return Series(name, start_year, tuple(np.cumsum(steps)))


def ar1(n: int, phi: float = 0.5, sd: float = 1.0, seed=0, name: str = "ar1",
        start_year: int = 0) -> Series:
    """Stationary AR(1) started from its unconditional distribution."""
    _check_n(n)
    if not -1.0 < phi < 1.0:
        raise RangeError(f"need |phi| < 1, got {phi}")
    rng = _rng(seed)
    values = np.empty(n)
    values[0] = rng.normal(0.0, sd / np.sqrt(1.0 - phi * phi))
    eps = rng.normal(0.0, sd, n - 1)
    for t in range(1, n):
        values[t] = phi * values[t - 1] + eps[t - 1]
    return Series(name, start_year, tuple(values))


def cointegrated_pair(n: int = 300, alpha: float = -0.5,
                      beta: tuple = (1.0, -2.0), sd: float = 1.0, seed=0,
                      start_year: int = 0):
    """Pair with one cointegrating relation beta'(y, x) and adjustment alpha.

    x is a pure random walk; y error-corrects toward beta1*y + beta2*x = 0:
        dx_t = e_x
        dy_t = alpha * (beta1*y + beta2*x)_{t-1} + e_y
    """
    _check_n(n)
    if not -2.0 < alpha < 0.0:
        raise RangeError(f"adjustment must lie in (-2, 0), got {alpha}")
    rng = _rng(seed)
    ex = rng.normal(0.0, sd, n)
    ey = rng.normal(0.0, sd, n)
    x = np.empty(n)
    y = np.empty(n)
    x[0] = ex[0]
    y[0] = ey[0]
    for t in range(1, n):
        ec = beta[0] * y[t - 1] + beta[1] * x[t - 1]
        x[t] = x[t - 1] + ex[t]
        y[t] = y[t - 1] + alpha * ec + ey[t]
    return (Series("y", start_year, tuple(y)),
            Series("x", start_year, tuple(x)))


def leadlag_pair(n: int = 200, lead: int = 2, coef: float = 0.8,
                 sd: float = 1.0, seed=0, start_year: int = 0):
    """Pair where x leads y by `lead` periods and y does not feed back.

        x_t = 0.5 x_{t-1} + e_x
        y_t = 0.3 y_{t-1} + coef * x_{t-lead} + e_y
    """
    _check_n(n)
    if lead < 1:
        raise RangeError(f"need lead >= 1, got {lead}")
    rng = _rng(seed)
    burn = 50 + lead
    total = n + burn
    ex = rng.normal(0.0, sd, total)
    ey = rng.normal(0.0, sd, total)
    x = np.zeros(total)
    y = np.zeros(total)
    for t in range(1, total):
        x[t] = 0.5 * x[t - 1] + ex[t]
        y[t] = 0.3 * y[t - 1] + ey[t]
        if t >= lead:
            y[t] += coef * x[t - lead]
    return (Series("y", start_year, tuple(y[burn:])),
            Series("x", start_year, tuple(x[burn:])))


def var_sim(n: int = 200, lag_matrices=None, intercepts=(0.0, 0.0),
            sd: float = 1.0, seed=0, start_year: int = 0):
    """Simulate a bivariate VAR with the given lag matrices (default stable)."""
    _check_n(n)
    if lag_matrices is None:
        lag_matrices = (np.array([[0.5, 0.1], [0.0, 0.3]]),)
    mats = [np.asarray(m, dtype=float) for m in lag_matrices]
    K = mats[0].shape[0]
    if any(m.shape != (K, K) for m in mats):
        raise RangeError("lag matrices must share one square shape")
    p = len(mats)
    rng = _rng(seed)
    burn = 100
    total = n + burn
    c = np.asarray(intercepts, dtype=float)
    eps = rng.normal(0.0, sd, (total, K))
    data = np.zeros((total, K))
    for t in range(p, total):
        acc = c + eps[t]
        for j, m in enumerate(mats, start=1):
            acc = acc + m @ data[t - j]
        data[t] = acc
    names = [f"v{i + 1}" for i in range(K)]
    return tuple(Series(names[i], start_year, tuple(data[burn:, i]))
                 for i in range(K))


def _spawned(seed, reps: int):
    return np.random.SeedSequence(seed).spawn(reps)


def mc_adf_size(reps: int, n: int = 100, seed=0, level: str = "5%") -> dict:
    """Rejection rate of the lag-0 ADF test on driftless random walks.

    Under the null the rate should sit near the nominal level.
    """
    if reps < 1:
        raise RangeError(f"need at least one replication, got {reps}")
    rejections = 0
    for child in _spawned(seed, reps):
        s = random_walk(n, seed=child)
        if adf_test(s, lags=0, spec="constant").rejects(level):
            rejections += 1
    return {"test": "adf_size", "dgp": "random_walk", "level": level,
            "reps": reps, "rejections": rejections, "rate": rejections / reps}


def mc_adf_power(reps: int, n: int = 100, phi: float = 0.5, seed=0,
                 level: str = "5%") -> dict:
    """Rejection rate of the lag-0 ADF test on stationary AR(1) draws."""
    if reps < 1:
        raise RangeError(f"need at least one replication, got {reps}")
    rejections = 0
    for child in _spawned(seed, reps):
        s = ar1(n, phi=phi, seed=child)
        if adf_test(s, lags=0, spec="constant").rejects(level):
            rejections += 1
    return {"test": "adf_power", "dgp": f"ar1(phi={phi:g})", "level": level,
            "reps": reps, "rejections": rejections, "rate": rejections / reps}


def mc_diagnostic_size(reps: int, n: int = 100, seed=0,
                       level: float = 0.01) -> list:
    """False-alarm rates of the residual diagnostics on a clean regression.

    Each replication fits y = 1 + 0.5 x + e with iid normal errors and runs
    the serial-correlation, conditional-heteroskedasticity, and normality
    checks on the fit; all three null hypotheses are true by construction.
    """
    if reps < 1:
        raise RangeError(f"need at least one replication, got {reps}")
    from .ols import arch_lm, breusch_godfrey, ols_fit, skew_kurt_test
    counts = {"breusch_godfrey": 0, "arch_lm": 0, "normality": 0}
    for child in _spawned(seed, reps):
        rng = _rng(child)
        x = rng.normal(0.0, 1.0, n)
        e = rng.normal(0.0, 1.0, n)
        y = Series("y", 0, tuple(1.0 + 0.5 * x + e))
        fit = ols_fit(y, [Series("x", 0, tuple(x))], intercept=True)
        if breusch_godfrey(fit, lags=1).p_value < level:
            counts["breusch_godfrey"] += 1
        if arch_lm(fit, lags=1).p_value < level:
            counts["arch_lm"] += 1
        if skew_kurt_test(fit.residuals).p_value < level:
            counts["normality"] += 1
    return [{"test": name, "dgp": "iid_regression", "level": level,
             "reps": reps, "rejections": hits, "rate": hits / reps}
            for name, hits in counts.items()]
