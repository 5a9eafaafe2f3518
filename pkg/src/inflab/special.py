"""Special functions backing every p-value in the package.

Regularized incomplete gamma and beta functions are implemented here from
series and continued-fraction expansions (double precision, absolute error
well under 1e-10 on the tested domain) so that chi-squared, F, and Student-t
tail probabilities need no external dependency. The normal tail reuses
math.erfc.
"""

from __future__ import annotations

import math

__all__ = [
    "gammaln",
    "gammainc_lower",
    "gammainc_upper",
    "betainc",
    "chi2_sf",
    "f_sf",
    "t_sf",
    "normal_sf",
    "normal_cdf",
]

_EPS = 1e-16
_FPMIN = 1e-300
_MAX_ITER = 500

# Lanczos coefficients (g=7, n=9), accurate to ~1e-15 for real x > 0.
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def gammaln(x: float) -> float:
    """log(Gamma(x)) for x > 0."""
    if x <= 0.0:
        raise ValueError(f"gammaln requires x > 0, got {x}")
    if x < 0.5:
        # reflection keeps the Lanczos argument away from 0
        return math.log(math.pi / math.sin(math.pi * x)) - gammaln(1.0 - x)
    x -= 1.0
    acc = _LANCZOS[0]
    for i, c in enumerate(_LANCZOS[1:], start=1):
        acc += c / (x + i)
    t = x + 7.5
    return 0.5 * math.log(2.0 * math.pi) + (x + 0.5) * math.log(t) - t + math.log(acc)


def _gamma_series(a: float, x: float) -> float:
    """Lower regularized incomplete gamma by power series; valid x < a+1."""
    term = 1.0 / a
    total = term
    ap = a
    for _ in range(_MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            break
    return total * math.exp(-x + a * math.log(x) - gammaln(a))


def _gamma_cf(a: float, x: float) -> float:
    """Upper regularized incomplete gamma by continued fraction; x >= a+1."""
    b = x + 1.0 - a
    c = 1.0 / _FPMIN
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER + 1):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = b + an / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    return math.exp(-x + a * math.log(x) - gammaln(a)) * h


def gammainc_lower(a: float, x: float) -> float:
    """Regularized lower incomplete gamma P(a, x)."""
    if a <= 0.0:
        raise ValueError(f"gammainc requires a > 0, got {a}")
    if x < 0.0:
        raise ValueError(f"gammainc requires x >= 0, got {x}")
    if x == 0.0:
        return 0.0
    if x < a + 1.0:
        return _gamma_series(a, x)
    return 1.0 - _gamma_cf(a, x)


def gammainc_upper(a: float, x: float) -> float:
    """Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x)."""
    if a <= 0.0:
        raise ValueError(f"gammainc requires a > 0, got {a}")
    if x < 0.0:
        raise ValueError(f"gammainc requires x >= 0, got {x}")
    if x == 0.0:
        return 1.0
    if x < a + 1.0:
        return 1.0 - _gamma_series(a, x)
    return _gamma_cf(a, x)


def _beta_cf(a: float, b: float, x: float) -> float:
    """Continued fraction for the incomplete beta (Lentz's method)."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _FPMIN:
        d = _FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, _MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    return h


def betainc(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta I_x(a, b)."""
    if a <= 0.0 or b <= 0.0:
        raise ValueError(f"betainc requires a, b > 0, got a={a}, b={b}")
    if x < 0.0 or x > 1.0:
        raise ValueError(f"betainc requires x in [0, 1], got {x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    front = math.exp(
        gammaln(a + b) - gammaln(a) - gammaln(b)
        + a * math.log(x) + b * math.log(1.0 - x)
    )
    # use the expansion that converges fastest, then reflect
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_cf(a, b, x) / a
    return 1.0 - front * _beta_cf(b, a, 1.0 - x) / b


def chi2_sf(x: float, df: float) -> float:
    """P(X > x) for X ~ chi-squared(df)."""
    if df <= 0:
        raise ValueError(f"chi2_sf requires df > 0, got {df}")
    if x <= 0.0:
        return 1.0
    return gammainc_upper(df / 2.0, x / 2.0)


def f_sf(x: float, df1: float, df2: float) -> float:
    """P(X > x) for X ~ F(df1, df2)."""
    if df1 <= 0 or df2 <= 0:
        raise ValueError(f"f_sf requires positive dof, got ({df1}, {df2})")
    if x <= 0.0:
        return 1.0
    return betainc(df2 / 2.0, df1 / 2.0, df2 / (df2 + df1 * x))


def t_sf(x: float, df: float) -> float:
    """P(X > x) for X ~ Student-t(df)."""
    if df <= 0:
        raise ValueError(f"t_sf requires df > 0, got {df}")
    p = 0.5 * betainc(df / 2.0, 0.5, df / (df + x * x))
    return p if x >= 0.0 else 1.0 - p


def normal_sf(z: float) -> float:
    """Standard normal upper tail P(Z > z)."""
    return 0.5 * math.erfc(z / math.sqrt(2.0))


def normal_cdf(z: float) -> float:
    """Standard normal lower tail P(Z <= z)."""
    return 0.5 * math.erfc(-z / math.sqrt(2.0))
