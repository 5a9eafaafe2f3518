"""Engle-Granger and Johansen machinery: oracle cross-checks, embedded
critical values, rank selection, and the difference-test report."""

import math

import numpy as np
import pytest

from oracles import johansen_eigen_oracle

from inflab import (
    JohansenSpec,
    Series,
    cointegrated_pair,
    engle_granger,
    johansen_critical,
    johansen_trace,
    random_walk,
)
from inflab.cointegration import difference_test, eg_critical_value
from inflab.errors import DegenerateInput, RangeError


@pytest.fixture(scope="module")
def pair():
    return cointegrated_pair(300, seed=1)


def test_engle_granger_detects_planted_relation(pair):
    y1, y2 = pair
    r = engle_granger(y1, y2)
    assert r.cointegrated_at == "1%"
    # first stage recovers the planted slope 2 on the planted vector (1,-2)
    assert r.first_stage.coefficients[0] == pytest.approx(2.0, rel=0.05)
    assert r.residual_test.test == "engle-granger"


def test_engle_granger_retains_null_on_independent_walks():
    a = random_walk(150, seed=0)
    b = random_walk(150, seed=99)
    assert engle_granger(a, b).cointegrated_at is None


def test_engle_granger_stage2_invariant_under_y_rescaling(pair):
    y1, y2 = pair
    base = engle_granger(y1, y2)
    scaled = engle_granger(Series("y", y1.start_year, tuple(5.0 * y1.to_numpy())), y2)
    assert scaled.residual_test.statistic == pytest.approx(
        base.residual_test.statistic, abs=1e-9
    )


def test_eg_critical_surface_reference_points():
    # response-surface values at selected sample sizes, 2-variable case
    assert eg_critical_value("5%", 100) == pytest.approx(-3.39791, abs=5e-4)
    # the asymptotic constants dominate as n grows
    assert eg_critical_value("1%", 10**7) == pytest.approx(-3.89644, abs=1e-4)
    assert eg_critical_value("10%", 10**7) == pytest.approx(-3.04445, abs=1e-4)
    with pytest.raises(RangeError):
        eg_critical_value("2%", 100)


def test_johansen_critical_published_values():
    assert johansen_critical("constant", 2) == 15.41
    assert johansen_critical("constant", 1) == 3.76
    assert johansen_critical("rconstant", 2) == 19.96
    assert johansen_critical("rconstant", 1) == 9.42
    assert johansen_critical("none", 2) == 12.53
    assert johansen_critical("none", 1) == 3.84
    with pytest.raises(RangeError):
        johansen_critical("quadratic", 2)
    with pytest.raises(RangeError):
        JohansenSpec(trend="quadratic")
    with pytest.raises(RangeError):
        JohansenSpec(lags=0)


@pytest.mark.parametrize("trend", ["constant", "rconstant", "none"])
@pytest.mark.parametrize("lags", [1, 2, 4])
def test_johansen_eigenvalues_match_eigen_oracle(pair, trend, lags):
    y1, y2 = pair
    res = johansen_trace([y1, y2], JohansenSpec(trend, lags))
    data = np.column_stack([y1.to_numpy(), y2.to_numpy()])
    ref, m = johansen_eigen_oracle(data, trend, lags)
    got = np.sort(np.asarray(res.eigenvalues))[::-1]
    np.testing.assert_allclose(got, ref[: len(got)], atol=1e-9)
    assert res.n_effective == m


@pytest.mark.parametrize("trend", ["constant", "rconstant", "none"])
def test_johansen_eigenvalue_and_trace_ordering(pair, trend):
    res = johansen_trace(list(pair), JohansenSpec(trend, 2))
    ev = list(res.eigenvalues)
    assert all(0.0 <= v < 1.0 for v in ev)
    assert ev == sorted(ev, reverse=True)
    traces = [row["trace_statistic"] for row in res.rows
              if row["trace_statistic"] is not None]
    assert len(traces) == len(ev)
    assert all(t > 0 for t in traces)
    assert traces == sorted(traces, reverse=True)


def test_johansen_loglikelihood_consistency(pair):
    res = johansen_trace(list(pair), JohansenSpec("constant", 2))
    ll = list(res.log_likelihoods)
    assert ll == sorted(ll)
    # LL(r) - LL(0) = -n/2 * sum_{i<=r} ln(1 - lambda_i)
    for r in range(1, len(ll)):
        implied = ll[0] - 0.5 * res.n_effective * sum(
            math.log(1.0 - lam) for lam in res.eigenvalues[:r]
        )
        assert ll[r] == pytest.approx(implied, rel=1e-6)


def test_johansen_invariant_under_series_swap(pair):
    y1, y2 = pair
    a = johansen_trace([y1, y2], JohansenSpec("constant", 2))
    b = johansen_trace([y2, y1], JohansenSpec("constant", 2))
    np.testing.assert_allclose(a.eigenvalues, b.eigenvalues, atol=1e-8)
    np.testing.assert_allclose(
        [r["trace_statistic"] for r in a.rows if r["trace_statistic"] is not None],
        [r["trace_statistic"] for r in b.rows if r["trace_statistic"] is not None],
        atol=1e-8,
    )
    assert a.selected_rank == b.selected_rank


def test_johansen_selects_rank_one_on_planted_pair(pair):
    res = johansen_trace(list(pair), JohansenSpec("constant", 2))
    assert res.selected_rank == 1


def test_johansen_selects_rank_zero_on_independent_walks():
    a = random_walk(250, seed=3)
    b = random_walk(250, seed=77)
    res = johansen_trace([a, b], JohansenSpec("constant", 2))
    assert res.selected_rank == 0


def test_rank_rows_serialize_with_selection_star(pair):
    res = johansen_trace(list(pair), JohansenSpec("constant", 2))
    for row in res.rows:
        assert {"rank", "trace_statistic", "critical_5%", "selected"} <= set(row)
    assert sum(row["selected"] for row in res.rows) == 1
    assert next(r for r in res.rows if r["selected"])["rank"] == res.selected_rank


def test_difference_test_variants(ctx):
    from inflab.cli import resolve_series

    m = ctx.measured()
    p = resolve_series(ctx, "predicted")
    direct = difference_test(m, p, variant="direct", dfgls_lags=(1, 2))
    assert direct.difference.name.startswith("diff(")
    assert len(direct.dfgls) == 2
    assert direct.normality.test == "skew_kurt"
    assert direct.stats.n == len(direct.difference)
    ma3 = difference_test(m, p, variant="ma3")
    assert ma3.stats.n == direct.stats.n - 2
    with pytest.raises(RangeError):
        difference_test(m, p, variant="median")


def test_difference_of_identical_series_degenerates(ctx):
    m = ctx.measured()
    with pytest.raises(DegenerateInput):
        difference_test(m, m, variant="direct")
