"""Seeded data-generating processes and the Monte Carlo harnesses."""

import numpy as np
import pytest

from inflab import (
    Series,
    adf_test,
    ar1,
    cointegrated_pair,
    leadlag_pair,
    mc_adf_size,
    mc_diagnostic_size,
    random_walk,
    var_sim,
    white_noise,
)
from inflab.errors import RangeError


def test_generators_are_deterministic_given_seed():
    for gen in (white_noise, random_walk, ar1):
        a = gen(50, seed=9)
        b = gen(50, seed=9)
        c = gen(50, seed=10)
        assert a.values == b.values
        assert a.values != c.values


def test_generator_metadata():
    s = white_noise(30, sd=2.0, seed=1, name="noise", start_year=1970)
    assert (s.name, s.start_year, len(s)) == ("noise", 1970, 30)
    w = random_walk(40, drift=0.5, seed=2)
    assert len(w) == 40
    # drift dominates the mean increment
    assert np.mean(np.diff(w.to_numpy())) == pytest.approx(0.5, abs=0.6)


def test_ar1_is_stationary_from_the_start():
    # marginal variance of the first and last thirds agree
    s = ar1(3000, phi=0.7, seed=5).to_numpy()
    v1 = np.var(s[:1000])
    v2 = np.var(s[-1000:])
    assert v1 == pytest.approx(v2, rel=0.2)
    target = 1.0 / (1.0 - 0.49)
    assert np.var(s) == pytest.approx(target, rel=0.15)


def test_ar1_rejects_explosive_phi():
    with pytest.raises(RangeError):
        ar1(100, phi=1.0)
    with pytest.raises(RangeError):
        ar1(100, phi=-1.2)


def test_check_n_guard():
    with pytest.raises(RangeError):
        white_noise(1)
    with pytest.raises(RangeError):
        var_sim(0)


def test_cointegrated_pair_equilibrium_is_stationary():
    y, x = cointegrated_pair(400, seed=7)
    combo = Series("ec", 0, tuple(y.to_numpy() - 2.0 * x.to_numpy()))
    assert adf_test(combo, lags=1, spec="constant").rejects("1%")
    # while the levels keep the unit root
    assert not adf_test(x, lags=1, spec="constant").rejects("5%")
    with pytest.raises(RangeError):
        cointegrated_pair(100, alpha=0.5)


def test_leadlag_pair_lead_structure():
    y, x = leadlag_pair(400, lead=2, coef=0.8, seed=3)
    yv, xv = y.to_numpy(), x.to_numpy()
    lead2 = np.corrcoef(yv[2:], xv[:-2])[0, 1]
    lead0 = np.corrcoef(yv, xv)[0, 1]
    assert lead2 > 0.5
    assert lead2 > lead0
    with pytest.raises(RangeError):
        leadlag_pair(100, lead=0)


def test_var_sim_matches_requested_order():
    mats = (np.array([[0.4, 0.0], [0.1, 0.2]]), np.array([[0.1, 0.0], [0.0, 0.1]]))
    a, b = var_sim(150, lag_matrices=mats, seed=11)
    assert len(a) == len(b) == 150
    with pytest.raises(RangeError):
        var_sim(100, lag_matrices=(np.eye(3), np.eye(2)))


def test_mc_outputs_are_reproducible_and_complete():
    a = mc_adf_size(120, n=60, seed=4)
    b = mc_adf_size(120, n=60, seed=4)
    assert a == b
    assert {"test", "dgp", "level", "reps", "rejections", "rate"} <= set(a)
    assert a["reps"] == 120
    assert a["rate"] == a["rejections"] / 120
    assert a["dgp"] == "random_walk"


def test_mc_diagnostic_size_reports_three_tests(diagnostic_size_run):
    out, _ = diagnostic_size_run
    names = [r["test"] for r in out]
    assert names == ["breusch_godfrey", "arch_lm", "normality"]
    for r in out:
        assert r["reps"] == 1000
        assert 0.0 <= r["rate"] <= 1.0


def test_mc_diagnostic_size_retains_conforming_nulls(diagnostic_size_run):
    out, _ = diagnostic_size_run
    for r in out:
        assert r["rate"] <= 0.02, r["test"]


def test_mc_power_is_low_against_near_unit_root():
    # phi close to 1 must be much harder to reject than phi = 0.5
    weak = mc_adf_size(150, n=60, seed=6)
    from inflab import mc_adf_power

    strong = mc_adf_power(150, n=60, phi=0.5, seed=6)
    near = mc_adf_power(150, n=60, phi=0.97, seed=6)
    assert strong["rate"] > near["rate"]
    assert weak["rate"] < 0.2
