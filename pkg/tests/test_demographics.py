"""Deterministic disturbed-fit sweep, cohort-count corrections, and the
participation-rate trend check."""

import numpy as np
import pytest

from inflab import Series
from inflab.demographics import (
    CohortPair,
    SyntheticSpec,
    census_spike_correction,
    cohort_cointegration,
    cohort_difference,
    cohort_unit_root_grid,
    participation_trend,
    piecewise_correction,
    ratio_diagnostic,
    spurious_experiment,
    synthetic_error,
    synthetic_reference,
)
from inflab.errors import RangeError, SegmentError


def test_reference_curve_definition():
    spec = SyntheticSpec(n=45)
    r = synthetic_reference(spec)
    t = np.arange(45.0)
    np.testing.assert_allclose(r.to_numpy(), 0.3 * np.sin(0.1 * t), atol=1e-15)


def test_error_term_flips_sign_each_decade():
    e = synthetic_error(0.05, 45)
    vals = e.to_numpy()
    np.testing.assert_allclose(vals[0:10], -0.05, atol=1e-15)
    np.testing.assert_allclose(vals[10:20], 0.05, atol=1e-15)
    np.testing.assert_allclose(vals[20:30], -0.05, atol=1e-15)
    np.testing.assert_allclose(vals[30:40], 0.05, atol=1e-15)
    np.testing.assert_allclose(vals[40:45], -0.05, atol=1e-15)


def test_spec_validation():
    with pytest.raises(RangeError):
        SyntheticSpec(n=19)
    with pytest.raises(RangeError):
        SyntheticSpec(amplitudes=(0.01, 0.0))
    with pytest.raises(RangeError):
        SyntheticSpec(amplitudes=(-0.1,))


def test_sweep_fit_quality_profile(sweep_run):
    report, _ = sweep_run
    rows = report.rows
    by_a = {round(r.A, 4): r for r in rows}
    assert by_a[0.005].r2 >= 0.995
    assert by_a[0.1].r2 == pytest.approx(0.784, abs=0.02)
    for r in rows:
        assert r.dw == pytest.approx(0.36, abs=0.05)
        assert r.arch_p < 0.05
        assert r.johansen_rank in (0, 1, 2)
        assert r.eg_verdict in ("none", "1%", "5%", "10%")


def test_sweep_r2_monotone_nonincreasing(sweep_run):
    report, _ = sweep_run
    r2 = [r.r2 for r in report.rows]
    amps = [r.A for r in report.rows]
    assert amps == sorted(amps)
    assert all(a >= b - 1e-12 for a, b in zip(r2, r2[1:]))


def test_sweep_is_deterministic(sweep_run):
    report, _ = sweep_run
    again = spurious_experiment()
    assert again == report


def test_sweep_control_row_is_well_behaved(sweep_run):
    report, _ = sweep_run
    control = report.control
    # unstructured noise at the same scale leaves no ARCH signature
    assert control.arch_p > 0.05
    assert control.r2 > 0.9


def test_piecewise_correction_demeans_each_segment():
    rng = np.random.default_rng(3)
    d = Series("d", 1963, tuple(rng.normal(0.01, 0.004, size=42)))
    segments = [
        {"start": 1963, "end": 1980, "mode": "linear"},
        {"start": 1981, "end": 1990, "mode": "constant"},
        {"start": 1991, "end": 2000, "mode": "constant"},
        {"start": 2001, "end": 2004, "mode": "constant"},
    ]
    out = piecewise_correction(d, segments)
    scale = float(np.abs(d.to_numpy()).max())
    for seg in segments:
        w = out.window(seg["start"], seg["end"]).to_numpy()
        assert abs(w.mean()) < 1e-9 * scale


def test_piecewise_correction_segment_guards():
    d = Series("d", 1990, tuple(np.arange(10.0)))
    with pytest.raises(SegmentError):
        piecewise_correction(
            d,
            [
                {"start": 1990, "end": 1995},
                {"start": 1994, "end": 1999},
            ],
        )
    with pytest.raises(RangeError):
        piecewise_correction(d, [{"start": 1990, "end": 1997}])
    with pytest.raises(RangeError):
        piecewise_correction(d, [{"start": 1990, "end": 1999, "mode": "spline"}])
    with pytest.raises(RangeError):
        piecewise_correction(d, [])


def make_pair():
    n15 = Series("n15", 1948, tuple(np.linspace(3000.0, 4000.0, 30)))
    vals = np.linspace(2990.0, 3990.0, 31)
    vals[1970 - 1947] *= 1.02  # census revision spike
    n14 = Series("n14", 1947, tuple(vals))
    return CohortPair(n15=n15, n14=n14, census_years=(1971,))


def test_census_correction_changes_only_adjacent_years():
    p = make_pair()
    fixed = census_spike_correction(p)
    before = p.n14.to_numpy()
    after = fixed.n14.to_numpy()
    changed = np.nonzero(np.abs(after - before) > 1e-12)[0]
    assert list(changed) == [1970 - 1947]
    # the corrected prior-year count matches the census-year 15-count
    assert fixed.n14.value_at(1970) == pytest.approx(p.n15.value_at(1971))
    assert fixed.n15 == p.n15


def test_cohort_pair_validation():
    n15 = Series("n15", 1948, tuple(np.linspace(1.0, 2.0, 10)))
    n14 = Series("n14", 1947, tuple(np.linspace(1.0, 2.0, 11)))
    with pytest.raises(RangeError):
        CohortPair(n15=n15, n14=n14, census_years=(1990,))
    p = CohortPair(n15=n15, n14=n14, census_years=(1950,))
    with pytest.raises(RangeError):
        census_spike_correction(
            CohortPair(n15=n15, n14=n14.window(1950, 1957), census_years=(1950,))
        )
    assert p.census_years == (1950,)


def test_ratio_and_difference_diagnostics():
    p = make_pair()
    ratio = ratio_diagnostic(p)
    diffr = cohort_difference(p)
    i = 1960
    # d(t) = N15(t) - N14(t-1): the one-year cohort carry-over residual
    expected_d = p.n15.value_at(i) - p.n14.value_at(i - 1)
    assert diffr.value_at(i) == pytest.approx(expected_d, rel=1e-12)
    # the ratio compares year-over-year increments of the same two series
    dn15 = p.n15.value_at(i) - p.n15.value_at(i - 1)
    dn14 = p.n14.value_at(i - 1) - p.n14.value_at(i - 2)
    assert ratio.value_at(i) == pytest.approx((dn15 - dn14) / dn14, rel=1e-12)


def test_cohort_unit_root_grid_shape(ctx):
    grid = cohort_unit_root_grid(ctx.cohort(), adf_lags=(0, 1), dfgls_lags=(1, 2))
    assert set(grid) == {"n15", "dn15", "d2n15"}
    for block in grid.values():
        assert set(block) == {"adf", "dfgls"}
        assert sorted(block["adf"]) == [0, 1]
        assert sorted(block["dfgls"]) == [1, 2]
        for res in block["adf"].values():
            assert res.test == "adf"


def test_cohort_counts_difference_to_stationarity(ctx):
    grid = cohort_unit_root_grid(ctx.cohort(), adf_lags=(0,), dfgls_lags=(1,))
    # levels keep the unit-root null; second differences reject hard
    assert not grid["n15"]["adf"][0].rejects("5%")
    assert grid["d2n15"]["adf"][0].rejects("1%")


def test_cohort_cointegration_both_modes(ctx):
    p = ctx.cohort()
    raw = cohort_cointegration(p, corrected=False)
    cor = cohort_cointegration(p, corrected=True)
    for out in (raw, cor):
        assert set(out) == {"levels", "differences"}
        for block in out["levels"], out["differences"]:
            assert set(block) == {"constant", "rconstant", "none"}
            for res in block.values():
                assert res.selected_rank in (0, 1, 2)


def test_participation_rate_trend_dominates(ctx):
    fit = participation_trend(ctx.load("participation_rate"))
    assert fit.r_squared > 0.97
    assert fit.n == 32


def test_participation_trend_window_guard(ctx):
    s = ctx.load("participation_rate")
    with pytest.raises(Exception):
        participation_trend(s, start=1990, end=1960)
