"""Series container: construction rules, CSV round trips, algebra invariants."""

import math

import numpy as np
import pytest

from inflab import Series
from inflab.errors import (
    DivideByZero,
    EmptyInput,
    GapError,
    LengthError,
    ParseError,
)
from inflab.series import (
    align,
    cumulative,
    diff,
    growth_rate,
    load_csv,
    moving_average,
    save_csv,
    shift,
    subtract,
    summary,
)


def make(values, name="s", start=1960):
    return Series(name, start, tuple(values))


def test_construction_and_year_accessors():
    s = make([1.0, 2.0, 3.0], start=1995)
    assert len(s) == 3
    assert s.end_year == 1997
    assert list(s.years) == [1995, 1996, 1997]
    assert s.value_at(1996) == 2.0
    assert s.with_name("t").name == "t"
    assert s.with_name("t").values == s.values


def test_construction_rejects_bad_values():
    with pytest.raises(EmptyInput):
        make([])
    with pytest.raises(ParseError):
        make([1.0, float("nan")])
    with pytest.raises(ParseError):
        make([float("inf")])


def test_value_at_and_window_bounds():
    s = make([1.0, 2.0, 3.0, 4.0])
    with pytest.raises(LengthError):
        s.value_at(1959)
    with pytest.raises(LengthError):
        s.value_at(1964)
    w = s.window(1961, 1962)
    assert w.start_year == 1961 and w.values == (2.0, 3.0)
    with pytest.raises(LengthError):
        s.window(1962, 1961)
    with pytest.raises(LengthError):
        s.window(1959, 1962)


def test_load_csv_happy_path_and_round_trip(tmp_path):
    s = load_csv("year,value\n1990,1.5\n1991,2.5\n1992,-3.0\n", "x")
    assert s.start_year == 1990
    assert s.values == (1.5, 2.5, -3.0)
    p = tmp_path / "x.csv"
    save_csv(s, p)
    back = load_csv(p, "x")
    assert back == s


@pytest.mark.parametrize(
    "text,exc",
    [
        ("\n\n", EmptyInput),
        ("year,value\n", EmptyInput),
        ("anno,valore\n1990,1\n", ParseError),
        ("year,value\n1990,1\n1992,2\n", GapError),
        ("year,value\nabc,1\n", ParseError),
        ("year,value\n1990,xyz\n", ParseError),
        ("year,value\n1990,1,9\n", ParseError),
        ("year,value\n1990,inf\n", ParseError),
    ],
)
def test_load_csv_rejects_malformed_input(text, exc):
    with pytest.raises(exc):
        load_csv(text, "bad")


def test_gap_error_names_the_missing_year():
    with pytest.raises(GapError) as e:
        load_csv("year,value\n1990,1\n1993,2\n", "g")
    assert "1991" in str(e.value)


def test_diff_orders_and_labels():
    s = make([1.0, 4.0, 9.0, 16.0])
    d1 = diff(s)
    assert d1.start_year == 1961
    assert d1.values == (3.0, 5.0, 7.0)
    d2 = diff(s, order=2)
    assert d2.start_year == 1962
    assert d2.values == (2.0, 2.0)
    with pytest.raises(LengthError):
        diff(s, order=0)
    with pytest.raises(LengthError):
        diff(make([1.0]), order=1)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_diff_inverts_cumulative(seed):
    rng = np.random.default_rng(seed)
    s = make(rng.normal(size=30))
    c = cumulative(s)
    assert c.start_year == s.start_year
    d = diff(c)
    np.testing.assert_allclose(d.to_numpy(), s.to_numpy()[1:], rtol=0, atol=1e-12)
    assert math.isclose(c.values[0], s.values[0])


def test_growth_rate_scale_invariance_and_zero_guard():
    rng = np.random.default_rng(3)
    s = make(np.abs(rng.normal(100, 10, size=25)) + 1.0)
    g1 = growth_rate(s)
    g2 = growth_rate(make(7.5 * s.to_numpy()))
    np.testing.assert_allclose(g1.to_numpy(), g2.to_numpy(), rtol=1e-12)
    assert g1.start_year == s.start_year + 1
    with pytest.raises(DivideByZero):
        growth_rate(make([0.0, 1.0]))


def test_moving_average_is_trailing_and_flat_on_constants():
    s = make([2.0, 4.0, 6.0, 8.0])
    m = moving_average(s, 2)
    assert m.start_year == 1961
    assert m.values == (3.0, 5.0, 7.0)
    flat = moving_average(make([5.0] * 10), 4)
    assert all(v == 5.0 for v in flat.values)
    with pytest.raises(LengthError):
        moving_average(s, 5)
    with pytest.raises(LengthError):
        moving_average(s, 0)


def test_shift_relabels_only_and_round_trips():
    s = make([1.0, 2.0])
    assert shift(s, 3).start_year == 1963
    assert shift(s, 3).values == s.values
    assert shift(shift(s, 3), -3) == s


def test_align_is_commutative_and_errors_on_disjoint():
    a = make(range(10), start=1960)
    b = make(range(6), start=1965)
    a1, b1 = align(a, b)
    b2, a2 = align(b, a)
    assert (a1.start_year, a1.end_year) == (b2.start_year, b2.end_year) == (1965, 1969)
    assert a1.values == a2.values and b1.values == b2.values
    with pytest.raises(LengthError):
        align(make([1.0], start=1960), make([1.0], start=1990))
    with pytest.raises(EmptyInput):
        align()


def test_subtract_on_overlap():
    a = make([1.0, 2.0, 3.0], start=1960)
    b = make([1.0, 1.0, 1.0], start=1961)
    d = subtract(a, b, name="gap")
    assert d.name == "gap"
    assert d.start_year == 1961
    assert d.values == (1.0, 2.0)


def test_summary_trivial_samples():
    s1 = summary(make([1.0, 1.0, 1.0]))
    assert s1.mean == 1.0 and s1.stdev == 0.0 and s1.n == 3
    s2 = summary(make([-1.0, 1.0]))
    assert s2.mean == 0.0
    assert math.isclose(s2.stdev, math.sqrt(2))
    assert (s2.min, s2.max) == (-1.0, 1.0)
    with pytest.raises(LengthError):
        summary(make([1.0]))


def test_measured_inflation_change_summary(ctx, require_verbatim):
    """First difference of the bundled measured-inflation fixture."""
    s = summary(diff(ctx.measured()))
    assert abs(s.mean) < 2e-3
    assert s.stdev == pytest.approx(0.011, abs=2e-3)
    assert -0.05 < s.min < -0.02
    assert 0.02 < s.max < 0.05
    require_verbatim(
        f"computed mean={s.mean:.5f} sd={s.stdev:.4f} min={s.min:.3f} max={s.max:.3f} "
        "vs published 0.00019/0.011/-0.036/0.031"
    )
    assert s.mean == pytest.approx(0.00019, abs=5e-5)
    assert s.stdev == pytest.approx(0.011, abs=5e-4)
