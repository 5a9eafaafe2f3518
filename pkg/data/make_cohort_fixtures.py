#!/usr/bin/env python3
"""Regenerate the derived and synthetic fixtures in this directory.

Writes three files next to this script:

- labor_force_halfyear.csv: mid-year interpolation of labor_force.csv,
  value(t) = 0.5 * (LF(t-1) + LF(t)). The toolkit treats this series as an
  input fixture, never as something it computes itself, so the construction
  lives here.
- n14.csv / n15.csv: synthetic single-year-of-age cohort counts. No public
  machine-readable mid-2000s postcensal single-age series survives to copy,
  so these embody the documented structure instead: a smooth cohort-size
  path, the cohort identity N15(t) = N14(t-1) up to a small survival and
  migration factor, and proportional census-base breaks. Population
  estimates for years in [c, c+10) carry the base factor of census c, so
  the cohort difference N15(t) - N14(t-1) spikes exactly at census years
  and is small everywhere else. Fully deterministic (fixed seed).

Run from anywhere: python data/make_cohort_fixtures.py
"""

import csv
import math
import random
from pathlib import Path

HERE = Path(__file__).resolve().parent

# estimates for years [c, c+10) are scaled by the base error of census c
CENSUS_BASE = {
    1950: 1.000,
    1960: 1.013,
    1970: 0.995,
    1980: 1.021,
    1990: 0.999,
    2000: 1.018,
}

# anchor points for the population aged 14 (persons): postwar trough, baby
# boom ramp, 1971 peak cohort, the mid-1970s birth dearth arriving in the
# late 1980s, and the echo boom arriving after 1995
ANCHORS = [
    (1947, 2_200_000),
    (1952, 2_420_000),
    (1957, 2_730_000),
    (1961, 3_690_000),
    (1966, 3_980_000),
    (1971, 4_240_000),
    (1978, 4_090_000),
    (1983, 3_720_000),
    (1989, 3_290_000),
    (1995, 3_680_000),
    (2000, 3_960_000),
    (2004, 4_150_000),
]

SEED = 20060714


def read_series(name):
    with open(HERE / name, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        assert header == ["year", "value"], header
        return {int(year): float(value) for year, value in reader}


def write_series(name, rows):
    with open(HERE / name, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["year", "value"])
        for year, value in rows:
            writer.writerow([year, value])


def make_halfyear():
    lf = read_series("labor_force.csv")
    years = sorted(lf)
    rows = [(t, 0.5 * (lf[t - 1] + lf[t])) for t in years[1:]]
    write_series("labor_force_halfyear.csv", rows)


def smooth_level(t):
    """Cosine interpolation through the anchor points (C1 at anchors)."""
    if t <= ANCHORS[0][0]:
        return float(ANCHORS[0][1])
    if t >= ANCHORS[-1][0]:
        return float(ANCHORS[-1][1])
    for (y0, v0), (y1, v1) in zip(ANCHORS, ANCHORS[1:]):
        if y0 <= t <= y1:
            x = (t - y0) / (y1 - y0)
            w = 0.5 * (1.0 - math.cos(math.pi * x))
            return v0 + (v1 - v0) * w
    raise AssertionError(t)


def base_factor(t):
    era = max(c for c in CENSUS_BASE if c <= t) if t >= 1950 else 1950
    return CENSUS_BASE[era]


def make_cohorts():
    rng = random.Random(SEED)
    years14 = range(1947, 2005)
    true14 = {}
    for t in years14:
        jitter = 0.004 * math.sin(2.0 * math.pi * (t - 1947) / 6.5)
        jitter += rng.gauss(0.0, 0.002)
        true14[t] = smooth_level(t) * (1.0 + jitter)
    # survival/net-migration factor linking last year's 14s to this year's 15s
    omega = {t: rng.gauss(0.001, 0.0005) for t in range(1948, 2005)}
    n14 = [(t, round(true14[t] * base_factor(t))) for t in years14]
    n15 = [(t, round(true14[t - 1] * (1.0 + omega[t]) * base_factor(t)))
           for t in range(1948, 2005)]
    write_series("n14.csv", n14)
    write_series("n15.csv", n15)


if __name__ == "__main__":
    make_halfyear()
    make_cohorts()
    print("wrote labor_force_halfyear.csv, n14.csv, n15.csv")
