"""Command-line front end: ingestion, table reproduction, experiments.

Every subcommand writes machine-readable reports (JSON plus CSV) into the
output directory and prints a one-line summary to stdout. Failures are
reported as exactly one JSON object on stderr with a nonzero exit code.
Table reproductions place the embedded benchmark value next to each computed
number together with their relative deviation, so fixture drift is visible
in the report instead of being silently absorbed.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import warnings
from pathlib import Path

import numpy as np

from .cointegration import JohansenSpec, difference_test, engle_granger, johansen_critical, johansen_trace
from .demographics import (
    CohortPair,
    SyntheticSpec,
    cohort_cointegration,
    cohort_unit_root_grid,
    participation_trend,
    spurious_experiment,
    synthetic_error,
    synthetic_reference,
)
from .errors import MissingFixture, RangeError, ToolkitError
from .inflation import (
    build_predictor_set,
    calibrate_cumulative,
    evaluate_subperiods,
    redistribute_revisions,
)
from .ols import arch_lm, breusch_godfrey, durbin_watson, het_test, ols_fit, ramsey_reset, skew_kurt_test
from .reference import published_table, relative_deviation, table_ids
from .series import Series, align, cumulative, diff, load_csv, subtract, summary
from .simulate import mc_adf_power, mc_adf_size, mc_diagnostic_size
from .unit_root import adf_test, dfgls_test
from .var_vecm import (
    companion_eigen,
    granger_causality,
    residual_normality,
    var_fit,
    var_lm_autocorr,
    vecm_fit,
)

__all__ = ["main", "build_parser", "FixtureContext", "resolve_series"]

_FIXTURE_FILES = {
    "gdp_deflator": "gdp_deflator.csv",
    "labor_force": "labor_force.csv",
    "labor_force_halfyear": "labor_force_halfyear.csv",
    "participation_rate": "participation_rate.csv",
    "n15": "n15.csv",
    "n14": "n14.csv",
}
_LIST_FILES = {
    "revision_years": "revision_years.txt",
    "census_years": "census_years.txt",
}


class FixtureContext:
    """Lazy loader for the CSV/TXT fixtures under one data directory."""

    def __init__(self, data_dir, lag: int = 2):
        self.data_dir = Path(data_dir)
        self.lag = lag
        self._series = {}
        self._calibration = None
        self._predictors = None

    def path(self, key: str) -> Path:
        filename = _FIXTURE_FILES.get(key) or _LIST_FILES.get(key)
        if filename is None:
            raise RangeError(f"unknown fixture key {key!r}")
        return self.data_dir / filename

    def has(self, key: str) -> bool:
        return self.path(key).is_file()

    def load(self, key: str) -> Series:
        if key not in self._series:
            path = self.path(key)
            if not path.is_file():
                raise MissingFixture(path.name)
            self._series[key] = load_csv(str(path), key)
        return self._series[key]

    def load_years(self, key: str) -> list:
        path = self.path(key)
        if not path.is_file():
            raise MissingFixture(path.name)
        years = []
        for raw in path.read_text(encoding="utf-8").splitlines():
            raw = raw.strip()
            if raw:
                years.append(int(raw))
        return years

    def measured(self) -> Series:
        return self.load("gdp_deflator").with_name("measured")

    def corrected_lf(self, key: str = "labor_force") -> Series:
        """Labor force with step revisions redistributed (raw if no list)."""
        lf = self.load(key)
        if self.path("revision_years").is_file():
            return redistribute_revisions(lf, self.load_years("revision_years"))
        return lf

    def calibration(self):
        """Coefficients fitted on the 1965-2002 assessment window."""
        if self._calibration is None:
            measured = self.measured()
            lo = max(1965, measured.start_year)
            hi = min(2002, measured.end_year)
            if lo + 2 < hi:
                measured = measured.window(lo, hi)
            self._calibration = calibrate_cumulative(
                measured, self.corrected_lf(), lag=self.lag)
        return self._calibration

    def predictors(self) -> dict:
        """Canonical named predictor variants on their analysis windows."""
        if self._predictors is not None:
            return self._predictors
        coeffs = self.calibration().coefficients
        half = (self.corrected_lf("labor_force_halfyear")
                if self.has("labor_force_halfyear") else None)
        pset = build_predictor_set(self.corrected_lf(), half, coeffs)
        measured = self.measured()

        def clamp(s, start, end):
            return s.window(max(start, s.start_year), min(end, s.end_year))

        sync_lo, sync_hi = measured.start_year, measured.end_year
        lead_lo, lead_hi = sync_lo - self.lag, sync_hi - self.lag
        out = {"measured": measured}
        for name, s in pset.available().items():
            if name.endswith("2"):
                out[name] = clamp(s, lead_lo, lead_hi).with_name(name)
            else:
                out[name] = clamp(s, sync_lo, sync_hi).with_name(name)
        self._predictors = out
        return out

    def cohort(self, window=None) -> CohortPair:
        n15 = self.load("n15")
        n14 = self.load("n14")
        census = self.load_years("census_years")
        if window is not None:
            lo, hi = window
            n15 = n15.window(max(lo, n15.start_year), min(hi, n15.end_year))
            n14 = n14.window(max(lo - 1, n14.start_year), min(hi, n14.end_year))
            census = [c for c in census
                      if n15.start_year <= c <= n15.end_year
                      and n14.start_year <= c - 1 <= n14.end_year]
        return CohortPair(n15=n15, n14=n14, census_years=census)


def resolve_series(ctx: FixtureContext, name: str) -> Series:
    """Map a CLI series name to a fixture or derived series (or CSV path)."""
    key = name.strip()
    base = {
        "gdp_deflator": lambda: ctx.load("gdp_deflator"),
        "measured": ctx.measured,
        "dmeasured": lambda: diff(ctx.measured(), 1),
        "labor_force": lambda: ctx.load("labor_force"),
        "lf": lambda: ctx.load("labor_force"),
        "labor_force_halfyear": lambda: ctx.load("labor_force_halfyear"),
        "participation_rate": lambda: ctx.load("participation_rate"),
        "corrected_lf": lambda: redistribute_revisions(
            ctx.load("labor_force"), ctx.load_years("revision_years")),
        "n15": lambda: ctx.load("n15"),
        "n14": lambda: ctx.load("n14"),
        "dn15": lambda: diff(ctx.load("n15"), 1),
        "d2n15": lambda: diff(ctx.load("n15"), 2),
        "dn14": lambda: diff(ctx.load("n14"), 1),
    }
    if key in base:
        return base[key]()
    derived = ("predicted", "predicted2", "shifted", "shifted2", "ma2", "ma3",
               "dpredicted", "diff1", "diff2", "diff3")
    if key in derived:
        preds = ctx.predictors()
        if key in preds:
            return preds[key]
        if key == "dpredicted":
            return diff(preds["predicted"], 1)
        if key.startswith("diff"):
            variant = {"diff1": "predicted", "diff2": "ma2", "diff3": "ma3"}[key]
            if variant not in preds:
                raise MissingFixture(_FIXTURE_FILES["labor_force_halfyear"])
            return subtract(ctx.measured(), preds[variant], name=key)
        raise MissingFixture(_FIXTURE_FILES["labor_force_halfyear"])
    candidate = Path(key)
    if candidate.suffix == ".csv" or candidate.is_file():
        if not candidate.is_file():
            raise MissingFixture(candidate.name)
        return load_csv(str(candidate), candidate.stem)
    known = sorted(set(base) | set(derived))
    raise RangeError(f"unknown series {name!r}; known names: {', '.join(known)}")


# ---------------------------------------------------------------------------
# report writers

def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return format(value, ".12g")
    return str(value)


def _jsonable(value):
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _write_json(path: Path, payload: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(_jsonable(payload), fh, indent=2, sort_keys=False)
        fh.write("\n")


def _write_csv(path: Path, header, rows) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def _entry(row: str, column: str, computed, published) -> dict:
    return {
        "row": row,
        "column": column,
        "computed": None if computed is None else float(computed),
        "published": None if published is None else float(published),
        "relative_deviation": relative_deviation(computed, published),
    }


def _write_table_report(out_dir: Path, table_id: str, title: str,
                        entries: list, notes=()) -> None:
    slug = table_id.lower()
    payload = {
        "table": table_id,
        "title": title,
        "entries": entries,
        "notes": list(notes),
    }
    _write_json(out_dir / f"table_{slug}.json", payload)
    _write_csv(
        out_dir / f"table_{slug}.csv",
        ["row", "column", "computed", "published", "relative_deviation"],
        [[e["row"], e["column"], e["computed"], e["published"], e["relative_deviation"]]
         for e in entries],
    )


# ---------------------------------------------------------------------------
# table builders

def _unit_root_row(s: Series, adf_lags, dfgls_lags, adf_spec, dfgls_spec):
    cells = {}
    for lag in adf_lags:
        res = adf_test(s, lags=lag, spec=adf_spec)
        cells[f"adf_lag{lag}"] = res
    for lag in dfgls_lags:
        res = dfgls_test(s, lags=lag, spec=dfgls_spec)
        cells[f"dfgls_lag{lag}"] = res
    return cells


def _table_1(ctx: FixtureContext):
    pub = published_table("1")
    preds = ctx.predictors()
    order = ["measured", "predicted", "shifted", "predicted2", "shifted2", "ma2", "ma3"]
    entries = []
    critical_cells = None
    for row in order:
        if row == "measured":
            s = ctx.measured()
        elif row in preds:
            s = preds[row]
        else:
            continue
        cells = _unit_root_row(s, (0,), (1, 4), "constant", "trend")
        if critical_cells is None:
            critical_cells = cells
        for idx, col in enumerate(pub["columns"]):
            entries.append(_entry(row, col, cells[col].statistic, pub["rows"][row][idx]))
    for idx, col in enumerate(pub["columns"]):
        entries.append(_entry("critical_1pct", col,
                              critical_cells[col].critical_values["1%"],
                              pub["critical_1pct"][idx]))
    return pub["title"], entries, []


def _table_2(ctx: FixtureContext):
    pub = published_table("2")
    measured = ctx.measured()
    preds = ctx.predictors()
    series = {
        "dmeasured": diff(measured, 1),
        "dpredicted": diff(preds["predicted"], 1),
    }
    entries = []
    for spec_name, block in pub["blocks"].items():
        spec = "trend" if spec_name == "trend" else "constant"
        critical_cells = None
        for row, published_vals in block["rows"].items():
            cells = _unit_root_row(series[row], (0, 1, 2, 3), (1, 2, 3), spec, spec)
            if critical_cells is None:
                critical_cells = cells
            for idx, col in enumerate(pub["columns"]):
                entries.append(_entry(f"{row}({spec_name})", col,
                                      cells[col].statistic, published_vals[idx]))
        for idx, col in enumerate(pub["columns"]):
            entries.append(_entry(f"critical_1pct({spec_name})", col,
                                  critical_cells[col].critical_values["1%"],
                                  block["critical_1pct"][idx]))
    return pub["title"], entries, []


def _table_3(ctx: FixtureContext):
    pub = published_table("3")
    measured = ctx.measured()
    preds = ctx.predictors()
    variants = {"diff1": "direct", "diff2": "ma2", "diff3": "ma3"}
    entries = []
    critical = None
    for row, variant in variants.items():
        report = difference_test(measured, preds["predicted"], variant=variant,
                                 adf_lags=0, dfgls_lags=(1, 2, 3))
        comp = report.normality.components
        computed = {
            "adf_lag0": report.adf.statistic,
            "dfgls_lag1": report.dfgls[1].statistic,
            "dfgls_lag2": report.dfgls[2].statistic,
            "dfgls_lag3": report.dfgls[3].statistic,
            "mean": report.stats.mean,
            "stdev": report.stats.stdev,
            "pr_skew": comp["p_skew"],
            "pr_kurt": comp["p_kurt"],
            "chi2": report.normality.statistic,
            "pr_chi2": report.normality.p_value,
        }
        if critical is None:
            critical = {
                "adf_lag0": report.adf.critical_values["1%"],
                "dfgls_lag1": report.dfgls[1].critical_values["1%"],
                "dfgls_lag2": report.dfgls[2].critical_values["1%"],
                "dfgls_lag3": report.dfgls[3].critical_values["1%"],
            }
        for idx, col in enumerate(pub["columns"]):
            entries.append(_entry(row, col, computed[col], pub["rows"][row][idx]))
    for idx, col in enumerate(pub["columns"]):
        published = pub["critical_1pct"][idx]
        if published is not None:
            entries.append(_entry("critical_1pct", col, critical.get(col), published))
    return pub["title"], entries, []


def _table_4(ctx: FixtureContext):
    pub = published_table("4")
    measured = ctx.measured()
    preds = ctx.predictors()
    entries = []
    for row in ("predicted", "shifted", "ma2", "ma3"):
        if row not in preds:
            continue
        m, x = align(measured, preds[row])
        fit = ols_fit(m, [x], intercept=True)
        cum_fit = ols_fit(cumulative(m), [cumulative(x)], intercept=True)
        computed = {
            "het_p": het_test(fit).p_value,
            "reset_p": ramsey_reset(fit).p_value,
            "arch_p": arch_lm(fit, lags=1).p_value,
            "bg_p": breusch_godfrey(fit, lags=1).p_value,
            "dw": durbin_watson(fit),
            "r2": fit.r_squared,
            "r2_cumulative": cum_fit.r_squared,
            "rmsfe": fit.rmse,
            "cons": fit.coefficients[-1],
            "cons_se": fit.std_errors[-1],
            "cons_p": fit.coef_p_values[-1],
        }
        for idx, col in enumerate(pub["columns"]):
            entries.append(_entry(row, col, computed[col], pub["rows"][row][idx]))
    return pub["title"], entries, []


def _table_5(ctx: FixtureContext):
    pub = published_table("5")
    measured = ctx.measured()
    preds = ctx.predictors()
    entries = []
    notes = []
    cache = {}
    for pub_row in pub["rows"]:
        predictor = pub_row["predictor"]
        trend = pub_row["trend"]
        rank = pub_row["rank"]
        if predictor not in preds:
            notes.append(f"predictor {predictor!r} unavailable; fixture missing")
            continue
        key = (predictor, trend)
        if key not in cache:
            cache[key] = johansen_trace([measured, preds[predictor]],
                                        JohansenSpec(trend=trend, lags=4))
        res = cache[key]
        crow = res.rows[rank]
        row_id = f"{predictor}_{trend}_r{rank}"
        entries.append(_entry(row_id, "parms", crow["parms"], pub_row["parms"]))
        entries.append(_entry(row_id, "ll", crow["log_likelihood"], pub_row["ll"]))
        entries.append(_entry(row_id, "eigenvalue", crow["eigenvalue"], pub_row["eigenvalue"]))
        entries.append(_entry(row_id, "trace", crow["trace_statistic"], pub_row["trace"]))
        entries.append(_entry(row_id, "critical_5pct", crow["critical_5%"],
                              pub_row["critical_5pct"]))
        if res.selected_rank != 1:
            note = f"{predictor}/{trend}: selected rank {res.selected_rank}, benchmark selects 1"
            if note not in notes:
                notes.append(note)
    return pub["title"], entries, notes


def _table_6(ctx: FixtureContext, p: int):
    pub = published_table("6")
    measured = ctx.measured()
    preds = ctx.predictors()
    entries = []
    for predictor in ("predicted2", "shifted2"):
        if predictor not in preds:
            continue
        results = granger_causality([measured, preds[predictor]], p=p)
        for res in results:
            row = f"{res.components['equation']}|{res.components['excluded']}"
            pub_row = next((r for r in pub["rows"]
                            if r["equation"] == res.components["equation"]
                            and r["excluded"] == res.components["excluded"]), None)
            entries.append(_entry(row, "chi2", res.statistic,
                                  None if pub_row is None else pub_row["chi2"]))
            entries.append(_entry(row, "p", res.p_value,
                                  None if pub_row is None else pub_row["p"]))
    return pub["title"], entries, []


def _table_7(ctx: FixtureContext):
    pub = published_table("7")
    measured = ctx.measured()
    preds = ctx.predictors()
    entries = []
    for row in ("predicted", "shifted", "ma2", "ma3"):
        if row not in preds:
            continue
        model = var_fit([measured], [preds[row]], p=2, intercept=True)
        ses = model.coef_std_errors[0]
        computed = {
            "l1": model.lag_matrices[0][0, 0],
            "l1_se": ses[0],
            "l2": model.lag_matrices[1][0, 0],
            "l2_se": ses[1],
            "exog": model.exog_coefs[0, 0],
            "exog_se": ses[2],
            "cons": model.intercepts[0],
            "cons_se": ses[3],
            "r2": model.r_squared[0],
            "r2_cumulative": None,
            "rmsfe": model.rmsfe[0],
            "rmsfe_cumulative": None,
        }
        for idx, col in enumerate(pub["columns"]):
            entries.append(_entry(row, col, computed[col], pub["rows"][row][idx]))
    return pub["title"], entries, []


def _table_8(ctx: FixtureContext):
    pub = published_table("8")
    measured = ctx.measured()
    preds = ctx.predictors()
    entries = []
    notes = []
    for row, pub_vals in pub["rows"].items():
        if row not in preds:
            continue
        lag = int(pub_vals[0])
        best = None
        for trend in ("constant", "rconstant", "none"):
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                model = vecm_fit([measured, preds[row]], rank=1, p=lag, trend=trend)
            computed = {
                "lag": lag,
                "coeff": model.alpha[0],
                "coeff_se": model.alpha_se[0],
                "r2_measured": model.r_squared[0],
                "r2_predictor": model.r_squared[1],
                "rmsfe_measured": model.rmsfe[0],
                "rmsfe_predictor": model.rmsfe[1],
            }
            row_id = f"{row}_{trend}"
            for idx, col in enumerate(pub["columns"]):
                entries.append(_entry(row_id, col, computed[col], pub_vals[idx]))
            dev = relative_deviation(computed["coeff"], pub_vals[1])
            if dev is not None and (best is None or abs(dev) < best[1]):
                best = (trend, abs(dev))
        if best is not None:
            notes.append(f"{row}: closest adjustment coefficient under {best[0]} "
                         f"(|relative deviation| {best[1]:.3f})")
    return pub["title"], entries, notes


def _table_a1(ctx: FixtureContext):
    pub = published_table("A1")
    pair = ctx.cohort(window=(1963, 2004))
    grid = cohort_unit_root_grid(pair)
    entries = []
    for row, published_vals in pub["rows"].items():
        cells = grid[row]
        computed = {}
        for lag, res in cells["adf"].items():
            computed[f"adf_lag{lag}"] = res.statistic
        for lag, res in cells["dfgls"].items():
            computed[f"dfgls_lag{lag}"] = res.statistic
        for idx, col in enumerate(pub["columns"]):
            entries.append(_entry(row, col, computed.get(col), published_vals[idx]))
    n15_cells = grid["n15"]
    for idx, col in enumerate(pub["columns"]):
        if col.startswith("adf_"):
            lag = int(col.rsplit("lag", 1)[1])
            cv = n15_cells["adf"][lag].critical_values["1%"]
        else:
            lag = int(col.rsplit("lag", 1)[1])
            cv = n15_cells["dfgls"][lag].critical_values["1%"]
        entries.append(_entry("critical_1pct", col, cv, pub["critical_1pct"][idx]))
    return pub["title"], entries, []


def _table_2a(ctx: FixtureContext, lags: int = 2):
    pub = published_table("2A")
    pair = ctx.cohort()
    spec_to_cols = {
        "constant": ("constant_trace0", "constant_trace1"),
        "rconstant": ("trend_trace0", "trend_trace1"),
        "none": ("none_trace0", "none_trace1"),
    }
    grids = {
        False: cohort_cointegration(pair, corrected=False, lags=lags),
        True: cohort_cointegration(pair, corrected=True, lags=lags),
    }
    row_map = {
        "dn15_vs_dn14_original": (False, "differences"),
        "dn15_vs_dn14_corrected": (True, "differences"),
        "n15_vs_n14_original": (False, "levels"),
        "n15_vs_n14_corrected": (True, "levels"),
    }
    entries = []
    col_index = {col: i for i, col in enumerate(pub["columns"])}
    for row, (corrected, kind) in row_map.items():
        for trend, (col0, col1) in spec_to_cols.items():
            res = grids[corrected][kind][trend]
            entries.append(_entry(row, col0, res.rows[0]["trace_statistic"],
                                  pub["rows"][row][col_index[col0]]))
            entries.append(_entry(row, col1, res.rows[1]["trace_statistic"],
                                  pub["rows"][row][col_index[col1]]))
    for trend, (col0, col1) in spec_to_cols.items():
        entries.append(_entry("critical_5pct", col0, johansen_critical(trend, 2),
                              pub["critical_5pct"][col_index[col0]]))
        entries.append(_entry("critical_5pct", col1, johansen_critical(trend, 1),
                              pub["critical_5pct"][col_index[col1]]))
    return pub["title"], entries, [pub["note"]]


# ---------------------------------------------------------------------------
# subcommand handlers

def cmd_ingest(args) -> None:
    ctx = FixtureContext(args.data_dir, lag=args.lag)
    rows = []
    payload = {}
    for key, filename in _FIXTURE_FILES.items():
        if not ctx.has(key):
            payload[key] = {"file": filename, "present": False}
            rows.append([key, filename, "absent", "", "", "", "", "", ""])
            continue
        s = ctx.load(key)
        stats = summary(s)
        payload[key] = {
            "file": filename,
            "present": True,
            "start_year": s.start_year,
            "end_year": s.end_year,
            "n": stats.n,
            "mean": stats.mean,
            "stdev": stats.stdev,
            "min": stats.min,
            "max": stats.max,
        }
        rows.append([key, filename, "present", s.start_year, s.end_year,
                     stats.n, stats.mean, stats.stdev, stats.max])
    for key, filename in _LIST_FILES.items():
        present = ctx.path(key).is_file()
        years = ctx.load_years(key) if present else []
        payload[key] = {"file": filename, "present": present, "years": years}
        rows.append([key, filename, "present" if present else "absent",
                     years[0] if years else "", years[-1] if years else "",
                     len(years), "", "", ""])
    out = Path(args.out)
    _write_json(out / "ingest.json", payload)
    _write_csv(out / "ingest.csv",
               ["fixture", "file", "status", "start", "end", "n", "mean", "stdev", "max"],
               rows)
    present = sum(1 for v in payload.values() if v.get("present"))
    print(f"ingest: {present}/{len(payload)} fixtures present; report in {out}")


_TABLE_BUILDERS = {
    "1": lambda ctx, args: _table_1(ctx),
    "2": lambda ctx, args: _table_2(ctx),
    "3": lambda ctx, args: _table_3(ctx),
    "4": lambda ctx, args: _table_4(ctx),
    "5": lambda ctx, args: _table_5(ctx),
    "6": lambda ctx, args: _table_6(ctx, args.lag),
    "7": lambda ctx, args: _table_7(ctx),
    "8": lambda ctx, args: _table_8(ctx),
    "A1": lambda ctx, args: _table_a1(ctx),
    "2A": lambda ctx, args: _table_2a(ctx),
}


def cmd_reproduce_table(args) -> None:
    ctx = FixtureContext(args.data_dir, lag=args.lag)
    table_id = args.table
    title, entries, notes = _TABLE_BUILDERS[table_id](ctx, args)
    out = Path(args.out)
    _write_table_report(out, table_id, title, entries, notes)
    compared = [e for e in entries if e["relative_deviation"] is not None]
    worst = max((abs(e["relative_deviation"]) for e in compared), default=0.0)
    print(f"table {table_id}: {len(entries)} entries, "
          f"{len(compared)} compared, max |relative deviation| {worst:.3f}; "
          f"report in {out}")


def cmd_calibrate(args) -> None:
    ctx = FixtureContext(args.data_dir, lag=args.lag)
    cal = ctx.calibration()
    preds = ctx.predictors()
    measured = ctx.measured()
    predicted = preds["predicted"]
    m_eval = measured.window(max(1965, measured.start_year), min(2002, measured.end_year))
    segments = evaluate_subperiods(m_eval, predicted, breakpoints=[1983])
    seg_payload = {f"{lo}-{hi}": value for (lo, hi), value in
                   ((k, v) for k, v in segments.items() if isinstance(k, tuple))}
    payload = {
        "a1": cal.coefficients.a1,
        "a2": cal.coefficients.a2,
        "lag": cal.coefficients.lag,
        "n": cal.n,
        "terminal_residual": cal.terminal_residual,
        "rmsfe_full": segments["full"],
        "rmsfe_segments": seg_payload,
        "predictor_set": {
            name: {"start_year": s.start_year, "end_year": s.end_year, "n": len(s)}
            for name, s in preds.items()
        },
    }
    out = Path(args.out)
    _write_json(out / "calibrate.json", payload)
    rows = [["a1", cal.coefficients.a1], ["a2", cal.coefficients.a2],
            ["lag", cal.coefficients.lag], ["rmsfe_full", segments["full"]]]
    rows += [[f"rmsfe_{k}", v] for k, v in seg_payload.items()]
    _write_csv(out / "calibrate.csv", ["quantity", "value"], rows)
    print(f"calibrate: a1={cal.coefficients.a1:.4f} a2={cal.coefficients.a2:.5f} "
          f"rmsfe_full={segments['full']:.4f}; report in {out}")


def _synthetic_plots(out: Path, report, spec: SyntheticSpec) -> None:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    plt.rcParams["svg.hashsalt"] = "artifact"

    reference = synthetic_reference(spec)
    a_max = max(spec.amplitudes)
    error = synthetic_error(a_max, spec.n)
    disturbed = [r + e for r, e in zip(reference.values, error.values)]
    fit = ols_fit(
        Series("disturbed", 0, tuple(disturbed)), [reference], intercept=True)

    fig, axes = plt.subplots(2, 1, figsize=(7, 6), sharex=True)
    t = list(range(spec.n))
    axes[0].plot(t, reference.values, label="reference")
    axes[0].plot(t, disturbed, label=f"disturbed (A={a_max:g})")
    axes[0].legend(loc="best")
    axes[0].set_ylabel("value")
    axes[1].plot(t, fit.residuals.values, label="fit residuals")
    axes[1].axhline(0.0, linewidth=0.8)
    axes[1].set_xlabel("t")
    axes[1].set_ylabel("residual")
    axes[1].legend(loc="best")
    fig.tight_layout()
    fig.savefig(out / "synthetic_curves.svg", metadata={"Date": None})
    plt.close(fig)

    amps = [row.A for row in report.rows]
    fig, axes = plt.subplots(2, 1, figsize=(7, 6), sharex=True)
    axes[0].plot(amps, [row.r2 for row in report.rows], marker="o")
    axes[0].set_ylabel("R^2")
    axes[1].plot(amps, [row.dw for row in report.rows], marker="o")
    axes[1].set_xlabel("amplitude A")
    axes[1].set_ylabel("Durbin-Watson")
    fig.tight_layout()
    fig.savefig(out / "synthetic_sweep.svg", metadata={"Date": None})
    plt.close(fig)


def cmd_synthetic(args) -> None:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    header = "A,r2,dw,arch_p,eg_verdict,johansen_rank\n"
    if args.amplitudes is not None and not args.amplitudes:
        (out / "synthetic.csv").write_text(header, encoding="utf-8")
        _write_json(out / "synthetic.json", {"rows": [], "control": None, "n": args.n})
        print(f"synthetic: empty amplitude list; header-only report in {out}")
        return
    spec = (SyntheticSpec(n=args.n, amplitudes=tuple(args.amplitudes))
            if args.amplitudes is not None else SyntheticSpec(n=args.n))
    report = spurious_experiment(spec)
    (out / "synthetic.csv").write_text(report.to_csv(), encoding="utf-8")
    _write_json(out / "synthetic.json", report.to_dict())
    _synthetic_plots(out, report, spec)
    r2s = [row.r2 for row in report.rows]
    print(f"synthetic: {len(report.rows)} amplitudes, R^2 {max(r2s):.4f}..{min(r2s):.4f}, "
          f"DW {report.rows[0].dw:.3f}; report in {out}")


def cmd_montecarlo(args) -> None:
    if args.reps < 100:
        raise RangeError(f"need at least 100 replications, got {args.reps}")
    out = Path(args.out)
    results = []
    if args.suite == "size":
        results.append(mc_adf_size(reps=args.reps, n=args.n, seed=args.seed))
        results.extend(mc_diagnostic_size(reps=args.reps, n=args.n, seed=args.seed + 1))
    else:
        results.append(mc_adf_power(reps=args.reps, n=args.n, seed=args.seed))
    payload = {"suite": args.suite, "reps": args.reps, "n": args.n,
               "seed": args.seed, "results": results}
    _write_json(out / "montecarlo.json", payload)
    _write_csv(out / "montecarlo.csv",
               ["test", "dgp", "level", "reps", "rejections", "rate"],
               [[r["test"], r["dgp"], r["level"], r["reps"], r["rejections"], r["rate"]]
                for r in results])
    line = ", ".join(f"{r['test']}={r['rate']:.4f}" for r in results)
    print(f"montecarlo {args.suite}: {line}; report in {out}")


def cmd_unit_root(args) -> None:
    ctx = FixtureContext(args.data_dir, lag=args.lag)
    s = resolve_series(ctx, args.series)
    results = {}
    if args.test in ("adf", "both"):
        spec = args.spec or "constant"
        results["adf"] = adf_test(s, lags=args.lag, spec=spec)
    if args.test in ("dfgls", "both"):
        spec = args.spec or "trend"
        results["dfgls"] = dfgls_test(s, lags=max(args.lag, 1), spec=spec)
    payload = {"series": args.series, "n": len(s),
               "results": {k: v.to_dict() for k, v in results.items()}}
    out = Path(args.out)
    _write_json(out / "unit_root.json", payload)
    rows = []
    for test, res in results.items():
        for level, cv in res.critical_values.items():
            rows.append([test, res.spec.value, res.lags, res.statistic, level, cv,
                         res.rejects(level)])
    _write_csv(out / "unit_root.csv",
               ["test", "spec", "lags", "statistic", "level", "critical", "rejects"],
               rows)
    line = ", ".join(f"{k}={v.statistic:.4f}" for k, v in results.items())
    print(f"unit-root {args.series}: {line}; report in {out}")


def cmd_cointegrate(args) -> None:
    ctx = FixtureContext(args.data_dir, lag=args.lag)
    y = resolve_series(ctx, args.y)
    x = resolve_series(ctx, args.x)
    payload = {"y": args.y, "x": args.x}
    rows = []
    if args.method in ("eg", "both"):
        eg = engle_granger(y, x, residual_lags=args.eg_lags)
        payload["engle_granger"] = eg.to_dict()
        rows.append(["engle_granger", "statistic", eg.residual_test.statistic])
        rows.append(["engle_granger", "cointegrated_at", eg.cointegrated_at or "none"])
    if args.method in ("johansen", "both"):
        res = johansen_trace([y, x], JohansenSpec(trend=args.trend, lags=max(args.lag, 1)))
        payload["johansen"] = res.to_dict()
        for row in res.rows:
            rows.append([f"johansen_r{row['rank']}", "trace", row["trace_statistic"]])
        rows.append(["johansen", "selected_rank", res.selected_rank])
    out = Path(args.out)
    _write_json(out / "cointegrate.json", payload)
    _write_csv(out / "cointegrate.csv", ["method", "quantity", "value"], rows)
    print(f"cointegrate {args.y}~{args.x}: report in {out}")


def cmd_var(args) -> None:
    ctx = FixtureContext(args.data_dir, lag=args.lag)
    endog = [resolve_series(ctx, name) for name in args.endog.split(",") if name.strip()]
    exog = [resolve_series(ctx, name) for name in (args.exog or "").split(",") if name.strip()]
    model = var_fit(endog, exog, p=args.lag, intercept=True)
    moduli = companion_eigen(model)
    lm = var_lm_autocorr(model, max_lag=4)
    norm = residual_normality(model)
    payload = model.to_dict()
    payload["companion_moduli"] = list(moduli)
    payload["lm_autocorrelation"] = [t.to_dict() for t in lm]
    payload["residual_normality"] = norm.to_dict()
    out = Path(args.out)
    _write_json(out / "var.json", payload)
    rows = []
    for i, label in enumerate(model.labels):
        for j, reg in enumerate(model.regressor_names):
            coef = np.concatenate([np.concatenate([m[i] for m in model.lag_matrices]),
                                   model.exog_coefs[i],
                                   [model.intercepts[i]]])[j]
            rows.append([label, reg, coef, model.coef_std_errors[i][j]])
        rows.append([label, "r_squared", model.r_squared[i], ""])
        rows.append([label, "rmsfe", model.rmsfe[i], ""])
    _write_csv(out / "var.csv", ["equation", "regressor", "coefficient", "std_error"], rows)
    print(f"var p={args.lag}: max companion modulus {moduli[0]:.3f}; report in {out}")


def cmd_vecm(args) -> None:
    ctx = FixtureContext(args.data_dir, lag=args.lag)
    y = resolve_series(ctx, args.y)
    x = resolve_series(ctx, args.x)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        model = vecm_fit([y, x], rank=args.rank, p=args.lag, trend=args.trend)
    payload = model.to_dict()
    payload["rank_table"] = model.rank_result.to_dict()
    payload["notes"] = [str(w.message) for w in caught]
    out = Path(args.out)
    _write_json(out / "vecm.json", payload)
    rows = [["beta", " ".join(model.labels), *model.beta]]
    for i, label in enumerate(model.labels):
        rows.append([f"alpha[{label}]", "", model.alpha[i], model.alpha_se[i]])
        rows.append([f"r_squared[{label}]", "", model.r_squared[i], ""])
        rows.append([f"rmsfe[{label}]", "", model.rmsfe[i], ""])
    _write_csv(out / "vecm.csv", ["quantity", "detail", "value", "extra"], rows)
    print(f"vecm p={args.lag} trend={args.trend}: "
          f"alpha[0]={model.alpha[0]:.4f}; report in {out}")


def cmd_granger(args) -> None:
    ctx = FixtureContext(args.data_dir, lag=args.lag)
    y = resolve_series(ctx, args.y)
    x = resolve_series(ctx, args.x)
    results = granger_causality([y, x], p=args.lag)
    payload = {"y": args.y, "x": args.x, "lag": args.lag,
               "results": [t.to_dict() for t in results]}
    out = Path(args.out)
    _write_json(out / "granger.json", payload)
    _write_csv(out / "granger.csv",
               ["equation", "excluded", "chi2", "df", "p"],
               [[t.components["equation"], t.components["excluded"],
                 t.statistic, t.df, t.p_value] for t in results])
    line = "; ".join(f"{t.components['excluded']}->{t.components['equation']} "
                     f"p={t.p_value:.4f}" for t in results)
    print(f"granger: {line}; report in {out}")


# ---------------------------------------------------------------------------
# parser and entry point

class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage errors come out as JSON on stderr."""

    def error(self, message):
        _emit_error("UsageError", message)
        raise SystemExit(2)


def _emit_error(kind: str, message: str, **detail) -> None:
    payload = {"error": kind, "message": message}
    if detail:
        payload["detail"] = detail
    print(json.dumps(payload), file=sys.stderr)


def _amplitude_list(text: str):
    text = text.strip()
    if not text:
        return []
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad amplitude list {text!r}") from None


def _add_global_args(parser, suppress: bool) -> None:
    """Global flags, accepted both before and after the subcommand."""

    def default(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("--data-dir", default=default("data"),
                        help="fixture directory")
    parser.add_argument("--out", default=default("out"),
                        help="report output directory")
    parser.add_argument("--lag", type=int, default=default(2),
                        help="model/test lag order")
    parser.add_argument("--alpha", type=float, default=default(0.05),
                        help="significance level")
    parser.add_argument("--seed", type=int, default=default(0),
                        help="random seed")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="inflab", description=__doc__.splitlines()[0])
    _add_global_args(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_parser(name, **kwargs):
        p = sub.add_parser(name, **kwargs)
        _add_global_args(p, suppress=True)
        return p

    p = add_parser("ingest", help="load and summarize every fixture")
    p.set_defaults(handler=cmd_ingest)

    p = add_parser("reproduce-table", help="recompute one published table")
    p.add_argument("table", choices=list(table_ids()))
    p.set_defaults(handler=cmd_reproduce_table)

    p = add_parser("calibrate", help="fit the lagged linear inflation model")
    p.set_defaults(handler=cmd_calibrate)

    p = add_parser("synthetic", help="run the deterministic disturbed-fit sweep")
    p.add_argument("--amplitudes", type=_amplitude_list, default=None,
                   help="comma-separated amplitudes (default: 20-point sweep)")
    p.add_argument("--n", type=int, default=45, help="sample length")
    p.set_defaults(handler=cmd_synthetic)

    p = add_parser("montecarlo", help="size/power study of the tests")
    p.add_argument("--suite", choices=("size", "power"), required=True)
    p.add_argument("--reps", type=int, default=1000)
    p.add_argument("--n", type=int, default=100, help="series length per replication")
    p.set_defaults(handler=cmd_montecarlo)

    p = add_parser("unit-root", help="ADF / DF-GLS test on one series")
    p.add_argument("--series", required=True)
    p.add_argument("--test", choices=("adf", "dfgls", "both"), default="both")
    p.add_argument("--spec", choices=("none", "constant", "trend"), default=None)
    p.set_defaults(handler=cmd_unit_root)

    p = add_parser("cointegrate", help="Engle-Granger and Johansen tests")
    p.add_argument("--y", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--method", choices=("eg", "johansen", "both"), default="both")
    p.add_argument("--trend", choices=("constant", "rconstant", "none"), default="constant")
    p.add_argument("--eg-lags", type=int, default=0, help="residual ADF lags")
    p.set_defaults(handler=cmd_cointegrate)

    p = add_parser("var", help="VAR estimation with diagnostics")
    p.add_argument("--endog", required=True, help="comma-separated series names")
    p.add_argument("--exog", default="", help="comma-separated series names")
    p.set_defaults(handler=cmd_var)

    p = add_parser("vecm", help="VECM estimation")
    p.add_argument("--y", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--rank", type=int, default=1)
    p.add_argument("--trend", choices=("constant", "rconstant", "none"), default="constant")
    p.set_defaults(handler=cmd_vecm)

    p = add_parser("granger", help="Granger causality in both directions")
    p.add_argument("--y", required=True)
    p.add_argument("--x", required=True)
    p.set_defaults(handler=cmd_granger)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.handler(args)
    except ToolkitError as exc:
        detail = {k: v for k, v in vars(exc).items()
                  if isinstance(v, (str, int, float, bool))}
        _emit_error(type(exc).__name__, str(exc), **detail)
        return 1
    except OSError as exc:
        _emit_error("IOError", str(exc))
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
