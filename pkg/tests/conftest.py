"""Shared fixtures: the bundled data context and the expensive Monte Carlo
runs, computed once per session and reused by module and acceptance tests."""

import json
import time
from pathlib import Path

import pytest

from inflab import (
    mc_adf_power,
    mc_adf_size,
    mc_diagnostic_size,
    spurious_experiment,
)
from inflab.cli import FixtureContext

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture(scope="session")
def data_dir():
    return DATA_DIR


@pytest.fixture(scope="session")
def ctx():
    return FixtureContext(DATA_DIR)


@pytest.fixture(scope="session")
def manifest():
    return json.loads((DATA_DIR / "fixture_manifest.json").read_text())


@pytest.fixture(scope="session")
def verbatim_vintage(manifest):
    """True only when the bundled US fixtures carry the as-published vintage.

    The repo ships a reconstruction, so vintage-sensitive numeric targets are
    asserted loosely and the verbatim comparison is skipped; swapping in a
    verbatim fixture set flips this flag and arms the tight checks.
    """
    observed = [v for v in manifest.values() if v.get("kind") == "observed"]
    return bool(observed) and all(v.get("vintage") == "verbatim-2006" for v in observed)


@pytest.fixture(scope="session")
def require_verbatim(verbatim_vintage):
    """Callable that skips the remainder of a test on reconstructed fixtures.

    The skip message carries the values computed so far, so the honest result
    on the bundled reconstruction stays visible in the test report.
    """

    def _check(detail):
        if not verbatim_vintage:
            pytest.skip(f"reconstructed fixture vintage; {detail}")

    return _check


@pytest.fixture(scope="session")
def sweep_run():
    """Deterministic disturbed-fit sweep with wall time, run once."""
    t0 = time.perf_counter()
    report = spurious_experiment()
    return report, time.perf_counter() - t0


@pytest.fixture(scope="session")
def adf_size_run():
    t0 = time.perf_counter()
    out = mc_adf_size(5000, n=100, seed=0)
    return out, time.perf_counter() - t0


@pytest.fixture(scope="session")
def adf_power_run():
    t0 = time.perf_counter()
    out = mc_adf_power(5000, n=100, phi=0.5, seed=0)
    return out, time.perf_counter() - t0


@pytest.fixture(scope="session")
def diagnostic_size_run():
    t0 = time.perf_counter()
    out = mc_diagnostic_size(1000, n=100, seed=1, level=0.01)
    return out, time.perf_counter() - t0


@pytest.fixture(scope="session")
def us_calibration(ctx):
    return ctx.calibration()


@pytest.fixture(scope="session")
def us_predictors(ctx):
    return ctx.predictors()
