"""Access to the embedded table of published benchmark values.

The JSON data file carries the benchmark numbers each reproduction pipeline
prints next to its computed output, so fixture drift shows up as an explicit
relative deviation instead of being silently absorbed.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from .errors import RangeError

__all__ = ["published_table", "published_scalar", "table_ids", "relative_deviation"]

_TABLE_KEYS = {
    "1": "table_1",
    "2": "table_2",
    "3": "table_3",
    "4": "table_4",
    "5": "table_5",
    "6": "table_6",
    "7": "table_7",
    "8": "table_8",
    "A1": "table_a1",
    "2A": "table_2a",
}


@lru_cache(maxsize=1)
def _load() -> dict:
    path = resources.files("inflab").joinpath("data/published_values.json")
    return json.loads(path.read_text(encoding="utf-8"))


def table_ids() -> tuple:
    return tuple(_TABLE_KEYS)


def published_table(table_id: str) -> dict:
    key = _TABLE_KEYS.get(str(table_id))
    if key is None:
        raise RangeError(f"unknown table id {table_id!r}; expected one of {', '.join(_TABLE_KEYS)}")
    return _load()[key]


def published_scalar(name: str):
    scalars = _load()["scalars"]
    if name not in scalars:
        raise RangeError(f"unknown published scalar {name!r}")
    return scalars[name]


def relative_deviation(computed, published):
    """(computed - published) / |published|; None when not comparable."""
    if computed is None or published is None:
        return None
    if published == 0:
        return None
    return (float(computed) - float(published)) / abs(float(published))
