"""Canonical JSON serialization.

All API responses, golden files, and CLI output go through this module so
that the same logical payload always produces the same bytes: keys sorted,
compact separators, floats rendered with Python's shortest round-trip
repr, and undefined values as null.  NaN/Infinity are rejected outright;
undefined metrics must be represented as None before serialization.
"""

from __future__ import annotations

import dataclasses
import json
from enum import Enum

import numpy as np


def to_jsonable(value):
    """Recursively convert numpy scalars/arrays, dataclasses and enums."""
    if value is None or isinstance(value, (str, bool, int)):
        return value
    if isinstance(value, float):
        return value
    if isinstance(value, Enum):
        return to_jsonable(value.value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()]
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {f.name: to_jsonable(getattr(value, f.name)) for f in dataclasses.fields(value)}
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    raise TypeError(f"cannot canonicalize value of type {type(value)!r}")


def canonical_json(value) -> str:
    return json.dumps(to_jsonable(value), sort_keys=True, separators=(",", ":"), allow_nan=False)


def canonical_json_bytes(value) -> bytes:
    return canonical_json(value).encode("utf-8")
