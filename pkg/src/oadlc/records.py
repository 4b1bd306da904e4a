"""Deterministic serialization helpers.

Every file the toolkit emits must be byte-identical across runs and
platforms, so all floating-point output funnels through the fixed
6-significant-digit formatter here (locale-independent by construction).
"""

from __future__ import annotations

import json


def fmt6(x: float) -> str:
    """Format a float with 6 significant digits, normalizing -0."""
    if x == 0:
        x = 0.0
    return f"{x:.6g}"


def sig6(x: float) -> float:
    """Round a float to 6 significant digits (value, not string)."""
    return float(fmt6(x))


def jsonable(obj):
    """Recursively rounds floats and converts tuples for JSON output."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, float):
        return sig6(obj)
    if isinstance(obj, int):
        return obj
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    return obj


def dump_record(record: dict) -> str:
    """Canonical JSON text: sorted keys, 2-space indent, trailing newline."""
    return json.dumps(jsonable(record), sort_keys=True, indent=2,
                      ensure_ascii=False) + "\n"


def write_record(path, record: dict) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(dump_record(record))


def write_csv(path, header: list[str], rows) -> None:
    """Plain CSV with fixed formatting; floats go through fmt6."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(
                fmt6(v) if isinstance(v, float) else str(v) for v in row) + "\n")
