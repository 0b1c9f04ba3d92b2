"""Reproducible serialization: the field-csv format and 17-digit JSON.

field-csv is a header line ``x,re,im`` followed by one row per grid point,
LF line endings, every float written with ``repr``-grade ``.17g`` formatting.
The grid is recovered from the x column: ``L = -x[0]`` and ``N`` = row count.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os

import numpy as np

from .errors import FieldFormatError
from .grid import Field, GridSpec

HEADER = ("x", "re", "im")
UNIFORM_RTOL = 1e-9


def fmt(value: float) -> str:
    return format(float(value), ".17g")


def field_to_csv(f: Field) -> str:
    buf = io.StringIO()
    buf.write(",".join(HEADER) + "\n")
    x = np.asarray(f.grid.x)
    for xi, vi in zip(x.tolist(), f.values.tolist()):
        buf.write(f"{fmt(xi)},{fmt(vi.real)},{fmt(vi.imag)}\n")
    return buf.getvalue()


def write_field(path, f: Field) -> None:
    """Write ``f`` as field-csv.  Raises ``OSError`` on I/O failure."""
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(field_to_csv(f))


def field_from_csv(text: str, source: str = "<string>") -> Field:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(c.strip() for c in rows[0]) != HEADER:
        raise FieldFormatError(f"{source}: expected header 'x,re,im'")
    body = [r for r in rows[1:] if r]
    if len(body) < 2:
        raise FieldFormatError(f"{source}: need at least two data rows")
    try:
        data = np.array([[float(v) for v in r] for r in body], dtype=np.float64)
    except ValueError as exc:
        raise FieldFormatError(f"{source}: non-numeric entry ({exc})") from None
    if data.shape[1] != 3:
        raise FieldFormatError(f"{source}: every row needs exactly three columns")
    if not np.all(np.isfinite(data)):
        raise FieldFormatError(f"{source}: NaN or Inf in data")
    x = data[:, 0]
    n = len(x)
    half_width = -x[0]
    if not half_width > 0:
        raise FieldFormatError(f"{source}: first x must be -L with L > 0, got {x[0]!r}")
    grid = GridSpec(n, half_width)
    expected = np.asarray(grid.x)
    if np.max(np.abs(x - expected)) > UNIFORM_RTOL * half_width:
        raise FieldFormatError(f"{source}: x column is not a uniform grid on [-L, L)")
    return Field(grid, data[:, 1] + 1j * data[:, 2])


def read_field(path) -> Field:
    """Read a field-csv file; ``FieldFormatError`` (an ``OSError``) on bad content."""
    with open(path, "r", encoding="ascii", newline="") as fh:
        text = fh.read()
    return field_from_csv(text, os.fspath(path))


class _Raw(float):
    """Marks a finite float for 17-digit output (the stdlib encoder would
    use the shortest round-trip form instead)."""


def _prepare(obj):
    if isinstance(obj, dict):
        return {str(k): _prepare(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_prepare(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_prepare(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return None if not math.isfinite(v) else _Raw(v)
    return obj


def dumps(obj, indent: int | None = 2) -> str:
    """Deterministic JSON: sorted keys, 17 significant digits, NaN/Inf -> null."""
    return _dumps(_prepare(obj), indent)


def _dumps(obj, indent, level=0) -> str:
    pad = "" if indent is None else "\n" + " " * (indent * (level + 1))
    end = "" if indent is None else "\n" + " " * (indent * level)
    sep = ", " if indent is None else ","
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, _Raw):
        return fmt(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, list):
        if not obj:
            return "[]"
        return "[" + sep.join(pad + _dumps(v, indent, level + 1) for v in obj) + end + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = (
            pad + json.dumps(k) + ": " + _dumps(obj[k], indent, level + 1) for k in sorted(obj)
        )
        return "{" + sep.join(items) + end + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__}")
