"""Canonical text forms for exact and floating-point values.

# AICODE-NOTE: Every artifact (CSV, JSON, cache payload) goes through these
# helpers so that identical configs produce byte-identical files.
"""

from __future__ import annotations

import csv
import io
import math
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Sequence

import mpmath
import numpy as np
import orjson

JSON_OPTIONS = orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS | orjson.OPT_SERIALIZE_NUMPY


def format_ratio(value: Fraction) -> str:
    """Serialize an exact rational as "num/den" (lowest terms, den > 0)."""
    return f"{value.numerator}/{value.denominator}"


def parse_ratio(text: str) -> Fraction:
    """Inverse of format_ratio; also accepts a bare integer."""
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_float(value: float) -> str:
    """Serialize a float with 17 significant digits (round-trip exact)."""
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.17g}"


def ratio_to_float(value: Fraction) -> float:
    """Correctly rounded float of a rational with arbitrarily large parts."""
    return value.numerator / value.denominator


def _default(obj: Any) -> Any:
    if isinstance(obj, Fraction):
        return format_ratio(obj)
    if isinstance(obj, Path):
        return str(obj)
    if isinstance(obj, mpmath.mpf):
        return float(obj)
    # orjson serializes contiguous numeric arrays itself and falls through here
    # for strided views and object dtypes.
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.generic):
        return obj.item()
    raise TypeError(f"Type {type(obj).__name__} is not JSON serializable")


def dumps_json(payload: Any) -> bytes:
    """Deterministic JSON bytes (sorted keys, two-space indentation, trailing newline)."""
    return orjson.dumps(payload, default=_default, option=JSON_OPTIONS) + b"\n"


def loads_json(data: bytes | str) -> Any:
    return orjson.loads(data)


def write_json(path: Path, payload: Any) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(dumps_json(payload))


def render_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """Render rows as CSV text with '\\n' line endings."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(value) for value in row])
    return buffer.getvalue()


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render_csv(header, rows), encoding="utf-8", newline="")


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, Fraction):
        return format_ratio(value)
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating, mpmath.mpf)):
        return format_float(float(value))
    if isinstance(value, np.integer):
        return str(int(value))
    return str(value)
