"""Report emission as human-readable text, JSON or CSV.

Exact rationals are written as "p/q" strings and never rounded; floats use
Python's shortest round-trip repr.  Records are flat dicts whose key order
fixes the column order.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import math
from dataclasses import fields, is_dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .tree import PlaneTree

__all__ = ["FORMATS", "fraction_text", "plain", "render"]

FORMATS = ("text", "json", "csv")


def fraction_text(value: Fraction | int) -> str:
    """Exact "p/q" form (denominator always written, "3/1" for integers)."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def plain(value: Any) -> Any:
    """Convert to JSON-compatible data: Fractions to "p/q", enums to their names."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return fraction_text(value)
    if isinstance(value, float):
        return value if math.isfinite(value) else repr(value)
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, PlaneTree):
        return str(value)
    if is_dataclass(value) and not isinstance(value, type):
        return {f.name: plain(getattr(value, f.name)) for f in fields(value)}
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    if hasattr(value, "item"):  # numpy scalars
        return plain(value.item())
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _cell(value: Any) -> str:
    value = plain(value)
    if value is None:
        return ""
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (dict, list)):
        return json.dumps(value)
    return str(value)


def _text_table(records: Sequence[dict]) -> str:
    if not records:
        return ""
    keys = list(records[0])
    rows = [[_cell(r.get(k)) for k in keys] for r in records]
    widths = [max(len(k), *(len(row[i]) for row in rows)) for i, k in enumerate(keys)]
    lines = ["  ".join(k.ljust(w) for k, w in zip(keys, widths)).rstrip()]
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def render(records: Iterable[dict], fmt: str, document: Any = None, text: str | None = None) -> str:
    """Render records in ``fmt``.

    ``document`` replaces the record list as the JSON payload and ``text``
    replaces the default aligned table, for commands whose natural output
    is not a table.
    """
    records = list(records)
    if fmt == "json":
        payload = records if document is None else document
        return json.dumps(plain(payload), indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        if records:
            writer = csv.DictWriter(buf, fieldnames=list(records[0]), lineterminator="\n")
            writer.writeheader()
            for r in records:
                writer.writerow({k: _cell(v) for k, v in r.items()})
        return buf.getvalue()
    if fmt == "text":
        return text if text is not None else _text_table(records)
    raise ValueError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")
