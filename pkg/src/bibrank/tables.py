"""Deterministic tabular output in CSV, Markdown and JSON.

All numeric display goes through :func:`format_number`, which rounds
half-up at a fixed number of decimals via ``decimal`` so the same value
always prints the same bytes regardless of platform float formatting.
"""

from __future__ import annotations

import csv
import io
import json
from decimal import Decimal, ROUND_HALF_UP
from typing import Any, Sequence

FORMATS = ("csv", "md", "json")


def format_number(value: Any, decimals: int | None = None) -> str:
    """Render one numeric value with half-up rounding.

    ``decimals=None`` means no rounding: ints print bare, floats via repr.
    ``None`` values render as the empty string. Accepts numpy scalars by
    casting through ``float`` first (their repr is not a plain literal).
    """
    if value is None:
        return ""
    if isinstance(value, bool):
        raise TypeError("booleans are not table numbers")
    if isinstance(value, int):
        if decimals is None or decimals == 0:
            return str(value)
        return format_number(float(value), decimals)
    value = float(value)
    if decimals is None:
        return repr(value)
    quantum = Decimal(1).scaleb(-decimals)
    return str(Decimal(repr(value)).quantize(quantum, rounding=ROUND_HALF_UP))


def _render_cell(value: Any, decimals: int | None) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return format_number(value, decimals)


def _json_cell(value: Any, decimals: int | None) -> Any:
    if value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value
    # floats are rounded to the same digits the text formats show
    return float(format_number(value, decimals))


def write_table(
    headers: Sequence[str],
    rows: Sequence[Sequence[Any]],
    fmt: str = "csv",
    precision: Sequence[int | None] | None = None,
) -> str:
    """Format rows into a table string.

    ``precision`` gives per-column decimal places (``None`` entries leave
    the column unrounded). Cells may be str, int, float or ``None``; ``None``
    prints as an empty cell in csv/md and as ``null`` in json.
    """
    if fmt not in FORMATS:
        raise ValueError(f"unknown table format {fmt!r}; expected one of {FORMATS}")
    ncols = len(headers)
    if precision is None:
        precision = [None] * ncols
    if len(precision) != ncols:
        raise ValueError("precision must have one entry per column")
    for row in rows:
        if len(row) != ncols:
            raise ValueError(f"row {row!r} does not match {ncols} headers")

    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(headers)
        for row in rows:
            writer.writerow([_render_cell(v, p) for v, p in zip(row, precision)])
        return buf.getvalue()

    if fmt == "md":
        cells = [[_render_cell(v, p) for v, p in zip(row, precision)] for row in rows]
        widths = [
            max(len(headers[i]), *(len(r[i]) for r in cells)) if cells else len(headers[i])
            for i in range(ncols)
        ]
        out = []
        out.append("| " + " | ".join(h.ljust(widths[i]) for i, h in enumerate(headers)) + " |")
        out.append("|" + "|".join("-" * (w + 2) for w in widths) + "|")
        for r in cells:
            out.append("| " + " | ".join(r[i].ljust(widths[i]) for i in range(ncols)) + " |")
        return "".join(line + "\n" for line in out)

    objs = [
        {h: _json_cell(v, p) for h, v, p in zip(headers, row, precision)}
        for row in rows
    ]
    return json.dumps(objs, indent=2, ensure_ascii=False) + "\n"
