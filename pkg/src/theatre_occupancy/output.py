"""CSV/JSON serialization of result records and plotting tables."""

from __future__ import annotations

import csv
import io
import json
import math

import numpy as np

from .bounds import BoundReport

RECORD_COLUMNS = ("n", "p", "dist", "entrances", "method", "value", "std_error")


def _plain(value):
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    return value


def csv_cell(value) -> str:
    value = _plain(value)
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return f"{value:.12g}"
    return str(value)


def to_csv(columns, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([csv_cell(v) for v in row])
    return buf.getvalue()


def to_json(obj) -> str:
    def default(o):
        if isinstance(o, np.ndarray):
            return o.tolist()
        plain = _plain(o)
        if plain is o:
            raise TypeError(f"cannot serialize {type(o).__name__}")
        return plain

    return json.dumps(obj, default=default, allow_nan=True) + "\n"


def emit_records(records: list[dict], fmt: str) -> str:
    if fmt == "json":
        return to_json([{k: _plain(r.get(k)) for k in RECORD_COLUMNS} for r in records])
    return to_csv(RECORD_COLUMNS, ([r.get(k) for k in RECORD_COLUMNS] for r in records))


def plot_table(report: BoundReport) -> tuple[list[str], list[list[float]]]:
    """``(grid, value[, lower, upper])``; bounds that are constant over the
    grid are left out."""
    columns = [report.grid_name, "value"]
    series = [report.grid, report.values]
    constant = len(report.grid) == 0 or (
        np.all(report.lower == report.lower[0]) and np.all(report.upper == report.upper[0]))
    if not constant:
        columns += ["lower", "upper"]
        series += [report.lower, report.upper]
    rows = [list(map(float, row)) for row in zip(*series)]
    return columns, rows


def emit_plot_data(report: BoundReport, fmt: str = "csv") -> str:
    columns, rows = plot_table(report)
    if fmt == "json":
        return to_json({"quantity": report.quantity, "columns": columns, "rows": rows})
    return to_csv(columns, rows)


def emit_reports(reports: list[BoundReport], fmt: str) -> str:
    if fmt == "json":
        return to_json([r.to_dict() for r in reports])
    columns = ["quantity", "grid", "value", "lower", "upper", "verdict"]
    rows = []
    for r in reports:
        for g, v, lo, hi, ok in zip(r.grid, r.values, r.lower, r.upper, r.verdicts):
            rows.append([r.quantity, float(g), float(v), float(lo), float(hi),
                         "pass" if ok else "fail"])
    return to_csv(columns, rows)
