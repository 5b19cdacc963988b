"""CSV and JSON serialisation with lossless number formatting."""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .grid import Signal


def format_value(v) -> str:
    """17 significant digits for floats, ``true``/``false`` for booleans."""
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return format(v, ".17g")
    return str(v)


def csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(format_value(v) for v in row))
    return "\n".join(lines) + "\n"


def write_csv(path, header: Sequence[str], rows: Iterable[Sequence]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(csv_text(header, rows))
    return path


def read_csv(path) -> tuple[list[str], list[list[str]]]:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


def write_json(path, obj) -> Path:
    from .experiments.common import jsonable

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(jsonable(obj), indent=2, sort_keys=True) + "\n")
    return path


def export_signal_csv(path, f: Signal) -> Path:
    """Samples as ``x,value`` for real data or ``x,re,im`` otherwise."""
    vals = f.samples
    if np.all(vals.imag == 0):
        return write_csv(path, ("x", "value"), zip(f.grid.x, vals.real))
    return write_csv(path, ("x", "re", "im"), zip(f.grid.x, vals.real, vals.imag))


def export_window_csv(path, w, grid) -> Path:
    """Window profile sampled at the grid frequencies as ``xi,value``."""
    return write_csv(path, ("xi", "value"), zip(grid.freqs, w.profile(grid.freqs)))


def write_report(report, out_dir) -> list[Path]:
    """``<name>.json`` plus one CSV per table (``<name>.csv`` for the table named like the report)."""
    out_dir = Path(out_dir)
    paths = [write_json(out_dir / f"{report.name}.json", report.to_dict())]
    for key, table in report.tables.items():
        stem = report.name if key == report.name else f"{report.name}_{key}"
        paths.append(write_csv(out_dir / f"{stem}.csv", table.header, table.rows))
    return paths
