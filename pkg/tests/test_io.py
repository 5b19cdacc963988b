import math

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from rdf_lab import GridSpec, Signal
from rdf_lab.experiments import Check, Report, Table
from rdf_lab.io import csv_text, export_signal_csv, format_value, read_csv, write_report


@given(st.floats(allow_nan=False))
def test_float_roundtrip_is_lossless(v):
    assert float(format_value(v)) == v


def test_special_values():
    assert format_value(True) == "true"
    assert format_value(np.bool_(False)) == "false"
    assert format_value(np.int64(7)) == "7"
    assert format_value(math.nan) == "nan"
    assert format_value(-math.inf) == "-inf"
    assert format_value(0.1) == "0.10000000000000001"
    assert format_value(None) == ""


def test_csv_text():
    assert csv_text(("a", "b"), [(1, 0.5), ("x", True)]) == "a,b\n1,0.5\nx,true\n"


def test_signal_export(tmp_path):
    g = GridSpec(8, 8.0)
    export_signal_csv(tmp_path / "r.csv", Signal(g, np.arange(8.0)))
    header, rows = read_csv(tmp_path / "r.csv")
    assert header == ["x", "value"] and len(rows) == 8
    export_signal_csv(tmp_path / "c.csv", Signal(g, 1j * np.arange(8.0)))
    header, rows = read_csv(tmp_path / "c.csv")
    assert header == ["x", "re", "im"]
    assert float(rows[5][2]) == 5.0


def test_write_report_layout(tmp_path):
    rep = Report(
        "demo",
        [Check("c", 1.0, 2.0, True)],
        {"demo": Table(("M", "v"), [(1, 0.25)]), "extra": Table(("k",), [(3,)])},
    )
    paths = sorted(p.name for p in write_report(rep, tmp_path))
    assert paths == ["demo.csv", "demo.json", "demo_extra.csv"]
    assert (tmp_path / "demo.csv").read_text() == "M,v\n1,0.25\n"
