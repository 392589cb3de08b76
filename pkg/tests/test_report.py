import io
import math

from hypothesis import given
from hypothesis import strategies as st

from semiconfined.report import CheckReport, format_float, reports_from_json, reports_to_json, write_csv


def test_from_errors():
    r = CheckReport.from_errors("x", [("a", 1e-12), ("b", 3e-10)], 1e-9)
    assert r.passed and r.max_abs_error == 3e-10
    assert not CheckReport.from_errors("x", [("a", 2e-9)], 1e-9).passed
    assert CheckReport.from_errors("empty", [], 0.0).passed


def test_nan_fails():
    r = CheckReport.from_errors("x", [("a", 0.0), ("b", math.nan)], 1.0)
    assert not r.passed and math.isnan(r.max_abs_error)


def test_combine():
    good = CheckReport.from_errors("g", [("a", 1e-3)], 1e-2)
    bad = CheckReport.from_errors("b", [("a", 1.0)], 1e-2)
    c = CheckReport.combine("all", [good, bad])
    assert not c.passed and c.max_abs_error == 1.0 and c.details == [("g", 1e-3), ("b", 1.0)]


def test_summary():
    r = CheckReport.from_errors("demo", [("a", 1.5e-10)], 1e-9)
    assert r.summary() == "[PASS] demo: max error 1.500e-10 (tol 1.0e-09)"


@given(st.lists(st.tuples(st.text(max_size=8), st.floats(0, 1e300, allow_nan=False)), max_size=5), st.floats(0, 1))
def test_json_round_trip(errors, tol):
    reports = [CheckReport.from_errors("r", errors, tol), CheckReport("inf", 0.0, math.inf, True)]
    assert reports_from_json(reports_to_json(reports)) == reports


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_float_round_trip(v):
    assert float(format_float(v)) == v


def test_format_float_types():
    assert format_float(3) == "3" and format_float(True) == "true" and format_float(0.1) == "0.10000000000000001"


def test_write_csv():
    text = write_csv(("n", "v", "s"), [(0, 0.5, "ok")])
    assert text == "n,v,s\n0,0.5,ok\n"
    buf = io.StringIO()
    assert write_csv(("a",), [(1.0,)], buf) == "" and buf.getvalue() == "a\n1\n"
