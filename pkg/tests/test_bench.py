import csv
import io
import math

import numpy as np
import pytest

from scalefree_cordic import bench
from scalefree_cordic.bench import ErrorReport, SweepConfig, emit_curve, emit_table, run_sweep
from scalefree_cordic.errors import CordicError, RangeError
from scalefree_cordic.variants import Variant


@pytest.fixture(scope="module")
def report():
    return run_sweep(SweepConfig(keep_series=True))


def test_grid():
    g = SweepConfig(samples=5).grid()
    assert g[0] == 0 and g[-1] == math.pi / 4
    assert np.allclose(np.diff(g), math.pi / 16)
    with pytest.raises(RangeError):
        SweepConfig(samples=1)
    with pytest.raises(RangeError):
        SweepConfig(domain="analog")


def test_report_invariants(report):
    for cell in report.cells.values():
        assert 0 <= cell.mse <= cell.max_abs ** 2
        assert cell.mse == pytest.approx(np.mean(cell.errors ** 2), rel=1e-12)


def test_self_comparison_is_zero():
    cell = bench._cell(np.zeros(512), False)
    assert cell.mse == 0 and cell.max_abs == 0


def test_order3_sine_magnitude(report):
    # reference value 5.3537e-5 at 4 iterations; same order of magnitude
    assert 5.4e-6 < report.mse(Variant.PROPOSED_O3, 4, "sin") < 5.4e-4


@pytest.mark.parametrize("n", [3, 4, 5])
@pytest.mark.parametrize("fn", ["sin", "cos"])
def test_method_ordering(report, n, fn):
    a, b, p = (report.mse(v, n, fn) for v in bench.METHOD_COLUMNS)
    assert p < b < a


def test_higher_orders_pay_off(report):
    assert report.mse(Variant.PROPOSED_O5, 5, "sin") < report.mse(Variant.PROPOSED_O3, 5, "sin")
    for n in (4, 5):
        o3 = report.mse(Variant.PROPOSED_O3, n, "cos")
        for v in (Variant.PROPOSED_O4, Variant.PROPOSED_O5):
            assert report.mse(v, n, "cos") < o3 / 5


def test_grid_size_stability(report):
    fine = run_sweep(SweepConfig(samples=1024))
    for key, cell in report.cells.items():
        assert abs(fine[key].mse - cell.mse) < 0.1 * cell.mse


def test_emit_table_methods_structure(report):
    text, table_csv = emit_table(report, "methods-sin")
    lines = text.splitlines()
    assert len(lines) == 2 + 3
    assert lines[0].split("|")[1].strip() == "competitor-a"
    assert [l.split("|")[0].strip() for l in lines[2:]] == ["3 iterations", "4 iterations", "5 iterations"]
    rows = list(csv.reader(io.StringIO(table_csv)))
    assert rows[0] == ["variant", "iterations", "function", "mse", "max_abs"]
    assert len(rows) == 1 + 9 and all(r[2] == "sin" for r in rows[1:])
    assert "e-" in rows[1][3]


def test_emit_table_orders_structure(report):
    text, table_csv = emit_table(report, "orders")
    lines = text.splitlines()
    assert len(lines) == 2 + 6
    assert [c.strip() for c in lines[0].split("|")[2:]] == ["Order 5", "Order 4", "Order 3"]
    assert [l.split("|")[1].strip() for l in lines[2:]] == ["sin", "cos"] * 3
    assert len(table_csv.splitlines()) == 1 + 18


def test_emit_table_missing_cell():
    with pytest.raises(CordicError):
        emit_table(ErrorReport(), "methods-cos")
    with pytest.raises(RangeError):
        emit_table(ErrorReport(), "bogus")


def test_curve_rows(report):
    text = emit_curve(Variant.PROPOSED_O3, 4, "sin")
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["theta", "approx", "reference", "difference"]
    assert len(rows) == 513
    assert [float(x) for x in rows[1]] == [0.0, 0.0, 0.0, 0.0]
    assert float(rows[-1][2]) == pytest.approx(math.sin(math.pi / 4), abs=1e-10)
    diff = max(abs(float(r[3])) for r in rows[1:])
    assert diff == pytest.approx(report[(Variant.PROPOSED_O3, 4, "sin")].max_abs, rel=1e-9)


def test_fixed_domain_sweep_close_to_float_bits_rule():
    fixed = run_sweep(SweepConfig(samples=64, variants=(Variant.PROPOSED_O3,), domain="fixed"))
    flt = run_sweep(SweepConfig(samples=64, variants=(Variant.PROPOSED_O3,), rule="bits"))
    for key, cell in fixed.cells.items():
        assert cell.mse == pytest.approx(flt[key].mse, rel=1e-4)


def test_report_csv_lf_only(report):
    text = report.to_csv()
    assert "\r" not in text and text.count("\n") == 1 + len(report.cells)
