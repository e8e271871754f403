"""Error sweeps over [0, pi/4] and the table/curve renderers built on them."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from . import engine, hwsim
from .errors import CordicError, RangeError
from .fixedpoint import Q30Fixed
from .refmath import reference_sincos
from .variants import Variant

FUNCTIONS = ("sin", "cos")
LAYOUTS = ("methods-cos", "methods-sin", "orders")
METHOD_COLUMNS = (Variant.COMPETITOR_A, Variant.COMPETITOR_B, Variant.PROPOSED_O3)
ORDER_COLUMNS = (Variant.PROPOSED_O5, Variant.PROPOSED_O4, Variant.PROPOSED_O3)


@dataclass
class SweepConfig:
    samples: int = 512
    iteration_counts: tuple[int, ...] = (3, 4, 5)
    variants: tuple[Variant, ...] = tuple(v for v in Variant if v.is_scalefree)
    domain: str = "float"
    lo: float = 0.0
    hi: float = math.pi / 4
    rule: str = "log"
    min_index: int = engine.DEFAULT_MIN_INDEX
    keep_series: bool = False

    def __post_init__(self):
        if self.samples < 2:
            raise RangeError("a sweep needs at least 2 samples")
        if self.domain not in ("float", "fixed"):
            raise RangeError(f"domain must be 'float' or 'fixed', got {self.domain!r}")
        self.iteration_counts = tuple(self.iteration_counts)
        self.variants = tuple(self.variants)

    def grid(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.samples)


@dataclass
class ErrorCell:
    mse: float
    max_abs: float
    errors: np.ndarray | None = None


@dataclass
class ErrorReport:
    cells: dict[tuple[Variant, int, str], ErrorCell] = field(default_factory=dict)
    samples: int = 0

    def __getitem__(self, key: tuple[Variant, int, str]) -> ErrorCell:
        try:
            return self.cells[key]
        except KeyError:
            v, n, f = key
            raise CordicError(f"report has no cell for {v.value}, {n} iterations, {f}") from None

    def mse(self, variant: Variant, n: int, fn: str) -> float:
        return self[(variant, n, fn)].mse

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["variant", "iterations", "function", "mse", "max_abs"])
        for (v, n, f), cell in sorted(self.cells.items(), key=lambda kv: (kv[0][0].value, kv[0][1], kv[0][2])):
            w.writerow([v.value, n, f, f"{cell.mse:.6e}", f"{cell.max_abs:.6e}"])
        return buf.getvalue()


def evaluate(theta: float, variant: Variant, iterations: int, *, domain: str = "float",
             rule: str = "log", min_index: int = engine.DEFAULT_MIN_INDEX) -> tuple[float, float]:
    """(cos, sin) estimate for one angle in [0, pi/4]."""
    if domain == "fixed":
        res = hwsim.run_iterative(Q30Fixed.from_real(theta), iterations, variant, min_index=min_index)
        return res.X.value, res.Y.value
    if variant is Variant.CONVENTIONAL:
        return engine.run_conventional(theta, iterations)
    return engine.run_scalefree(theta, iterations, variant, rule=rule, min_index=min_index)


def _cell(errors: np.ndarray, keep: bool) -> ErrorCell:
    # fsum makes the mean independent of evaluation order
    mse = math.fsum((errors * errors).tolist()) / errors.size
    return ErrorCell(mse, float(np.max(np.abs(errors))), errors if keep else None)


def run_sweep(config: SweepConfig) -> ErrorReport:
    grid = config.grid()
    ref = np.array([reference_sincos(float(t)) for t in grid])
    report = ErrorReport(samples=config.samples)
    for v in config.variants:
        for n in config.iteration_counts:
            est = np.array([evaluate(float(t), v, n, domain=config.domain, rule=config.rule,
                                     min_index=config.min_index) for t in grid])
            report.cells[(v, n, "cos")] = _cell(est[:, 0] - ref[:, 0], config.keep_series)
            report.cells[(v, n, "sin")] = _cell(est[:, 1] - ref[:, 1], config.keep_series)
    return report


def layout_cells(layout: str, counts=(3, 4, 5)) -> list[tuple[Variant, int, str]]:
    """Cells a layout needs, in rendering order."""
    if layout == "methods-cos":
        return [(v, n, "cos") for n in counts for v in METHOD_COLUMNS]
    if layout == "methods-sin":
        return [(v, n, "sin") for n in counts for v in METHOD_COLUMNS]
    if layout == "orders":
        return [(v, n, f) for n in counts for f in FUNCTIONS for v in ORDER_COLUMNS]
    raise RangeError(f"unknown layout {layout!r}; expected one of {LAYOUTS}")


def emit_table(report: ErrorReport, layout: str, counts=(3, 4, 5)) -> tuple[str, str]:
    """Render a table in the row/column order of the reference comparison.

    Returns (text, csv).  The CSV lists the rendered cells with columns
    variant, iterations, function, mse, max_abs.
    """
    cells = layout_cells(layout, counts)
    for key in cells:
        report[key]  # raises on a missing cell

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["variant", "iterations", "function", "mse", "max_abs"])
    for v, n, f in cells:
        c = report[(v, n, f)]
        w.writerow([v.value, n, f, f"{c.mse:.6e}", f"{c.max_abs:.6e}"])

    if layout == "orders":
        head = ["", "", "Order 5", "Order 4", "Order 3"]
        rows = []
        for n in counts:
            for i, f in enumerate(FUNCTIONS):
                label = f"{n} iterations" if i == 0 else ""
                rows.append([label, f] + [f"{report.mse(v, n, f):.4e}" for v in ORDER_COLUMNS])
    else:
        f = layout.split("-")[1]
        head = [""] + [v.value for v in METHOD_COLUMNS]
        rows = [[f"{n} iterations"] + [f"{report.mse(v, n, f):.4e}" for v in METHOD_COLUMNS] for n in counts]
    widths = [max(len(r[i]) for r in [head] + rows) for i in range(len(head))]
    lines = [" | ".join(c.ljust(wd) for c, wd in zip(r, widths)).rstrip() for r in [head] + rows]
    lines.insert(1, "-+-".join("-" * wd for wd in widths))
    return "\n".join(lines) + "\n", buf.getvalue()


def emit_curve(variant: Variant, iterations: int, function: str, *, samples: int = 512,
               domain: str = "float", rule: str = "log",
               min_index: int = engine.DEFAULT_MIN_INDEX) -> str:
    """CSV rows theta, approx, reference, difference over the sweep grid."""
    if function not in FUNCTIONS:
        raise RangeError(f"function must be 'sin' or 'cos', got {function!r}")
    col = 1 if function == "sin" else 0
    grid = SweepConfig(samples=samples).grid()
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["theta", "approx", "reference", "difference"])
    for t in grid:
        t = float(t)
        approx = evaluate(t, variant, iterations, domain=domain, rule=rule, min_index=min_index)[col]
        ref = reference_sincos(t)[col]
        w.writerow([f"{t:.10e}", f"{approx:.10e}", f"{ref:.10e}", f"{approx - ref:.10e}"])
    return buf.getvalue()
