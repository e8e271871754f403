"""Clock-level model of the scale-free CORDIC computation unit.

The unit has four blocks:

* an arctangent ROM with 32 Q2.30 entries ``floor(arctan(2**-k) * 2**30)``;
* an index predictor that picks the closest micro-rotation from the
  leading bits of |Z|;
* a shifting processor that forms c_k*X and s_k*Y as sums of arithmetic
  right shifts (there is no multiplier);
* a three-state FSM (INIT, ITERATE, DONE) driven by an iteration counter.

A run takes ``iterations + 2`` clocks: one to load X0 = 1, Y0 = 0, Z0 = theta,
one per micro-rotation, and one to raise ``done``.  The pipelined model
replicates the ITERATE unit ``stages`` times and feeds one angle per clock.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterable, NamedTuple

from .errors import CordicError, RangeError
from .fixedpoint import ONE, ZERO, Q30Fixed, arithmetic_shift_right
from .refmath import arctan_pow2_floor, scale_factor
from .selector import closest_index_bits
from .variants import ShiftAddForm, Variant, coefficients

ROM_DEPTH = 32
MAX_ITERATIONS = 32
FSM_OVERHEAD = 2
DEFAULT_MIN_INDEX = 1


class Phase(Enum):
    INIT = "INIT"
    ITERATE = "ITERATE"
    DONE = "DONE"


@dataclass(frozen=True)
class RomTable:
    entries: tuple[Q30Fixed, ...]

    @classmethod
    def build(cls) -> "RomTable":
        return cls(tuple(Q30Fixed(arctan_pow2_floor(k)) for k in range(ROM_DEPTH)))

    def __getitem__(self, k: int) -> Q30Fixed:
        return self.entries[k]

    def __len__(self) -> int:
        return len(self.entries)

    def dump(self) -> str:
        return "".join(f"{e.hex()}\n" for e in self.entries)


ROM = RomTable.build()
QUARTER_PI_RAW = ROM[0].raw


@dataclass(frozen=True)
class DatapathState:
    X: Q30Fixed
    Y: Q30Fixed
    Z: Q30Fixed
    phase: Phase
    iteration_counter: int
    cycle_count: int
    iteration_limit: int
    theta: Q30Fixed
    k: int | None = None
    sign: int = 0
    done: bool = False


class TraceRow(NamedTuple):
    cycle: int
    phase: Phase
    k: int | None
    sign: int
    X: Q30Fixed
    Y: Q30Fixed
    Z: Q30Fixed


def trace_csv(rows: Iterable[TraceRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["cycle", "phase", "k", "sign", "X", "Y", "Z"])
    for r in rows:
        w.writerow([r.cycle, r.phase.value, "" if r.k is None else r.k, r.sign, r.X.hex(), r.Y.hex(), r.Z.hex()])
    return buf.getvalue()


def _row(st: DatapathState, phase: Phase) -> TraceRow:
    return TraceRow(st.cycle_count, phase, st.k, st.sign, st.X, st.Y, st.Z)


def predict_index(z_error: Q30Fixed) -> tuple[int, int] | None:
    """(k, sign) of the closest micro-rotation, or None for a zero error."""
    if z_error.raw == 0:
        return None
    return closest_index_bits(z_error), (1 if z_error.raw > 0 else -1)


def shift_add(v: Q30Fixed, form: ShiftAddForm) -> Q30Fixed:
    """form * v using one truncating arithmetic shift per term."""
    acc = ZERO
    for sign, sh in form.terms:
        # shifting a 32-bit word by 31 already leaves only the sign fill
        part = arithmetic_shift_right(v, min(sh, 31))
        acc = acc + part if sign > 0 else acc - part
    return acc


def reset(theta: Q30Fixed, iterations: int) -> DatapathState:
    if not 1 <= iterations <= MAX_ITERATIONS:
        raise RangeError(f"iterations must be in [1, {MAX_ITERATIONS}], got {iterations}")
    if abs(theta.raw) > QUARTER_PI_RAW + 1:
        raise RangeError(f"|theta| = {abs(theta.value)} exceeds pi/4")
    return DatapathState(ZERO, ZERO, ZERO, Phase.INIT, 0, 0, iterations, theta)


def _initial_x(variant: Variant, iterations: int) -> Q30Fixed:
    # the conventional baseline pre-scales X0 by K(n) instead of multiplying at the end
    if variant is Variant.CONVENTIONAL:
        return Q30Fixed.from_real(scale_factor(iterations))
    return ONE


def step_iterative(state: DatapathState, rom: RomTable = ROM, variant: Variant = Variant.PROPOSED_O3,
                   *, min_index: int = DEFAULT_MIN_INDEX) -> DatapathState:
    """One ITERATE clock: predict, read the ROM, shift-add X/Y, update Z."""
    if state.phase is Phase.DONE:
        raise CordicError("cannot step a datapath in the DONE phase")
    if state.phase is not Phase.ITERATE:
        raise CordicError(f"step_iterative needs phase ITERATE, got {state.phase.value}")
    X, Y, Z = state.X, state.Y, state.Z
    if variant is Variant.CONVENTIONAL:
        k = state.iteration_counter
        e = 1 if Z.raw >= 0 else -1
        xs, ys = arithmetic_shift_right(X, k), arithmetic_shift_right(Y, k)
        if e > 0:
            X, Y, Z = X - ys, Y + xs, Z - rom[k]
        else:
            X, Y, Z = X + ys, Y - xs, Z + rom[k]
    else:
        pred = predict_index(Z)
        if pred is None:
            k, e = None, 0
        else:
            k, e = pred
            k = max(k, min_index)
            m = coefficients(variant, k)
            cx, sy = shift_add(X, m.cos_approx), shift_add(Y, m.sin_approx)
            sx, cy = shift_add(X, m.sin_approx), shift_add(Y, m.cos_approx)
            if e > 0:
                X, Y, Z = cx - sy, sx + cy, Z - rom[k]
            else:
                X, Y, Z = cx + sy, cy - sx, Z + rom[k]
    counter = state.iteration_counter + 1
    phase = Phase.DONE if counter >= state.iteration_limit else Phase.ITERATE
    return replace(state, X=X, Y=Y, Z=Z, phase=phase, iteration_counter=counter,
                   cycle_count=state.cycle_count + 1, k=k, sign=e)


def clock(state: DatapathState, rom: RomTable = ROM, variant: Variant = Variant.PROPOSED_O3,
          *, min_index: int = DEFAULT_MIN_INDEX) -> tuple[DatapathState, TraceRow]:
    """Advance the FSM by one clock; returns the new state and its trace row."""
    if state.phase is Phase.INIT:
        new = replace(state, X=_initial_x(variant, state.iteration_limit), Y=ZERO, Z=state.theta,
                      phase=Phase.ITERATE, cycle_count=state.cycle_count + 1, k=None, sign=0)
        return new, _row(new, Phase.INIT)
    if state.phase is Phase.ITERATE:
        new = step_iterative(state, rom, variant, min_index=min_index)
        return new, _row(new, Phase.ITERATE)
    if state.done:
        raise CordicError("datapath already signalled done; reset before clocking again")
    new = replace(state, done=True, cycle_count=state.cycle_count + 1, k=None, sign=0)
    return new, _row(new, Phase.DONE)


class IterativeResult(NamedTuple):
    X: Q30Fixed
    Y: Q30Fixed
    cycles: int


def run_iterative(theta: Q30Fixed, iterations: int, variant: Variant = Variant.PROPOSED_O3, *,
                  rom: RomTable = ROM, min_index: int = DEFAULT_MIN_INDEX,
                  trace: list | None = None) -> IterativeResult:
    """Run one angle through the iterative unit until ``done`` rises."""
    st = reset(theta, iterations)
    while not st.done:
        st, row = clock(st, rom, variant, min_index=min_index)
        if trace is not None:
            trace.append(row)
    return IterativeResult(st.X, st.Y, st.cycle_count)


@dataclass(frozen=True)
class PipelineConfig:
    """``stages`` rolled ITERATE units; the predictor is a single shared block."""

    stages: int = 4
    shared_predictor: bool = True

    def __post_init__(self):
        if self.stages not in (3, 4):
            raise RangeError(f"stages must be 3 or 4, got {self.stages}")

    @property
    def latency(self) -> int:
        return self.stages + FSM_OVERHEAD


@dataclass(frozen=True)
class ThroughputReport:
    latency: int
    total_cycles: int
    results: int
    steady_state_rate: float


def run_pipelined(thetas: Iterable[Q30Fixed], config: PipelineConfig = PipelineConfig(),
                  variant: Variant = Variant.PROPOSED_O3, *, rom: RomTable = ROM,
                  min_index: int = DEFAULT_MIN_INDEX,
                  trace: list | None = None) -> tuple[list[tuple[Q30Fixed, Q30Fixed]], ThroughputReport]:
    """Stream angles through ``config.stages`` pipeline units, one per clock.

    Register slot 0 is the load stage, slots 1..stages the micro-rotation
    units and the last slot the output register.  ``trace`` records the
    first angle's passage.
    """
    pending = list(thetas)
    for t in pending:
        reset(t, config.stages)  # range check before the first clock
    n_slots = config.latency
    slots: list[DatapathState | None] = [None] * n_slots
    outputs: list[tuple[Q30Fixed, Q30Fixed]] = []
    first_out = None
    cycle = 0
    feed = iter(enumerate(pending))
    tracked = None
    while len(outputs) < len(pending):
        cycle += 1
        nxt: list[DatapathState | None] = [None] * n_slots
        # advance from the back so each register takes its predecessor's value
        for i in range(n_slots - 1, 0, -1):
            if slots[i - 1] is not None:
                nxt[i], row = clock(slots[i - 1], rom, variant, min_index=min_index)
                if trace is not None and tracked is not None and slots[i - 1] is tracked:
                    trace.append(row)
                    tracked = nxt[i]
        item = next(feed, None)
        if item is not None:
            idx, theta = item
            nxt[0], row = clock(reset(theta, config.stages), rom, variant, min_index=min_index)
            if trace is not None and idx == 0:
                trace.append(row)
                tracked = nxt[0]
        last = nxt[-1]
        if last is not None and last.done:
            outputs.append((last.X, last.Y))
            nxt[-1] = None
            if first_out is None:
                first_out = cycle
        slots = nxt
    produced = len(outputs)
    if produced > 1:
        rate = (produced - 1) / (cycle - first_out)
    else:
        rate = float(produced)
    return outputs, ThroughputReport(config.latency, cycle, produced, rate)
