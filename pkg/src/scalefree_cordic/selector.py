"""Closest elementary-angle selection and greedy angle decomposition.

Two index rules live here:

* :func:`closest_index` rounds log2(1/|theta|), i.e. it picks the power of
  two nearest to |theta| on a logarithmic scale (midpoint sqrt(2) * 2**-i).
* :func:`closest_index_bits` scans the fraction bits for the leading one and
  looks at the bit after it, i.e. it picks the nearest power of two on a
  linear scale (midpoint 1.5 * 2**-i).

They agree except on the band [sqrt(2), 1.5) * 2**-i of every octave;
:func:`compare_index_rules` reports exactly where.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Iterable

from .errors import RangeError
from .fixedpoint import FRAC_BITS, Q30Fixed

MAX_INDEX = 31
QUARTER_PI = math.pi / 4


def closest_index(theta: float) -> int:
    """k = Round(log2(1/|theta|)), halves rounded away from zero, clamped to [0, 31]."""
    a = abs(theta)
    if a == 0 or not math.isfinite(a):
        raise RangeError("closest_index needs a finite non-zero angle")
    v = -math.log2(a)
    k = math.copysign(math.floor(abs(v) + 0.5), v)
    return int(min(max(k, 0), MAX_INDEX))


def closest_index_bits(theta: Q30Fixed) -> int:
    """Leading-one rule on the fraction bits e1 e2 ... (e1 weighs 2**-1).

    At the first set bit e_i the result is i when e_{i+1} = 0 and i - 1
    when e_{i+1} = 1.  The integer bit of the word is treated as e0, so a
    magnitude >= 1 yields 0.
    """
    raw = abs(theta.raw)
    if raw == 0:
        raise RangeError("closest_index_bits needs a non-zero magnitude")
    top = raw.bit_length() - 1  # position of the leading one in the raw word
    i = FRAC_BITS - top
    next_set = top > 0 and (raw >> (top - 1)) & 1
    k = i - 1 if next_set else i
    return min(max(k, 0), MAX_INDEX)


def closest_index_linear(theta: float) -> int:
    """The bit rule applied to a real magnitude (nearest power of two, linear scale)."""
    a = abs(theta)
    if a == 0 or not math.isfinite(a):
        raise RangeError("closest_index_linear needs a finite non-zero angle")
    m, e = math.frexp(a)  # a = m * 2**e, m in [0.5, 1)
    i = 1 - e
    k = i - 1 if m >= 0.75 else i
    return min(max(k, 0), MAX_INDEX)


INDEX_RULES = {
    "log": closest_index,
    "bits": lambda t: closest_index_bits(Q30Fixed.from_real(abs(t))) if abs(t) >= 2.0 ** -FRAC_BITS else MAX_INDEX,
    "linear": closest_index_linear,
}


def index_rule(name: str):
    try:
        return INDEX_RULES[name]
    except KeyError:
        raise RangeError(f"unknown index rule {name!r}; expected one of {sorted(INDEX_RULES)}") from None


@dataclass
class Decomposition:
    steps: list[tuple[int, int]] = field(default_factory=list)
    residual: float = 0.0
    residuals: list[float] = field(default_factory=list)

    def reconstruct(self) -> float:
        """Sum of the applied elementary angles plus the final residual."""
        return math.fsum([sign * math.atan(2.0 ** -k) for k, sign in self.steps] + [self.residual])

    def signed_indices(self) -> list[int]:
        return [sign * k for k, sign in self.steps]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["step", "k", "sign", "residual"])
        for i, ((k, sign), r) in enumerate(zip(self.steps, self.residuals), start=1):
            w.writerow([i, k, sign, f"{r:.10e}"])
        return buf.getvalue()


def decompose(theta: float, max_steps: int, stop_tolerance: float = 0.0,
              *, rule: str = "log", min_index: int = 0) -> Decomposition:
    """Greedy split of ``theta`` into signed elementary angles arctan(2**-k).

    Runs exactly ``max_steps`` steps unless the residual drops to
    ``stop_tolerance`` or below (the default 0 only stops on an exact zero),
    or falls under the smallest elementary angle so far that no step can
    shrink it any more.
    """
    if abs(theta) > QUARTER_PI:
        raise RangeError(f"|theta| = {abs(theta)} exceeds pi/4")
    if max_steps < 1:
        raise RangeError("max_steps must be >= 1")
    pick = index_rule(rule)
    out = Decomposition(residual=theta)
    z = theta
    while len(out.steps) < max_steps and abs(z) > stop_tolerance and z != 0:
        k = max(pick(z), min_index)
        sign = 1 if z > 0 else -1
        nz = z - sign * math.atan(2.0 ** -k)
        if abs(nz) >= abs(z):
            break
        z = nz
        out.steps.append((k, sign))
        out.residuals.append(z)
    out.residual = z
    return out


@dataclass
class IndexRuleReport:
    total: int
    disagreements: list[tuple[int, int, int]]

    @property
    def count(self) -> int:
        return len(self.disagreements)

    def in_band(self) -> bool:
        """True when every disagreement lies in [sqrt(2), 1.5) * 2**-i for its octave."""
        for raw, _, _ in self.disagreements:
            m, _ = math.frexp(raw / 2 ** FRAC_BITS)
            if not (math.sqrt(0.5) <= m < 0.75):
                return False
        return True

    def to_text(self, limit: int = 50) -> str:
        lines = [f"samples: {self.total}", f"disagreements: {self.count}"]
        if self.total:
            lines.append(f"fraction: {self.count / self.total:.6f}")
        lines.append("raw_hex,value,k_log,k_bits")
        for raw, k_log, k_bits in self.disagreements[:limit]:
            lines.append(f"{raw:08X},{raw / 2 ** FRAC_BITS:.12e},{k_log},{k_bits}")
        if self.count > limit:
            lines.append(f"... {self.count - limit} more")
        return "\n".join(lines) + "\n"


def compare_index_rules(raws: Iterable[int]) -> IndexRuleReport:
    """Run both index rules over positive Q30 raw words and list disagreements."""
    total = 0
    bad = []
    for raw in raws:
        raw = int(raw)
        total += 1
        k_bits = closest_index_bits(Q30Fixed(raw))
        k_log = closest_index(raw / 2 ** FRAC_BITS)
        if k_bits != k_log:
            bad.append((raw, k_log, k_bits))
    return IndexRuleReport(total, bad)
