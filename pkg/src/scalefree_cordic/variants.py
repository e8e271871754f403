"""Micro-rotation coefficients per approximation scheme.

Every scale-free scheme replaces the exact micro-rotation by
``[[c_k, -s_k], [s_k, c_k]]`` where ``c_k`` and ``s_k`` approximate
cos(arctan 2**-k) and sin(arctan 2**-k) by short sums of signed powers of
two.  The proposed schemes take their coefficients from the truncated
composition of the sin/cos series with the arctan series; the two
competitor schemes substitute 2**-k for the angle directly and differ only
in the cubic sine term.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from . import refmath
from .errors import CordicError, RangeError

MAX_INDEX = 31


class Variant(Enum):
    CONVENTIONAL = "conventional"
    COMPETITOR_A = "competitor-a"
    COMPETITOR_B = "competitor-b"
    PROPOSED_O3 = "proposed-o3"
    PROPOSED_O4 = "proposed-o4"
    PROPOSED_O5 = "proposed-o5"

    @property
    def description(self) -> str:
        return _DESCRIPTIONS[self]

    @property
    def is_scalefree(self) -> bool:
        return self is not Variant.CONVENTIONAL

    @property
    def order(self) -> int | None:
        """Truncation degree of the composed series, proposed schemes only."""
        return _ORDERS.get(self)

    @classmethod
    def parse(cls, text: str) -> "Variant":
        key = text.strip().lower().replace("_", "-")
        for v in cls:
            if v.value == key:
                return v
        raise CordicError(f"unknown variant {text!r}; expected one of {[v.value for v in cls]}")


VariantSpec = Variant

_ORDERS = {Variant.PROPOSED_O3: 3, Variant.PROPOSED_O4: 4, Variant.PROPOSED_O5: 5}

_DESCRIPTIONS = {
    Variant.CONVENTIONAL: "x' = x - e 2^-k y, y' = y + e 2^-k x, gain compensated by K(n)",
    Variant.COMPETITOR_A: "c = 1 - 2^(-2k-1), s = 2^-k - 2^(-3k-3)",
    Variant.COMPETITOR_B: "c = 1 - 2^(-2k-1), s = 2^-k - 2^(-3k-2)",
    Variant.PROPOSED_O3: "c = 1 - 2^(-2k-1), s = 2^-k - 2^(-3k-1)",
    Variant.PROPOSED_O4: "c = 1 - 2^(-2k-1) + 3*2^(-4k-3), s = 2^-k - 2^(-3k-1)",
    Variant.PROPOSED_O5: "c = 1 - 2^(-2k-1) + 3*2^(-4k-3), s = 2^-k - 2^(-3k-1) + 3*2^(-5k-3)",
}


@dataclass(frozen=True)
class ShiftAddForm:
    """Sum of signed powers of two: sum(sign * 2**-shift for sign, shift in terms)."""

    terms: tuple[tuple[int, int], ...]

    def __post_init__(self):
        shifts = [sh for _, sh in self.terms]
        if len(set(shifts)) != len(shifts):
            raise CordicError(f"duplicate shifts in {self.terms}; use ShiftAddForm.normalized")
        for sign, sh in self.terms:
            if sign not in (1, -1) or sh < 0:
                raise CordicError(f"bad term ({sign}, {sh})")

    @classmethod
    def normalized(cls, terms) -> "ShiftAddForm":
        """Merge terms sharing a shift, carrying pairs up one position."""
        counts: dict[int, int] = {}
        for sign, sh in terms:
            counts[sh] = counts.get(sh, 0) + sign
        changed = True
        while changed:
            changed = False
            for sh in sorted(counts, reverse=True):
                n = counts[sh]
                if abs(n) >= 2 and sh > 0:
                    carry = int(math.copysign(abs(n) // 2, n))
                    counts[sh] = n - 2 * carry
                    counts[sh - 1] = counts.get(sh - 1, 0) + carry
                    changed = True
        out = []
        for sh in sorted(counts):
            n = counts[sh]
            out.extend([(1 if n > 0 else -1, sh)] * abs(n))
        if len({sh for _, sh in out}) != len(out):
            raise CordicError(f"cannot normalize {terms}: coefficient reaches 2")
        return cls(tuple(out))

    @classmethod
    def from_poly(cls, poly: refmath.RationalPoly, k: int) -> "ShiftAddForm":
        """Evaluate ``poly`` at x = 2**-k as a shift-add sum.

        Each coefficient must be a dyadic rational; a numerator such as 3 is
        split along its binary digits (3 * 2**-m -> 2**-(m-1) + 2**-m).
        """
        terms = []
        for d, c in enumerate(poly.coeffs):
            if c == 0:
                continue
            den = c.denominator
            if den & (den - 1):
                raise CordicError(f"coefficient {c} of x^{d} is not dyadic")
            q = den.bit_length() - 1
            sign = 1 if c > 0 else -1
            num = abs(c.numerator)
            for b in range(num.bit_length()):
                if num >> b & 1:
                    shift = d * k + q - b
                    if shift < 0:
                        raise CordicError(f"term {c}*x^{d} exceeds the word at k={k}")
                    terms.append((sign, shift))
        return cls.normalized(terms)

    def exact(self) -> Fraction:
        return sum((Fraction(sign, 1 << sh) for sign, sh in self.terms), Fraction(0))

    def value(self) -> float:
        return float(self.exact())

    def __str__(self) -> str:
        parts = []
        for i, (sign, sh) in enumerate(self.terms):
            op = ("-" if sign < 0 else "") if i == 0 else (" - " if sign < 0 else " + ")
            parts.append(f"{op}2^-{sh}")
        return "".join(parts) or "0"


@dataclass(frozen=True)
class MicroRotation:
    k: int
    angle: float
    cos_approx: ShiftAddForm
    sin_approx: ShiftAddForm

    @property
    def c(self) -> float:
        return self.cos_approx.value()

    @property
    def s(self) -> float:
        return self.sin_approx.value()


def _check_index(k: int) -> None:
    if not 0 <= k <= MAX_INDEX:
        raise RangeError(f"micro-rotation index {k} outside [0, {MAX_INDEX}]")


@lru_cache(maxsize=None)
def coefficients(variant: Variant, k: int) -> MicroRotation:
    """Approximate (cos, sin) of arctan(2**-k) for a scale-free scheme."""
    _check_index(k)
    if variant is Variant.CONVENTIONAL:
        raise CordicError("conventional CORDIC has no coefficient approximation; its gain is folded into K")
    if variant.order is not None:
        cos_form = ShiftAddForm.from_poly(refmath.composed_series("cos", variant.order), k)
        sin_form = ShiftAddForm.from_poly(refmath.composed_series("sin", variant.order), k)
    else:
        cubic = 3 if variant is Variant.COMPETITOR_A else 2
        cos_form = ShiftAddForm.normalized([(1, 0), (-1, 2 * k + 1)])
        sin_form = ShiftAddForm.normalized([(1, k), (-1, 3 * k + cubic)])
    return MicroRotation(k, math.atan(2.0 ** -k), cos_form, sin_form)


def scalefree_variants() -> list[Variant]:
    return [v for v in Variant if v.is_scalefree]


def describe_variants() -> str:
    """One line per scheme; used by the ``list-variants`` command."""
    width = max(len(v.value) for v in Variant)
    return "\n".join(f"{v.value:<{width}}  {v.description}" for v in Variant) + "\n"
