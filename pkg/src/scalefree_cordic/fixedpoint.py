"""Signed 32-bit Q2.30 fixed-point words.

The word layout is 1 sign bit, 1 integer bit and 30 fraction bits, so the
representable range is [-2, 2 - 2**-30].  Quantization truncates toward
negative infinity and addition wraps like a two's-complement adder; both
choices reproduce the arctangent ROM constants of the hardware unit
(``0x3243F6A8`` for pi/4, ``0x0000003F`` for arctan(2**-24)).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Real

from .errors import FixedOverflowError, RangeError

WIDTH = 32
FRAC_BITS = 30
SCALE = 1 << FRAC_BITS
_MASK = (1 << WIDTH) - 1
_MIN_RAW = -(1 << (WIDTH - 1))
_MAX_RAW = (1 << (WIDTH - 1)) - 1


def _wrap(raw: int) -> int:
    raw &= _MASK
    if raw & (1 << (WIDTH - 1)):
        raw -= 1 << WIDTH
    return raw


@dataclass(frozen=True)
class Q30Fixed:
    """A hardware word; ``raw`` is the signed 32-bit integer, value = raw / 2**30."""

    raw: int

    def __post_init__(self):
        if not isinstance(self.raw, int):
            raise TypeError(f"raw must be int, got {type(self.raw).__name__}")
        if not _MIN_RAW <= self.raw <= _MAX_RAW:
            raise RangeError(f"raw {self.raw} outside signed 32-bit range")

    @classmethod
    def from_real(cls, v: Real) -> "Q30Fixed":
        """Quantize by floor(v * 2**30).

        ``v`` may be a float, int or ``fractions.Fraction``; scaling by a
        power of two is exact for all of them, so the only rounding is the
        final floor.
        """
        if isinstance(v, float) and not math.isfinite(v):
            raise FixedOverflowError(f"cannot quantize non-finite value {v}")
        if not -2 <= v < 2:
            raise FixedOverflowError(f"{v} outside the Q2.30 range [-2, 2)")
        return cls(math.floor(v * SCALE))

    @classmethod
    def from_bits(cls, word: int) -> "Q30Fixed":
        """Build from an unsigned 32-bit pattern such as ``0xFFFFFF00``."""
        if not 0 <= word <= _MASK:
            raise RangeError(f"bit pattern {word:#x} wider than 32 bits")
        return cls(_wrap(word))

    @property
    def value(self) -> float:
        return self.raw / SCALE

    @property
    def bits(self) -> int:
        """Unsigned two's-complement bit pattern."""
        return self.raw & _MASK

    def hex(self) -> str:
        return f"{self.bits:08X}"

    def __neg__(self) -> "Q30Fixed":
        return Q30Fixed(_wrap(-self.raw))

    def __add__(self, other: "Q30Fixed") -> "Q30Fixed":
        return add(self, other)

    def __sub__(self, other: "Q30Fixed") -> "Q30Fixed":
        return sub(self, other)

    def __rshift__(self, amount: int) -> "Q30Fixed":
        return arithmetic_shift_right(self, amount)

    def __repr__(self) -> str:
        return f"Q30Fixed(0x{self.hex()} = {self.value!r})"


ZERO = Q30Fixed(0)
ONE = Q30Fixed(SCALE)


def from_real(v: Real) -> Q30Fixed:
    return Q30Fixed.from_real(v)


def arithmetic_shift_right(v: Q30Fixed, amount: int) -> Q30Fixed:
    """Shift right, replicating the sign bit into the vacated positions."""
    if not 0 <= amount <= WIDTH - 1:
        raise RangeError(f"shift amount {amount} outside [0, 31]")
    # Python's >> on negative ints is already floor division, i.e. sign fill.
    return Q30Fixed(v.raw >> amount)


def add_wrapped(a: Q30Fixed, b: Q30Fixed) -> tuple[Q30Fixed, bool]:
    """Two's-complement sum plus a flag telling whether the adder wrapped."""
    exact = a.raw + b.raw
    result = _wrap(exact)
    return Q30Fixed(result), result != exact


def sub_wrapped(a: Q30Fixed, b: Q30Fixed) -> tuple[Q30Fixed, bool]:
    exact = a.raw - b.raw
    result = _wrap(exact)
    return Q30Fixed(result), result != exact


def add(a: Q30Fixed, b: Q30Fixed) -> Q30Fixed:
    return add_wrapped(a, b)[0]


def sub(a: Q30Fixed, b: Q30Fixed) -> Q30Fixed:
    return sub_wrapped(a, b)[0]


def negate(v: Q30Fixed) -> Q30Fixed:
    return -v
