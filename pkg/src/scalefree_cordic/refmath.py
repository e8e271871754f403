"""Reference mathematics: exact rational series and double-precision oracles.

The polynomial code works on :class:`fractions.Fraction` coefficients so
the composed expansions of sin(arctan x) and cos(arctan x) come out as
exact rationals, e.g.::

    >>> cos_atan = compose_truncate(taylor_series("cos", 5), taylor_series("arctan", 5), 5)
    >>> cos_atan
    RationalPoly(1 - 1/2*x^2 + 3/8*x^4)
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import CordicError, RangeError

SERIES = ("sin", "cos", "arctan")


class RationalPoly:
    """Polynomial in x with exact rational coefficients, index = degree."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs = tuple(cs)

    @classmethod
    def x(cls) -> "RationalPoly":
        return cls([0, 1])

    @classmethod
    def constant(cls, c) -> "RationalPoly":
        return cls([c])

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self._coeffs) - 1

    def coeff(self, d: int) -> Fraction:
        return self._coeffs[d] if 0 <= d < len(self._coeffs) else Fraction(0)

    def truncate(self, order: int) -> "RationalPoly":
        return RationalPoly(self._coeffs[: order + 1])

    def __eq__(self, other):
        if isinstance(other, RationalPoly):
            return self._coeffs == other._coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self._coeffs)

    def __add__(self, other: "RationalPoly") -> "RationalPoly":
        n = max(len(self._coeffs), len(other._coeffs))
        return RationalPoly(self.coeff(i) + other.coeff(i) for i in range(n))

    def __neg__(self) -> "RationalPoly":
        return RationalPoly(-c for c in self._coeffs)

    def __sub__(self, other: "RationalPoly") -> "RationalPoly":
        return self + (-other)

    def __mul__(self, other) -> "RationalPoly":
        if not isinstance(other, RationalPoly):
            return RationalPoly(c * Fraction(other) for c in self._coeffs)
        return self.mul_truncate(other, None)

    __rmul__ = __mul__

    def mul_truncate(self, other: "RationalPoly", order: int | None) -> "RationalPoly":
        """Product with every term above ``order`` discarded (None keeps all)."""
        if not self._coeffs or not other._coeffs:
            return RationalPoly()
        top = self.degree + other.degree
        if order is not None:
            top = min(top, order)
        out = [Fraction(0)] * (top + 1)
        for i, a in enumerate(self._coeffs):
            if i > top or a == 0:
                continue
            for j, b in enumerate(other._coeffs[: top - i + 1]):
                out[i + j] += a * b
        return RationalPoly(out)

    def __call__(self, x):
        """Horner evaluation; exact for Fraction/int, float otherwise."""
        acc = 0 if isinstance(x, (int, Fraction)) else 0.0
        for c in reversed(self._coeffs):
            acc = acc * x + (c if isinstance(x, (int, Fraction)) else float(c))
        return acc

    def __repr__(self) -> str:
        return f"RationalPoly({self})"

    def __str__(self) -> str:
        terms = []
        for d, c in enumerate(self._coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if d == 0:
                body = str(mag)
            else:
                mono = "x" if d == 1 else f"x^{d}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            if not terms:
                terms.append(body if c > 0 else f"-{body}")
            else:
                terms.append(("+ " if c > 0 else "- ") + body)
        return " ".join(terms) if terms else "0"


def taylor_series(f: str, order: int) -> RationalPoly:
    """Maclaurin polynomial of sin, cos or arctan up to total degree ``order``."""
    if order < 0:
        raise RangeError(f"order must be >= 0, got {order}")
    coeffs = [Fraction(0)] * (order + 1)
    if f == "sin":
        for d in range(1, order + 1, 2):
            coeffs[d] = Fraction((-1) ** (d // 2), math.factorial(d))
    elif f == "cos":
        for d in range(0, order + 1, 2):
            coeffs[d] = Fraction((-1) ** (d // 2), math.factorial(d))
    elif f == "arctan":
        for d in range(1, order + 1, 2):
            coeffs[d] = Fraction((-1) ** (d // 2), d)
    else:
        raise CordicError(f"unknown series {f!r}; expected one of {SERIES}")
    return RationalPoly(coeffs)


def compose_truncate(outer: RationalPoly, inner: RationalPoly, order: int) -> RationalPoly:
    """outer(inner(x)) with all terms of degree > ``order`` dropped.

    Horner's scheme with truncation after every product; this is exact
    because ``inner`` has no constant term, so no dropped term can feed
    back into a lower degree.
    """
    if inner.coeff(0) != 0:
        raise CordicError("inner polynomial must have a zero constant term")
    if order < 0:
        raise RangeError(f"order must be >= 0, got {order}")
    acc = RationalPoly()
    for c in reversed(outer.coeffs):
        acc = acc.mul_truncate(inner, order) + RationalPoly.constant(c)
    return acc.truncate(order)


def composed_series(f: str, order: int) -> RationalPoly:
    """Truncated series of f(arctan x) for f in {sin, cos}."""
    return compose_truncate(taylor_series(f, order), taylor_series("arctan", order), order)


def reference_sincos(theta: float) -> tuple[float, float]:
    if not math.isfinite(theta):
        raise RangeError(f"theta must be finite, got {theta}")
    return math.cos(theta), math.sin(theta)


def scale_factor(n: int) -> float:
    """Conventional CORDIC gain compensation prod_{k<n} 1/sqrt(1 + 2**-2k)."""
    if n < 1:
        raise RangeError(f"n must be >= 1, got {n}")
    # product of the exact gains first, one rounding for the square root
    gain = math.prod(1.0 + 4.0 ** -k for k in range(n))
    return 1.0 / math.sqrt(gain)


@dataclass(frozen=True)
class RotationMatrix2:
    """General 2x2 matrix [[a, b], [c, d]]."""

    a: float
    b: float
    c: float
    d: float

    @classmethod
    def rotation(cls, theta: float) -> "RotationMatrix2":
        co, si = math.cos(theta), math.sin(theta)
        return cls(co, -si, si, co)

    @classmethod
    def micro(cls, c: float, s: float, sign: int = 1) -> "RotationMatrix2":
        """Approximate micro-rotation [[c, -sign*s], [sign*s, c]]."""
        return cls(c, -sign * s, sign * s, c)

    def __matmul__(self, other: "RotationMatrix2") -> "RotationMatrix2":
        return RotationMatrix2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def apply(self, x: float, y: float) -> tuple[float, float]:
        return self.a * x + self.b * y, self.c * x + self.d * y

    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    def entries(self) -> tuple[float, float, float, float]:
        return self.a, self.b, self.c, self.d


def _arctan_inv_scaled(m: int, bits: int) -> int:
    """arctan(1/m) * 2**bits via the alternating series, error below ~terms units."""
    one = 1 << bits
    total = 0
    power = one // m  # 2**bits / m**(2n+1)
    m2 = m * m
    n = 0
    while power:
        term = power // (2 * n + 1)
        total += -term if n % 2 else term
        power //= m2
        n += 1
    return total


def arctan_pow2_floor(k: int, frac_bits: int = 30) -> int:
    """floor(arctan(2**-k) * 2**frac_bits) computed in exact integer arithmetic."""
    if k < 0:
        raise RangeError(f"k must be >= 0, got {k}")
    guard = 64
    bits = frac_bits + guard
    if k == 0:
        # Machin: pi/4 = 4 arctan(1/5) - arctan(1/239)
        scaled = 4 * _arctan_inv_scaled(5, bits) - _arctan_inv_scaled(239, bits)
    else:
        scaled = _arctan_inv_scaled(1 << k, bits)
    return scaled >> guard


def first_omitted_term_bound(k: int, order: int) -> float:
    """Magnitude of the first dropped term of the composed series at x = 2**-k.

    The composed series of cos(arctan x) and sin(arctan x) are alternating
    binomial series in x**2 with shrinking terms for x <= 1, so the truncation error is bounded
    by the first omitted non-zero term.
    """
    x = 2.0 ** -k
    # exact expansions: cos(atan x) = (1+x^2)^-1/2, sin(atan x) = x (1+x^2)^-1/2
    terms = _binomial_half_terms(order + 2)
    cos_next = next(abs(t) * x ** d for d, t in terms if d > order)
    sin_next = next(abs(t) * x ** (d + 1) for d, t in terms if d + 1 > order)
    return max(cos_next, sin_next)


def _binomial_half_terms(upto: int) -> Sequence[tuple[int, Fraction]]:
    """Coefficients of (1 + x^2)^(-1/2) as (degree, coefficient) pairs."""
    out = []
    coef = Fraction(1)
    j = 0
    while 2 * j <= upto + 2:
        out.append((2 * j, coef))
        coef *= Fraction(-(2 * j + 1), 2 * (j + 1))
        j += 1
    return out
