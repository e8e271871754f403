"""Float-domain rotation-mode circular CORDIC.

``run_conventional`` is the textbook recurrence with sequential indices and
a final multiplication by K(n).  ``run_scalefree`` applies approximate
micro-rotation matrices chosen dynamically from the residual angle and
needs no compensation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from . import selector
from .errors import RangeError
from .refmath import scale_factor
from .variants import Variant, coefficients

QUARTER_PI = math.pi / 4
MAX_CONVENTIONAL_ITERATIONS = 32
MAX_SCALEFREE_ITERATIONS = 16

# Index 0 turns the composed Taylor polynomials into c = s = 0.5 (gain 0.71),
# so the scale-free schemes never rotate by arctan(1).
DEFAULT_MIN_INDEX = 1


@dataclass
class CordicState:
    x: float
    y: float
    z: float


def _check_angle(theta: float) -> None:
    if not math.isfinite(theta) or abs(theta) > QUARTER_PI:
        raise RangeError(f"|theta| must be <= pi/4 after reduction, got {theta}")


def conventional_trajectory(theta: float, iterations: int, x0: float = 1.0, y0: float = 0.0) -> list[CordicState]:
    """Uncompensated states (x_j, y_j, z_j) for j = 0..iterations."""
    _check_angle(theta)
    if not 1 <= iterations <= MAX_CONVENTIONAL_ITERATIONS:
        raise RangeError(f"iterations must be in [1, {MAX_CONVENTIONAL_ITERATIONS}], got {iterations}")
    st = CordicState(x0, y0, theta)
    out = [st]
    for k in range(iterations):
        e = 1.0 if st.z >= 0 else -1.0
        t = 2.0 ** -k
        st = CordicState(st.x - e * t * st.y, st.y + e * t * st.x, st.z - e * math.atan(t))
        out.append(st)
    return out


def run_conventional(theta: float, iterations: int) -> tuple[float, float]:
    """(cos, sin) of ``theta`` from ``iterations`` shift-add steps and a K(n) multiply."""
    last = conventional_trajectory(theta, iterations)[-1]
    K = scale_factor(iterations)
    return K * last.x, K * last.y


def scalefree_trajectory(theta: float, iterations: int, variant: Variant, *,
                         rule: str = "log", min_index: int = DEFAULT_MIN_INDEX,
                         x0: float = 1.0, y0: float = 0.0) -> list[tuple[CordicState, int | None, int]]:
    """States after each step, with the (k, sign) used; k is None for a skipped step."""
    _check_angle(theta)
    if not variant.is_scalefree:
        raise RangeError("run_scalefree needs a scale-free variant")
    if not 1 <= iterations <= MAX_SCALEFREE_ITERATIONS:
        raise RangeError(f"iterations must be in [1, {MAX_SCALEFREE_ITERATIONS}], got {iterations}")
    pick = selector.index_rule(rule)
    x, y, z = x0, y0, theta
    out = [(CordicState(x, y, z), None, 0)]
    for _ in range(iterations):
        if z == 0:
            out.append((CordicState(x, y, z), None, 0))
            continue
        k = max(pick(z), min_index)
        e = 1 if z > 0 else -1
        m = coefficients(variant, k)
        c, s = m.c, m.s
        x, y = c * x - e * s * y, e * s * x + c * y
        z -= e * m.angle
        out.append((CordicState(x, y, z), k, e))
    return out


def run_scalefree(theta: float, iterations: int, variant: Variant, *,
                  rule: str = "log", min_index: int = DEFAULT_MIN_INDEX) -> tuple[float, float]:
    """(cos, sin) of ``theta`` with no gain compensation."""
    st = scalefree_trajectory(theta, iterations, variant, rule=rule, min_index=min_index)[-1][0]
    return st.x, st.y


def run(theta: float, iterations: int, variant: Variant, **kw) -> tuple[float, float]:
    """Dispatch on the variant."""
    if variant is Variant.CONVENTIONAL:
        return run_conventional(theta, iterations)
    return run_scalefree(theta, iterations, variant, **kw)


class Reduction(NamedTuple):
    reduced: float
    octant: int

    def reconstruct(self, c: float, s: float) -> tuple[float, float]:
        return reconstruct(self.octant, c, s)


def reduce_argument(theta: float) -> Reduction:
    """Fold ``theta`` into [0, pi/4] and record its octant of the circle."""
    if not math.isfinite(theta):
        raise RangeError(f"theta must be finite, got {theta}")
    t = math.fmod(theta, 2 * math.pi)
    if t < 0:
        t += 2 * math.pi
    octant = min(int(t // QUARTER_PI), 7)
    r = t - octant * QUARTER_PI
    reduced = QUARTER_PI - r if octant % 2 else r
    return Reduction(min(max(reduced, 0.0), QUARTER_PI), octant)


# (swap, cos sign, sin sign) per octant, applied to (cos, sin) of the reduced angle
_OCTANT_RULES = (
    (False, 1, 1),
    (True, 1, 1),
    (True, -1, 1),
    (False, -1, 1),
    (False, -1, -1),
    (True, -1, -1),
    (True, 1, -1),
    (False, 1, -1),
)


def reconstruct(octant: int, c: float, s: float) -> tuple[float, float]:
    swap, sc, ss = _OCTANT_RULES[octant]
    if swap:
        c, s = s, c
    return sc * c, ss * s


def sincos(theta: float, iterations: int, variant: Variant, **kw) -> tuple[float, float]:
    """Full-circle (cos, sin) via reduction, the chosen engine and reconstruction."""
    red = reduce_argument(theta)
    c, s = run(red.reduced, iterations, variant, **kw)
    return red.reconstruct(c, s)
