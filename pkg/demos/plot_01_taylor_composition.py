"""
Composing Taylor series exactly
===============================

The scale-free micro-rotation for index k uses cos(arctan(x)) and
sin(arctan(x)) at x = 2**-k.  Both series are built here with exact
rational arithmetic and then written as sums of shifts.
"""

from scalefree_cordic.refmath import composed_series, compose_truncate, taylor_series
from scalefree_cordic.variants import ShiftAddForm, Variant, coefficients

# substitute the arctangent series into sin and cos, truncating after each product
atan = taylor_series("arctan", 5)
print("sin(arctan x) =", compose_truncate(taylor_series("sin", 5), atan, 5))
print("cos(arctan x) =", compose_truncate(taylor_series("cos", 5), atan, 5))

# lower truncation orders drop the trailing terms
for order in (3, 4, 5):
    print(order, composed_series("sin", order), "|", composed_series("cos", order))

# at x = 2**-k every coefficient becomes a handful of shifts
for k in (1, 2, 3):
    m = coefficients(Variant.PROPOSED_O5, k)
    print(f"k={k}  c = {m.cos_approx}  s = {m.sin_approx}")

# 3/8 is not a power of two, so it is split into 1/4 + 1/8
print(ShiftAddForm.from_poly(composed_series("cos", 4), 2))
