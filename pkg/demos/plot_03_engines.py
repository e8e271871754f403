"""
Conventional and scale-free rotation
====================================

The conventional loop needs a final gain correction and one iteration per
bit.  The scale-free loop rotates by approximate (cos, sin) pairs and needs
no correction.
"""

import math

import numpy as np

from scalefree_cordic import engine
from scalefree_cordic.variants import Variant

theta = math.pi / 6
print("reference", math.cos(theta), math.sin(theta))
for n in (8, 16, 32):
    print("conventional", n, engine.run_conventional(theta, n))
for v in (Variant.COMPETITOR_A, Variant.COMPETITOR_B, Variant.PROPOSED_O3, Variant.PROPOSED_O5):
    print(v.value, engine.run_scalefree(theta, 4, v))

# trajectory: index, sign and residual angle per step
for state, k, sign in engine.scalefree_trajectory(theta, 4, Variant.PROPOSED_O5):
    print(k, sign, f"{state.z:+.3e}")

# the order-3 pair shrinks the vector a little at each step
grid = np.linspace(0, math.pi / 4, 256)
radius = [math.hypot(*engine.run_scalefree(float(t), 4, Variant.PROPOSED_O3)) for t in grid]
print("order-3 radius range", min(radius), max(radius))

# any angle goes through octant reduction first
print(engine.sincos(2.5, 32, Variant.CONVENTIONAL), (math.cos(2.5), math.sin(2.5)))
