"""
Greedy decomposition into elementary angles
===========================================

Each step picks the arctan(2**-k) closest to the remaining angle and
subtracts it with the matching sign.
"""

import math

import numpy as np

from scalefree_cordic import selector

d = selector.decompose(math.pi / 8, 5)
print("signed indices:", d.signed_indices())
print(d.to_csv())

# residual after n steps, worst case over a grid
grid = np.linspace(1e-3, math.pi / 4, 400)
for n in range(1, 8):
    worst = max(abs(selector.decompose(float(t), n).residual) for t in grid)
    print(f"{n} steps: worst residual {worst:.2e}")

# the leading-bit rule uses a linear midpoint, rounded log2 a logarithmic one
t = 1.45 * 2 ** -3
print(selector.closest_index(t), selector.closest_index_linear(t))
