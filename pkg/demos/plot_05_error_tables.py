"""
Error tables and curves
=======================

Mean squared error over 512 evenly spaced angles in [0, pi/4].
"""

from scalefree_cordic import bench
from scalefree_cordic.variants import Variant

report = bench.run_sweep(bench.SweepConfig())
for layout in bench.LAYOUTS:
    text, _ = bench.emit_table(report, layout)
    print(layout)
    print(text)

# per-angle error of one configuration
curve = bench.emit_curve(Variant.PROPOSED_O3, 4, "sin", samples=9)
print(curve)

# the same sweep on the fixed-point model
fixed = bench.run_sweep(bench.SweepConfig(domain="fixed", variants=bench.METHOD_COLUMNS))
print(bench.emit_table(fixed, "methods-sin")[0])
