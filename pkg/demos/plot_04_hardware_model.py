"""
Clock-level datapath model
==========================

Q2.30 registers, a 32-word arctangent ROM, a leading-bit index predictor
and shift-add coefficient multipliers.
"""

import math

from scalefree_cordic import hwsim
from scalefree_cordic.fixedpoint import from_real
from scalefree_cordic.variants import Variant

print(hwsim.ROM.dump()[:36])

theta = from_real(math.pi / 5)
trace = []
res = hwsim.run_iterative(theta, 4, Variant.PROPOSED_O3, trace=trace)
print(hwsim.trace_csv(trace))
print("cycles", res.cycles, "X", res.X.value, "Y", res.Y.value)

# the same angles through a 4-stage pipeline, one per clock
thetas = [from_real(t / 100) for t in range(1, 78)]
outs, report = hwsim.run_pipelined(thetas, hwsim.PipelineConfig(4))
print(report)
same = all(o == tuple(hwsim.run_iterative(t, 4)[:2]) for o, t in zip(outs, thetas))
print("pipeline matches iterative:", same)
