"""Scale-free CORDIC with composed-Taylor micro-rotations.

Submodules:

``fixedpoint``  Q2.30 hardware words
``refmath``     exact rational series, reference sin/cos, scale factor
``variants``    micro-rotation coefficients per scheme
``selector``    closest-index rules and greedy decomposition
``engine``      float conventional and scale-free CORDIC
``hwsim``       bit-exact iterative and pipelined datapath model
``bench``       error sweeps, tables and curves
"""
from .engine import reduce_argument, run_conventional, run_scalefree, sincos
from .errors import CordicError, FixedOverflowError, RangeError
from .fixedpoint import Q30Fixed
from .variants import Variant, coefficients

__all__ = [
    "CordicError",
    "FixedOverflowError",
    "Q30Fixed",
    "RangeError",
    "Variant",
    "coefficients",
    "reduce_argument",
    "run_conventional",
    "run_scalefree",
    "sincos",
]
__version__ = "0.1.0"
