"""Exact certification of log-monotonicity and Laguerre inequalities for P-recursive sequences."""

from .ratfunc import NEVER, Poly, RationalFunction, eventual_sign, hold_point
from .recurrence import Recurrence, SequenceCache, apply_scale
from .kernels import IMPLEMENTATION as KERNELS

__version__ = "0.1.0"

__all__ = [
    "NEVER",
    "Poly",
    "RationalFunction",
    "Recurrence",
    "SequenceCache",
    "apply_scale",
    "eventual_sign",
    "hold_point",
    "KERNELS",
    "__version__",
]
