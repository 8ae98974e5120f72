"""Exact desk-scale measurements of congruence counts, product sets and character sums."""

from .arith import PrimeContext, discrete_log, make_context, mod_inverse, mod_pow, mult_order
from .checks import BoundCheck
from .msets import Explicit, GeomProg, Interval, ResidueSet, Subgroup, build_set, product_set

__version__ = "0.1.0"

__all__ = [
    "BoundCheck",
    "Explicit",
    "GeomProg",
    "Interval",
    "PrimeContext",
    "ResidueSet",
    "Subgroup",
    "build_set",
    "discrete_log",
    "make_context",
    "mod_inverse",
    "mod_pow",
    "mult_order",
    "product_set",
]
