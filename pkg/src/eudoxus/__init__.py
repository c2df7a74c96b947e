"""Exact real arithmetic with Eudoxus reals (almost homomorphisms Z -> Z)."""

from .core import (DEFAULT_BUDGET, AlmostHom, Budget, BudgetExceeded, Comparison,
                   EudoxusError, FloorResult, Order, Sign, SignInconclusive, SignResult,
                   add, canonicalize, compare, defect, digits, div, enclose, eu_embed,
                   floor_of, from_oracle, from_rational, mul, neg, nu, recip, refine,
                   sign, sqrt_int, sub, sup_finite)
from .numeric import EMPTY, Interval, rat

__version__ = "0.1.0"
