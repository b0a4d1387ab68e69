"""ratdec: exact decomposition of univariate polynomials and rational
functions over Q, GF(p) and their quadratic extensions, with Mobius
fixing-group computation and theorem-checking reports."""

from ._kernels import BACKEND as KERNEL_BACKEND
from .field import (FieldCtx, FieldElement, PrimeField, QuadExtField,
                    RationalField, arith, characteristic, make_field)
from .poly import BiPoly, Poly, compose_poly, poly_arith, resultant_eliminate
from .ratfunc import (INF, Infinity, Mobius, ProjPoint, RatFunc, apply_mobius,
                      compose, degree, eval_proj, make_ratfunc, mobius_arith,
                      mobius_from_three_points, mobius_order)
from .roots import nth_roots_of_unity, roots_in_field

__version__ = "0.1.0"

__all__ = [
    "FieldCtx", "FieldElement", "RationalField", "PrimeField", "QuadExtField",
    "make_field", "characteristic", "arith",
    "Poly", "BiPoly", "poly_arith", "compose_poly", "resultant_eliminate",
    "RatFunc", "Mobius", "Infinity", "INF", "ProjPoint",
    "make_ratfunc", "degree", "compose", "mobius_arith", "mobius_order",
    "apply_mobius", "eval_proj", "mobius_from_three_points",
    "roots_in_field", "nth_roots_of_unity",
    "KERNEL_BACKEND", "__version__",
]
