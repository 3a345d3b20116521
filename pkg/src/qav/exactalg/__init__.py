"""Exact arithmetic tower: Q(s), polynomials and rational functions in u,
truncated series, sparse operators and the solvers built on them."""

from fractions import Fraction as BigRat

from .kernels import BACKEND
from .ops import INF_PT, ZERO_PT, Op, OpPoly, OpSeries, SingularOperator
from .poly import PoleAtExpansionPoint, PolyU, RatFun, ratfun_shift_add, ratfun_shift_mul
from .scalar import ONE, QS, ZERO, format_qs, parse_qs, q, qbinom, qfact, qnum, s, sqrt_monomial, to_qs
from .series import (
    ConstantTermNotOne,
    NonSquareConstantTerm,
    TruncSeries,
    series_expand,
    series_functional_sqrt_add,
    series_functional_sqrt_mul,
)
from .solvers import (
    DegreeMismatch,
    NoSolutionUpToDegree,
    default_dmax,
    nullspace,
    solve_drinfeld_additive,
    solve_drinfeld_multiplicative,
    solve_linear,
)

__all__ = [
    "BACKEND", "BigRat", "QS", "ZERO", "ONE", "s", "q", "qnum", "qfact", "qbinom", "to_qs",
    "format_qs", "parse_qs", "sqrt_monomial", "PolyU", "RatFun", "ratfun_shift_add",
    "ratfun_shift_mul", "PoleAtExpansionPoint", "TruncSeries", "series_expand",
    "series_functional_sqrt_mul", "series_functional_sqrt_add", "NonSquareConstantTerm",
    "ConstantTermNotOne", "Op", "OpSeries", "OpPoly", "SingularOperator", "ZERO_PT", "INF_PT",
    "solve_drinfeld_additive", "solve_drinfeld_multiplicative", "NoSolutionUpToDegree",
    "DegreeMismatch", "default_dmax", "nullspace", "solve_linear",
]
