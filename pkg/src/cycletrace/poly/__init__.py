"""Exact polynomial kernel: polynomials, Groebner bases, rational functions
on base varieties, finite quotient algebras and regularity tests."""

from .groebner import DivisionOracle, Ideal, resource_limits
from .orders import GREVLEX, LEX, Order
from .parse import parse_poly, parse_ratfunc
from .polynomial import Poly, poly_vars, to_q
from .quotient import FunctionField, QuotientAlgebra, RationalField
from .ratfunc import RationalFunction, as_ratfunc
from .regularity import (
    Decomposition,
    Integrality,
    Regularity,
    integral_dependence,
    is_regular_on,
    simplify_fraction,
)


def groebner(generators, order="grevlex", variables=None):
    """Ideal value carrying the reduced Groebner basis for ``order``."""
    ideal = Ideal(generators, order, variables)
    ideal.basis
    return ideal


def normal_form(p, ideal):
    return ideal.normal_form(p)


__all__ = [
    "Decomposition", "DivisionOracle", "FunctionField", "GREVLEX", "Ideal",
    "Integrality", "LEX", "Order", "Poly", "QuotientAlgebra", "RationalField",
    "RationalFunction", "Regularity", "as_ratfunc", "groebner",
    "integral_dependence", "is_regular_on", "normal_form", "parse_poly",
    "parse_ratfunc", "poly_vars", "resource_limits", "simplify_fraction", "to_q",
]
