import os
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from cycletrace.errors import NotFiniteError, ParseError, ResourceLimitError
from cycletrace.poly import (
    DivisionOracle, Ideal, Poly, QuotientAlgebra, RationalFunction, groebner,
    integral_dependence, is_regular_on, normal_form, parse_poly, parse_ratfunc,
    simplify_fraction, to_q,
)

XY = ("x", "y")
XYZ = ("x", "y", "z")

PROPS = settings(max_examples=100, derandomize=True, deadline=None)


def P(text, gens=XYZ):
    return parse_poly(text, gens)


def polys(gens=XY, max_terms=4, max_deg=3):
    n = len(gens)
    term = st.tuples(st.tuples(*[st.integers(0, max_deg)] * n), st.integers(-4, 4))
    return st.lists(term, max_size=max_terms).map(
        lambda ts: sum((Poly.monomial(e, gens, c) for e, c in ts), Poly.const(0, gens)))


# arithmetic and printing


def test_arithmetic_basics():
    x, y = Poly.var("x", XY), Poly.var("y", XY)
    p = (x + y) ** 2
    assert p == x ** 2 + 2 * x * y + y ** 2
    assert (p - p).is_zero()
    assert p.degree() == 2
    assert p.diff("x") == 2 * x + 2 * y
    assert p.evaluate({"x": 1, "y": 2}) == 9


def test_rational_coefficients_exact():
    p = P("1/3*x - 1/3*x")
    assert p.is_zero()
    q = P("x/2 + x/2")
    assert q == P("x")
    assert to_q("3/6") == Fraction(1, 2)


def test_subs_and_to_gens():
    p = P("x^2 + y*z")
    q = p.subs({"x": P("y + 1")})
    assert q == P("y^2 + 2*y + 1 + y*z")
    assert p.to_gens(("z", "y", "x")).to_gens(XYZ) == p


def test_exact_division():
    a = P("x^2 - y^2")
    assert a.exact_div(P("x - y")) == P("x + y")


def test_parse_errors_carry_column():
    with pytest.raises(ParseError) as exc:
        parse_poly("x + * y", XY)
    assert exc.value.column is not None
    with pytest.raises(ParseError):
        parse_poly("x + q", XY)
    with pytest.raises(ParseError):
        parse_poly("(x + y", XY)


def test_ratfunc_normalizes_content():
    r = parse_ratfunc("(2*x^2 - 2*y^2)/(4*x - 4*y)", XY)
    assert r == parse_ratfunc("(x + y)/2", XY)
    assert (r - r).is_zero()


@PROPS
@given(polys(), polys())
def test_ring_axioms(a, b):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) * (a - b) == a * a - b * b


@PROPS
@given(polys(XYZ))
def test_print_parse_round_trip(p):
    assert parse_poly(str(p), XYZ) == p


@PROPS
@given(polys(), polys().filter(lambda q: not q.is_zero()))
def test_ratfunc_print_parse_round_trip(a, b):
    r = RationalFunction(a, b)
    assert parse_ratfunc(str(r), XY) == r


# Groebner bases


def test_normal_form_in_grevlex():
    # a^2 is not the leading term of a^2 - c*b^2 in grevlex (c*b^2 is)
    I = groebner([P("a^2 - c*b^2", ("a", "b", "c"))])
    a2 = parse_poly("a^2", ("a", "b", "c"))
    assert normal_form(a2, I) == a2
    assert I.contains(parse_poly("a^3 - a*c*b^2", ("a", "b", "c")))


def test_lex_elimination():
    I = Ideal([P("x - y^2"), P("y - z^2")], "lex", XYZ)
    elim = I.elimination(("z",))
    assert [str(g) for g in elim] == [] or all(g.used_vars() <= {"z"} for g in elim)
    assert I.contains(P("x - z^4"))


def test_unit_ideal():
    I = Ideal([P("x*y - 1"), P("x")])
    assert I.is_unit()


def _sympy_basis(gens, order):
    syms = sympy.symbols(" ".join(XYZ))
    exprs = [sympy.sympify(str(g).replace("^", "**"), locals=dict(zip(XYZ, syms))) for g in gens]
    G = sympy.groebner(exprs, *syms, order=order)
    return sorted(str(sympy.Poly(g, *syms).monic().as_expr()) for g in G.exprs)


def _our_basis(gens, order):
    syms = sympy.symbols(" ".join(XYZ))
    I = Ideal(gens, order, XYZ)
    out = []
    for b in I.basis:
        e = sympy.sympify(str(b).replace("^", "**"), locals=dict(zip(XYZ, syms)))
        out.append(str(sympy.Poly(e, *syms).monic().as_expr()))
    return sorted(out)


@pytest.mark.parametrize("order", ["grevlex", "lex"])
@pytest.mark.parametrize("gens", [
    ["x^2 + y*z - 1", "x*y - z^2", "y^2 - x*z + 2"],
    ["x^3 - 2*x*y", "x^2*y - 2*y^2 + x"],
    ["u^2".replace("u", "x") + " - z", "x*y - z", "y^2 - x"],
])
def test_groebner_matches_sympy(gens, order):
    ps = [P(g) for g in gens]
    assert _our_basis(ps, order) == _sympy_basis(ps, order)


@PROPS
@given(polys(XY, 3, 2), polys(XY, 3, 2), polys(XY, 4, 4))
def test_normal_form_idempotent(f, g, p):
    I = Ideal([f + Poly.var("x", XY) ** 3, g + Poly.var("y", XY) ** 3], variables=XY)
    r = I.normal_form(p)
    assert I.normal_form(r) == r


@PROPS
@given(polys(XY, 3, 2).filter(lambda f: not f.is_constant()), polys(XY, 3, 3))
def test_membership_principal(f, p):
    I = Ideal([f], variables=XY)
    assert I.contains(f * p)
    nf = I.normal_form(p)
    if nf.is_zero():
        assert p.exact_div(f) * f == p


def test_resource_limit_from_environment(monkeypatch):
    monkeypatch.setenv("CYCLETRACE_MAX_BASIS", "2")
    with pytest.raises(ResourceLimitError):
        Ideal([P("x^2 + y*z - 1"), P("x*y - z^2"), P("y^2 - x*z + 2")]).basis
    monkeypatch.delenv("CYCLETRACE_MAX_BASIS")
    assert Ideal([P("x^2 + y*z - 1"), P("x*y - z^2")]).basis


# quotient algebras


def test_quotient_algebra_traces():
    qa = QuotientAlgebra([P("x^2 - 2", XY), P("y^2 - 3", XY)], XY)
    assert qa.dim == 4
    assert qa.trace(qa.element(P("x^2", XY))) == 8
    assert qa.trace(qa.element(P("x*y", XY))) == 0
    inv = qa.inverse(qa.element(P("x", XY)))
    assert qa.mul(inv, qa.element(P("x", XY))) == qa.element(Poly.const(1, XY))


def test_quotient_algebra_matrices_commute():
    qa = QuotientAlgebra([P("x^2 - y*z"), P("y^2 - x*z"), P("z^2 - x*y - 1")], XYZ)
    from cycletrace.poly.linalg import matmul
    mats = [qa.var_matrix(v) for v in XYZ]
    for a in mats:
        for b in mats:
            assert matmul(a, b) == matmul(b, a)


def test_quotient_algebra_over_function_field():
    ring = ("u", "s")
    qa = QuotientAlgebra([parse_poly("u^2 - s", ring)], ("u",), ("s",))
    assert qa.dim == 2
    t = qa.trace(qa.element(parse_poly("u^2", ring)))
    assert t == parse_ratfunc("2*s", ("s",))


def test_not_finite():
    with pytest.raises(NotFiniteError):
        QuotientAlgebra([P("x*y", XY)], XY)


# regularity and integrality


def test_regular_witness_on_cone():
    base = ("x", "y", "z")
    I = Ideal([P("x*y - z^2")], variables=base)
    r = RationalFunction(P("z^2"), P("x"), I)
    reg = is_regular_on(r)
    assert reg.regular
    assert I.normal_form(reg.witness * P("x") - P("z^2")).is_zero()


def test_irregular_cusp():
    gens = ("x", "y")
    I = Ideal([parse_poly("x^3 - y^2", gens)], variables=gens)
    r = RationalFunction(parse_poly("y", gens), parse_poly("x", gens), I)
    assert not is_regular_on(r).regular
    integ = integral_dependence(r)
    assert integ.found and integ.degree == 2
    assert integ.relation() == parse_poly("T^2 - x", ("T", "x", "y"))


def test_simplify_fraction():
    gens = ("x", "y")
    r = parse_ratfunc("(x^2 + y)/x", gens)
    dec = simplify_fraction(r)
    assert dec.polynomial == parse_poly("x", gens)
    assert dec.fraction == parse_ratfunc("y/x", gens)


def test_integral_dependence_absent():
    gens = ("x", "y")
    r = parse_ratfunc("1/x", gens)
    assert not integral_dependence(r).found


def test_division_oracle():
    base = ("x", "y", "z")
    I = Ideal([P("x*y - z^2")], variables=base)
    o = DivisionOracle(I, P("x"))
    assert o.quotient(P("z^2")) is not None
    assert o.quotient(P("z")) is None


@PROPS
@given(polys(XYZ, 3, 2), st.sampled_from(["x", "y", "z", "x + z"]))
def test_regularity_witness_property(q, den):
    I = Ideal([P("x*y - z^2")], variables=XYZ)
    d = P(den)
    r = RationalFunction(q * d, d, I)
    reg = is_regular_on(r)
    assert reg.regular
    assert I.normal_form(r.num - reg.witness * r.den).is_zero()
