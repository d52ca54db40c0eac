import pytest
from hypothesis import given, settings, strategies as st

from cycletrace.covering import _monomials, trace0
from cycletrace.errors import NotZeroDimensional
from cycletrace.fundclass import (
    cech_leray, grothendieck_residue, jacobian, koszul_shift, residue_setup, trace_via_class,
)
from cycletrace.poly import Poly, parse_poly, parse_ratfunc

from conftest import corpus_family

XY = ("x", "y")
PROPS = settings(max_examples=100, derandomize=True, deadline=None)


def P(text, gens=XY):
    return parse_poly(text, gens)


def small_polys(gens=XY, max_deg=3):
    n = len(gens)
    term = st.tuples(st.tuples(*[st.integers(0, max_deg)] * n), st.integers(-3, 3))
    return st.lists(term, max_size=4).map(
        lambda ts: sum((Poly.monomial(e, gens, c) for e, c in ts), Poly.const(0, gens)))


def test_cech_leray_numerators():
    g = ("u", "v", "x", "y")
    c = cech_leray([parse_poly("u^2 - x", g), parse_poly("v^2 - y", g)], ("u", "v"))
    assert str(c.numerator) == "4*u*v*du^dv"
    assert c.p == 2
    assert c.jacobian == parse_poly("4*u*v", g)
    (one,) = [parse_poly("x^2 - t", ("x", "t"))]
    assert str(cech_leray([one], ("x",)).numerator) == "2*x*dx"


def test_jacobian():
    assert jacobian([P("x^2"), P("x*y")], XY) == P("2*x^2")


@pytest.mark.parametrize("a,b", [(i, j) for i in range(4) for j in range(3)])
def test_monomial_residue_base_cases(a, b):
    # Res[x^a y^b dx dy / (x^3 y^2)] is the coefficient of x^2 y
    h = Poly.monomial((a, b), XY)
    want = 1 if (a, b) == (2, 1) else 0
    assert grothendieck_residue(h, [P("x^3"), P("y^2")], XY) == want


def test_residue_sums_over_points():
    g = ("x",)
    f = [parse_poly("x^2 - x", g)]
    assert grothendieck_residue(Poly.const(1, g), f, g) == 0
    assert grothendieck_residue(parse_poly("x", g), f, g) == 1


def test_residue_with_parameters():
    g = ("x", "s")
    r = grothendieck_residue(parse_poly("x^3", g), [parse_poly("x^2 - s", g)], ("x",), ("s",))
    assert r == parse_ratfunc("s", ("s",))


def test_not_zero_dimensional():
    with pytest.raises(NotZeroDimensional):
        grothendieck_residue(Poly.const(1, XY), [P("x*y"), P("x^2")], XY)


def test_needs_square_system():
    with pytest.raises(ValueError):
        residue_setup([P("x^2")], XY)


@PROPS
@given(small_polys(), small_polys())
def test_residue_vanishes_on_ideal(a, b):
    f = [P("x^2 - y - 1"), P("y^2 + x*y - 2")]
    setup = residue_setup(f, XY)
    h = a * f[0] + b * f[1]
    assert setup.residue(h) == 0


@PROPS
@given(small_polys(), small_polys(max_deg=2), st.integers(0, 1))
def test_koszul_lifts_agree(h, q, i):
    f = [P("x^2 - y - 1"), P("y^2 + x*y - 2")]
    setup = residue_setup(f, XY)
    A = setup.lift()
    B = koszul_shift(setup, A, i, 0, 1, q)
    assert setup.residue(h, A) == setup.residue(h, B)


@pytest.mark.parametrize("a", [a for d in range(5) for a in _monomials(2, d)])
def test_trace_via_class_matches_branch_sum_on_cone(a):
    cov = corpus_family("cone").covering
    h = Poly.monomial(a, cov.scale.ring[-2:]).to_gens(cov.scale.ring)
    via = trace_via_class(cov, h)
    oracle = trace0(cov, h, "branches")
    # the oracle lives on the parameter plane; compare there
    assert cov.to_params(via.with_modulus(None)) == oracle


@pytest.mark.parametrize("a", [a for d in range(4) for a in _monomials(2, d)])
def test_trace_via_class_matches_algebra_on_whitney(a):
    cov = corpus_family("whitney").covering
    h = Poly.monomial(a, cov.scale.fiber).to_gens(cov.scale.ring)
    via = trace_via_class(cov, h)
    assert via == trace0(cov, h, "algebra")


def test_trace_via_class_needs_presentation():
    with pytest.raises(ValueError):
        trace_via_class(corpus_family("cusp").covering, "w")
