"""Randomized property suites, 100 derandomized cases each."""

from hypothesis import given, settings, strategies as st

from cycletrace.covering import Component, Covering, Scale, trace0
from cycletrace.poly import Poly, RationalFunction, parse_poly
from cycletrace.symprod import verify_newton_relation
from cycletrace.traceforms import RelativeForm, trace_form

from conftest import corpus_family

PROPS = settings(max_examples=100, derandomize=True, deadline=None)

rat = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def poly_in(gens, max_deg=2, max_terms=3):
    """Random polynomials in ``gens`` of total degree <= max_deg."""
    n = len(gens)
    exps = st.lists(st.integers(0, n - 1), max_size=max_deg).map(
        lambda idx: tuple(idx.count(i) for i in range(n)))
    term = st.tuples(exps, st.integers(-3, 3))
    return st.lists(term, max_size=max_terms).map(
        lambda ts: sum((Poly.monomial(e, gens, c) for e, c in ts), Poly.const(0, gens)))


def forms_on(cov, degree, max_deg=2):
    sc = cov.scale
    names = sc.chart + sc.fiber
    keys = st.lists(st.integers(0, len(names) - 1), min_size=degree, max_size=degree,
                    unique=True).map(lambda k: tuple(sorted(k)))
    term = st.tuples(keys, poly_in(sc.ring, max_deg, 2))
    return st.lists(term, min_size=1, max_size=3).map(
        lambda ts: sum((RelativeForm({k: c}, sc.chart, sc.fiber) for k, c in ts),
                       RelativeForm({}, sc.chart, sc.fiber)))


def whitney():
    return corpus_family("whitney").covering


def whitney_with_section():
    cov = whitney()
    sc = cov.scale
    sec = Component("S", 1, ideal=[parse_poly("u - t", sc.ring), parse_poly("v - b", sc.ring)])
    return Covering(sc, [cov.components[0], sec], "whitney+section")


def same_traced(a, b):
    keys = set(a.terms) | set(b.terms)
    for k in keys:
        x, y = a.terms.get(k), b.terms.get(k)
        if x is None:
            x, y = y, x
        if y is None:
            if not x.is_zero():
                return False
        elif not (x - y).is_zero():
            return False
    return True


# Newton relations


@PROPS
@given(st.integers(1, 5).flatmap(
    lambda k: st.tuples(
        st.integers(1, 3).flatmap(lambda p: st.lists(st.tuples(*[rat] * p),
                                                     min_size=k, max_size=k)),
        st.lists(st.integers(1, 4), min_size=k, max_size=k),
        st.integers(k, k + 2))))
def test_newton_relations_vanish(data):
    pts, ws, l = data
    assert verify_newton_relation(pts, ws, l).is_zero()


# trace of a pulled back base function is deg times the function


_PULLBACK_COVERINGS = {
    "whitney": whitney,
    "cone": lambda: corpus_family("cone").covering,
    "whitney+section": whitney_with_section,
}


@PROPS
@given(st.sampled_from(sorted(_PULLBACK_COVERINGS)).flatmap(
    lambda name: st.tuples(st.just(name),
                           poly_in(_PULLBACK_COVERINGS[name]().scale.coeff_vars, 3))))
def test_trace_of_pullback_is_degree_times(data):
    name, phi = data
    cov = _PULLBACK_COVERINGS[name]()
    got = trace0(cov, phi.to_gens(cov.scale.ring))
    want = RationalFunction(phi, None, got.modulus)
    assert got == want * cov.degree()


# weight additivity


@PROPS
@given(forms_on(whitney(), 1), st.tuples(st.integers(1, 4), st.integers(1, 4)),
       st.tuples(st.integers(1, 4), st.integers(1, 4)))
def test_trace_form_additive_in_weights(w, m, n):
    cov = whitney_with_section()
    total = trace_form(cov.with_weights([m[0] + n[0], m[1] + n[1]]), w)
    parts = trace_form(cov.with_weights(list(m)), w) + trace_form(cov.with_weights(list(n)), w)
    assert same_traced(total, parts)


# trace commutes with the relative differential


@PROPS
@given(st.integers(0, 1).flatmap(lambda deg: forms_on(whitney(), deg)))
def test_trace_form_commutes_with_d(w):
    cov = whitney()
    lhs = trace_form(cov, w.d())
    rhs = trace_form(cov, w).d()
    assert same_traced(lhs, rhs)


# composition of traces along a two-stage covering


def _stage_coverings():
    # Y -> S: y^2 - s*y - 1; X -> Y: x^3 - y*x - 1; composite X -> S
    lower = Scale(("s",), [], (), ("y",))
    upper = Scale(("s", "y"), [], (), ("x",))
    full = Scale(("s",), [], (), ("y", "x"))
    g1 = parse_poly("y^2 - s*y - 1", ("s", "y"))
    g2 = parse_poly("x^3 - y*x - 1", ("s", "y", "x"))
    Y = Covering(lower, [Component("Y", 1, ideal=[g1.to_gens(lower.ring)])])
    X = Covering(upper, [Component("X", 1, ideal=[g2.to_gens(upper.ring)])])
    XS = Covering(full, [Component("XS", 1, ideal=[g1.to_gens(full.ring), g2.to_gens(full.ring)])])
    return Y, X, XS


_STAGES = _stage_coverings()


@PROPS
@given(poly_in(("s", "y", "x"), 4, 4))
def test_trace_composition(h):
    Y, X, XS = _STAGES
    inner = trace0(X, h.to_gens(X.scale.ring))
    assert inner.den.is_constant()
    outer = trace0(Y, inner.as_poly().to_gens(Y.scale.ring))
    direct = trace0(XS, h.to_gens(XS.scale.ring))
    assert outer == direct
