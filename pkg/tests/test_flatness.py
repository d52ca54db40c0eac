import pytest
from hypothesis import given, settings, strategies as st

from cycletrace.cli.corpus import CORPUS_DIR
from cycletrace.cli.famfile import load_family
from cycletrace.covering import Covering, base_change
from cycletrace.flatness import (
    AGF, CONTINUOUS, NOT_CGF, UNDETERMINED, Family, check_degree_constancy, certify_agf,
    cycle_pullback, weight_search,
)
from cycletrace.poly import Poly, parse_poly

from conftest import corpus_family


def fam(name):
    return corpus_family(name).family


@pytest.mark.parametrize("name,kind", [
    ("whitney", AGF), ("cone", AGF), ("identity", AGF),
    ("c10", CONTINUOUS), ("cusp", CONTINUOUS), ("weights1", NOT_CGF),
])
def test_verdicts(name, kind):
    v = certify_agf(fam(name))
    assert v.kind == kind
    if kind != AGF:
        assert v.witness is not None or v.degrees is not None


def test_verdict_reports_bounds():
    v = certify_agf(fam("whitney"))
    assert v.bounds["form_degree"] == 1
    assert v.bounds["monomial_degree"] == 4


def test_cusp_witness():
    w = certify_agf(fam("cusp")).witness
    assert w.item == "w"
    assert str(w.sigma) == "y/x"
    assert str(w.integrality) == "T^2 - x = 0"


def test_c10_witness_relation():
    w = certify_agf(fam("c10")).witness
    assert w.item == "u*dv"
    assert str(w.sigma) == "x2*z1/x1"
    assert w.integrality.found and w.integrality.degree == 2


def test_weighted_families_certify():
    assert certify_agf(fam("weights1").with_weights({"X1": 3, "X2": 2})).kind == AGF


def test_resource_limit_gives_undetermined(monkeypatch):
    monkeypatch.setenv("CYCLETRACE_MAX_BASIS", "1")
    fresh = load_family(CORPUS_DIR / "c10.fam").family
    v = certify_agf(fresh)
    assert v.kind == UNDETERMINED and v.message


def test_degree_constancy_weights1():
    r = check_degree_constancy(fam("weights1"))
    assert not r.constant
    assert r.degrees == {"S1": 2, "S2": 3}
    r = check_degree_constancy(fam("weights1").with_weights({"X1": 3, "X2": 2}))
    assert r.constant and set(r.degrees.values()) == {6}


def test_weight_search():
    res = weight_search(fam("weights1"))
    assert res.weights == {"X1": 3, "X2": 2} and res.degree == 6
    assert weight_search(fam("weights2")) is None
    assert weight_search(fam("douady")).weights == {"T": 2, "L1": 3, "L2": 3}


def test_weight_search_without_tie():
    f = fam("douady")
    free = Family(f.covering, f.strata, f.junctions, [])
    assert free.ties == [] and weight_search(free).as_tuple() == (1, 1, 2)


def test_weight_search_respects_bound():
    assert weight_search(fam("weights1"), max_weight=2) is None


def test_cycle_pullback_douady():
    cyc = cycle_pullback(fam("douady"), [(1, {"x1": 0, "x2": 0})])
    mult = {p.component: p.multiplicity for p in cyc.parts}
    assert mult == {"T": 3, "L1": 1, "L2": 1}
    weighted = cycle_pullback(fam("douady").with_weights({"T": 2, "L1": 3, "L2": 3}),
                              [(1, {"x1": 0, "x2": 0})])
    assert weighted.degree == 12


def test_cycle_pullback_cone_is_linear():
    f = fam("cone")
    one = cycle_pullback(f, [(1, {"x": 1, "y": 1, "z": 1})])
    two = cycle_pullback(f, [(2, {"x": 1, "y": 1, "z": 1})])
    assert one.degree == 2 and two.degree == 4


def test_monotone_bounds():
    low = certify_agf(fam("whitney"), 1, 2)
    high = certify_agf(fam("whitney"), 1, 4)
    assert low.kind == high.kind == AGF
    assert high.checked >= low.checked


@pytest.mark.parametrize("name", ["whitney", "c10", "cusp"])
@pytest.mark.parametrize("c", [2, 3])
def test_weight_scaling_preserves_verdict(name, c):
    f = fam(name)
    scaled = f.with_weights({comp.name: c * comp.weight for comp in f.covering.components})
    # the default monomial bound grows with the weighted degree; fix it
    bounds = (f.covering.scale.n, 2 * f.covering.degree())
    assert certify_agf(scaled, *bounds).kind == certify_agf(f, *bounds).kind


@settings(max_examples=20, derandomize=True, deadline=None)
@given(st.permutations([0, 1, 2]), st.permutations([0, 1]))
def test_constancy_permutation_invariant(cperm, sperm):
    f = fam("douady").with_weights({"T": 2, "L1": 3, "L2": 3})
    cov = f.covering
    comps = [cov.components[i] for i in cperm]
    strata = [f.strata[i] for i in sperm]
    g = Family(Covering(cov.scale, comps, cov.name), strata, f.junctions, f.ties)
    a, b = check_degree_constancy(f), check_degree_constancy(g)
    assert a.constant == b.constant and a.degrees == b.degrees


def test_base_change_along_line_stays_agf():
    cov = fam("whitney").covering
    gens = ("tau",)
    tau = Poly.var("tau", gens)
    one = Poly.const(1, gens)
    line = base_change(cov, gens, {"a": tau * 2, "b": tau, "c": one * 4})
    assert certify_agf(Family(line)).kind == AGF


def test_c10_relation_follows_from_base_equations():
    # z1^2 = x1*y1 and x2^2 = 4*x1*x3 give (x2*z1/x1)^2 = 4*x3*y1
    from cycletrace.poly import Ideal
    cov = fam("c10").covering
    integ = certify_agf(fam("c10")).witness.integrality
    ring = cov.scale.base + cov.scale.chart + ("T",)
    diff = integ.relation().to_gens(ring) - parse_poly("T^2 - 4*x3*y1", ring)
    base = Ideal([g.to_gens(ring) for g in cov.scale.base_ideal], variables=ring)
    assert base.contains(diff)
    half = integ.relation().to_gens(ring) - parse_poly("T^2 - x3*y1/2", ring)
    assert not base.contains(half)
