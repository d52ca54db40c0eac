"""The bundled corpus: family files plus expected.json.

expected.json maps an item name to {"file": ..., "checks": [...]}; each
check has an ``op`` (degree, trace, classify, check, fibers, constancy,
weights, residue, pullback) and the fields that op needs.  Items run in
file order and every check yields one report row.
"""

import json
from pathlib import Path

from ..covering import classifying_map, fiber_count, trace0
from ..errors import CycleTraceError
from ..flatness import certify_agf, check_degree_constancy, cycle_pullback, weight_search
from ..fundclass import trace_via_class
from ..poly import Ideal, Poly, parse_poly, parse_ratfunc
from ..poly.polynomial import to_q
from ..traceforms import parse_form, trace_form
from .famfile import load_family
from .report import show

CORPUS_DIR = Path(__file__).resolve().parent.parent / "corpus"


def _point(d):
    return {k: to_q(str(v)) for k, v in d.items()}


def _same(r, text, cov, params=False):
    """Is the computed value r equal to the expression ``text`` on the base?"""
    sc = cov.scale
    e = parse_ratfunc(text, sc.base + sc.chart + sc.params)
    if params:
        e = cov.to_params(e)
        return r == e
    if not hasattr(r, "modulus"):
        return e.with_modulus(None) == r
    return r == e.with_modulus(r.modulus)


def _same_form(t, text, cov, params=False):
    sc = cov.scale
    e = parse_form(text, sc.chart, (), sc.base, sc.params)
    keys = set(t.terms) | set(e.terms)
    for k in keys:
        got = t.terms.get(k)
        want = e.terms.get(k)
        if want is None:
            want = Poly.const(0, sc.base + sc.chart)
        if got is None:
            if not (want.is_zero() if isinstance(want, Poly) else want.is_zero()):
                return False
            continue
        if not _same(got, str(want), cov, params):
            return False
    return True


def _relation_matches(integ, text, cov):
    """Monic relations agree modulo the base ideal."""
    if integ is None or not integ.found:
        return False
    sc = cov.scale
    var = integ.variable
    ring = sc.base + sc.chart + (var,)
    got = integ.relation().to_gens(ring) if integ.relation().gens else integ.relation()
    want = parse_poly(text, ring)
    diff = got - want
    if not sc.base_ideal:
        return diff.is_zero()
    ideal = Ideal([g.to_gens(ring) for g in sc.base_ideal], variables=ring)
    return ideal.contains(diff.to_gens(ring))


def run_check(desc, chk, seed=0):
    """(passed, got) for one check."""
    cov = desc.covering
    fam = desc.family
    op = chk["op"]
    if op == "degree":
        got = cov.degree()
        return got == chk["expect"], got
    if op == "trace":
        routes = chk.get("routes", ["auto"])
        sc = cov.scale
        w = parse_form(chk["input"], sc.chart, sc.fiber, sc.base)
        ok, shown = True, None
        for route in routes:
            params = route == "branches" and bool(sc.params)
            if w.degree() == 0:
                c = w.terms.get((), Poly.const(0, sc.ring))
                r = trace0(cov, c, route)
                ok = ok and _same(r, chk["expect"], cov, params)
                shown = shown or show(r)[0]
            else:
                t = trace_form(cov, w, route)
                ok = ok and _same_form(t, chk["expect"], cov, params)
                if shown is None:
                    from ..traceforms import simplify_form
                    shown = str(simplify_form(t))
        return ok, shown
    if op == "classify":
        cm = classifying_map(cov, chk.get("degree"))
        exps = parse_poly(chk["input"], cov.scale.fiber)
        (a,) = exps.terms
        got = {"trace": show(cm.traces[a])[0], "regular": bool(cm.regular[a])}
        ok = got["regular"] == chk["regular"]
        if "expect" in chk:
            ok = ok and _same(cm.traces[a], chk["expect"], cov)
        return ok, got
    if op == "check":
        v = certify_agf(fam, chk.get("form_degree"), chk.get("monomial_degree"), seed=seed)
        got = {"verdict": v.kind}
        ok = v.kind == chk["expect"]
        w = v.witness
        if w is not None:
            got["item"] = w.item
            got["sigma"] = str(w.sigma) if w.sigma is not None else None
            got["integrality"] = str(w.integrality) if w.integrality is not None else None
        if "item" in chk:
            ok = ok and w is not None and w.item == chk["item"]
        if "sigma" in chk:
            ok = ok and w is not None and w.sigma is not None and _same(w.sigma, chk["sigma"], cov)
        if "relation" in chk:
            ok = ok and w is not None and _relation_matches(w.integrality, chk["relation"], cov)
        return ok, got
    if op == "fibers":
        fc = fiber_count(cov, _point(chk["point"]), seed=seed)
        got = {"with_multiplicity": fc.with_multiplicity, "distinct": fc.distinct}
        want = {k: chk[k] for k in ("with_multiplicity", "distinct") if k in chk}
        return all(got[k] == v for k, v in want.items()), got
    if op == "constancy":
        f = fam.with_weights(chk["weights"]) if "weights" in chk else fam
        rep = check_degree_constancy(f, seed=seed)
        got = {"constant": rep.constant, "degrees": rep.degrees}
        ok = rep.constant == chk["expect"]
        if "degree" in chk:
            ok = ok and set(rep.degrees.values()) == {chk["degree"]}
        return ok, got
    if op == "weights":
        res = weight_search(fam, chk.get("max_weight", 6), seed=seed)
        if chk["expect"] is None:
            return res is None, None if res is None else res.weights
        ok = res is not None and res.weights == chk["expect"]
        if ok and "degree" in chk:
            ok = res.degree == chk["degree"]
        return ok, None if res is None else {"weights": res.weights, "degree": res.degree}
    if op == "residue":
        h = parse_poly(chk["input"], cov.scale.ring)
        r = trace_via_class(cov, h)
        return _same(r, chk["expect"], cov), show(r)[0]
    if op == "pullback":
        cyc = cycle_pullback(fam, [(chk.get("weight", 1), _point(chk["point"]))], seed=seed)
        return cyc.degree == chk["degree"], cyc.degree
    raise CycleTraceError(f"unknown corpus check {op!r}")


def load_expected(directory=None):
    d = Path(directory) if directory else CORPUS_DIR
    with open(d / "expected.json", encoding="utf-8") as fh:
        return d, json.load(fh)


def run_corpus(rep, directory=None, only=None, seed=0):
    d, expected = load_expected(directory)
    total = passed = 0
    for name, item in expected.items():
        if only and name not in only:
            continue
        try:
            desc = load_family(d / item["file"])
        except CycleTraceError as exc:
            rep.row(item=name, check="load", ok=False, error=str(exc))
            total += 1
            continue
        for chk in item["checks"]:
            total += 1
            label = chk.get("input") or chk.get("label")
            try:
                ok, got = run_check(desc, chk, seed)
            except (CycleTraceError, ValueError) as exc:
                ok, got = False, f"error: {exc}"
            passed += bool(ok)
            rep.row(item=name, check=chk["op"], input=label, ok=bool(ok), got=got)
    rep.summary(passed=passed, total=total)
    return passed == total
