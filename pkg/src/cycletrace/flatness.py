"""Geometric flatness of weighted families.

A family is a weighted covering together with optional sample data: strata
(sample points on the components of the base, where the weighted fiber
degree is compared), junctions (points where several strata meet, where
the limit cycles coming from each stratum must agree) and ties (components
forced to carry the same weight).

Analytic flatness is certified by regularity of traced Newton data up to
degree bounds; integrality of an irregular coefficient is the evidence
used for continuity.
"""

import random
from dataclasses import dataclass, field

from .covering import (Covering, _fill_point, _monomials, component_trace, degree_at,
                       fiber_algebra, same_base)
from .errors import CycleTraceError, NotFiniteError, ResourceLimitError
from .poly import Ideal, Poly, RationalFunction, integral_dependence, is_regular_on
from .poly import simplify_fraction
from .poly import univariate as uni
from .traceforms import component_trace_form, format_form, monomial_form, monomial_forms

AGF = "AGF_certified"
CONTINUOUS = "ContinuousOnly_evidence"
NOT_CGF = "NotCGF_evidence"
UNDETERMINED = "Undetermined"


@dataclass
class SamplePoint:
    name: str
    point: dict


@dataclass
class Junction:
    name: str
    point: dict
    strata: tuple            # names of the strata meeting there


@dataclass
class Family:
    covering: Covering
    strata: list = field(default_factory=list)
    junctions: list = field(default_factory=list)
    ties: list = field(default_factory=list)         # tuples of component names

    @property
    def name(self):
        return self.covering.name

    def with_weights(self, weights):
        return Family(self.covering.with_weights(weights), self.strata, self.junctions,
                      self.ties)

    def stratum(self, name):
        for s in self.strata:
            if s.name == name:
                return s
        raise KeyError(name)


def as_family(obj):
    return obj if isinstance(obj, Family) else Family(obj)


# degrees over strata


def degree_table(family, seed=0):
    """{stratum name: [unweighted degree of each component at its sample]}."""
    cov = family.covering
    table = {}
    for s in family.strata:
        if not s.point:
            raise ValueError(f"stratum {s.name!r} has no sample point")
        pt = _fill_point(cov, s.point, seed)
        table[s.name] = [degree_at(cov, c, pt) for c in cov.components]
    return table


@dataclass
class DegreeReport:
    constant: bool
    degrees: dict            # stratum -> weighted degree
    table: dict              # stratum -> unweighted per-component degrees
    junctions: dict          # junction -> bool (limit cycles agree)

    def __bool__(self):
        return self.constant


def _junction_data(family, seed=0):
    """For every junction: per stratum, exponent vectors of each component's
    fiber over the junction point in a gcd-free basis of characteristic
    polynomials of one random linear form."""
    cov = family.covering
    fiber = cov.scale.fiber
    table = degree_table(family, seed)
    rng = random.Random(seed)
    out = {}
    for j in family.junctions:
        pt = _fill_point(cov, j.point, seed)
        ell = sum((Poly.var(v, fiber) * rng.randint(1, 1000) for v in fiber),
                  Poly.const(0, fiber))
        charpolys = {}
        for i, c in enumerate(cov.components):
            if not any(table[s][i] for s in j.strata):
                continue
            qa = fiber_algebra(cov, c, pt)
            charpolys[i] = qa.charpoly(ell) if qa is not None and qa.dim else [1]
        basis = uni.gcd_free_basis(list(charpolys.values()))
        vecs = {i: [uni.multiplicity(b, cp) for b in basis] for i, cp in charpolys.items()}
        sides = []
        for s in j.strata:
            sides.append([(i, vecs[i]) for i in vecs if table[s][i]])
        out[j.name] = (sides, len(basis))
    return table, out


def _junction_ok(sides, nbasis, weights):
    cycles = []
    for side in sides:
        acc = [0] * nbasis
        for i, v in side:
            acc = [a + weights[i] * x for a, x in zip(acc, v)]
        cycles.append(acc)
    return all(c == cycles[0] for c in cycles)


def check_degree_constancy(family, seed=0):
    """Weighted fiber degree at every stratum sample, and agreement of the
    limit cycles at every junction."""
    family = as_family(family)
    cov = family.covering
    weights = [c.weight for c in cov.components]
    table, jdata = _junction_data(family, seed)
    degrees = {s: sum(w * d for w, d in zip(weights, row)) for s, row in table.items()}
    junctions = {name: _junction_ok(sides, nb, weights) for name, (sides, nb) in jdata.items()}
    constant = len(set(degrees.values())) <= 1 and all(junctions.values())
    return DegreeReport(constant, degrees, table, junctions)


# weight search


@dataclass
class WeightAssignment:
    weights: dict            # component name -> weight
    degree: int              # common weighted degree
    degrees: dict            # stratum -> weighted degree

    def as_tuple(self):
        return tuple(self.weights.values())


def _compositions(total, parts, top):
    if parts == 1:
        if 1 <= total <= top:
            yield (total,)
        return
    for first in range(1, min(top, total - parts + 1) + 1):
        for rest in _compositions(total - first, parts - 1, top):
            yield (first,) + rest


def weight_search(family, max_weight=6, seed=0):
    """Smallest positive weights (by total weight, then lexicographically)
    making the weighted degree constant over the strata and the limit
    cycles agree at the junctions.  Returns None if no weights up to
    ``max_weight`` work."""
    family = as_family(family)
    cov = family.covering
    if not family.strata:
        raise ValueError("weight search needs at least one stratum")
    names = [c.name for c in cov.components]
    table, jdata = _junction_data(family, seed)
    ties = [[names.index(n) for n in tie] for tie in family.ties]
    m = len(names)
    for total in range(m, m * max_weight + 1):
        for w in _compositions(total, m, max_weight):
            if any(len({w[i] for i in tie}) > 1 for tie in ties):
                continue
            degs = {s: sum(a * d for a, d in zip(w, row)) for s, row in table.items()}
            if len(set(degs.values())) > 1:
                continue
            if not all(_junction_ok(sides, nb, w) for sides, nb in jdata.values()):
                continue
            return WeightAssignment(dict(zip(names, w)), next(iter(degs.values())), degs)
    return None


# certification


@dataclass
class Witness:
    item: str                       # the traced function or form
    component: str                  # base component (group of components)
    key: tuple                      # dt indices of the offending coefficient
    coefficient: object             # RationalFunction
    polynomial: Poly = None         # regular part
    sigma: object = None            # fractional part
    integrality: object = None      # Integrality


@dataclass
class Verdict:
    kind: str
    witness: Witness = None
    bounds: dict = field(default_factory=dict)
    checked: int = 0
    message: str = ""
    degrees: DegreeReport = None

    @property
    def ok(self):
        return self.kind == AGF


def _groups(cov):
    """Components grouped by the base component they lie over."""
    groups = []
    for c in cov.components:
        mod = cov.base_modulus(c)
        for g in groups:
            if same_base(g[0], mod):
                g[1].append(c)
                break
        else:
            groups.append((mod, [c]))
    return groups


def _group_name(comps):
    return "+".join(c.name for c in comps)


def _sum(values):
    total = None
    for v in values:
        total = v if total is None else total + v
    return total


def _items(cov, mono_bound, form_bound):
    sc = cov.scale
    for d in range(mono_bound + 1):
        for a in _monomials(sc.p, d):
            yield Poly.monomial(a, sc.fiber), None
    for r in range(1, min(form_bound, sc.p, sc.n) + 1):
        for a, J in monomial_forms(cov, mono_bound, r):
            yield None, monomial_form(cov, a, J)


def _traced(cov, comps, h, w):
    """{dt key: coefficient} of the weighted trace over one base component."""
    if w is None:
        return {(): _sum(component_trace(cov, c, h) * c.weight for c in comps)}
    t = _sum(component_trace_form(cov, c, w) * c.weight for c in comps)
    return dict(t.terms)


def _witness(item, group, key, r, max_degree):
    dec = simplify_fraction(r)
    sigma = dec.fraction if dec.denominator.degree() <= r.den.degree() else r
    integ = integral_dependence(sigma, max_degree=max_degree)
    return Witness(item, group, key, r, dec.polynomial if sigma is not r else None,
                   sigma, integ)


def _glue(values, intersections):
    """Regular functions on base components agree on their intersections?"""
    for (i, j), ideal in intersections.items():
        if i in values and j in values:
            diff = (values[i] - values[j]).to_gens(ideal.ring)
            if not ideal.contains(diff):
                return False
    return True


def certify_agf(family, form_degree_bound=None, monomial_degree_bound=None,
                integrality_degree=4, seed=0):
    """Certify analytic geometric flatness up to degree bounds.

    Traces of all fiber monomials of degree <= monomial bound (default 2k)
    and of all forms x^I dx^J with 1 <= |J| <= form bound (default n) are
    computed over each base component.  All regular (and agreeing where
    base components meet): AGF_certified.  An irregular coefficient that is
    integral over the base: ContinuousOnly_evidence.  An irregular one with
    no integral dependence relation within the search bounds:
    NotCGF_evidence.  The first failure in enumeration order is reported.
    """
    family = as_family(family)
    cov = family.covering
    sc = cov.scale
    bounds = {}
    try:
        k = cov.degree()
        if family.strata:
            rep = check_degree_constancy(family, seed)
            if rep.degrees:
                k = max(rep.degrees.values())
        else:
            rep = None
        mono = 2 * k if monomial_degree_bound is None else monomial_degree_bound
        forms = sc.n if form_degree_bound is None else form_degree_bound
        bounds = {"form_degree": forms, "monomial_degree": mono,
                  "integrality_degree": integrality_degree}
        if rep is not None and not rep.constant:
            bad = [j for j, ok in rep.junctions.items() if not ok]
            if len(set(rep.degrees.values())) > 1 or not bad:
                msg = "weighted fiber degree is not constant over the strata"
            else:
                msg = f"limit cycles disagree at junction(s) {', '.join(bad)}"
            return Verdict(NOT_CGF, None, bounds, 0, msg, rep)
        groups = _groups(cov)
        intersections = {}
        for i in range(len(groups)):
            for j in range(i + 1, len(groups)):
                mi, mj = groups[i][0], groups[j][0]
                gens = (list(mi.generators) if mi else []) + (list(mj.generators) if mj else [])
                intersections[(i, j)] = Ideal(gens, variables=sc.coeff_vars)
        first_cont = None
        checked = 0
        for h, w in _items(cov, mono, forms):
            item = str(h) if w is None else format_form(w)
            values = {}
            for gi, (mod, comps) in enumerate(groups):
                coeffs = _traced(cov, comps, h, w)
                for key in sorted(coeffs, key=lambda kk: (len(kk), kk)):
                    r = coeffs[key]
                    checked += 1
                    if not isinstance(r, RationalFunction):
                        r = RationalFunction(Poly.const(r, sc.coeff_vars))
                    reg = is_regular_on(r)
                    if reg.regular:
                        if w is None:
                            values[gi] = reg.witness
                        continue
                    wit = _witness(item, _group_name(comps), key, r, integrality_degree)
                    if not wit.integrality.found:
                        return Verdict(NOT_CGF, wit, bounds, checked,
                                       "irregular trace coefficient with no integral "
                                       "dependence relation within the bounds", rep)
                    if first_cont is None:
                        first_cont = wit
            if w is None and len(groups) > 1 and not _glue(values, intersections):
                return Verdict(NOT_CGF, Witness(item, "", (), None), bounds, checked,
                               "traces over base components disagree where they meet", rep)
        if first_cont is not None:
            return Verdict(CONTINUOUS, first_cont, bounds, checked,
                           "irregular but integral trace coefficient", rep)
        return Verdict(AGF, None, bounds, checked, "all traced coefficients are regular", rep)
    except (NotFiniteError, ResourceLimitError, CycleTraceError) as exc:
        return Verdict(UNDETERMINED, None, bounds, 0, str(exc))


# cycle pullback


@dataclass
class PullbackPart:
    component: str
    multiplicity: int
    degree: int              # number of distinct fiber points of this part


@dataclass
class PullbackCycle:
    parts: list

    @property
    def degree(self):
        return sum(p.multiplicity * p.degree for p in self.parts)

    def __add__(self, other):
        return PullbackCycle(self.parts + other.parts)

    def scaled(self, c):
        return PullbackCycle([PullbackPart(p.component, c * p.multiplicity, p.degree)
                              for p in self.parts])


def cycle_pullback(family, targets, seed=0):
    """pi^*(Y) for Y = sum_m w_m Y_m, each Y_m given by a sample point on it.

    ``targets`` is a list of (weight, point).  Over a sample point the
    fiber of each component splits by local multiplicity (squarefree
    decomposition of the characteristic polynomial of a random linear
    form); each piece becomes a part with multiplicity
    w_m * n_i * (local multiplicity).
    """
    family = as_family(family)
    cov = family.covering
    fiber = cov.scale.fiber
    rng = random.Random(seed)
    parts = []
    for weight, point in targets:
        pt = _fill_point(cov, point, seed)
        for c in cov.components:
            qa = fiber_algebra(cov, c, pt)
            if qa is None or not qa.dim:
                continue
            if not fiber:
                parts.append(PullbackPart(c.name, weight * c.weight, 1))
                continue
            ell = sum((Poly.var(v, fiber) * rng.randint(1, 1000) for v in fiber),
                      Poly.const(0, fiber))
            for mult, g in sorted(uni.squarefree_decomposition(qa.charpoly(ell)).items()):
                parts.append(PullbackPart(c.name, weight * c.weight * mult, uni.degree(g)))
    return PullbackCycle(parts)


__all__ = [
    "AGF", "CONTINUOUS", "NOT_CGF", "UNDETERMINED", "DegreeReport", "Family", "Junction",
    "PullbackCycle", "PullbackPart", "SamplePoint", "Verdict", "WeightAssignment", "Witness",
    "as_family", "certify_agf", "check_degree_constancy", "cycle_pullback", "degree_table",
    "weight_search",
]
