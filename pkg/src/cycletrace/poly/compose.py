"""Substitution of rational functions into polynomials."""

from .polynomial import ONE, Poly, union_gens
from .ratfunc import RationalFunction


def compose(p, mapping, modulus=None):
    """p with variables replaced by rational functions (or polynomials).

    Works with one common denominator prod d_j^(E_j), E_j being the
    largest exponent of the j-th substituted variable, and normalizes once.
    """
    subs = []
    for v, val in mapping.items():
        if v not in p.gens or p.degree_in(v) <= 0:
            continue
        if isinstance(val, RationalFunction):
            subs.append((v, val.num, val.den))
        elif isinstance(val, Poly):
            subs.append((v, val, None))
        else:
            subs.append((v, Poly.const(val), None))
    keep = tuple(v for v in p.gens if v not in mapping)
    gens = keep
    for _, n, d in subs:
        gens = union_gens(gens, n.gens)
        if d is not None:
            gens = union_gens(gens, d.gens)
    if not subs:
        return RationalFunction(p.to_gens(keep) if keep else p, None, modulus)
    idx = {v: p.gens.index(v) for v, _, _ in subs}
    kidx = [p.gens.index(v) for v in keep]
    tops = {v: p.degree_in(v) for v, _, _ in subs}
    npow = {}
    dpow = {}

    def power(cache, key, base, k):
        if (key, k) not in cache:
            cache[(key, k)] = base.to_gens(gens) ** k
        return cache[(key, k)]

    num = Poly.const(0, gens)
    for e, c in p.terms.items():
        term = Poly({tuple(e[i] for i in kidx): c}, keep).to_gens(gens)
        for v, n, d in subs:
            x = e[idx[v]]
            if x:
                term = term * power(npow, v, n, x)
            if d is not None and tops[v] - x:
                term = term * power(dpow, v, d, tops[v] - x)
        num = num + term
    den = Poly.const(ONE, gens)
    for v, n, d in subs:
        if d is not None:
            den = den * power(dpow, v, d, tops[v])
    return RationalFunction(num, den, modulus)
