"""Regularity and integrality of rational functions on a base variety."""

from dataclasses import dataclass, field
from itertools import combinations_with_replacement

from . import linalg
from .groebner import DivisionOracle, Ideal
from .polynomial import ONE, Poly, union_gens
from .ratfunc import RationalFunction


@dataclass
class Regularity:
    regular: bool
    witness: Poly | None = None   # q with num = q*den on the base
    degree_bound: int | None = None

    def __bool__(self):
        return self.regular


@dataclass
class Integrality:
    found: bool
    degree: int = 0
    coefficients: list = field(default_factory=list)   # a_{d-1}, ..., a_0
    variable: str = "T"

    def relation(self):
        """The monic relation as a Poly in ``variable`` over the base ring."""
        if not self.found:
            return None
        T = self.variable
        gens = (T,)
        for a in self.coefficients:
            gens = union_gens(gens, a.gens)
        rel = Poly.var(T, gens) ** self.degree
        for j, a in enumerate(self.coefficients):
            rel = rel + a * Poly.var(T, gens) ** (self.degree - 1 - j)
        return rel

    def __str__(self):
        if not self.found:
            return "no relation found"
        return f"{self.relation()} = 0"


def _ideal_for(r, ideal):
    if ideal is None:
        ideal = r.modulus
    ring = union_gens(ideal.ring if ideal is not None else (), r.gens)
    if ideal is None:
        return Ideal([], variables=ring)
    return ideal


def _oracle(ideal, den, extra):
    cache = ideal.__dict__.setdefault("_oracles", {})
    k = (str(den), tuple(sorted(extra)))
    o = cache.get(k)
    if o is None:
        o = DivisionOracle(ideal, den.trim() if den.gens else den, extra)
        cache[k] = o
    return o


def is_regular_on(r, ideal=None, degree_bound=None):
    """Is r congruent on V(ideal) to a polynomial q?  The witness is the
    normal form of q, which has minimal degree among representatives for a
    degree-compatible order.  ``degree_bound`` (if given) caps deg q."""
    if not isinstance(r, RationalFunction):
        return Regularity(True, r if isinstance(r, Poly) else Poly.const(r), degree_bound)
    ideal = _ideal_for(r, ideal)
    if r.den.is_constant():
        q = ideal.normal_form(r.num / r.den.constant_value())
        ok = degree_bound is None or q.degree() <= degree_bound
        return Regularity(ok, q if ok else None, degree_bound)
    extra = tuple(sorted(r.num.used_vars() - set(ideal.ring)))
    o = _oracle(ideal, r.den, extra)
    q = o.quotient(r.num.trim())
    if q is None:
        return Regularity(False, None, degree_bound)
    q = ideal.normal_form(q.trim()) if q.gens else q
    if degree_bound is not None and q.degree() > degree_bound:
        return Regularity(False, None, degree_bound)
    return Regularity(True, q, degree_bound)


@dataclass
class Decomposition:
    polynomial: Poly
    fraction: RationalFunction        # the fractional part sigma
    denominator: Poly


def simplify_fraction(r, ideal=None, max_den_degree=2):
    """Write r = polynomial + fraction with a small denominator.

    Searches monomial denominators d of degree <= ``max_den_degree`` with
    d*r regular on the base; the fractional part collects the terms of
    d*r not divisible by d.
    """
    if not isinstance(r, RationalFunction):
        r = RationalFunction(r)
    ideal = _ideal_for(r, ideal)
    mod = r.modulus
    reg = is_regular_on(r, ideal)
    if reg.regular:
        zero = RationalFunction(Poly.const(0, r.gens), None, mod)
        return Decomposition(reg.witness, zero, Poly.const(1, r.gens))
    extra = tuple(sorted(r.num.used_vars() - set(ideal.ring)))
    o = _oracle(ideal, r.den, extra)
    ring = o.ring
    for k in range(1, max_den_degree + 1):
        for combo in combinations_with_replacement(ring, k):
            d = Poly.const(1, ring)
            for v in combo:
                d = d * Poly.var(v, ring)
            q = o.quotient((d * r.num).to_gens(ring))
            if q is None:
                continue
            q = ideal.normal_form(q)
            de = d.to_gens(q.gens)
            dm = next(iter(de.terms))
            poly_terms, frac_terms = {}, {}
            for e, c in q.terms.items():
                if all(a >= b for a, b in zip(e, dm)):
                    poly_terms[tuple(a - b for a, b in zip(e, dm))] = c
                else:
                    frac_terms[e] = c
            poly = Poly(poly_terms, q.gens)
            frac = RationalFunction(Poly(frac_terms, q.gens), de, mod)
            return Decomposition(poly, frac, de)
    zero = Poly.const(0, r.gens)
    return Decomposition(zero, r, r.den)


def _standard_monomials(ideal, ring, bound):
    lms = []
    if ideal is not None:
        ext = ideal.with_variables(ring)
        lms = [(ext.ring, lm) for lm in ext.leading_monomials()]
    out = []
    n = len(ring)

    def rec(i, rem, cur):
        if i == n:
            out.append(tuple(cur))
            return
        for x in range(rem + 1):
            cur.append(x)
            rec(i + 1, rem - x, cur)
            cur.pop()
    rec(0, bound, [])
    if lms:
        g, _ = lms[0]
        perm = [g.index(v) for v in ring]
        keep = []
        for e in out:
            full = [0] * len(g)
            for i, x in zip(perm, e):
                full[i] = x
            if not any(all(a <= b for a, b in zip(lm, full)) for _, lm in lms):
                keep.append(e)
        out = keep
    return out


def integral_dependence(r, ideal=None, max_degree=4, coef_bound=None, variable="T"):
    """Search a monic relation T^d + a_{d-1} T^{d-1} + ... + a_0 = 0 for r
    over the coordinate ring of V(ideal), with polynomial a_j.

    Clears denominators: num^d + sum_j a_j num^j den^(d-j) lies in the
    ideal, which is linear in the unknown coefficients of the a_j.
    """
    if not isinstance(r, RationalFunction):
        r = RationalFunction(r)
    ideal = _ideal_for(r, ideal)
    ring = union_gens(ideal.ring, tuple(v for v in r.gens if v in r.num.used_vars()
                                         or v in r.den.used_vars()))
    ideal = ideal.with_variables(ring)
    num = r.num.to_gens(ring)
    den = r.den.to_gens(ring)
    slope = max(1, num.degree() - den.degree())
    if coef_bound is None:
        coef_bound = max_degree * (slope + 1)
    for d in range(1, max_degree + 1):
        tried = set()
        for level in (slope, slope + 1):
            bounds = tuple(min(coef_bound, (d - j) * level) for j in range(d))
            if bounds in tried:
                continue
            tried.add(bounds)
            res = _solve_relation(num, den, ideal, ring, d, bounds)
            if res is not None:
                return Integrality(True, d, res, variable)
    return Integrality(False, 0, [], variable)


def _solve_relation(num, den, ideal, ring, d, bounds):
    columns = []
    labels = []
    for j in range(d):
        base = ideal.normal_form(num ** j * den ** (d - j))
        for m in _standard_monomials(ideal, ring, bounds[j]):
            col = ideal.normal_form(base * Poly({m: ONE}, ring))
            columns.append(col.terms)
            labels.append((j, m))
    rhs = {e: -c for e, c in ideal.normal_form(num ** d).terms.items()}
    sol = linalg.solve_sparse(columns, rhs)
    if sol is None:
        return None
    coeffs = [dict() for _ in range(d)]
    for (j, m), x in zip(labels, sol):
        if x:
            coeffs[j][m] = x
    # coefficient of T^j is coeffs[j]; return a_{d-1}..a_0
    return [ideal.normal_form(Poly(coeffs[j], ring)).trim() for j in reversed(range(d))]
