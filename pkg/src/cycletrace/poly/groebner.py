"""Buchberger's algorithm with the Gebauer-Moeller criteria, and ideals.

The engine works on plain dicts {exponent: mpq}; the public face is the
``Ideal`` class, which computes its reduced basis once and keeps it.
"""

import heapq
import os

from ..errors import ResourceLimitError
from .orders import GREVLEX, Order
from .polynomial import ONE, ZERO, Poly, union_gens

DEFAULT_MAX_BASIS = 4000
DEFAULT_MAX_PAIRS = 400000


def resource_limits():
    """Current (max_basis, max_pairs), read from the environment."""
    b = os.environ.get("CYCLETRACE_MAX_BASIS")
    p = os.environ.get("CYCLETRACE_MAX_PAIRS")
    return (int(b) if b else DEFAULT_MAX_BASIS, int(p) if p else DEFAULT_MAX_PAIRS)


def _divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _disjoint(a, b):
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def _neg(k):
    return tuple(-x for x in k)


def _add_scaled(target, src, fac, shift):
    """target -= fac * x^shift * src, in place."""
    for m, c in src.items():
        mm = tuple(x + y for x, y in zip(m, shift))
        s = target.get(mm, ZERO) - fac * c
        if s:
            target[mm] = s
        else:
            target.pop(mm, None)


class _Elt:
    __slots__ = ("lm", "terms", "tail", "sugar", "cof")

    def __init__(self, terms, key, sugar, cof=None):
        lm = max(terms, key=key)
        lc = terms[lm]
        if lc != 1:
            inv = ONE / lc
            terms = {m: c * inv for m, c in terms.items()}
            if cof is not None:
                cof = {m: c * inv for m, c in cof.items()}
        self.lm = lm
        self.terms = terms
        self.tail = [(m, c) for m, c in terms.items() if m != lm]
        self.sugar = sugar
        self.cof = cof


def reduce_dict(f, basis, key, cof=None):
    """Fully reduce ``f`` by monic basis elements.

    Returns (remainder, cofactor) where the cofactor tracks the same linear
    combination applied to ``cof`` (None when not tracking).
    """
    f = dict(f)
    heap = [(_neg(key(m)), m) for m in f]
    heapq.heapify(heap)
    rem = {}
    if cof is not None:
        cof = dict(cof)
    while heap:
        _, m = heapq.heappop(heap)
        c = f.pop(m, None)
        if c is None:
            continue
        g = None
        for b in basis:
            if _divides(b.lm, m):
                g = b
                break
        if g is None:
            rem[m] = c
            continue
        q = tuple(x - y for x, y in zip(m, g.lm))
        for gm, gc in g.tail:
            mm = tuple(x + y for x, y in zip(gm, q))
            old = f.get(mm)
            if old is None:
                f[mm] = -c * gc
                heapq.heappush(heap, (_neg(key(mm)), mm))
            else:
                s = old - c * gc
                if s:
                    f[mm] = s
                else:
                    del f[mm]
        if cof is not None and g.cof:
            _add_scaled(cof, g.cof, c, q)
    return rem, cof


def buchberger(polys, key, cofs=None, cof_reduce=None, limits=None, strategy="sugar"):
    """Reduced Groebner basis of a list of term dicts.

    With ``cofs`` (one dict or None per input) each basis element carries
    the matching combination of those cofactors; ``cof_reduce`` may shrink
    cofactors after each step.  Returns a list of (terms, cofactor).
    """
    max_basis, max_pairs = limits or resource_limits()
    tracking = cofs is not None
    G = []
    active = []
    pairs = {}
    heap = []
    counter = [0]

    def deg(m):
        return sum(m)

    def add(terms, sugar, cof):
        if tracking and cof_reduce is not None and cof:
            cof = cof_reduce(cof)
        e = _Elt(terms, key, sugar, cof if tracking else None)
        G.append(e)
        if len(G) > max_basis:
            raise ResourceLimitError(
                f"Groebner basis exceeded {max_basis} elements "
                "(raise CYCLETRACE_MAX_BASIS to allow more)")
        return len(G) - 1

    def update(h):
        hl = G[h].lm
        cand = list(active)
        D = []
        for idx, g1 in enumerate(cand):
            l1 = _lcm(hl, G[g1].lm)
            if not _disjoint(hl, G[g1].lm):
                dominated = False
                for g2 in cand[idx + 1:]:
                    if _divides(_lcm(hl, G[g2].lm), l1):
                        dominated = True
                        break
                if not dominated:
                    for g2 in D:
                        if _divides(_lcm(hl, G[g2].lm), l1):
                            dominated = True
                            break
                if dominated:
                    continue
            D.append(g1)
        for pid in list(pairs):
            i, j, l, _ = pairs[pid]
            if (_divides(hl, l) and _lcm(G[i].lm, hl) != l
                    and _lcm(hl, G[j].lm) != l):
                del pairs[pid]
        for g in D:
            gl = G[g].lm
            if _disjoint(hl, gl):
                continue
            l = _lcm(hl, gl)
            sugar = max(G[h].sugar + deg(l) - deg(hl), G[g].sugar + deg(l) - deg(gl))
            counter[0] += 1
            pairs[counter[0]] = (g, h, l, sugar)
            rank = sugar if strategy == "sugar" else 0
            heapq.heappush(heap, (rank, key(l), counter[0]))
        if len(pairs) > max_pairs:
            raise ResourceLimitError(
                f"Groebner pair queue exceeded {max_pairs} pairs "
                "(raise CYCLETRACE_MAX_PAIRS to allow more)")
        active[:] = [g for g in active if not _divides(hl, G[g].lm)] + [h]

    def basis_elts():
        return [G[i] for i in active]

    unit = None
    for n, f in enumerate(polys):
        cof = cofs[n] if tracking else None
        if tracking and cof is None:
            cof = {}
        r, rc = reduce_dict(f, basis_elts(), key, cof)
        if not r:
            continue
        h = add(r, max(sum(m) for m in r), rc)
        if not any(G[h].lm):
            unit = h
            break
        update(h)

    while unit is None and heap:
        _, _, pid = heapq.heappop(heap)
        pr = pairs.pop(pid, None)
        if pr is None:
            continue
        i, j, l, sugar = pr
        a, b = G[i], G[j]
        qa = tuple(x - y for x, y in zip(l, a.lm))
        qb = tuple(x - y for x, y in zip(l, b.lm))
        s = {}
        for m, c in a.tail:
            s[tuple(x + y for x, y in zip(m, qa))] = c
        _add_scaled(s, dict(b.tail), ONE, qb)
        sc = None
        if tracking:
            sc = {}
            if a.cof:
                _add_scaled(sc, a.cof, -ONE, qa)
            if b.cof:
                _add_scaled(sc, b.cof, ONE, qb)
        if not s:
            continue
        r, rc = reduce_dict(s, basis_elts(), key, sc)
        if not r:
            continue
        h = add(r, sugar, rc)
        if not any(G[h].lm):
            unit = h
            break
        update(h)

    if unit is not None:
        e = G[unit]
        return [(dict(e.terms), e.cof)]

    elts = basis_elts()
    out = []
    for e in elts:
        others = [o for o in elts if o is not e]
        tail, tc = reduce_dict(dict(e.tail), others, key, {} if tracking else None)
        terms = dict(tail)
        terms[e.lm] = ONE
        cof = None
        if tracking:
            cof = dict(e.cof or {})
            # e = lm + tail and tail -> tail' subtracting sum of others
            for m, c in tc.items():
                s = cof.get(m, ZERO) + c
                if s:
                    cof[m] = s
                else:
                    cof.pop(m, None)
            if cof_reduce is not None and cof:
                cof = cof_reduce(cof)
        out.append((terms, cof))
    out.sort(key=lambda t: key(max(t[0], key=key)))
    return out


class Ideal:
    """An ideal of Q[variables] with a fixed monomial order.

    The reduced Groebner basis is computed on first use and then kept;
    values are otherwise immutable.
    """

    def __init__(self, generators, order=GREVLEX, variables=None, basis=None):
        if isinstance(order, str):
            order = Order(order)
        gens = [g for g in generators]
        names = list(variables) if variables is not None else []
        for g in gens:
            for v in g.gens:
                if v not in names:
                    names.append(v)
        self.order = order
        self.ring = order.arrange(names)
        self.generators = tuple(g.to_gens(self.ring) for g in gens)
        self.key = order.key_for(self.ring)
        # sugar suits graded orders, the normal strategy elimination orders
        self.strategy = "sugar" if order.name == "grevlex" else "normal"
        self._basis = None
        self._elts = None
        if basis is not None:
            self._basis = [b.to_gens(self.ring) for b in basis]

    @property
    def basis(self):
        if self._basis is None:
            polys = [g.terms for g in self.generators if g]
            res = buchberger(polys, self.key, strategy=self.strategy)
            self._basis = [Poly(t, self.ring) for t, _ in res]
        return self._basis

    def _basis_elts(self):
        if self._elts is None:
            self._elts = [_Elt(dict(b.terms), self.key, 0) for b in self.basis]
        return self._elts

    def is_unit(self):
        b = self.basis
        return len(b) == 1 and b[0].is_constant()

    def is_zero(self):
        return not self.basis

    def leading_monomials(self):
        return [max(b.terms, key=self.key) for b in self.basis]

    def normal_form(self, p):
        """Remainder of ``p`` on division by the basis.

        Variables of ``p`` outside the ring act as coefficients.
        """
        if not isinstance(p, Poly):
            p = Poly.const(p, self.ring)
        out_gens = union_gens(p.gens, self.ring)
        extra = [v for v in p.used_vars() if v not in self.ring]
        if not extra:
            q = p.to_gens(self.ring)
            r, _ = reduce_dict(q.terms, self._basis_elts(), self.key)
            return Poly(r, self.ring).to_gens(out_gens)
        extra = tuple(v for v in p.gens if v in extra)
        full = self.ring + extra
        total = {}
        for ke, part in p.coefficients_in(extra).items():
            q = part.to_gens(self.ring)
            r, _ = reduce_dict(q.terms, self._basis_elts(), self.key)
            for m, c in r.items():
                total[m + ke] = c
        return Poly(total, full).to_gens(out_gens)

    def contains(self, p):
        return self.normal_form(p).is_zero()

    def contains_ideal(self, other):
        return all(self.contains(g) for g in other.generators)

    def with_variables(self, variables):
        """The extension of this ideal to a larger polynomial ring."""
        ring = union_gens(self.ring, tuple(variables))
        if ring == self.ring:
            return self
        if self.order.name == "grevlex" and self._basis is not None:
            return Ideal(self.generators, self.order, ring, basis=self._basis)
        return Ideal(self.generators, self.order, ring)

    def elimination(self, keep):
        """Generators of the intersection with Q[keep] (needs a block order
        whose later blocks are exactly ``keep``)."""
        keep = set(keep)
        out = []
        for b in self.basis:
            if b.used_vars() <= keep:
                out.append(b)
        return out

    def __add__(self, other):
        gens = list(self.generators) + list(other.generators)
        return Ideal(gens, self.order, union_gens(self.ring, other.ring))

    def __repr__(self):
        return f"Ideal([{', '.join(str(g) for g in self.generators)}], {self.order!r})"


class DivisionOracle:
    """Decides whether num/den is congruent to a polynomial modulo an ideal.

    Computes once a Groebner basis of I + <den> in which every element
    remembers its cofactor of ``den`` modulo I.  Then ``quotient(num)``
    returns q with num = q*den mod I (q in normal form), or None.
    """

    def __init__(self, ideal, den, extra_vars=()):
        ring = union_gens(union_gens(ideal.ring, den.gens), tuple(extra_vars))
        ring = tuple(v for v in ring if v in ideal.ring or v in den.used_vars()
                     or v in extra_vars)
        self.base = ideal.with_variables(ring) if ring != ideal.ring else ideal
        self.ring = self.base.ring
        self.den = den.to_gens(self.ring)
        key = self.base.key
        base_elts = self.base._basis_elts()

        def cof_reduce(c):
            r, _ = reduce_dict(c, base_elts, key)
            return r

        polys = [dict(b.terms) for b in self.base.basis] + [dict(self.den.terms)]
        cofs = [None] * len(self.base.basis) + [{(0,) * len(self.ring): ONE}]
        res = buchberger(polys, key, cofs, cof_reduce, strategy=self.base.strategy)
        self.elts = []
        for terms, cof in res:
            e = _Elt(terms, key, 0, cof or {})
            self.elts.append(e)
        self.key = key
        self._cof_reduce = cof_reduce

    def quotient(self, num):
        num = num.to_gens(union_gens(self.ring, num.gens))
        if num.gens != self.ring:
            try:
                num = num.to_gens(self.ring)
            except ValueError:
                return None
        r, c = reduce_dict(num.terms, self.elts, self.key, {})
        if r:
            return None
        # num - sum(q_g g) = 0 and g = cof_g * den mod I; reduce_dict tracked -sum(q_g cof_g)
        q = {m: -x for m, x in c.items()}
        q = self._cof_reduce(q) if q else q
        return Poly(q, self.ring)
