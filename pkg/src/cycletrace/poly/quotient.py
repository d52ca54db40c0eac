"""Finite quotient algebras A = K[x]/I.

K is either Q or the function field of an irreducible base (the fraction
field of Q[coefficient variables]/P).  The algebra is read off a Groebner
basis of I over Q[x, coefficient variables] for a block order with the x
block first: the x-leading monomials give the standard monomial basis of A
over K and the x-free basis elements generate P.
"""

import heapq

from ..errors import NotFiniteError
from . import linalg
from .groebner import Ideal
from .orders import Order
from .polynomial import ONE, ZERO, Poly, grevlex_key
from .ratfunc import RationalFunction


class RationalField:
    """Q, with elements represented as mpq."""

    variables = ()
    modulus = None

    def __init__(self):
        self.zero = ZERO
        self.one = ONE

    def from_poly(self, p):
        if isinstance(p, Poly):
            return p.constant_value()
        return p

    def __repr__(self):
        return "QQ"


class FunctionField:
    """Frac(Q[variables]/P) with P prime (P may be zero)."""

    def __init__(self, variables, modulus=None):
        self.variables = tuple(variables)
        if modulus is not None and modulus.is_zero():
            modulus = None
        self.modulus = modulus
        self.zero = RationalFunction(Poly.const(0, self.variables), None, modulus,
                                     _normalized=True)
        self.one = RationalFunction(Poly.const(1, self.variables), None, modulus,
                                    _normalized=True)

    def from_poly(self, p):
        if isinstance(p, RationalFunction):
            return p.with_modulus(self.modulus) if p.modulus is None and self.modulus else p
        if not isinstance(p, Poly):
            return self.one * p
        return RationalFunction(p, None, self.modulus)

    def __repr__(self):
        return f"FunctionField({self.variables}, {self.modulus})"


def _neg(k):
    return tuple(-x for x in k)


class QuotientAlgebra:
    """K[fiber]/I for an ideal I of Q[fiber, coefficient variables].

    ``base`` lists extra polynomials in the coefficient variables (a base
    ideal) added to I.  Raises NotFiniteError when A is not finite over K.
    """

    def __init__(self, generators, fiber, coeff_vars=(), base=(), max_dim=4096):
        self.fiber = tuple(fiber)
        self.coeff_vars = tuple(coeff_vars)
        ring = self.fiber + self.coeff_vars
        gens = [g.to_gens(ring) for g in list(generators) + list(base)]
        used = set()
        for g in gens:
            used |= g.used_vars()
        if not used <= set(ring):
            raise ValueError(f"unexpected variables {sorted(used - set(ring))}")
        p = len(self.fiber)
        if self.coeff_vars:
            order = Order.block(self.fiber, self.coeff_vars)
        else:
            order = Order("grevlex")
        self.ideal = Ideal(gens, order, ring)
        basis = self.ideal.basis
        xkey = grevlex_key
        self.xkey = xkey
        base_polys = []
        self._reducers = []
        for b in basis:
            parts = {}
            for e, c in b.terms.items():
                parts.setdefault(e[:p], {})[e[p:]] = c
            if list(parts) == [(0,) * p]:
                base_polys.append(Poly(parts[(0,) * p], self.coeff_vars))
                continue
            self._reducers.append(parts)
        self.unit = any(bp.is_constant() and not bp.is_zero() for bp in base_polys)
        if self.coeff_vars:
            modulus = None
            if base_polys and not self.unit:
                modulus = Ideal(base_polys, Order("grevlex"), self.coeff_vars,
                                basis=base_polys)
            self.field = FunctionField(self.coeff_vars, modulus)
        else:
            self.field = RationalField()
        self.base_ideal = self.field.modulus
        F = self.field
        red = []
        for parts in self._reducers:
            lmx = max(parts, key=xkey)
            lc = F.from_poly(Poly(parts[lmx], self.coeff_vars))
            tail = []
            for m, cp in parts.items():
                if m == lmx:
                    continue
                c = F.from_poly(Poly(cp, self.coeff_vars))
                if not linalg.is_zero(c):
                    tail.append((m, c / lc))
            red.append((lmx, tail))
        self._red = red
        if self.unit:
            self.basis = []
        else:
            self.basis = self._standard_monomials(max_dim)
        self.dim = len(self.basis)
        self.index = {m: i for i, m in enumerate(self.basis)}
        self._tables = None
        self._traces = None
        self._varmats = {}

    def _standard_monomials(self, max_dim):
        p = len(self.fiber)
        lms = [lm for lm, _ in self._red]
        for i in range(p):
            if not any(lm[i] > 0 and sum(lm) == lm[i] for lm in lms):
                raise NotFiniteError(
                    f"quotient is not finite over the base: no pure power of {self.fiber[i]} "
                    "leads a basis element")
        out = []
        seen = {(0,) * p}
        stack = [(0,) * p]
        while stack:
            m = stack.pop()
            if any(all(a <= b for a, b in zip(lm, m)) for lm in lms):
                continue
            out.append(m)
            if len(out) > max_dim:
                raise NotFiniteError("quotient dimension exceeds the configured bound")
            for i in range(p):
                n = list(m)
                n[i] += 1
                n = tuple(n)
                if n not in seen:
                    seen.add(n)
                    stack.append(n)
        out.sort(key=self.xkey)
        return out

    # elements

    def reduce_terms(self, terms):
        """Normal form of {x-exponent: K-element}; returns a coordinate vector."""
        F = self.field
        if self.unit:
            return []
        f = dict(terms)
        heap = [(_neg(self.xkey(m)), m) for m in f]
        heapq.heapify(heap)
        vec = [F.zero] * self.dim
        while heap:
            _, m = heapq.heappop(heap)
            c = f.pop(m, None)
            if c is None or linalg.is_zero(c):
                continue
            hit = None
            for lm, tail in self._red:
                if all(a <= b for a, b in zip(lm, m)):
                    hit = (lm, tail)
                    break
            if hit is None:
                i = self.index.get(m)
                if i is None:
                    raise NotFiniteError("normal form left the standard basis")
                vec[i] = vec[i] + c
                continue
            lm, tail = hit
            q = tuple(a - b for a, b in zip(m, lm))
            for tm, tc in tail:
                mm = tuple(a + b for a, b in zip(tm, q))
                old = f.get(mm)
                if old is None:
                    f[mm] = -(c * tc)
                    heapq.heappush(heap, (_neg(self.xkey(mm)), mm))
                else:
                    f[mm] = old - c * tc
        return vec

    def element(self, p):
        """Coordinates of a polynomial (or K-element coefficient dict)."""
        if isinstance(p, dict):
            return self.reduce_terms(p)
        F = self.field
        if not isinstance(p, Poly):
            v = [F.zero] * self.dim
            if self.dim:
                v[0] = F.one * p if not isinstance(p, RationalFunction) else F.from_poly(p)
            return v
        extra = p.used_vars() - set(self.fiber) - set(self.coeff_vars)
        if extra:
            raise ValueError(f"unexpected variables {sorted(extra)}")
        parts = p.coefficients_in(self.fiber)
        terms = {}
        for m, cp in parts.items():
            terms[m] = F.from_poly(cp.to_gens(self.coeff_vars))
        return self.reduce_terms(terms)

    def to_poly_terms(self, vec):
        return {m: c for m, c in zip(self.basis, vec) if not linalg.is_zero(c)}

    def _table(self):
        if self._tables is None:
            F = self.field
            t = []
            for a in self.basis:
                row = []
                for b in self.basis:
                    m = tuple(x + y for x, y in zip(a, b))
                    row.append(self.reduce_terms({m: F.one}))
                t.append(row)
            self._tables = t
        return self._tables

    def _vec(self, u):
        return u if isinstance(u, list) else self.element(u)

    def mul(self, u, v):
        u, v = self._vec(u), self._vec(v)
        F = self.field
        out = [F.zero] * self.dim
        t = self._table()
        for i, a in enumerate(u):
            if linalg.is_zero(a):
                continue
            for j, b in enumerate(v):
                if linalg.is_zero(b):
                    continue
                ab = a * b
                for k, c in enumerate(t[i][j]):
                    if not linalg.is_zero(c):
                        out[k] = out[k] + ab * c
        return out

    def add(self, u, v):
        return [a + b for a, b in zip(u, v)]

    def scale(self, c, u):
        return [c * a for a in u]

    def mult_matrix(self, u):
        """Matrix (rows indexed by output coordinate) of multiplication by u."""
        u = self._vec(u)
        F = self.field
        cols = []
        for j in range(self.dim):
            e = [F.zero] * self.dim
            e[j] = F.one
            cols.append(self.mul(u, e))
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def var_matrix(self, var):
        if var not in self._varmats:
            self._varmats[var] = self.mult_matrix(self.element(Poly.var(var, self.fiber)))
        return self._varmats[var]

    def basis_traces(self):
        """Tr(b_k) for every standard monomial b_k."""
        if self._traces is None:
            F = self.field
            t = self._table()
            tr = []
            for k in range(self.dim):
                s = F.zero
                for j in range(self.dim):
                    s = s + t[k][j][j]
                tr.append(s)
            self._traces = tr
        return self._traces

    def trace(self, u):
        """Tr_{A/K} of an element given by coordinates or as a polynomial."""
        if not isinstance(u, list):
            u = self.element(u)
        F = self.field
        s = F.zero
        for a, t in zip(u, self.basis_traces()):
            if not linalg.is_zero(a) and not linalg.is_zero(t):
                s = s + a * t
        return s

    def is_unit(self, u):
        return not linalg.is_zero(linalg.det(self.mult_matrix(u), self.field.one))

    def inverse(self, u):
        F = self.field
        m = self.mult_matrix(u)
        one = self.element(Poly.const(1, self.fiber))
        x = linalg.solve(m, one)
        if x is None:
            raise ZeroDivisionError("element is not invertible in the algebra")
        return x

    def charpoly(self, u):
        """Characteristic polynomial of multiplication by u (low to high)."""
        return linalg.charpoly(self.mult_matrix(u), self.field.one)
