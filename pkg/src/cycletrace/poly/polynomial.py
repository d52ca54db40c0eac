"""Sparse multivariate polynomials with exact rational coefficients."""

from fractions import Fraction

from gmpy2 import mpq

Q = mpq
ZERO = mpq(0)
ONE = mpq(1)


def to_q(c):
    """Coerce an int, Fraction, str or mpq into an mpq."""
    if isinstance(c, type(ZERO)):
        return c
    if isinstance(c, Fraction):
        return mpq(c.numerator, c.denominator)
    if isinstance(c, bool):
        return mpq(int(c))
    return mpq(c)


def _is_scalar(x):
    return isinstance(x, (int, Fraction, type(ZERO)))


def union_gens(a, b):
    if a == b:
        return a
    return tuple(a) + tuple(v for v in b if v not in a)


def grevlex_key(e):
    return (sum(e),) + tuple(-x for x in reversed(e))


class Poly:
    """An immutable polynomial over Q in named variables.

    ``terms`` maps exponent tuples (aligned with ``gens``) to nonzero mpq
    coefficients.  Polynomials over different variable lists combine over
    the union of both lists.
    """

    __slots__ = ("gens", "terms")

    def __init__(self, terms=None, gens=()):
        gens = tuple(gens)
        clean = {}
        if terms:
            n = len(gens)
            for e, c in terms.items():
                if len(e) != n:
                    raise ValueError("exponent length does not match variables")
                c = to_q(c)
                if c:
                    clean[tuple(e)] = c
        object.__setattr__(self, "gens", gens)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def _raw(cls, terms, gens):
        # terms already clean
        p = object.__new__(cls)
        object.__setattr__(p, "gens", gens)
        object.__setattr__(p, "terms", terms)
        return p

    # construction

    @classmethod
    def const(cls, c, gens=()):
        gens = tuple(gens)
        c = to_q(c)
        return cls._raw({(0,) * len(gens): c} if c else {}, gens)

    @classmethod
    def var(cls, name, gens=None):
        gens = tuple(gens) if gens is not None else (name,)
        if name not in gens:
            gens = gens + (name,)
        e = [0] * len(gens)
        e[gens.index(name)] = 1
        return cls._raw({tuple(e): ONE}, gens)

    @classmethod
    def monomial(cls, exp, gens, c=1):
        return cls({tuple(exp): c}, gens)

    @classmethod
    def parse(cls, text, gens=None):
        from .parse import parse_poly
        return parse_poly(text, gens)

    # ring handling

    def to_gens(self, gens):
        """Re-express over ``gens``; every variable in use must be present."""
        gens = tuple(gens)
        if gens == self.gens:
            return self
        idx = {v: i for i, v in enumerate(gens)}
        perm = []
        used = self.used_vars()
        for v in self.gens:
            j = idx.get(v)
            if j is None and v in used:
                raise ValueError(f"variable {v} not available in target ring")
            perm.append(j)
        n = len(gens)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * n
            for i, x in enumerate(e):
                if x:
                    ne[perm[i]] = x
            out[tuple(ne)] = c
        return Poly._raw(out, gens)

    def _unify(self, other):
        if _is_scalar(other):
            return self, Poly.const(other, self.gens)
        if not isinstance(other, Poly):
            return None, None
        if other.gens == self.gens:
            return self, other
        g = union_gens(self.gens, other.gens)
        return self.to_gens(g), other.to_gens(g)

    def used_vars(self):
        used = set()
        for e in self.terms:
            for v, x in zip(self.gens, e):
                if x:
                    used.add(v)
        return used

    def trim(self):
        """Drop variables that do not occur."""
        used = self.used_vars()
        return self.to_gens(tuple(v for v in self.gens if v in used))

    # arithmetic

    def __add__(self, other):
        a, b = self._unify(other)
        if a is None:
            return NotImplemented
        out = dict(a.terms)
        for e, c in b.terms.items():
            s = out.get(e, ZERO) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly._raw(out, a.gens)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({e: -c for e, c in self.terms.items()}, self.gens)

    def __sub__(self, other):
        a, b = self._unify(other)
        if a is None:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        a, b = self._unify(other)
        if a is None:
            return NotImplemented
        return b + (-a)

    def __mul__(self, other):
        if _is_scalar(other):
            c = to_q(other)
            if not c:
                return Poly._raw({}, self.gens)
            return Poly._raw({e: x * c for e, x in self.terms.items()}, self.gens)
        a, b = self._unify(other)
        if a is None:
            return NotImplemented
        out = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = out.get(e, ZERO) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Poly._raw(out, a.gens)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _is_scalar(other):
            c = to_q(other)
            if not c:
                raise ZeroDivisionError("division by zero")
            return self * (ONE / c)
        if isinstance(other, Poly) and other.is_constant():
            return self / other.constant_value()
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Poly.const(1, self.gens)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if _is_scalar(other):
            other = Poly.const(other, self.gens)
        if not isinstance(other, Poly):
            return NotImplemented
        if self.gens == other.gens:
            return self.terms == other.terms
        a, b = self._unify(other)
        return a.terms == b.terms

    def __hash__(self):
        items = []
        for e, c in self.terms.items():
            items.append((tuple((v, x) for v, x in zip(self.gens, e) if x), c))
        return hash(frozenset(items))

    def __bool__(self):
        return bool(self.terms)

    # queries

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        for c in self.terms.values():
            return c
        return ZERO

    def degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, var):
        if var not in self.gens:
            return 0 if self.terms else -1
        i = self.gens.index(var)
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def coeff(self, exp):
        return self.terms.get(tuple(exp), ZERO)

    def leading(self, key=grevlex_key):
        """Leading (exponent, coefficient) under the order given by ``key``."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def sorted_terms(self, key=grevlex_key):
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    # calculus and substitution

    def diff(self, var):
        if var not in self.gens:
            return Poly._raw({}, self.gens)
        i = self.gens.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return Poly._raw(out, self.gens)

    def subs(self, mapping):
        """Substitute variables by polynomials or numbers.

        Unmapped variables stay.  Values may be any ring elements that
        support + and * with Poly (Poly, numbers, rational functions).
        """
        mapping = {v: mapping[v] for v in mapping if v in self.gens}
        if not mapping:
            return self
        keep = tuple(v for v in self.gens if v not in mapping)
        idx_keep = [i for i, v in enumerate(self.gens) if v not in mapping]
        idx_sub = [(i, mapping[v]) for i, v in enumerate(self.gens) if v in mapping]
        powers = {}

        def pw(i, val, k):
            key = (i, k)
            if key not in powers:
                powers[key] = val ** k if k > 1 else val
            return powers[key]

        result = Poly._raw({}, keep)
        for e, c in self.terms.items():
            term = Poly._raw({tuple(e[i] for i in idx_keep): c}, keep)
            for i, val in idx_sub:
                if e[i]:
                    term = term * pw(i, val, e[i])
            result = result + term
        return result

    def evaluate(self, point):
        """Evaluate at a full point given as a dict of numbers."""
        total = ZERO
        vals = [to_q(point[v]) if v in point else None for v in self.gens]
        for e, c in self.terms.items():
            t = c
            for x, val in zip(e, vals):
                if x:
                    if val is None:
                        raise ValueError("point does not assign every variable")
                    t = t * val ** x
            total += t
        return total

    def coefficients_in(self, variables):
        """Split as a polynomial in ``variables`` with coefficients in the rest.

        Returns a dict from exponent tuples over ``variables`` to Poly in the
        remaining variables.
        """
        variables = tuple(variables)
        pos = [self.gens.index(v) if v in self.gens else None for v in variables]
        rest = tuple(v for v in self.gens if v not in variables)
        rpos = [self.gens.index(v) for v in rest]
        parts = {}
        for e, c in self.terms.items():
            ke = tuple(e[i] if i is not None else 0 for i in pos)
            re = tuple(e[i] for i in rpos)
            parts.setdefault(ke, {})[re] = c
        return {k: Poly._raw(v, rest) for k, v in parts.items()}

    def monomial_content(self):
        """Exponent of the largest monomial dividing every term."""
        if not self.terms:
            return (0,) * len(self.gens)
        it = iter(self.terms)
        m = list(next(it))
        for e in it:
            m = [min(a, b) for a, b in zip(m, e)]
        return tuple(m)

    def divide_monomial(self, exp):
        out = {}
        for e, c in self.terms.items():
            ne = tuple(a - b for a, b in zip(e, exp))
            if min(ne, default=0) < 0:
                raise ValueError("monomial does not divide")
            out[ne] = c
        return Poly._raw(out, self.gens)

    def monic(self, key=grevlex_key):
        if not self.terms:
            return self
        _, c = self.leading(key)
        return self * (ONE / c)

    def exact_div(self, other):
        """Exact quotient self / other, or None when other does not divide."""
        a, b = self._unify(other)
        if b.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if a.is_zero():
            return a
        blm, blc = b.leading()
        rem = dict(a.terms)
        quot = {}
        key = grevlex_key
        while rem:
            e = max(rem, key=key)
            c = rem[e]
            q = tuple(x - y for x, y in zip(e, blm))
            if min(q) < 0:
                return None
            f = c / blc
            quot[q] = f
            for be, bc in b.terms.items():
                m = tuple(x + y for x, y in zip(be, q))
                s = rem.get(m, ZERO) - f * bc
                if s:
                    rem[m] = s
                else:
                    rem.pop(m, None)
        return Poly._raw(quot, a.gens)

    # printing

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r}, gens={self.gens!r})"


def format_monomial(exp, gens):
    parts = []
    for v, x in zip(gens, exp):
        if x == 1:
            parts.append(v)
        elif x:
            parts.append(f"{v}^{x}")
    return "*".join(parts)


def format_poly(p):
    """Canonical text form, for example ``3/2*x^2*y - z``."""
    if not p.terms:
        return "0"
    out = []
    for e, c in p.sorted_terms():
        mono = format_monomial(e, p.gens)
        neg = c < 0
        a = -c if neg else c
        if mono:
            body = mono if a == 1 else f"{a}*{mono}"
        else:
            body = str(a)
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def poly_vars(names):
    """Return one Poly per name, all over the same variable list."""
    names = tuple(names)
    return [Poly.var(v, names) for v in names]
