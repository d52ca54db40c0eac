"""Rational functions, optionally on an irreducible base variety.

With a modulus P (a prime ideal) the value lives in the fraction field of
Q[vars]/P: numerator and denominator are kept in normal form modulo P and
zero/equality are decided by normal forms.  Cheap simplifications (content,
monomial factors, exact division) happen eagerly; nothing else does.
"""

from fractions import Fraction

from .polynomial import ONE, Poly, to_q, union_gens


def _scalar(x):
    return isinstance(x, (int, Fraction, type(ONE)))


class RationalFunction:
    __slots__ = ("num", "den", "modulus")

    def __init__(self, num, den=None, modulus=None, _normalized=False):
        if not isinstance(num, Poly):
            num = Poly.const(num, den.gens if isinstance(den, Poly) else ())
        if den is None:
            den = Poly.const(1, num.gens)
        elif not isinstance(den, Poly):
            den = Poly.const(den, num.gens)
        if num.gens != den.gens:
            g = union_gens(num.gens, den.gens)
            num, den = num.to_gens(g), den.to_gens(g)
        object.__setattr__(self, "modulus", modulus)
        if not _normalized:
            num, den = _normalize(num, den, modulus)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @property
    def gens(self):
        return self.num.gens

    def _make(self, num, den):
        return RationalFunction(num, den, self.modulus)

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            a, b = self.modulus, other.modulus
            if a is not b and a is not None and b is not None and not _compatible(a, b):
                raise ValueError("rational functions over different bases")
            return other
        if isinstance(other, Poly):
            return RationalFunction(other, None, self.modulus)
        if _scalar(other):
            return RationalFunction(Poly.const(other, self.gens), None, self.modulus,
                                    _normalized=True)
        return None

    def _mod(self, other):
        a, b = self.modulus, other.modulus
        if a is None:
            return b
        if b is None or a is b:
            return a
        return a if len(a.ring) >= len(b.ring) else b

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        mod = self._mod(o)
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den, mod)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den, mod)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, self.modulus, _normalized=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if _scalar(other):
            c = to_q(other)
            if not c:
                return RationalFunction(Poly.const(0, self.gens), None, self.modulus,
                                        _normalized=True)
            return RationalFunction(self.num * c, self.den, self.modulus, _normalized=True)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.num, self.den * o.den, self._mod(o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _scalar(other):
            c = to_q(other)
            if not c:
                raise ZeroDivisionError("division by zero")
            return RationalFunction(self.num * (ONE / c), self.den, self.modulus,
                                    _normalized=True)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by a function that vanishes on the base")
        return RationalFunction(self.num * o.den, self.den * o.num, self._mod(o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k):
        if not isinstance(k, int):
            raise ValueError("integer exponent required")
        if k < 0:
            return RationalFunction(Poly.const(1, self.gens), None, self.modulus) / (self ** -k)
        result = RationalFunction(Poly.const(1, self.gens), None, self.modulus, _normalized=True)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def is_zero(self):
        return self.num.is_zero()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        diff = self.num * o.den - o.num * self.den
        mod = self._mod(o)
        if mod is not None:
            diff = mod.normal_form(diff)
        return diff.is_zero()

    def __hash__(self):
        raise TypeError("RationalFunction is not hashable")

    def is_polynomial(self):
        return self.den.is_constant()

    def as_poly(self):
        if not self.den.is_constant():
            raise ValueError("not a polynomial")
        return self.num / self.den.constant_value()

    def diff(self, var):
        """Derivative along ``var``; with a modulus ``var`` must not occur in it."""
        if self.modulus is not None and var in self.modulus.ring \
                and any(var in g.used_vars() for g in self.modulus.generators):
            raise ValueError(f"cannot differentiate along {var} on this base")
        n, d = self.num, self.den
        if d.is_constant():
            return RationalFunction(n.diff(var), d, self.modulus)
        return RationalFunction(n.diff(var) * d - n * d.diff(var), d * d, self.modulus)

    def subs(self, mapping):
        """Substitute variables by polynomials, numbers or rational functions."""
        n = self.num.subs(mapping)
        d = self.den.subs(mapping)
        if isinstance(n, Poly):
            n = RationalFunction(n)
        if isinstance(d, Poly):
            d = RationalFunction(d)
        return n / d

    def evaluate(self, point):
        d = self.den.evaluate(point)
        if not d:
            raise ZeroDivisionError("denominator vanishes at the point")
        return self.num.evaluate(point) / d

    def with_modulus(self, modulus):
        return RationalFunction(self.num, self.den, modulus)

    def __str__(self):
        return format_ratfunc(self)

    def __repr__(self):
        return f"RationalFunction({format_ratfunc(self)!r})"


_COMPATIBLE = {}


def _compatible(a, b):
    """Do two moduli define the same ideal (up to extra coefficient variables)?"""
    key = (id(a), id(b))
    hit = _COMPATIBLE.get(key)
    if hit is None or hit[0] is not a or hit[1] is not b:
        ok = a.contains_ideal(b) and b.contains_ideal(a)
        hit = (a, b, ok)
        _COMPATIBLE[key] = hit
    return hit[2]


def _wrap(s, p):
    simple = len(p.terms) <= 1 and not s.startswith("-") and "*" not in s and "/" not in s
    return s if simple else f"({s})"


def format_ratfunc(r):
    if r.den.is_constant():
        return str(r.num / r.den.constant_value())
    ns = str(r.num)
    ds = str(r.den)
    return f"{_wrap(ns, r.num) if len(r.num.terms) > 1 else ns}/{_wrap(ds, r.den)}"


def _normalize(num, den, modulus):
    if modulus is not None:
        num = modulus.normal_form(num)
        den = modulus.normal_form(den)
        if num.gens != den.gens:
            g = union_gens(num.gens, den.gens)
            num, den = num.to_gens(g), den.to_gens(g)
    if den.is_zero():
        raise ZeroDivisionError("denominator vanishes on the base")
    if num.is_zero():
        return num, Poly.const(1, num.gens)
    if den.is_constant():
        c = den.constant_value()
        return num * (ONE / c), Poly.const(1, num.gens)
    # common monomial factor
    m = [min(a, b) for a, b in zip(num.monomial_content(), den.monomial_content())]
    if any(m):
        num = num.divide_monomial(m)
        den = den.divide_monomial(m)
    q = num.exact_div(den)
    if q is not None:
        if modulus is not None:
            q = modulus.normal_form(q).to_gens(num.gens)
        return q, Poly.const(1, num.gens)
    q2 = den.exact_div(num)
    if q2 is not None:
        num, den = Poly.const(1, num.gens), q2
    _, lc = den.leading()
    if lc != 1:
        inv = ONE / lc
        num, den = num * inv, den * inv
    return num, den


def as_ratfunc(x, modulus=None):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, Poly):
        return RationalFunction(x, None, modulus)
    return RationalFunction(Poly.const(x), None, modulus)
