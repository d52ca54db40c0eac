"""Relative differential forms on a covering and their traces.

A relative form is a sum of coefficient * dt_K ^ dx_J where the
coefficients are polynomials (or rational functions) in s, t, x; the base
coordinates s are constants.  Its trace is a form in dt only, with
coefficients rational functions on the base.
"""

from itertools import combinations

from .covering import _monomials, _multinomial, classifying_map, component_trace
from .errors import CycleTraceError, ParseError
from .poly import Poly, RationalFunction, is_regular_on, simplify_fraction
from .poly import linalg
from .poly.compose import compose
from .poly.parse import ExprParser
from .poly.polynomial import to_q


def _sort_sign(idx):
    """Sort indices, returning (sorted tuple, sign) or (None, 0) on repeats."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return None, 0
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    return tuple(idx), sign


def _is_zero(c):
    return linalg.is_zero(c)


class RelativeForm:
    """Differential form in the chart and fiber coordinates.

    ``terms`` maps sorted tuples of indices into ``chart + fiber`` to
    coefficients.
    """

    def __init__(self, terms, chart, fiber):
        self.chart = tuple(chart)
        self.fiber = tuple(fiber)
        self.terms = {k: c for k, c in terms.items() if not _is_zero(c)}

    @property
    def names(self):
        return self.chart + self.fiber

    @classmethod
    def function(cls, c, chart, fiber):
        return cls({(): c}, chart, fiber)

    @classmethod
    def differential(cls, var, chart, fiber):
        names = tuple(chart) + tuple(fiber)
        return cls({(names.index(var),): Poly.const(1)}, chart, fiber)

    def _same(self, other):
        if (self.chart, self.fiber) != (other.chart, other.fiber):
            raise ValueError("forms over different coordinates")

    def _lift(self, other):
        if isinstance(other, RelativeForm):
            self._same(other)
            return other
        return RelativeForm.function(other, self.chart, self.fiber)

    def _new(self, terms):
        return type(self)(terms, self.chart, self.fiber)

    def __add__(self, other):
        o = self._lift(other)
        out = dict(self.terms)
        for k, c in o.terms.items():
            out[k] = out[k] + c if k in out else c
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def wedge(self, other):
        o = self._lift(other)
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in o.terms.items():
                k, sign = _sort_sign(k1 + k2)
                if k is None:
                    continue
                c = c1 * c2 if sign > 0 else -(c1 * c2)
                out[k] = out[k] + c if k in out else c
        return self._new(out)

    def __mul__(self, other):
        if isinstance(other, RelativeForm):
            return self.wedge(other)
        return self._new({k: c * other for k, c in self.terms.items()})

    def __rmul__(self, other):
        return self._new({k: other * c for k, c in self.terms.items()})

    def __truediv__(self, other):
        if isinstance(other, RelativeForm):
            if set(other.terms) - {()}:
                raise ValueError("can only divide by a function")
            other = other.terms.get((), 0)
        if not isinstance(other, (RationalFunction,)):
            if isinstance(other, Poly) and not other.is_constant():
                other = RationalFunction(other)
        return self._new({k: c / other for k, c in self.terms.items()})

    def __pow__(self, k):
        if set(self.terms) - {()}:
            raise ValueError("only functions can be raised to powers")
        return self._new({(): self.terms.get((), Poly.const(0)) ** k})

    def degree(self):
        """Form degree (largest among terms; 0 for the zero form)."""
        return max((len(k) for k in self.terms), default=0)

    def is_zero(self):
        return not self.terms

    def d(self):
        """Exterior derivative along chart and fiber coordinates."""
        out = {}
        for k, c in self.terms.items():
            for i, v in enumerate(self.names):
                dc = c.diff(v)
                if _is_zero(dc):
                    continue
                kk, sign = _sort_sign((i,) + k)
                if kk is None:
                    continue
                dc = dc if sign > 0 else -dc
                out[kk] = out[kk] + dc if kk in out else dc
        return self._new(out)

    def __eq__(self, other):
        if not isinstance(other, RelativeForm):
            if other == 0:
                return self.is_zero()
            return NotImplemented
        diff = self - other
        return diff.is_zero()

    def __str__(self):
        return format_form(self)

    def __repr__(self):
        return f"{type(self).__name__}({format_form(self)!r})"


class TracedForm(RelativeForm):
    """A form in the chart differentials only, with coefficients on the base."""

    def __init__(self, terms, chart, fiber=()):
        super().__init__(terms, chart, ())

    def _new(self, terms):
        return TracedForm(terms, self.chart)

    def d(self):
        return RelativeForm.d(self)


def format_form(w):
    if not w.terms:
        return "0"
    names = w.names
    parts = []
    for k in sorted(w.terms, key=lambda k: (len(k), k)):
        c = w.terms[k]
        cs = str(c)
        diff = "^".join("d" + names[i] for i in k)
        neg = cs.startswith("-") and not (" + " in cs or " - " in cs[1:])
        if neg:
            cs = cs[1:]
        if diff:
            if cs == "1":
                body = diff
            elif " + " in cs or " - " in cs:
                body = f"({cs})*{diff}"
            else:
                body = f"{cs}*{diff}"
        else:
            body = cs
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


def parse_form(text, chart, fiber, base=(), extra=()):
    """Parse a relative form such as ``u*du + 3/2*t*dv`` or ``du^dv``."""
    chart, fiber = tuple(chart), tuple(fiber)
    ring = tuple(base) + chart + fiber + tuple(extra)

    def resolve(name, col):
        if name in ring:
            return RelativeForm.function(Poly.var(name, ring), chart, fiber)
        if name.startswith("d") and name[1:] in chart + fiber:
            return RelativeForm.differential(name[1:], chart, fiber)
        raise ParseError(f"unknown name {name!r}", column=col)

    def number(q):
        return RelativeForm.function(Poly.const(q, ring), chart, fiber)

    def wedge(a, b, tok):
        return a.wedge(b)

    w = ExprParser(text, resolve, wedge=wedge, make_number=number).parse()
    # normalise polynomial coefficients
    terms = {}
    for k, c in w.terms.items():
        if isinstance(c, RationalFunction) and c.den.is_constant():
            c = c.as_poly()
        if isinstance(c, Poly):
            c = c.to_gens(ring)
        terms[k] = c
    return RelativeForm(terms, chart, fiber)


def _form(cov, w):
    sc = cov.scale
    if isinstance(w, str):
        return parse_form(w, sc.chart, sc.fiber, sc.base)
    if isinstance(w, RelativeForm):
        return w
    return RelativeForm.function(w, sc.chart, sc.fiber)


# pullback along branches


def pullback(cov, comp, branch, w):
    """Pullback of a relative form along one branch x = f(s, t)."""
    sc = cov.scale
    w = _form(cov, w)
    vals = cov.branch_values(comp, branch)
    mod = cov.branch_modulus(comp)
    n = sc.n
    ones = {}
    for i, t in enumerate(sc.chart):
        ones[i] = TracedForm({(i,): RationalFunction(Poly.const(1), None, mod)}, sc.chart)
    for j, x in enumerate(sc.fiber):
        f = vals[x]
        if not isinstance(f, RationalFunction):
            f = RationalFunction(f if isinstance(f, Poly) else Poly.const(f), None, mod)
        terms = {}
        for i, t in enumerate(sc.chart):
            terms[(i,)] = f.diff(t)
        ones[n + j] = TracedForm(terms, sc.chart)
    out = TracedForm({}, sc.chart)
    for k, c in w.terms.items():
        if isinstance(c, RationalFunction):
            cc = compose(c.num, vals, mod) / compose(c.den, vals, mod)
        else:
            cc = compose(c, vals, mod)
        piece = TracedForm({(): cc}, sc.chart)
        for i in k:
            piece = piece.wedge(ones[i])
        out = out + piece
    return out


# implicit traces


def _adjugate_inverse(qa, m):
    """Inverse of a square matrix over the algebra qa (entries are vectors)."""
    p = len(m)

    def det(rows, cols):
        if len(rows) == 1:
            return m[rows[0]][cols[0]]
        total = None
        for a, c in enumerate(cols):
            minor = det(rows[1:], cols[:a] + cols[a + 1:])
            t = qa.mul(m[rows[0]][c], minor)
            if a % 2:
                t = qa.scale(-1, t)
            total = t if total is None else qa.add(total, t)
        return total

    full = det(list(range(p)), list(range(p)))
    if not qa.is_unit(full):
        return None
    inv = qa.inverse(full)
    out = [[None] * p for _ in range(p)]
    for i in range(p):
        for j in range(p):
            if p == 1:
                cof = qa.element(Poly.const(1, qa.fiber))
            else:
                rows = [r for r in range(p) if r != j]
                cols = [c for c in range(p) if c != i]
                cof = det(rows, cols)
                if (i + j) % 2:
                    cof = qa.scale(-1, cof)
            out[i][j] = qa.mul(cof, inv)
    return out, full


def _poly_det(m):
    if len(m) == 1:
        return m[0][0]
    total = None
    for a in range(len(m)):
        minor = [row[:a] + row[a + 1:] for row in m[1:]]
        t = m[0][a] * _poly_det(minor)
        if a % 2:
            t = -t
        total = t if total is None else total + t
    return total


def _presentation(cov, comp, qa):
    """p equations from the component whose fiber Jacobian is a unit.

    Candidates are tried by increasing size of the Jacobian determinant,
    which keeps the coefficients of dx in terms of dt small.
    """
    sc = cov.scale
    p = sc.p
    pools = []
    if comp.ci:
        pools.append(list(comp.ci))
    gens = list(comp.ideal)
    for sub in combinations(range(len(gens)), p):
        pools.append([gens[i] for i in sub])
    basis = [b for b in qa.ideal.basis if b.used_vars() & set(sc.fiber)]
    for sub in combinations(range(min(len(basis), 8)), p):
        pools.append([basis[i] for i in sub])
    scored = []
    for n, fs in enumerate(pools):
        dp = _poly_det([[f.diff(x) for x in sc.fiber] for f in fs])
        if dp.is_zero():
            continue
        scored.append((len(dp.terms), dp.degree(), n, fs))
    scored.sort(key=lambda s: s[:3])
    for _, _, _, fs in scored:
        jx = [[qa.element(f.diff(x)) for x in sc.fiber] for f in fs]
        res = _adjugate_inverse(qa, jx)
        if res is not None:
            inv, _ = res
            jt = [[qa.element(f.diff(t)) for t in sc.chart] for f in fs]
            return fs, inv, jt
    raise CycleTraceError(f"no presentation of {comp.name!r} with invertible fiber Jacobian")


def _implicit_dx(cov, comp):
    """dx_j = sum_i D[j][i] dt_i on the algebra of the component."""
    qa = cov.algebra(comp)
    cache = cov.__dict__.setdefault("_dx", {})
    if comp.name not in cache:
        sc = cov.scale
        _, inv, jt = _presentation(cov, comp, qa)
        D = []
        for j in range(sc.p):
            row = []
            for i in range(sc.n):
                acc = None
                for r in range(sc.p):
                    t = qa.mul(inv[j][r], jt[r][i])
                    acc = t if acc is None else qa.add(acc, t)
                row.append(qa.scale(-1, acc))
            D.append(row)
        cache[comp.name] = D
    return qa, cache[comp.name]


def _implicit_trace(cov, comp, w):
    sc = cov.scale
    qa, D = _implicit_dx(cov, comp)
    F = qa.field
    n = sc.n
    one = qa.element(Poly.const(1, sc.fiber))
    ones = {}
    for i in range(n):
        ones[i] = {(i,): one}
    for j in range(sc.p):
        ones[n + j] = {(i,): D[j][i] for i in range(n)}
    acc = {}
    for k, c in w.terms.items():
        if isinstance(c, RationalFunction):
            if c.den.used_vars() & set(sc.fiber):
                raise CycleTraceError("coefficients may only have base denominators")
            cv = qa.scale(F.one / F.from_poly(c.den.to_gens(sc.coeff_vars)),
                          qa.element(c.num))
        else:
            cv = qa.element(c)
        piece = {(): cv}
        for i in k:
            new = {}
            for k1, a in piece.items():
                for k2, b in ones[i].items():
                    kk, sign = _sort_sign(k1 + k2)
                    if kk is None:
                        continue
                    ab = qa.mul(a, b)
                    if sign < 0:
                        ab = qa.scale(-1, ab)
                    new[kk] = qa.add(new[kk], ab) if kk in new else ab
            piece = new
        for kk, v in piece.items():
            acc[kk] = qa.add(acc[kk], v) if kk in acc else v
    return TracedForm({kk: qa.trace(v) for kk, v in acc.items()}, sc.chart)


def component_trace_form(cov, comp, w, route="auto"):
    w = _form(cov, w)
    if route == "auto":
        route = "algebra" if comp.ideal else "branches"
    if route == "algebra":
        if w.degree() == 0:
            c = w.terms.get((), Poly.const(0))
            return TracedForm({(): component_trace(cov, comp, c, "algebra")}, cov.scale.chart)
        return _implicit_trace(cov, comp, w)
    if route != "branches":
        raise ValueError(f"unknown route {route!r}")
    if not comp.branches:
        raise ValueError(f"component {comp.name!r} has no branches")
    out = TracedForm({}, cov.scale.chart)
    for br in comp.branches:
        out = out + pullback(cov, comp, br, w)
    return out


def trace_form(cov, w, route="auto"):
    """Weighted trace of a relative form."""
    w = _form(cov, w)
    out = None
    for comp in cov.components:
        t = component_trace_form(cov, comp, w, route) * comp.weight
        out = t if out is None else out + t
    return out


def d_relative(w):
    return w.d()


def simplify_form(t):
    """Replace regular coefficients by polynomial representatives."""
    out = {}
    for k, c in t.terms.items():
        if isinstance(c, RationalFunction) and not c.den.is_constant():
            reg = is_regular_on(c)
            if reg.regular:
                c = RationalFunction(reg.witness, None, c.modulus)
            else:
                dec = simplify_fraction(c)
                if dec.denominator.degree() < c.den.degree():
                    c = RationalFunction(dec.polynomial, None, c.modulus) + dec.fraction
        out[k] = c
    return TracedForm(out, t.chart)


def form_regular(t):
    """(True, None) if every coefficient is regular, else (False, key)."""
    for k in sorted(t.terms, key=lambda k: (len(k), k)):
        c = t.terms[k]
        if isinstance(c, RationalFunction) and not c.den.is_constant():
            if not is_regular_on(c).regular:
                return False, k
    return True, None


# Newton relations for forms


def newton_form(cov, m, J, route="auto"):
    """w_{m,J}(xi) = trace of <x, xi>^m dx_J, coefficients polynomial in xi."""
    sc = cov.scale
    dual = tuple(f"xi{i + 1}" for i in range(sc.p))
    diff = RelativeForm.function(Poly.const(1, sc.ring), sc.chart, sc.fiber)
    for j in J:
        diff = diff.wedge(RelativeForm.differential(sc.fiber[j] if isinstance(j, int) else j,
                                                    sc.chart, sc.fiber))
    out = TracedForm({}, sc.chart)
    for a in _monomials(sc.p, m):
        w = diff * Poly.monomial(a, sc.fiber)
        t = trace_form(cov, w, route)
        coef = Poly.monomial(a, dual, _multinomial(a))
        out = out + TracedForm({k: c * coef for k, c in t.terms.items()}, sc.chart)
    return out


def newton_form_residual(cov, m, J, route="auto"):
    """sum_{h=0..k} (-1)^h S_h w_{m+k-h, J}; zero on a covering."""
    k = cov.degree()
    cm = classifying_map(cov, k, route, check_regular=False)
    S = [1] + cm.symmetric_coordinates()
    total = TracedForm({}, cov.scale.chart)
    for h in range(k + 1):
        w = newton_form(cov, m + k - h, J, route)
        term = TracedForm({kk: c * S[h] for kk, c in w.terms.items()}, cov.scale.chart)
        total = total - term if h % 2 else total + term
    return total


# the trace property


def monomial_forms(cov, monomial_bound, form_degree):
    """x^I dx^J with |I| <= monomial_bound and |J| = form_degree, ordered by
    |I|, then I (lexicographically decreasing), then J."""
    sc = cov.scale
    out = []
    for J in combinations(range(sc.p), form_degree):
        for d in range(monomial_bound + 1):
            for a in _monomials(sc.p, d):
                out.append((a, J))
    out.sort(key=lambda aj: (sum(aj[0]), tuple(-x for x in aj[0]), aj[1]))
    return out


def monomial_form(cov, a, J):
    sc = cov.scale
    w = RelativeForm.function(Poly.monomial(a, sc.fiber), sc.chart, sc.fiber)
    for j in J:
        w = w.wedge(RelativeForm.differential(sc.fiber[j], sc.chart, sc.fiber))
    return w


def trace_property_check(cov, xi, bound=2, route="auto"):
    """Is trace(xi ^ alpha) regular for every monomial form alpha?

    Returns (True, None, None) or (False, alpha, traced form) for the first
    failure.  The zero form passes vacuously.
    """
    sc = cov.scale
    xi = _form(cov, xi)
    if xi.is_zero():
        return True, None, None
    top = sc.n - xi.degree()
    for r in range(0, max(top, 0) + 1):
        for a, J in monomial_forms(cov, bound, r):
            alpha = monomial_form(cov, a, J)
            prod = xi.wedge(alpha)
            if prod.is_zero():
                continue
            t = trace_form(cov, prod, route)
            ok, _ = form_regular(t)
            if not ok:
                return False, alpha, t
    return True, None, None


def random_form(rng, cov, degree, max_deg=2, max_terms=3):
    """A small random relative form of the given degree (for testing)."""
    sc = cov.scale
    names = sc.chart + sc.fiber
    ring = sc.ring
    w = RelativeForm({}, sc.chart, sc.fiber)
    for _ in range(rng.randint(1, max_terms)):
        e = [0] * len(ring)
        for _ in range(rng.randint(0, max_deg)):
            e[rng.randrange(len(ring))] += 1
        c = Poly({tuple(e): to_q(rng.randint(-3, 3))}, ring)
        key = tuple(sorted(rng.sample(range(len(names)), degree)))
        w = w + RelativeForm({key: c}, sc.chart, sc.fiber)
    return w


__all__ = [
    "RelativeForm", "TracedForm", "component_trace_form", "d_relative", "form_regular",
    "monomial_form", "monomial_forms", "newton_form", "newton_form_residual",
    "parse_form", "pullback", "random_form", "simplify_form", "trace_form",
    "trace_property_check",
]
