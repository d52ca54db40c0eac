"""Fundamental classes of complete intersections and Grothendieck residues.

For a regular sequence f_1..f_p in the fiber variables the class of
X = V(f) is represented by df_1 ^ ... ^ df_p / (f_1 ... f_p); pairing with
it and integrating over the fiber is the global residue

    Res_f[h] = sum over the points of the fiber of Res_point[h dx / f].

Residues are normalized so that Res[dx/x] = 1 (the factor (2 pi i)^p is
absorbed).  They are computed by the transformation law: every fiber
variable x_i has a monic univariate eliminant g_i(x_i) in the ideal (its
characteristic polynomial on the quotient algebra); writing g = A f gives
Res_f[h] = Res_g[h det A], and for separated monic g the residue is the
coefficient of x_1^(d_1 - 1) ... x_p^(d_p - 1) in the remainder of
h det A modulo (g_1, ..., g_p).
"""

from dataclasses import dataclass
from itertools import combinations_with_replacement

from .errors import LiftFailure, NotFiniteError, NotZeroDimensional
from .poly import Poly, QuotientAlgebra, RationalFunction
from .poly import linalg
from .traceforms import RelativeForm


@dataclass
class CechCocycle:
    numerator: RelativeForm         # df_1 ^ ... ^ df_p (fiber differentials)
    denominators: list              # f_1, ..., f_p

    @property
    def p(self):
        return len(self.denominators)

    @property
    def jacobian(self):
        """det(d f_i / d x_j), the coefficient of dx_1 ^ ... ^ dx_p."""
        key = tuple(range(len(self.numerator.chart),
                          len(self.numerator.chart) + self.p))
        return self.numerator.terms.get(key, Poly.const(0, self.denominators[0].gens))


def cech_leray(fs, fiber, chart=()):
    """The Cech-Leray representative of the class of V(f_1, ..., f_p)."""
    fs = list(fs)
    if not fs:
        raise ValueError("at least one equation is needed")
    fiber = tuple(fiber)
    chart = tuple(chart)
    num = RelativeForm.function(Poly.const(1, fs[0].gens), chart, fiber)
    for f in fs:
        df = RelativeForm({}, chart, fiber)
        for j, x in enumerate(fiber):
            c = f.diff(x) if x in f.gens else Poly.const(0, f.gens)
            if not c.is_zero():
                df = df + RelativeForm({(len(chart) + j,): c}, chart, fiber)
        num = num.wedge(df)
    return CechCocycle(num, fs)


def jacobian(fs, fiber):
    """det(d f_i / d x_j) as a polynomial."""
    fs = list(fs)
    m = [[f.diff(x) if x in f.gens else Poly.const(0, f.gens) for x in fiber] for f in fs]
    return _pdet(m)


def _pdet(m):
    if len(m) == 1:
        return m[0][0]
    total = None
    for a in range(len(m)):
        minor = [row[:a] + row[a + 1:] for row in m[1:]]
        t = m[0][a] * _pdet(minor)
        if a % 2:
            t = -t
        total = t if total is None else total + t
    return total


# polynomials in the fiber variables over K, as {exponent: K-element}


def _kpoly(qa, p):
    F = qa.field
    if not isinstance(p, Poly):
        return {(0,) * len(qa.fiber): F.one * p} if p else {}
    out = {}
    for m, c in p.coefficients_in(qa.fiber).items():
        v = F.from_poly(c.to_gens(qa.coeff_vars) if qa.coeff_vars else c)
        if not linalg.is_zero(v):
            out[m] = v
    return out


def _kadd(a, b):
    out = dict(a)
    for m, c in b.items():
        s = out[m] + c if m in out else c
        if linalg.is_zero(s):
            out.pop(m, None)
        else:
            out[m] = s
    return out


def _kmul(a, b):
    out = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            s = out[m] + c1 * c2 if m in out else c1 * c2
            if linalg.is_zero(s):
                out.pop(m, None)
            else:
                out[m] = s
    return out


def _kneg(a):
    return {m: -c for m, c in a.items()}


def _kdet(m):
    if len(m) == 1:
        return m[0][0]
    total = {}
    for a in range(len(m)):
        minor = [row[:a] + row[a + 1:] for row in m[1:]]
        t = _kmul(m[0][a], _kdet(minor))
        total = _kadd(total, _kneg(t) if a % 2 else t)
    return total


def _monomials_upto(p, d):
    out = []
    for k in range(d + 1):
        for combo in combinations_with_replacement(range(p), k):
            e = [0] * p
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    return out


# the residue problem


@dataclass
class ResidueProblem:
    h: Poly
    fs: list
    fiber: tuple
    coeff_vars: tuple = ()
    base: tuple = ()                # base ideal generators in the coefficient variables


class _Setup:
    """Quotient algebra, eliminants and lift for one residue problem."""

    def __init__(self, fs, fiber, coeff_vars=(), base=()):
        self.fs = list(fs)
        self.fiber = tuple(fiber)
        if len(self.fs) != len(self.fiber):
            raise ValueError("a residue needs as many equations as fiber variables")
        try:
            self.qa = QuotientAlgebra(self.fs, self.fiber, coeff_vars, base)
        except NotFiniteError as exc:
            raise NotZeroDimensional(str(exc)) from None
        qa = self.qa
        self.fk = [_kpoly(qa, f) for f in self.fs]
        self.gs = []
        p = len(self.fiber)
        self.degrees = [qa.dim] * p
        if qa.dim == 0:
            return
        for i, x in enumerate(self.fiber):
            cp = linalg.charpoly(qa.var_matrix(x), qa.field.one)
            g = {}
            for k, c in enumerate(cp):
                if not linalg.is_zero(c):
                    e = [0] * p
                    e[i] = k
                    g[tuple(e)] = c
            self.gs.append(g)

    def lift(self, cap=None):
        """A with g_i = sum_j A_ij f_j, found by linear algebra over K with
        increasing degree of the entries."""
        qa = self.qa
        F = qa.field
        p = len(self.fiber)
        dim = qa.dim
        mindeg = min(max(sum(m) for m in f) for f in self.fk)
        cap = cap if cap is not None else 2 * (dim + 1) + mindeg
        D = max(dim - mindeg, 0)
        while D <= cap:
            monos = _monomials_upto(p, D)
            columns, labels = [], []
            for j, f in enumerate(self.fk):
                for m in monos:
                    columns.append({tuple(a + b for a, b in zip(e, m)): c for e, c in f.items()})
                    labels.append((j, m))
            rows = []
            for g in self.gs:
                sol = linalg.solve_sparse_field(columns, g, F.zero, F.one)
                if sol is None:
                    break
                row = [{} for _ in range(p)]
                for (j, m), v in zip(labels, sol):
                    if not linalg.is_zero(v):
                        row[j][m] = v
                rows.append(row)
            if len(rows) == p:
                return rows
            D = 2 * D + 1
        raise LiftFailure(f"no lift of the eliminants with entries of degree <= {cap}")

    def reduce(self, poly):
        """Remainder modulo the separated eliminants (one variable at a time)."""
        out = dict(poly)
        for i, g in enumerate(self.gs):
            d = self.degrees[i]
            lower = {e[i]: c for e, c in g.items() if e[i] < d}
            while True:
                big = [m for m in out if m[i] >= d]
                if not big:
                    break
                m = max(big, key=lambda e: e[i])
                c = out.pop(m)
                for k, gc in lower.items():
                    e = list(m)
                    e[i] = m[i] - d + k
                    e = tuple(e)
                    s = out[e] - c * gc if e in out else -(c * gc)
                    if linalg.is_zero(s):
                        out.pop(e, None)
                    else:
                        out[e] = s
        return out

    def residue(self, h, lift=None):
        qa = self.qa
        F = qa.field
        if qa.dim == 0:
            return F.zero
        A = lift if lift is not None else self.lift()
        det = _kdet(A)
        r = self.reduce(_kmul(_kpoly(qa, h), det))
        top = tuple(d - 1 for d in self.degrees)
        return r.get(top, F.zero)


def grothendieck_residue(h, fs, fiber, coeff_vars=(), base=(), lift=None):
    """Res[h dx / (f_1 ... f_p)] summed over the fiber, as an element of
    the base function field (Q when there are no coefficient variables)."""
    if isinstance(h, ResidueProblem):
        h, fs, fiber, coeff_vars, base = h.h, h.fs, h.fiber, h.coeff_vars, h.base
    s = _Setup(fs, fiber, coeff_vars, base)
    return s.residue(h, lift)


def residue_setup(fs, fiber, coeff_vars=(), base=()):
    """Reusable eliminants and lift (for many residues with the same f)."""
    return _Setup(fs, fiber, coeff_vars, base)


def koszul_shift(setup, A, i, j, k, q):
    """Another lift: add q*(f_k e_j - f_j e_k) to row i of A.

    The relation g_i = sum_j A_ij f_j is preserved, so the residue must not
    change."""
    qk = _kpoly(setup.qa, q)
    out = [[dict(e) for e in row] for row in A]
    out[i][j] = _kadd(out[i][j], _kmul(qk, setup.fk[k]))
    out[i][k] = _kadd(out[i][k], _kneg(_kmul(qk, setup.fk[j])))
    return out


def trace_via_class(cov, h):
    """Weighted trace of h computed as Res[h * Jacobian; f] per component.

    Each component needs a complete intersection presentation (its ``ci``
    equations, or its ideal when that has exactly p generators).
    """
    from .covering import _as_poly
    sc = cov.scale
    h = _as_poly(cov, h)
    total = None
    for comp in cov.components:
        fs = comp.ci or (comp.ideal if len(comp.ideal) == sc.p else None)
        if not fs:
            raise ValueError(f"component {comp.name!r} has no complete intersection presentation")
        base = list(sc.base_ideal) + list(comp.base_ideal)
        setup = _setup_for(cov, comp, fs, base)
        J = jacobian(fs, sc.fiber)
        r = setup.residue(h * J) * comp.weight
        total = r if total is None else total + r
    return total


def _setup_for(cov, comp, fs, base):
    cache = cov.__dict__.setdefault("_residue_setups", {})
    if comp.name not in cache:
        cache[comp.name] = _Setup(fs, cov.scale.fiber, cov.scale.coeff_vars, base)
    return cache[comp.name]


__all__ = [
    "CechCocycle", "ResidueProblem", "cech_leray", "grothendieck_residue", "jacobian",
    "koszul_shift", "residue_setup", "trace_via_class",
]
