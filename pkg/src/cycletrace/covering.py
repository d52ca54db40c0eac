"""Finite coverings over a base scale and their trace maps.

A scale is a base variety S (coordinates s, ideal I_S) times a chart U
(coordinates t); the covering lives in S x U x A^p with fiber coordinates
x.  Each component carries a positive weight and is given by rational
branches x = f(s, t), by an ideal I_X, or both.  Traces are computed from
the branches (summing pullbacks) or from the quotient algebra K[x]/I_X over
the function field K of the component's base.
"""

import random
from dataclasses import dataclass, field
from math import factorial

from .errors import AllProjectionsDegenerate, EliminantDegenerate, NotFiniteError
from .poly import Ideal, Poly, QuotientAlgebra, RationalFunction, is_regular_on
from .poly import univariate as uni
from .poly.compose import compose
from .poly.linalg import nullspace
from .poly.polynomial import union_gens
from .symprod import elem_from_power


@dataclass
class Scale:
    base: tuple
    base_ideal: list = field(default_factory=list)
    chart: tuple = ()
    fiber: tuple = ()
    params: tuple = ()
    parametrization: dict = field(default_factory=dict)   # base var -> Poly in params

    def __post_init__(self):
        self.base = tuple(self.base)
        self.chart = tuple(self.chart)
        self.fiber = tuple(self.fiber)
        self.params = tuple(self.params)
        names = self.base + self.chart + self.fiber + self.params
        if len(set(names)) != len(names):
            raise ValueError("variable names must be distinct across base, chart, fiber and params")
        if self.parametrization and set(self.parametrization) != set(self.base):
            raise ValueError("a parametrization must give every base coordinate")

    @property
    def n(self):
        return len(self.chart)

    @property
    def p(self):
        return len(self.fiber)

    @property
    def ring(self):
        return self.base + self.chart + self.fiber

    @property
    def coeff_vars(self):
        return self.base + self.chart


@dataclass
class Component:
    name: str
    weight: int = 1
    base_ideal: list = field(default_factory=list)
    ideal: list = field(default_factory=list)
    branches: list = field(default_factory=list)   # dicts fiber var -> RationalFunction
    ci: list = field(default_factory=list)         # complete intersection presentation

    def __post_init__(self):
        if not isinstance(self.weight, int) or self.weight < 1:
            raise ValueError("component weights must be positive integers")


class Covering:
    """A weighted finite covering 𝔛 -> S x U."""

    def __init__(self, scale, components, name="covering"):
        self.scale = scale
        self.components = list(components)
        self.name = name
        if not self.components:
            raise ValueError("a covering needs at least one component")
        seen = set()
        for c in self.components:
            if c.name in seen:
                raise ValueError(f"duplicate component name {c.name!r}")
            seen.add(c.name)
            if not c.ideal and not c.branches:
                raise ValueError(f"component {c.name!r} has neither branches nor an ideal")
        self._qa = {}
        self._moduli = {}
        self._ci_qa = {}

    # structure

    def component(self, name):
        for c in self.components:
            if c.name == name:
                return c
        raise KeyError(name)

    def with_weights(self, weights):
        """Same covering with new weights (a dict name -> weight or a list)."""
        if not isinstance(weights, dict):
            weights = {c.name: w for c, w in zip(self.components, weights)}
        comps = []
        for c in self.components:
            comps.append(Component(c.name, weights.get(c.name, c.weight), c.base_ideal,
                                   c.ideal, c.branches, c.ci))
        out = Covering(self.scale, comps, self.name)
        out._qa = self._qa
        out._moduli = self._moduli
        out._ci_qa = self._ci_qa
        # caches kept by other modules depend only on the components' equations
        for key in ("_dx", "_residue_setups"):
            out.__dict__[key] = self.__dict__.setdefault(key, {})
        return out

    def base_modulus(self, comp):
        """Ideal of the component's base in Q[s] (None when zero)."""
        if comp.name not in self._moduli:
            gens = list(self.scale.base_ideal) + list(comp.base_ideal)
            gens = [g for g in gens if g]
            self._moduli[comp.name] = (Ideal(gens, variables=self.scale.base)
                                       if gens else None)
        return self._moduli[comp.name]

    def algebra(self, comp):
        """Quotient algebra K[x]/I_X for an implicit component."""
        if not comp.ideal:
            raise ValueError(f"component {comp.name!r} has no ideal")
        if comp.name not in self._qa:
            sc = self.scale
            base = list(sc.base_ideal) + list(comp.base_ideal)
            self._qa[comp.name] = QuotientAlgebra(comp.ideal, sc.fiber, sc.coeff_vars, base)
        return self._qa[comp.name]

    def ci_algebra(self, comp):
        """Quotient algebra of the complete intersection presentation."""
        if not comp.ci:
            raise ValueError(f"component {comp.name!r} has no complete intersection presentation")
        if comp.name not in self._ci_qa:
            sc = self.scale
            base = list(sc.base_ideal) + list(comp.base_ideal)
            self._ci_qa[comp.name] = QuotientAlgebra(comp.ci, sc.fiber, sc.coeff_vars, base)
        return self._ci_qa[comp.name]

    def uses_params(self, comp):
        return bool(self.scale.params) and bool(comp.branches)

    def branch_modulus(self, comp):
        return None if self.scale.params else self.base_modulus(comp)

    def branch_values(self, comp, branch):
        """Substitution map for a branch: fiber vars (and base vars when the
        base is parametrized) -> rational functions."""
        mod = self.branch_modulus(comp)
        m = {v: (val.with_modulus(mod) if isinstance(val, RationalFunction) else val)
             for v, val in branch.items()}
        if self.scale.params:
            for v, w in self.scale.parametrization.items():
                m[v] = w
        return m

    def to_params(self, r):
        """Pull a base function back along the parametrization of the base."""
        sc = self.scale
        if not sc.params:
            return r
        if isinstance(r, RationalFunction):
            r = RationalFunction(r.num, r.den)
            return compose(r.num, sc.parametrization) / compose(r.den, sc.parametrization)
        return compose(r, sc.parametrization)

    def validate(self):
        """Check that branches satisfy the ideal and I_S lies in I_X."""
        problems = []
        sc = self.scale
        for c in self.components:
            if c.ideal and sc.base_ideal:
                qa = self.algebra(c)
                mod = qa.base_ideal
                for g in sc.base_ideal:
                    if mod is None or not mod.contains(g):
                        problems.append(f"{c.name}: base equation {g} does not vanish on the covering")
            if c.ideal and c.branches:
                for i, br in enumerate(c.branches):
                    vals = self.branch_values(c, br)
                    for g in c.ideal:
                        r = compose(g, vals, self.branch_modulus(c))
                        if not r.is_zero():
                            problems.append(f"{c.name}: branch {i + 1} does not satisfy {g}")
        return problems

    # degrees

    def component_degree(self, comp):
        if comp.ideal:
            return self.algebra(comp).dim
        return len(comp.branches)

    def degree(self):
        return sum(c.weight * self.component_degree(c) for c in self.components)


def _as_poly(cov, h):
    if isinstance(h, str):
        from .poly import parse_poly
        return parse_poly(h, cov.scale.ring)
    if not isinstance(h, Poly):
        return Poly.const(h, cov.scale.ring)
    return h


def _route(comp, route, cov):
    if route == "auto":
        return "algebra" if comp.ideal else "branches"
    if route == "branches" and not comp.branches:
        raise ValueError(f"component {comp.name!r} has no branches")
    if route == "algebra" and not comp.ideal:
        raise ValueError(f"component {comp.name!r} has no ideal")
    if route not in ("algebra", "branches"):
        raise ValueError(f"unknown route {route!r}")
    return route


def component_trace(cov, comp, h, route="auto"):
    """Unweighted trace of h on one component."""
    h = _as_poly(cov, h)
    r = _route(comp, route, cov)
    if r == "algebra":
        return cov.algebra(comp).trace(h)
    mod = cov.branch_modulus(comp)
    total = None
    for br in comp.branches:
        val = compose(h, cov.branch_values(comp, br), mod)
        total = val if total is None else total + val
    return total


def trace0(cov, h, route="auto"):
    """Weighted trace of a function h(s, t, x) on the covering."""
    total = None
    for comp in cov.components:
        tr = component_trace(cov, comp, h, route) * comp.weight
        if total is None:
            total = tr
        else:
            if not same_base(total.modulus, tr.modulus):
                raise ValueError("components lie over different bases; use component_trace")
            total = total + tr.with_modulus(total.modulus)
    return total


def same_base(m1, m2):
    if m1 is None or m2 is None:
        return m1 is None and m2 is None
    if m1 is m2:
        return True
    return m1.contains_ideal(m2) and m2.contains_ideal(m1)


def is_regular(r, degree_bound=None):
    if not isinstance(r, RationalFunction):
        return True
    return is_regular_on(r, None, degree_bound).regular


def simplified(r):
    """A polynomial representative when r is regular, else r itself."""
    if isinstance(r, RationalFunction) and not r.den.is_constant():
        reg = is_regular_on(r)
        if reg.regular:
            return RationalFunction(reg.witness, None, r.modulus)
    return r


# classifying map


def _monomials(p, degree):
    if p == 0:
        return [()] if degree == 0 else []
    if p == 1:
        return [(degree,)]
    out = []
    for a in range(degree, -1, -1):
        for rest in _monomials(p - 1, degree - a):
            out.append((a,) + rest)
    return out


def _multinomial(alpha):
    out = factorial(sum(alpha))
    for a in alpha:
        out //= factorial(a)
    return out


@dataclass
class ClassifyingMap:
    degree: int
    fiber: tuple
    traces: dict            # exponent tuple -> RationalFunction
    regular: dict           # exponent tuple -> bool
    dual: tuple

    @property
    def is_regular(self):
        return all(self.regular.values())

    def newton(self, l):
        """N_l(xi) = sum_{|a|=l} multinomial(l, a) T(x^a) xi^a."""
        if l == 0:
            return self.degree
        if l > max(sum(a) for a in self.traces):
            raise ValueError(f"traces only computed up to degree {max(sum(a) for a in self.traces)}")
        total = None
        for a in _monomials(len(self.fiber), l):
            m = Poly.monomial(a, self.dual, _multinomial(a))
            t = self.traces[a] * m
            total = t if total is None else total + t
        return total

    def symmetric_coordinates(self):
        """S_1..S_k from N_1..N_k (needs traces up to degree k)."""
        return elem_from_power([self.newton(l) for l in range(1, self.degree + 1)])

    def newton_residual(self, l):
        """sum_{h=0..k} (-1)^h N_{l-h} S_h; vanishes for l > k on a covering."""
        k = self.degree
        S = [1] + self.symmetric_coordinates()
        total = None
        for h in range(k + 1):
            t = self.newton(l - h) * S[h]
            if h % 2:
                t = -t
            total = t if total is None else total + t
        return total

    def rows(self):
        for a in sorted(self.traces, key=lambda e: (sum(e), tuple(-x for x in e))):
            yield a, self.traces[a], self.regular[a]


def classifying_map(cov, up_to_degree=None, route="auto", check_regular=True):
    k = cov.degree()
    bound = k if up_to_degree is None else up_to_degree
    p = cov.scale.p
    traces, regular = {}, {}
    for d in range(1, bound + 1):
        for a in _monomials(p, d):
            h = Poly.monomial(a, cov.scale.fiber)
            t = simplified(trace0(cov, h, route))
            traces[a] = t
            regular[a] = is_regular(t) if check_regular else None
    dual = tuple(f"xi{i + 1}" for i in range(p))
    return ClassifyingMap(k, cov.scale.fiber, traces, regular, dual)


# fibers over points


def _fill_point(cov, point, seed=0):
    """Assign chart coordinates missing from ``point`` pseudo-randomly."""
    pt = dict(point)
    rng = random.Random(seed)
    for v in cov.scale.chart:
        if v not in pt:
            pt[v] = rng.randint(2, 97)
    missing = [v for v in cov.scale.base if v not in pt]
    if missing:
        raise ValueError(f"point does not assign base coordinates {missing}")
    return pt


def lies_over(cov, comp, point):
    gens = list(cov.scale.base_ideal) + list(comp.base_ideal)
    return all(g.evaluate(point) == 0 for g in gens)


def fiber_algebra(cov, comp, point):
    """Q-algebra Q[x]/I_X(point) of a component over a point, or None when
    the point is not on the component's base."""
    if not comp.ideal:
        raise ValueError(f"component {comp.name!r} has no ideal to specialize")
    if not lies_over(cov, comp, point):
        return None
    vals = {v: point[v] for v in cov.scale.coeff_vars}
    gens = [g.subs(vals).to_gens(cov.scale.fiber) for g in comp.ideal]
    return QuotientAlgebra(gens, cov.scale.fiber)


def degree_at(cov, comp, point):
    qa = fiber_algebra(cov, comp, point)
    return 0 if qa is None else qa.dim


def _random_form(fiber, rng):
    return sum((Poly.var(v, fiber) * rng.randint(1, 1000) for v in fiber),
               Poly.const(0, fiber))


@dataclass
class FiberCount:
    with_multiplicity: int
    distinct: int


def fiber_count(cov, point, seed=0, trials=8):
    """Number of fiber points over a base point, with and without
    multiplicity (geometric points, counted over the algebraic closure)."""
    pt = _fill_point(cov, point, seed)
    algs = []
    for comp in cov.components:
        qa = fiber_algebra(cov, comp, pt)
        if qa is not None and qa.dim:
            algs.append((comp, qa))
    total = sum(c.weight * qa.dim for c, qa in algs)
    if not algs:
        return FiberCount(0, 0)
    rng = random.Random(seed)
    for _ in range(trials):
        counts = []
        for _ in range(2):
            ell = _random_form(cov.scale.fiber, rng)
            prod = [1]
            for _, qa in algs:
                prod = uni.mul(prod, qa.charpoly(ell))
            counts.append(uni.degree(uni.squarefree_part(prod)))
        if counts[0] == counts[1]:
            return FiberCount(total, counts[0])
    raise EliminantDegenerate(f"random linear forms disagreed on the fiber over {point} "
                              f"in {trials} attempts")


def local_multiplicity(qa, point):
    """dim of the localization of the Q-algebra qa at a rational point."""
    fib = [point[v] for v in qa.fiber]
    if qa.dim == 0:
        return 0
    mats = []
    D = qa.dim
    for v, z in zip(qa.fiber, fib):
        m = qa.mult_matrix(qa.element(Poly.var(v, qa.fiber) - z))
        p = m
        for _ in range(D - 1):
            from .poly.linalg import matmul
            p = matmul(p, m)
        mats.append(p)
    stacked = [row for m in mats for row in m]
    return len(nullspace(stacked))


# projections of cycles


def _projected_ideal(gens, variables, n, u):
    """Substitute t_i = t'_i - sum_j u_ij x_j into the ideal."""
    variables = tuple(variables)
    chart, fiber = variables[:n], variables[n:]
    sub = {}
    for i, t in enumerate(chart):
        expr = Poly.var(t, variables)
        for j, x in enumerate(fiber):
            if u[i][j]:
                expr = expr - Poly.var(x, variables) * u[i][j]
        sub[t] = expr
    return [g.to_gens(variables).subs(sub).to_gens(variables) for g in gens]


def generic_projection_degree(gens, variables, n, trials=4, seed=0, point=None):
    """Degree of a cycle under linear projections to its first n coordinates.

    The first trial is the coordinate projection; the others perturb it by
    random linear maps.  Without ``point`` this is the global degree over
    Q(t'); with ``point`` it is the local degree at that point of the cycle.
    The minimum over finite trials is returned.
    """
    variables = tuple(variables)
    p = len(variables) - n
    rng = random.Random(seed)
    best = None
    for trial in range(trials):
        if trial == 0:
            u = [[0] * p for _ in range(n)]
        else:
            u = [[rng.randint(-5, 5) for _ in range(p)] for _ in range(n)]
        moved = _projected_ideal(gens, variables, n, u)
        chart, fiber = variables[:n], variables[n:]
        try:
            if point is None:
                qa = QuotientAlgebra(moved, fiber, chart)
                d = qa.dim
            else:
                tval = {}
                for i, t in enumerate(chart):
                    tval[t] = point[t] + sum(u[i][j] * point[x] for j, x in enumerate(fiber))
                special = [g.subs(tval).to_gens(fiber) for g in moved]
                qa = QuotientAlgebra(special, fiber)
                d = local_multiplicity(qa, point)
        except NotFiniteError:
            continue
        best = d if best is None else min(best, d)
    if best is None:
        raise AllProjectionsDegenerate(f"none of {trials} projections was finite")
    return best


def multiplicity_of_point(point, cycle, n, variables, trials=4, seed=0):
    """sum_i n_i * mult_z(X_i) for a cycle given as [(weight, generators)]."""
    total = 0
    for weight, gens in cycle:
        if any(g.evaluate(point) != 0 for g in gens):
            continue
        total += weight * generic_projection_degree(gens, variables, n, trials, seed, point)
    return total


# base change


def base_change(cov, new_base, substitution, new_base_ideal=(), name=None):
    """Pull the covering back along a map S' -> S given by polynomials.

    ``substitution`` maps each old base coordinate to a polynomial in the
    new base coordinates.
    """
    sc = cov.scale
    new_base = tuple(new_base)
    sub = {v: (val if isinstance(val, Poly) else Poly.const(val, new_base))
           for v, val in substitution.items()}
    if set(sub) != set(sc.base):
        raise ValueError("substitution must give every base coordinate")
    new_ideal = [g for g in new_base_ideal if g]
    check = Ideal(new_ideal, variables=new_base) if new_ideal else None
    for g in sc.base_ideal:
        img = g.subs(sub)
        if img and (check is None or not check.contains(img)):
            raise ValueError(f"the map does not land in the base: {g} pulls back to {img}")
    new_scale = Scale(new_base, list(new_ideal), sc.chart, sc.fiber)
    ring = new_base + sc.chart + sc.fiber
    comps = []
    for c in cov.components:
        bi = [g.subs(sub) for g in c.base_ideal]
        bi = [g.to_gens(new_base) for g in bi if g]
        ideal = [g.subs(sub).to_gens(ring) for g in c.ideal]
        ideal = [g for g in ideal if g]
        ci = [g.subs(sub).to_gens(ring) for g in c.ci]
        branches = []
        if not sc.params:
            for br in c.branches:
                nb = {}
                for v, val in br.items():
                    r = RationalFunction(val.num, val.den)
                    nb[v] = compose(r.num, sub) / compose(r.den, sub)
                branches.append(nb)
        comps.append(Component(c.name, c.weight, bi, ideal, branches, ci))
    return Covering(new_scale, comps, name or f"{cov.name}'")
