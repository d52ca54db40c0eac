"""Symmetric products of affine space and their polynomial coordinates.

A point of Sym^k(Q^p) is an unordered k-tuple of points of Q^p.  Its
coordinates are read off the linear forms L_j = <x_j, xi> in dual
variables xi_1..xi_p: the elementary symmetric functions S_h of the L_j,
the power sums N_l, and the discriminant coefficients.  Entries may be
numbers or polynomials (for symbolic tuples).
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .poly import Poly, to_q
from .poly.polynomial import union_gens


def dual_vars(p, prefix="xi"):
    return tuple(f"{prefix}{i + 1}" for i in range(p))


def _ring(points, extra=()):
    gens = tuple(extra)
    for pt in points:
        for c in pt:
            if isinstance(c, Poly):
                gens = union_gens(gens, c.gens)
    return gens


def _as_poly(c, gens):
    if isinstance(c, Poly):
        return c.to_gens(union_gens(gens, c.gens)).to_gens(gens)
    return Poly.const(c, gens)


def _check(points):
    points = [tuple(pt) for pt in points]
    if not points:
        raise ValueError("empty tuple of points")
    p = len(points[0])
    if any(len(pt) != p for pt in points):
        raise ValueError("points of different dimensions")
    return points, p


def linear_forms(points, xi=None):
    """The forms L_j = <x_j, xi> as polynomials."""
    points, p = _check(points)
    xi = tuple(xi) if xi is not None else dual_vars(p)
    gens = _ring(points, xi)
    out = []
    for pt in points:
        L = Poly.const(0, gens)
        for c, v in zip(pt, xi):
            L = L + _as_poly(c, gens) * Poly.var(v, gens)
        out.append(L)
    return out


def elementary_symmetric(points, xi=None):
    """[S_0, ..., S_k]: S_h is the h-th elementary symmetric function of
    the L_j, a form of degree h in xi."""
    forms = linear_forms(points, xi)
    gens = forms[0].gens
    e = [Poly.const(1, gens)] + [Poly.const(0, gens)] * len(forms)
    for L in forms:
        for h in range(len(forms), 0, -1):
            e[h] = e[h] + L * e[h - 1]
    return e


def newton_weighted(points, weights, l, xi=None):
    """N_l(x, y) = sum_j y_j L_j^l, one polynomial per component of y.

    ``weights`` holds one entry per point: a number/Poly (scalar weights)
    or a tuple (vector weights in Q^m).
    """
    forms = linear_forms(points, xi)
    if len(weights) != len(forms):
        raise ValueError("one weight per point is needed")
    vec = isinstance(weights[0], (tuple, list))
    ws = [tuple(w) if vec else (w,) for w in weights]
    m = len(ws[0])
    gens = forms[0].gens
    for w in ws:
        for c in w:
            if isinstance(c, Poly):
                gens = union_gens(gens, c.gens)
    out = []
    for i in range(m):
        s = Poly.const(0, gens)
        for L, w in zip(forms, ws):
            s = s + _as_poly(w[i], gens) * L ** l
        out.append(s)
    return out if vec else out[0]


def power_sums(points, upto, xi=None):
    """[N_1, ..., N_upto] with unit weights."""
    ones = [1] * len(points)
    return [newton_weighted(points, ones, l, xi) for l in range(1, upto + 1)]


def verify_newton_relation(points, weights, l, xi=None):
    """Residual of sum_{h=0..k} (-1)^h N_{l-h}(x, y) S_h(x).

    The identity holds for every l >= k (k the number of points), with
    N_0 = sum of the weights; below k it fails in general, so l < k is
    rejected.
    """
    k = len(points)
    if l < k:
        raise ValueError(f"the relation needs l >= k (got l={l}, k={k})")
    S = elementary_symmetric(points, xi)
    vec = isinstance(weights[0], (tuple, list))
    total = None
    for h in range(k + 1):
        N = newton_weighted(points, weights, l - h, xi)
        Ns = N if vec else [N]
        term = [n * S[h] * (-1) ** h for n in Ns]
        total = term if total is None else [a + b for a, b in zip(total, term)]
    return total if vec else total[0]


def elem_from_power(p):
    """Elementary symmetric values e_1..e_k from power sums p_1..p_k.

    Uses h*e_h = sum_{i=1..h} (-1)^(i-1) e_{h-i} p_i; works over any ring
    containing Q (numbers, polynomials, rational functions).
    """
    p = list(p)
    if not p:
        return []
    one = p[0] ** 0 if not isinstance(p[0], (int, Fraction)) else Fraction(1)
    e = [one]
    for h in range(1, len(p) + 1):
        s = None
        for i in range(1, h + 1):
            t = e[h - i] * p[i - 1]
            if i % 2 == 0:
                t = -t
            s = t if s is None else s + t
        e.append(s / h)
    return e[1:]


def multiplicity_in_tuple(points, q):
    q = tuple(to_q(c) if not isinstance(c, Poly) else c for c in q)
    return sum(1 for pt in points
               if tuple(to_q(c) if not isinstance(c, Poly) else c for c in pt) == q)


def discriminant_coeffs(points, xi=None):
    """Coefficients D_h (h = 0..k(k-1)/2) with
    prod_{i<j} (T^2 - (L_i - L_j)^2) = sum_h (-1)^h D_h T^(2h)."""
    forms = linear_forms(points, xi)
    gens = forms[0].gens
    coeffs = [Poly.const(1, gens)]          # polynomial in T^2, low to high
    k = len(forms)
    for i in range(k):
        for j in range(i + 1, k):
            d2 = (forms[i] - forms[j]) ** 2
            new = [Poly.const(0, gens)] * (len(coeffs) + 1)
            for a, c in enumerate(coeffs):
                new[a + 1] = new[a + 1] + c
                new[a] = new[a] - d2 * c
            coeffs = new
    return [c * (-1) ** h for h, c in enumerate(coeffs)]


@dataclass(frozen=True)
class Stratum:
    partition: tuple            # multiplicities of the distinct points, decreasing
    mu: int                     # sum over distinct points of n(n-1)/2

    @property
    def generic(self):
        return self.mu == 0


def stratum(points):
    """Coincidence stratum of a numeric tuple."""
    pts = [tuple(to_q(c) for c in pt) for pt in points]
    counts = sorted(Counter(pts).values(), reverse=True)
    return Stratum(tuple(counts), sum(n * (n - 1) // 2 for n in counts))


def sym_coords(points, xi=None):
    """Coordinates S_1..S_k of the tuple in Sym^k."""
    return elementary_symmetric(points, xi)[1:]
