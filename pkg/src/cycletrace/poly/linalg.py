"""Exact linear algebra.

Two flavours: a sparse solver over Q for the large systems behind
regularity and integrality searches, and small dense routines over any
field whose elements support + - * / (mpq or RationalFunction).
"""

from .polynomial import ONE, ZERO


def is_zero(x):
    z = getattr(x, "is_zero", None)
    if z is not None:
        return z()
    return x == 0


def _size(x):
    n = getattr(x, "num", None)
    if n is not None and hasattr(n, "terms"):
        return len(n.terms) + len(x.den.terms)
    return 0


def solve_sparse(columns, rhs):
    """Solve sum_j x_j * columns[j] = rhs over Q.

    Columns and rhs are dicts from row labels to mpq.  Returns a list of
    values (free unknowns set to zero) or None when inconsistent.
    """
    rows = {}
    for j, col in enumerate(columns):
        for r, c in col.items():
            if c:
                rows.setdefault(r, {})[j] = c
    for r in rhs:
        rows.setdefault(r, {})
    pivots = {}
    order = []
    for r, row in rows.items():
        b = rhs.get(r, ZERO)
        row = dict(row)
        while True:
            hit = None
            for c in row:
                if c in pivots:
                    hit = c
                    break
            if hit is None:
                break
            f = row[hit]
            prow, pb = pivots[hit]
            for c, v in prow.items():
                s = row.get(c, ZERO) - f * v
                if s:
                    row[c] = s
                else:
                    row.pop(c, None)
            b = b - f * pb
        if not row:
            if b:
                return None
            continue
        p = min(row)
        inv = ONE / row[p]
        row = {c: v * inv for c, v in row.items()}
        pivots[p] = (row, b * inv)
        order.append(p)
    x = [ZERO] * len(columns)
    for p in reversed(order):
        row, b = pivots[p]
        s = b
        for c, v in row.items():
            if c != p:
                s -= v * x[c]
        x[p] = s
    return x


def solve_sparse_field(columns, rhs, zero, one):
    """solve_sparse over any field (entries tested with is_zero)."""
    rows = {}
    for j, col in enumerate(columns):
        for r, c in col.items():
            if not is_zero(c):
                rows.setdefault(r, {})[j] = c
    for r in rhs:
        rows.setdefault(r, {})
    pivots = {}
    order = []
    for r, row in rows.items():
        b = rhs.get(r, zero)
        row = dict(row)
        while True:
            hit = next((c for c in row if c in pivots), None)
            if hit is None:
                break
            f = row[hit]
            prow, pb = pivots[hit]
            for c, v in prow.items():
                s = row.get(c, zero) - f * v
                if is_zero(s):
                    row.pop(c, None)
                else:
                    row[c] = s
            b = b - f * pb
        if not row:
            if not is_zero(b):
                return None
            continue
        p = min(row, key=lambda c: (_size(row[c]), c))
        inv = one / row[p]
        row = {c: v * inv for c, v in row.items()}
        pivots[p] = (row, b * inv)
        order.append(p)
    x = [zero] * len(columns)
    for p in reversed(order):
        row, b = pivots[p]
        s = b
        for c, v in row.items():
            if c != p:
                s = s - v * x[c]
        x[p] = s
    return x


def matmul(a, b, zero=ZERO):
    n, m, k = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(n):
        ai = a[i]
        row = []
        for j in range(k):
            s = None
            for t in range(m):
                if is_zero(ai[t]) or is_zero(b[t][j]):
                    continue
                p = ai[t] * b[t][j]
                s = p if s is None else s + p
            row.append(s if s is not None else zero)
        out.append(row)
    return out


def matvec(a, v, zero):
    out = []
    for row in a:
        s = zero
        for x, y in zip(row, v):
            if not is_zero(x) and not is_zero(y):
                s = s + x * y
        out.append(s)
    return out


def _eliminate(m, ncols):
    """Row echelon form in place; returns list of pivot (row, col) and sign."""
    rows = len(m)
    sign = 1
    piv = []
    r = 0
    for c in range(ncols):
        best = None
        for i in range(r, rows):
            if not is_zero(m[i][c]):
                if best is None or _size(m[i][c]) < _size(m[best][c]):
                    best = i
        if best is None:
            continue
        if best != r:
            m[r], m[best] = m[best], m[r]
            sign = -sign
        pv = m[r][c]
        for i in range(rows):
            if i != r and not is_zero(m[i][c]):
                f = m[i][c] / pv
                m[i] = [x - f * y if not is_zero(y) else x for x, y in zip(m[i], m[r])]
        piv.append((r, c))
        r += 1
        if r == rows:
            break
    return piv, sign


def det(a, one=ONE):
    n = len(a)
    if n == 0:
        return one
    m = [list(row) for row in a]
    piv, sign = _eliminate(m, n)
    if len(piv) < n:
        return one * 0
    d = one * sign
    for i in range(n):
        d = d * m[i][i]
    return d


def solve(a, b):
    """Solve a x = b for square or rectangular a; None if inconsistent.
    Free unknowns are set to zero."""
    rows = len(a)
    ncols = len(a[0]) if rows else 0
    m = [list(a[i]) + [b[i]] for i in range(rows)]
    piv, _ = _eliminate(m, ncols)
    zero = b[0] * 0 if b else ZERO
    for i in range(len(piv), rows):
        if not is_zero(m[i][ncols]):
            return None
    x = [zero] * ncols
    for r, c in piv:
        x[c] = m[r][ncols] / m[r][c]
    return x


def rank(a):
    m = [list(row) for row in a]
    if not m:
        return 0
    piv, _ = _eliminate(m, len(m[0]))
    return len(piv)


def nullspace(a, one=ONE):
    """Basis of {x : a x = 0}."""
    rows = len(a)
    ncols = len(a[0]) if rows else 0
    m = [list(row) for row in a]
    piv, _ = _eliminate(m, ncols)
    pcols = {c: r for r, c in piv}
    zero = one * 0
    basis = []
    for free in range(ncols):
        if free in pcols:
            continue
        v = [zero] * ncols
        v[free] = one
        for c, r in pcols.items():
            v[c] = -(m[r][free] / m[r][c])
        basis.append(v)
    return basis


def identity(n, one=ONE):
    zero = one * 0
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def charpoly(a, one=ONE):
    """Coefficients [c0, ..., cn] (low to high, monic) of det(T - a).

    Faddeev-LeVerrier; divides only by integers.
    """
    n = len(a)
    if n == 0:
        return [one]
    zero = one * 0
    coeffs = [zero] * (n + 1)
    coeffs[n] = one
    c = one
    am = None
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        if k == 1:
            mk = identity(n, one)
        else:
            mk = [[am[i][j] + (c if i == j else zero) for j in range(n)] for i in range(n)]
        am = matmul(a, mk, zero)
        tr = zero
        for i in range(n):
            tr = tr + am[i][i]
        c = -tr / k
        coeffs[n - k] = c
    return coeffs


def trace(a, zero=ZERO):
    s = zero
    for i in range(len(a)):
        s = s + a[i][i]
    return s
