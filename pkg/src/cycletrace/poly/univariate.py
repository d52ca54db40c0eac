"""Dense univariate polynomials over Q as coefficient lists (low to high)."""

from .polynomial import ONE, ZERO, to_q


def trim(a):
    a = [to_q(c) for c in a]
    while a and not a[-1]:
        a.pop()
    return a


def degree(a):
    return len(trim(a)) - 1


def monic(a):
    a = trim(a)
    if not a:
        return a
    inv = ONE / a[-1]
    return [c * inv for c in a]


def mul(a, b):
    if not a or not b:
        return []
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def divmod_(a, b):
    a = trim(a)
    b = trim(b)
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    q = [ZERO] * max(len(a) - len(b) + 1, 1)
    r = list(a)
    inv = ONE / b[-1]
    while len(r) >= len(b) and r:
        k = len(r) - len(b)
        f = r[-1] * inv
        q[k] = f
        for i, y in enumerate(b):
            r[i + k] -= f * y
        r = trim(r)
    return trim(q), r


def gcd(a, b):
    a, b = trim(a), trim(b)
    while b:
        _, r = divmod_(a, b)
        a, b = b, r
    return monic(a)


def deriv(a):
    return trim([a[i] * i for i in range(1, len(a))])


def squarefree_part(a):
    a = monic(a)
    if len(a) <= 2:
        return a
    g = gcd(a, deriv(a))
    q, _ = divmod_(a, g)
    return monic(q)


def squarefree_decomposition(a):
    """Yun's algorithm: monic a = prod g_m^m; returns {m: g_m} for deg g_m > 0."""
    a = monic(a)
    out = {}
    if len(a) <= 1:
        return out
    b = gcd(a, deriv(a))
    c, _ = divmod_(a, b)
    d, _ = divmod_(deriv(a), b)
    d = trim([x - y for x, y in _pad(d, deriv(c))])
    m = 1
    while len(trim(c)) > 1:
        g = gcd(c, d)
        if len(g) > 1:
            out[m] = g
        c, _ = divmod_(c, g)
        d, _ = divmod_(d, g)
        d = trim([x - y for x, y in _pad(d, deriv(c))])
        m += 1
    return out


def _pad(a, b):
    n = max(len(a), len(b))
    return zip(list(a) + [ZERO] * (n - len(a)), list(b) + [ZERO] * (n - len(b)))


def gcd_free_basis(polys):
    """Pairwise coprime monic polynomials of positive degree whose products
    give every input up to multiplicity (factor refinement)."""
    basis = [monic(p) for p in polys if degree(p) > 0]
    changed = True
    while changed:
        changed = False
        for i in range(len(basis)):
            for j in range(i + 1, len(basis)):
                g = gcd(basis[i], basis[j])
                if len(g) > 1:
                    a, _ = divmod_(basis[i], g)
                    b, _ = divmod_(basis[j], g)
                    rest = [p for k, p in enumerate(basis) if k not in (i, j)]
                    basis = rest + [monic(x) for x in (g, a, b) if degree(x) > 0]
                    changed = True
                    break
            if changed:
                break
    # merge duplicates
    out = []
    for p in basis:
        if p not in out:
            out.append(p)
    out.sort(key=lambda p: (len(p), [str(c) for c in p]))
    return out


def multiplicity(p, f):
    """Largest m with p^m dividing f (p of positive degree)."""
    m = 0
    f = trim(f)
    while f:
        q, r = divmod_(f, p)
        if r:
            break
        f = q
        m += 1
    return m


def evaluate(a, x):
    s = ZERO
    for c in reversed(a):
        s = s * x + c
    return s


def to_str(a, var="T"):
    from .polynomial import Poly
    return str(Poly({(i,): c for i, c in enumerate(a)}, (var,)))
