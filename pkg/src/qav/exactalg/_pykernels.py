"""Pure-Python integer polynomial kernels.

Polynomials are tuples of Python ints, lowest degree first, with no trailing
zeros; the zero polynomial is ``()``.  Elements of Q(s) are triples
``(e, n, d)`` meaning ``s**e * n(s) / d(s)`` with ``n[0] != 0``,
``d[0] != 0``, ``gcd(n, d) == 1``, joint integer content 1 and a positive
leading coefficient of ``d``.  Zero is ``(0, (), (1,))``.

The compiled module ``_ckernels`` exposes the same functions.
"""

from math import gcd, isqrt

ZERO = (0, (), (1,))
ONE = (0, (1,), (1,))


def _trim(a):
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    return tuple(a[:n])


def padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    r = list(a)
    for i, c in enumerate(b):
        r[i] += c
    return _trim(r)


def psub(a, b):
    r = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        r[i] -= c
    return _trim(r)


def pneg(a):
    return tuple(-c for c in a)


def pscale(a, c):
    if c == 0:
        return ()
    return tuple(c * x for x in a)


def pshift(a, k):
    """Multiply by s**k (k >= 0)."""
    if not a or k == 0:
        return a
    return (0,) * k + a


def pmul(a, b):
    if not a or not b:
        return ()
    if len(a) == 1:
        return pscale(b, a[0])
    if len(b) == 1:
        return pscale(a, b[0])
    r = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                r[i + j] += x * y
    return tuple(r)


def pcontent(a):
    g = 0
    for c in a:
        g = gcd(g, c)
        if g == 1:
            break
    return g


def pdivint(a, c):
    return tuple(x // c for x in a)


def pdivmod(a, b):
    """Division over Q restricted to integer results.

    Returns ``(q, r)`` when every quotient coefficient is an integer, and
    ``None`` otherwise.
    """
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    if len(r) - 1 < db:
        return (), tuple(a)
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db]
        if c:
            t, m = divmod(c, lb)
            if m:
                return None
            q[k] = t
            for j in range(db + 1):
                r[k + j] -= t * b[j]
    return _trim(q), _trim(r[:db])


def pdivexact(a, b):
    res = pdivmod(a, b)
    if res is None or res[1]:
        raise ArithmeticError("inexact polynomial division")
    return res[0]


def peval(a, x):
    r = 0
    for c in reversed(a):
        r = r * x + c
    return r


def _maxnorm(a):
    return max(abs(c) for c in a)


def _prem(f, g):
    # pseudo-remainder
    dg = len(g) - 1
    r = list(f)
    lg = g[-1]
    while len(r) - 1 >= dg and r:
        c = r[-1]
        k = len(r) - 1 - dg
        r = [x * lg for x in r]
        for j in range(dg + 1):
            r[k + j] -= c * g[j]
        r = list(_trim(r))
    return tuple(r)


def _primitive(a):
    c = pcontent(a)
    if c > 1:
        a = pdivint(a, c)
    if a and a[-1] < 0:
        a = pneg(a)
    return a


def _prs_gcd(f, g):
    f, g = _primitive(f), _primitive(g)
    while g:
        r = _prem(f, g)
        f, g = g, _primitive(r)
    return _primitive(f)


def _divides(h, f):
    res = pdivmod(f, h)
    return res is not None and not res[1]


def pgcd(f, g):
    """Primitive gcd of two integer polynomials with positive leading coefficient."""
    if not f:
        return _primitive(g) if g else ()
    if not g:
        return _primitive(f)
    if len(f) == 1 or len(g) == 1:
        return (1,)
    f, g = _primitive(f), _primitive(g)
    if f == g:
        return f
    # heuristic gcd by evaluation at a large integer
    bf, bg = _maxnorm(f), _maxnorm(g)
    b = 2 * min(bf, bg) + 29
    x = max(min(b, 99 * isqrt(b)), 2 * min(bf // abs(f[-1]), bg // abs(g[-1])) + 2)
    for _ in range(6):
        ff, gg = peval(f, x), peval(g, x)
        if ff and gg:
            h = gcd(ff, gg)
            coeffs = []
            half = x // 2
            while h:
                c = h % x
                if c > half:
                    c -= x
                coeffs.append(c)
                h = (h - c) // x
            cand = _primitive(_trim(coeffs))
            if cand and _divides(cand, f) and _divides(cand, g):
                return cand
        x = 73794 * x * isqrt(isqrt(x)) // 27011
    return _prs_gcd(f, g)


def _val(a):
    k = 0
    while a[k] == 0:
        k += 1
    return k


def qs_norm(e, n, d):
    """Canonicalize ``s**e * n / d`` (n, d integer polynomials, d nonzero)."""
    if not n:
        return ZERO
    if not d:
        raise ZeroDivisionError("zero denominator")
    if n[0] == 0:
        k = _val(n)
        n = n[k:]
        e += k
    if d[0] == 0:
        k = _val(d)
        d = d[k:]
        e -= k
    if len(d) > 1 and len(n) > 1:
        g = pgcd(n, d)
        if len(g) > 1:
            n = pdivexact(n, g)
            d = pdivexact(d, g)
    c = gcd(pcontent(n), pcontent(d))
    if d[-1] < 0:
        c = -c
    if c != 1:
        n = pdivint(n, c)
        d = pdivint(d, c)
    return (e, n, d)


def qs_mul(a, b):
    e1, n1, d1 = a
    e2, n2, d2 = b
    if not n1 or not n2:
        return ZERO
    if len(d1) == 1 and len(d2) == 1:
        n = pmul(n1, n2)
        dd = d1[0] * d2[0]
        c = gcd(pcontent(n), dd)
        if c != 1:
            return (e1 + e2, pdivint(n, c), (dd // c,))
        return (e1 + e2, n, (dd,))
    if len(d2) > 1 and len(n1) > 1:
        g = pgcd(n1, d2)
        if len(g) > 1:
            n1 = pdivexact(n1, g)
            d2 = pdivexact(d2, g)
    if len(d1) > 1 and len(n2) > 1:
        g = pgcd(n2, d1)
        if len(g) > 1:
            n2 = pdivexact(n2, g)
            d1 = pdivexact(d1, g)
    n = pmul(n1, n2)
    d = pmul(d1, d2)
    c = gcd(pcontent(n), pcontent(d))
    if d[-1] < 0:
        c = -c
    if c != 1:
        n = pdivint(n, c)
        d = pdivint(d, c)
    return (e1 + e2, n, d)


def qs_inv(a):
    e, n, d = a
    if not n:
        raise ZeroDivisionError("inverse of zero in Q(s)")
    if n[-1] < 0:
        return (-e, pneg(d), pneg(n))
    return (-e, d, n)


def qs_neg(a):
    e, n, d = a
    return (e, pneg(n), d)


def qs_add(a, b):
    e1, n1, d1 = a
    e2, n2, d2 = b
    if not n1:
        return b
    if not n2:
        return a
    m = e1 if e1 < e2 else e2
    if e1 > m:
        n1 = pshift(n1, e1 - m)
    if e2 > m:
        n2 = pshift(n2, e2 - m)
    if len(d1) == 1 and len(d2) == 1:
        x, y = d1[0], d2[0]
        if x == y:
            n = padd(n1, n2)
            dd = x
        else:
            g = gcd(x, y)
            n = padd(pscale(n1, y // g), pscale(n2, x // g))
            dd = x // g * y
        if not n:
            return ZERO
        return qs_norm(m, n, (dd,))
    if d1 == d2:
        return qs_norm(m, padd(n1, n2), d1)
    n = padd(pmul(n1, d2), pmul(n2, d1))
    if not n:
        return ZERO
    return qs_norm(m, n, pmul(d1, d2))


def qs_sub(a, b):
    return qs_add(a, qs_neg(b))


# sparse row-dict operators {row: {col: triple}} ---------------------------


def rows_add(a, b):
    """a + b as a new row dict."""
    if not b:
        return a
    if not a:
        return b
    out = {i: dict(r) for i, r in a.items()}
    for i, brow in b.items():
        row = out.get(i)
        if row is None:
            out[i] = dict(brow)
            continue
        for j, t in brow.items():
            v = row.get(j)
            if v is None:
                row[j] = t
            else:
                w = qs_add(v, t)
                if w[1]:
                    row[j] = w
                else:
                    del row[j]
        if not row:
            del out[i]
    return out


def rows_mul(a, b):
    """Matrix product of two row dicts."""
    out = {}
    for i, row in a.items():
        acc = {}
        for k, x in row.items():
            brow = b.get(k)
            if brow is None:
                continue
            for j, y in brow.items():
                p = qs_mul(x, y)
                v = acc.get(j)
                acc[j] = p if v is None else qs_add(v, p)
        acc = {j: v for j, v in acc.items() if v[1]}
        if acc:
            out[i] = acc
    return out


def rows_axpy(acc, a, t):
    """acc += t * a in place (zeros are left in acc; see rows_prune)."""
    for i, row in a.items():
        arow = acc.get(i)
        if arow is None:
            arow = acc[i] = {}
        for j, x in row.items():
            p = qs_mul(x, t)
            v = arow.get(j)
            arow[j] = p if v is None else qs_add(v, p)


def rows_prune(acc):
    out = {}
    for i, row in acc.items():
        r = {j: v for j, v in row.items() if v[1]}
        if r:
            out[i] = r
    return out
