# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=False
"""Compiled integer polynomial kernels (same contract as ``_pykernels``)."""

from math import gcd, isqrt
from libc.stdlib cimport malloc, free

ZERO = (0, (), (1,))
ONE = (0, (1,), (1,))

# magnitude bound for the machine-word multiplication path
cdef long long _SMALL = 1 << 28


cdef tuple _trim(list a):
    cdef Py_ssize_t n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    return tuple(a[:n])


cpdef tuple padd(tuple a, tuple b):
    cdef Py_ssize_t i
    if len(a) < len(b):
        a, b = b, a
    cdef list r = list(a)
    for i in range(len(b)):
        r[i] = r[i] + b[i]
    if len(a) == len(b):
        return _trim(r)
    return tuple(r)


cpdef tuple psub(tuple a, tuple b):
    cdef Py_ssize_t i
    cdef list r = list(a)
    if len(b) > len(a):
        r.extend([0] * (len(b) - len(a)))
    for i in range(len(b)):
        r[i] = r[i] - b[i]
    return _trim(r)


cpdef tuple pneg(tuple a):
    return tuple([-c for c in a])


cpdef tuple pscale(tuple a, c):
    if c == 0:
        return ()
    return tuple([c * x for x in a])


cpdef tuple pshift(tuple a, Py_ssize_t k):
    if not a or k == 0:
        return a
    return (0,) * k + a


cdef bint _small(tuple a):
    for c in a:
        if c >= _SMALL or c <= -_SMALL:
            return False
    return True


cdef tuple _pmul_small(tuple a, tuple b):
    cdef Py_ssize_t la = len(a), lb = len(b), i, j
    cdef long long *x = <long long *> malloc(la * sizeof(long long))
    cdef long long *y = <long long *> malloc(lb * sizeof(long long))
    cdef long long *r = <long long *> malloc((la + lb - 1) * sizeof(long long))
    cdef long long xi
    try:
        for i in range(la):
            x[i] = a[i]
        for j in range(lb):
            y[j] = b[j]
        for i in range(la + lb - 1):
            r[i] = 0
        for i in range(la):
            xi = x[i]
            if xi:
                for j in range(lb):
                    r[i + j] += xi * y[j]
        return tuple([r[i] for i in range(la + lb - 1)])
    finally:
        free(x)
        free(y)
        free(r)


cpdef tuple pmul(tuple a, tuple b):
    cdef Py_ssize_t la = len(a), lb = len(b), i, j
    if not la or not lb:
        return ()
    if la == 1:
        return pscale(b, a[0])
    if lb == 1:
        return pscale(a, b[0])
    if (la if la < lb else lb) <= 64 and _small(a) and _small(b):
        return _pmul_small(a, b)
    cdef list r = [0] * (la + lb - 1)
    for i in range(la):
        x = a[i]
        if x:
            for j in range(lb):
                r[i + j] += x * b[j]
    return tuple(r)


cpdef pcontent(tuple a):
    g = 0
    for c in a:
        g = gcd(g, c)
        if g == 1:
            break
    return g


cpdef tuple pdivint(tuple a, c):
    return tuple([x // c for x in a])


cpdef pdivmod(tuple a, tuple b):
    cdef Py_ssize_t db, k, j
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    cdef list r = list(a)
    db = len(b) - 1
    lb = b[db]
    if len(r) - 1 < db:
        return (), a
    cdef list q = [0] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db]
        if c:
            t, m = divmod(c, lb)
            if m:
                return None
            q[k] = t
            for j in range(db + 1):
                r[k + j] = r[k + j] - t * b[j]
    return _trim(q), _trim(r[:db])


cpdef tuple pdivexact(tuple a, tuple b):
    res = pdivmod(a, b)
    if res is None or res[1]:
        raise ArithmeticError("inexact polynomial division")
    return res[0]


cpdef peval(tuple a, x):
    r = 0
    for c in reversed(a):
        r = r * x + c
    return r


cdef _maxnorm(tuple a):
    m = 0
    for c in a:
        if abs(c) > m:
            m = abs(c)
    return m


cdef tuple _prem(tuple f, tuple g):
    cdef Py_ssize_t dg = len(g) - 1, k, j
    cdef list r = list(f)
    lg = g[dg]
    while r and len(r) - 1 >= dg:
        c = r[len(r) - 1]
        k = len(r) - 1 - dg
        r = [x * lg for x in r]
        for j in range(dg + 1):
            r[k + j] = r[k + j] - c * g[j]
        r = list(_trim(r))
    return tuple(r)


cdef tuple _primitive(tuple a):
    c = pcontent(a)
    if c > 1:
        a = pdivint(a, c)
    if a and a[len(a) - 1] < 0:
        a = pneg(a)
    return a


cdef tuple _prs_gcd(tuple f, tuple g):
    f, g = _primitive(f), _primitive(g)
    while g:
        r = _prem(f, g)
        f, g = g, _primitive(r)
    return _primitive(f)


cdef bint _divides(tuple h, tuple f):
    res = pdivmod(f, h)
    return res is not None and not res[1]


cpdef tuple pgcd(tuple f, tuple g):
    if not f:
        return _primitive(g) if g else ()
    if not g:
        return _primitive(f)
    if len(f) == 1 or len(g) == 1:
        return (1,)
    f, g = _primitive(f), _primitive(g)
    if f == g:
        return f
    bf, bg = _maxnorm(f), _maxnorm(g)
    b = 2 * min(bf, bg) + 29
    x = max(min(b, 99 * isqrt(b)),
            2 * min(bf // abs(f[len(f) - 1]), bg // abs(g[len(g) - 1])) + 2)
    cdef int it
    cdef list coeffs
    for it in range(6):
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


cdef Py_ssize_t _val(tuple a):
    cdef Py_ssize_t k = 0
    while a[k] == 0:
        k += 1
    return k


cpdef tuple qs_norm(e, tuple n, tuple d):
    cdef Py_ssize_t k
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
    if d[len(d) - 1] < 0:
        c = -c
    if c != 1:
        n = pdivint(n, c)
        d = pdivint(d, c)
    return (e, n, d)


cpdef tuple qs_mul(tuple a, tuple b):
    e1, n1, d1 = a
    e2, n2, d2 = b
    if not n1 or not n2:
        return ZERO
    if len(d1) == 1 and len(d2) == 1:
        n = pmul(n1, n2)
        dd = d1[0] * d2[0]
        if dd == 1:
            return (e1 + e2, n, (1,))
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
    if d[len(d) - 1] < 0:
        c = -c
    if c != 1:
        n = pdivint(n, c)
        d = pdivint(d, c)
    return (e1 + e2, n, d)


cpdef tuple qs_inv(tuple a):
    e, n, d = a
    if not n:
        raise ZeroDivisionError("inverse of zero in Q(s)")
    if n[len(n) - 1] < 0:
        return (-e, pneg(d), pneg(n))
    return (-e, d, n)


cpdef tuple qs_neg(tuple a):
    e, n, d = a
    return (e, pneg(n), d)


cpdef tuple qs_add(tuple a, tuple b):
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
        if dd == 1 and n[0] != 0:
            return (m, n, (1,))
        return qs_norm(m, n, (dd,))
    if d1 == d2:
        return qs_norm(m, padd(n1, n2), d1)
    n = padd(pmul(n1, d2), pmul(n2, d1))
    if not n:
        return ZERO
    return qs_norm(m, n, pmul(d1, d2))


cpdef tuple qs_sub(tuple a, tuple b):
    return qs_add(a, qs_neg(b))


# sparse row-dict operators {row: {col: triple}} ---------------------------


cpdef dict rows_add(dict a, dict b):
    """a + b as a new row dict."""
    cdef dict out, row, brow
    cdef tuple t, v, w
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


cpdef dict rows_mul(dict a, dict b):
    """Matrix product of two row dicts."""
    cdef dict out = {}, row, acc, brow
    cdef tuple x, y, p, v
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


cpdef rows_axpy(dict acc, dict a, tuple t):
    """acc += t * a in place (zeros are left in acc; see rows_prune)."""
    cdef dict row, arow
    cdef tuple x, p, v
    for i, row in a.items():
        arow = acc.get(i)
        if arow is None:
            arow = {}
            acc[i] = arow
        for j, x in row.items():
            p = qs_mul(x, t)
            v = arow.get(j)
            arow[j] = p if v is None else qs_add(v, p)


cpdef dict rows_prune(dict acc):
    cdef dict out = {}, row, r
    for i, row in acc.items():
        r = {j: v for j, v in row.items() if v[1]}
        if r:
            out[i] = r
    return out
