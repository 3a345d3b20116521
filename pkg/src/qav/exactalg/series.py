"""Truncated power series in u (point Zero) or in u**-1 (point Infinity)."""

from __future__ import annotations

from fractions import Fraction
from math import comb

from . import kernels as K
from .poly import PoleAtExpansionPoint, RatFun
from .scalar import QS, coerce_triple, sqrt_monomial

ZERO_PT = "zero"
INF_PT = "infinity"
_Z = K.ZERO
_O = K.ONE
qadd, qsub, qmul, qinv, qneg = K.qs_add, K.qs_sub, K.qs_mul, K.qs_inv, K.qs_neg


class NonSquareConstantTerm(ArithmeticError):
    pass


class ConstantTermNotOne(ArithmeticError):
    pass


def _frac(x):
    return (0, (x.numerator,), (x.denominator,)) if x else _Z


def series_div_raw(num, den, order):
    """Coefficients 0..order of num(t)/den(t) as triples (den[0] invertible)."""
    inv0 = qinv(den[0])
    out = []
    for k in range(order + 1):
        acc = num[k] if k < len(num) else _Z
        for j in range(1, min(k, len(den) - 1) + 1):
            if den[j][1] and out[k - j][1]:
                acc = qsub(acc, qmul(den[j], out[k - j]))
        out.append(qmul(acc, inv0) if acc[1] else _Z)
    return out


def expand_raw(f: RatFun, point: str, order: int):
    """Triples of the expansion of a RatFun (see :func:`series_expand`)."""
    num, den = f.num.c, f.den.c
    if point == ZERO_PT:
        if not den[0][1]:
            raise PoleAtExpansionPoint("denominator vanishes at u=0")
        return series_div_raw(num, den, order)
    dn, dd = len(num) - 1, len(den) - 1
    if not num:
        return [_Z] * (order + 1)
    if dn > dd:
        raise PoleAtExpansionPoint("numerator degree exceeds denominator degree at u=infinity")
    shift = dd - dn
    rn = list(reversed(num))
    rd = list(reversed(den))
    body = series_div_raw(rn, rd, order)
    return ([_Z] * shift + body)[: order + 1]


def binom_shift_raw(coeffs, c, order):
    """Coefficients in u**-1 of sum a_k (u + c)**-k."""
    out = [_Z] * (order + 1)
    if not c[1]:
        return list(coeffs[: order + 1]) + [_Z] * max(0, order + 1 - len(coeffs))
    negc = qneg(c)
    pw = [_O]
    for _ in range(order + 1):
        pw.append(qmul(pw[-1], negc))
    for k, a in enumerate(coeffs[: order + 1]):
        if not a[1]:
            continue
        if k == 0:
            out[0] = qadd(out[0], a)
            continue
        for m in range(order + 1 - k):
            b = comb(k + m - 1, m)
            out[k + m] = qadd(out[k + m], qmul(a, qmul(pw[m], (0, (b,), (1,)))))
    return out


class TruncSeries:
    """Scalar truncated series sum_{k<=order} c_k t**k with t = u or u**-1."""

    __slots__ = ("point", "order", "c")

    def __init__(self, point, coeffs, order=None):
        raw = [coerce_triple(x) if not isinstance(x, tuple) else x for x in coeffs]
        if order is None:
            order = len(raw) - 1
        raw = (raw + [_Z] * (order + 1))[: order + 1]
        self.point, self.order, self.c = point, order, raw

    @staticmethod
    def _mk(point, raw, order):
        r = TruncSeries.__new__(TruncSeries)
        r.point, r.order, r.c = point, order, raw
        return r

    @staticmethod
    def one(point, order):
        return TruncSeries(point, [1], order)

    @property
    def coeffs(self):
        return [QS(t) for t in self.c]

    def __getitem__(self, k):
        return QS(self.c[k])

    def _check(self, o):
        if self.point != o.point:
            raise ValueError("series at different points")
        return min(self.order, o.order)

    def __add__(self, o):
        if not isinstance(o, TruncSeries):
            o = TruncSeries(self.point, [o], self.order)
        n = self._check(o)
        return TruncSeries._mk(self.point, [qadd(a, b) for a, b in zip(self.c[: n + 1], o.c)], n)

    def __neg__(self):
        return TruncSeries._mk(self.point, [qneg(a) for a in self.c], self.order)

    def __sub__(self, o):
        return self + (-o if isinstance(o, TruncSeries) else -QS(coerce_triple(o)))

    def __mul__(self, o):
        if not isinstance(o, TruncSeries):
            t = coerce_triple(o)
            return TruncSeries._mk(self.point, [qmul(a, t) for a in self.c], self.order)
        n = self._check(o)
        out = []
        for k in range(n + 1):
            acc = _Z
            for j in range(k + 1):
                a, b = self.c[j], o.c[k - j]
                if a[1] and b[1]:
                    acc = qadd(acc, qmul(a, b))
            out.append(acc)
        return TruncSeries._mk(self.point, out, n)

    __rmul__ = __mul__

    def inv(self):
        if not self.c[0][1]:
            raise ZeroDivisionError("series with zero constant term")
        one = [_O] + [_Z] * self.order
        return TruncSeries._mk(self.point, series_div_raw(one, self.c, self.order), self.order)

    def __truediv__(self, o):
        if isinstance(o, TruncSeries):
            return self * o.inv()
        return self * QS(coerce_triple(o)).inv()

    def __eq__(self, o):
        if not isinstance(o, TruncSeries):
            return NotImplemented
        n = min(self.order, o.order)
        return self.point == o.point and self.c[: n + 1] == o.c[: n + 1]

    def __hash__(self):
        return hash((self.point, tuple(self.c)))

    def __repr__(self):
        var = "u" if self.point == ZERO_PT else "u^-1"
        return f"TruncSeries[{var}]({', '.join(str(QS(t)) for t in self.c)})"

    def truncate(self, order):
        return TruncSeries._mk(self.point, self.c[: order + 1], min(order, self.order))

    def shift_mul(self, g) -> "TruncSeries":
        """Series of f(u*g)."""
        t = coerce_triple(g)
        if self.point == INF_PT:
            t = qinv(t)
        out, pw = [], _O
        for a in self.c:
            out.append(qmul(a, pw))
            pw = qmul(pw, t)
        return TruncSeries._mk(self.point, out, self.order)

    def shift_add(self, c) -> "TruncSeries":
        """Series of f(u + c); only meaningful at infinity."""
        if self.point != INF_PT:
            raise ValueError("additive shifts are taken at infinity")
        t = coerce_triple(c) if not isinstance(c, Fraction) else _frac(c)
        return TruncSeries._mk(self.point, binom_shift_raw(self.c, t, self.order), self.order)

    def log(self) -> "TruncSeries":
        """Formal logarithm; constant term must be 1."""
        if self.c[0] != _O:
            raise ConstantTermNotOne("log needs constant term 1")
        # f' / f integrated term by term
        n = self.order
        out = [_Z] * (n + 1)
        for k in range(1, n + 1):
            acc = qmul(self.c[k], (0, (k,), (1,)))
            for j in range(1, k):
                if out[j][1] and self.c[k - j][1]:
                    acc = qsub(acc, qmul(qmul(out[j], (0, (j,), (1,))), self.c[k - j]))
            out[k] = qmul(acc, (0, (1,), (k,)))
        return TruncSeries._mk(self.point, out, n)

    def exp(self) -> "TruncSeries":
        """Formal exponential; constant term must be 0."""
        if self.c[0][1]:
            raise ValueError("exp needs constant term 0")
        n = self.order
        out = [_O] + [_Z] * n
        for k in range(1, n + 1):
            acc = _Z
            for j in range(1, k + 1):
                if self.c[j][1] and out[k - j][1]:
                    acc = qadd(acc, qmul(qmul(self.c[j], (0, (j,), (1,))), out[k - j]))
            out[k] = qmul(acc, (0, (1,), (k,)))
        return TruncSeries._mk(self.point, out, n)

    def is_constant(self, value=None) -> bool:
        if any(t[1] for t in self.c[1:]):
            return False
        return value is None or self.c[0] == coerce_triple(value)


def series_expand(f: RatFun, point: str, order: int) -> TruncSeries:
    """Expansion of a rational function at u=0 (in u) or u=infinity (in u**-1)."""
    if not isinstance(f, RatFun):
        f = RatFun(f)
    return TruncSeries._mk(point, expand_raw(f, point, order), order)


def series_functional_sqrt_mul(z: TruncSeries, xi) -> TruncSeries:
    """zeta with zeta(u) * zeta(u*xi) = z(u) to the truncation order."""
    x = coerce_triple(xi)
    if z.point == INF_PT:
        x = qinv(x)
    r0 = sqrt_monomial(QS(z.c[0]))
    if r0 is None:
        raise NonSquareConstantTerm(f"constant term {QS(z.c[0])} has no square root c*s^m")
    xp = [_O]
    for _ in range(z.order + 1):
        xp.append(qmul(xp[-1], x))
    zeta = [r0.t]
    for k in range(1, z.order + 1):
        acc = z.c[k]
        for a in range(1, k):
            b = k - a
            acc = qsub(acc, qmul(qmul(zeta[a], zeta[b]), xp[b]))
        den = qmul(zeta[0], qadd(_O, xp[k]))
        zeta.append(qmul(acc, qinv(den)))
    return TruncSeries._mk(z.point, zeta, z.order)


def series_functional_sqrt_add(z: TruncSeries, kappa) -> TruncSeries:
    """g with g(u) * g(u + kappa) = z(u)**-1 to the truncation order (point infinity)."""
    if z.point != INF_PT:
        raise ValueError("additive functional square root is taken at infinity")
    if z.c[0] != _O:
        raise ConstantTermNotOne("z must have constant term 1")
    w = z.inv()
    kap = _frac(Fraction(kappa)) if not isinstance(kappa, QS) else kappa.t
    g = [_O] + [_Z] * z.order
    two_inv = (0, (1,), (2,))
    for k in range(1, z.order + 1):
        gs = TruncSeries._mk(INF_PT, g, z.order)
        prod = gs * gs.shift_add(QS(kap))
        g[k] = qmul(qsub(w.c[k], prod.c[k]), two_inv)
    return TruncSeries._mk(INF_PT, g, z.order)
