"""Polynomials and rational functions in the spectral variable u over Q(s).

Coefficients are stored as raw kernel triples for speed; the public
accessors return :class:`QS` values.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from . import kernels as K
from .scalar import QS, coerce_triple

_Z = K.ZERO
_O = K.ONE
qadd, qsub, qmul, qinv, qneg = K.qs_add, K.qs_sub, K.qs_mul, K.qs_inv, K.qs_neg


def _trim(c):
    n = len(c)
    while n and not c[n - 1][1]:
        n -= 1
    return tuple(c[:n])


class PolyU:
    """Polynomial in u with coefficients in Q(s), lowest degree first."""

    __slots__ = ("c",)

    def __init__(self, coeffs=()):
        self.c = _trim([coerce_triple(x) if not isinstance(x, tuple) else x for x in coeffs])

    @staticmethod
    def _raw(c) -> "PolyU":
        p = PolyU.__new__(PolyU)
        p.c = c
        return p

    @staticmethod
    def const(x) -> "PolyU":
        t = coerce_triple(x)
        return PolyU._raw((t,) if t[1] else ())

    @staticmethod
    def linear(a, b) -> "PolyU":
        """a + b*u."""
        return PolyU([a, b])

    u_: "PolyU"

    # basic ---------------------------------------------------------------
    @property
    def deg(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def coeff(self, k: int) -> QS:
        return QS(self.c[k]) if 0 <= k < len(self.c) else QS(_Z)

    def coeffs(self):
        return [QS(t) for t in self.c]

    def lc(self) -> QS:
        return QS(self.c[-1])

    def __eq__(self, other):
        if isinstance(other, PolyU):
            return self.c == other.c
        try:
            return self.c == PolyU.const(other).c
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        if not self.c:
            return "PolyU(0)"
        return "PolyU(" + " + ".join(f"[{QS(t)}]u^{k}" for k, t in enumerate(self.c) if t[1]) + ")"

    # arithmetic ------------------------------------------------------------
    def __add__(self, other):
        o = other if isinstance(other, PolyU) else PolyU.const(other)
        a, b = self.c, o.c
        if len(a) < len(b):
            a, b = b, a
        r = list(a)
        for i, t in enumerate(b):
            r[i] = qadd(r[i], t)
        return PolyU._raw(_trim(r))

    __radd__ = __add__

    def __neg__(self):
        return PolyU._raw(tuple(qneg(t) for t in self.c))

    def __sub__(self, other):
        o = other if isinstance(other, PolyU) else PolyU.const(other)
        return self + (-o)

    def __rsub__(self, other):
        return PolyU.const(other) - self

    def __mul__(self, other):
        if not isinstance(other, PolyU):
            t = coerce_triple(other)
            if not t[1]:
                return PolyU._raw(())
            return PolyU._raw(tuple(qmul(x, t) for x in self.c))
        a, b = self.c, other.c
        if not a or not b:
            return PolyU._raw(())
        r = [_Z] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x[1]:
                for j, y in enumerate(b):
                    if y[1]:
                        r[i + j] = qadd(r[i + j], qmul(x, y))
        return PolyU._raw(_trim(r))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        r = PolyU.const(1)
        for _ in range(k):
            r = r * self
        return r

    def scale_raw(self, t) -> "PolyU":
        if not t[1]:
            return PolyU._raw(())
        return PolyU._raw(tuple(qmul(x, t) for x in self.c))

    def divmod(self, other: "PolyU"):
        if not other.c:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        db = len(other.c) - 1
        il = qinv(other.c[-1])
        if len(r) - 1 < db:
            return PolyU._raw(()), self
        qq = [_Z] * (len(r) - db)
        for k in range(len(r) - 1 - db, -1, -1):
            c = r[k + db]
            if c[1]:
                t = qmul(c, il)
                qq[k] = t
                for j in range(db + 1):
                    r[k + j] = qsub(r[k + j], qmul(t, other.c[j]))
        return PolyU._raw(_trim(qq)), PolyU._raw(_trim(r[:db]))

    def monic(self) -> "PolyU":
        if not self.c:
            return self
        il = qinv(self.c[-1])
        if self.c[-1] == _O:
            return self
        return PolyU._raw(tuple(qmul(x, il) for x in self.c))

    def gcd(self, other: "PolyU") -> "PolyU":
        a, b = self, other
        while b.c:
            a, b = b, a.divmod(b)[1]
        return a.monic()

    # evaluation and substitution ---------------------------------------------
    def eval_raw(self, t):
        r = _Z
        for c in reversed(self.c):
            r = qadd(qmul(r, t), c)
        return r

    def __call__(self, x) -> QS:
        return QS(self.eval_raw(coerce_triple(x)))

    def shift_add(self, c) -> "PolyU":
        """p(u + c)."""
        t = coerce_triple(c)
        if not t[1] or len(self.c) < 2:
            return self
        n = len(self.c)
        pw = [_O]
        for _ in range(n):
            pw.append(qmul(pw[-1], t))
        r = [_Z] * n
        for k, a in enumerate(self.c):
            if a[1]:
                for j in range(k + 1):
                    b = comb(k, j)
                    term = qmul(a, qmul(pw[k - j], (0, (b,), (1,))))
                    r[j] = qadd(r[j], term)
        return PolyU._raw(_trim(r))

    def shift_mul(self, g) -> "PolyU":
        """p(u * g)."""
        t = coerce_triple(g)
        r = []
        pw = _O
        for a in self.c:
            r.append(qmul(a, pw))
            pw = qmul(pw, t)
        return PolyU._raw(_trim(r))

    def reverse_at_zero(self) -> bool:
        return bool(self.c) and bool(self.c[0][1])


PolyU.u_ = PolyU([0, 1])


class PoleAtExpansionPoint(ArithmeticError):
    pass


class RatFun:
    """Canonical rational function num/den with den monic and gcd(num, den) = 1."""

    __slots__ = ("num", "den", "deg_bound_num", "deg_bound_den")

    def __init__(self, num, den=None, bounds=None):
        if not isinstance(num, PolyU):
            num = PolyU.const(num)
        if den is None:
            den = PolyU.const(1)
        elif not isinstance(den, PolyU):
            den = PolyU.const(den)
        if not den.c:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num.c:
            self.num, self.den = num, PolyU.const(1)
        else:
            if len(den.c) > 1:
                g = num.gcd(den)
                if len(g.c) > 1:
                    num = num.divmod(g)[0]
                    den = den.divmod(g)[0]
            il = qinv(den.c[-1])
            if den.c[-1] != _O:
                num = num.scale_raw(il)
                den = den.scale_raw(il)
            self.num, self.den = num, den
        dn, dd = len(self.num.c) - 1, len(self.den.c) - 1
        if bounds is None:
            self.deg_bound_num, self.deg_bound_den = dn, dd
        else:
            self.deg_bound_num = max(bounds[0], dn)
            self.deg_bound_den = max(bounds[1], dd)

    @staticmethod
    def u() -> "RatFun":
        return RatFun(PolyU.u_)

    @staticmethod
    def const(x) -> "RatFun":
        return RatFun(PolyU.const(x))

    def _coerce(self, other):
        if isinstance(other, RatFun):
            return other
        if isinstance(other, PolyU):
            return RatFun(other)
        return RatFun.const(other)

    def __add__(self, other):
        o = self._coerce(other)
        if self.den == o.den:
            return RatFun(self.num + o.num, self.den,
                          (max(self.deg_bound_num, o.deg_bound_num), self.deg_bound_den))
        return RatFun(self.num * o.den + o.num * self.den, self.den * o.den,
                      (max(self.deg_bound_num + o.deg_bound_den, o.deg_bound_num + self.deg_bound_den),
                       self.deg_bound_den + o.deg_bound_den))

    __radd__ = __add__

    def __neg__(self):
        r = RatFun.__new__(RatFun)
        r.num, r.den = -self.num, self.den
        r.deg_bound_num, r.deg_bound_den = self.deg_bound_num, self.deg_bound_den
        return r

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return RatFun(self.num * o.num, self.den * o.den,
                      (self.deg_bound_num + o.deg_bound_num, self.deg_bound_den + o.deg_bound_den))

    __rmul__ = __mul__

    def inv(self) -> "RatFun":
        if not self.num.c:
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFun(self.den, self.num, (self.deg_bound_den, self.deg_bound_num))

    def __truediv__(self, other):
        return self * self._coerce(other).inv()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        r = RatFun.const(1)
        for _ in range(k):
            r = r * self
        return r

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def is_zero(self) -> bool:
        return not self.num.c

    def __bool__(self):
        return bool(self.num.c)

    def __repr__(self):
        return f"RatFun({self.num!r} / {self.den!r})"

    def __call__(self, x) -> QS:
        d = self.den(x)
        if d.is_zero():
            raise ZeroDivisionError("evaluation at a pole")
        return self.num(x) / d

    def shift_add(self, c) -> "RatFun":
        """f(u + c)."""
        return RatFun(self.num.shift_add(c), self.den.shift_add(c),
                      (self.deg_bound_num, self.deg_bound_den))

    def shift_mul(self, g) -> "RatFun":
        """f(u * g)."""
        return RatFun(self.num.shift_mul(g), self.den.shift_mul(g),
                      (self.deg_bound_num, self.deg_bound_den))


def ratfun_shift_add(f: RatFun, c) -> RatFun:
    return f.shift_add(QS(Fraction(c)) if not isinstance(c, QS) else c)


def ratfun_shift_mul(f: RatFun, halfpow) -> RatFun:
    """f(u * q**halfpow) for an integer or half-integer exponent."""
    return f.shift_mul(QS.qpow(halfpow))
