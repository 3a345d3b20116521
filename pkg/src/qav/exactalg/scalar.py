"""Exact scalars in Q(s) where q = s**2.

A ``QS`` wraps the canonical kernel triple ``(e, n, d)`` meaning
``s**e * n(s) / d(s)``.  Equality is structural on the canonical form.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd, isqrt

from . import kernels as K

_ZT = K.ZERO
_OT = K.ONE


def coerce_triple(x):
    """Kernel triple for an int, Fraction or QS."""
    if isinstance(x, QS):
        return x.t
    if isinstance(x, tuple):
        return x
    if isinstance(x, int):
        return (0, (x,), (1,)) if x else _ZT
    if isinstance(x, Fraction):
        if not x:
            return _ZT
        return (0, (x.numerator,), (x.denominator,))
    raise TypeError(f"cannot convert {type(x).__name__} to QS")


class QS:
    __slots__ = ("t",)

    def __init__(self, value=0):
        if isinstance(value, tuple):
            self.t = value
        else:
            self.t = coerce_triple(value)

    # constructors -------------------------------------------------------
    @staticmethod
    def spow(k: int) -> "QS":
        """s**k."""
        return QS((k, (1,), (1,)))

    @staticmethod
    def qpow(h) -> "QS":
        """q**h for integer or half-integer h."""
        h2 = Fraction(h) * 2
        if h2.denominator != 1:
            raise ValueError(f"q-exponent {h} is not a half-integer")
        return QS((int(h2), (1,), (1,)))

    @staticmethod
    def from_polys(num, den, shift: int = 0) -> "QS":
        """``s**shift * num(s)/den(s)`` from coefficient lists (ints or Fractions)."""
        num = [Fraction(c) for c in num]
        den = [Fraction(c) for c in den]
        m = 1
        for c in num + den:
            m = m * c.denominator // gcd(m, c.denominator)
        n = tuple(int(c * m) for c in num)
        d = tuple(int(c * m) for c in den)
        while n and n[-1] == 0:
            n = n[:-1]
        while d and d[-1] == 0:
            d = d[:-1]
        return QS(K.qs_norm(shift, n, d))

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        try:
            o = coerce_triple(other)
        except TypeError:
            return NotImplemented
        return QS(K.qs_add(self.t, o))

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = coerce_triple(other)
        except TypeError:
            return NotImplemented
        return QS(K.qs_sub(self.t, o))

    def __rsub__(self, other):
        try:
            o = coerce_triple(other)
        except TypeError:
            return NotImplemented
        return QS(K.qs_sub(o, self.t))

    def __mul__(self, other):
        try:
            o = coerce_triple(other)
        except TypeError:
            return NotImplemented
        return QS(K.qs_mul(self.t, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = coerce_triple(other)
        except TypeError:
            return NotImplemented
        return QS(K.qs_mul(self.t, K.qs_inv(o)))

    def __rtruediv__(self, other):
        try:
            o = coerce_triple(other)
        except TypeError:
            return NotImplemented
        return QS(K.qs_mul(o, K.qs_inv(self.t)))

    def __neg__(self):
        return QS(K.qs_neg(self.t))

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inv() ** (-k)
        r, b = _OT, self.t
        while k:
            if k & 1:
                r = K.qs_mul(r, b)
            k >>= 1
            if k:
                b = K.qs_mul(b, b)
        return QS(r)

    def inv(self) -> "QS":
        return QS(K.qs_inv(self.t))

    # comparison ---------------------------------------------------------
    def __eq__(self, other):
        try:
            return self.t == coerce_triple(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(self.t)

    def __bool__(self):
        return bool(self.t[1])

    def is_zero(self) -> bool:
        return not self.t[1]

    def is_rational(self) -> bool:
        e, n, d = self.t
        return not n or (e == 0 and len(n) == 1 and len(d) == 1)

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational constant")
        e, n, d = self.t
        return Fraction(n[0], d[0]) if n else Fraction(0)

    def monomial(self):
        """``(c, k)`` with self = c*s**k (c a Fraction), or None."""
        e, n, d = self.t
        if len(n) == 1 and len(d) == 1:
            return Fraction(n[0], d[0]), e
        return None

    def is_laurent(self) -> bool:
        return len(self.t[2]) == 1

    def subs(self, s_value: Fraction) -> Fraction:
        """Evaluate at a rational value of s (used by tests and witnesses)."""
        e, n, d = self.t
        sv = Fraction(s_value)
        return sv ** e * K.peval(n, sv) / K.peval(d, sv) if n else Fraction(0)

    # formatting ---------------------------------------------------------
    def __repr__(self):
        return f"QS({format_qs(self)!r})"

    def __str__(self):
        return format_qs(self)


ZERO = QS(_ZT)
ONE = QS(_OT)
s = QS.spow(1)
q = QS.spow(2)


def _terms(coeffs, shift, den=1):
    out = []
    for k, c in enumerate(coeffs):
        if c:
            f = Fraction(c, den)
            out.append(f"{f.numerator}/{f.denominator}·s^{k + shift}")
    return " + ".join(out)


def format_qs(x: QS) -> str:
    """Exact string: sums of ``p/q·s^k`` terms, with a ``/(...)`` factor if not Laurent."""
    e, n, d = x.t
    if not n:
        return "0"
    if len(d) == 1:
        return _terms(n, e, d[0])
    return f"({_terms(n, e)})/({_terms(d, 0)})"


_TERM = re.compile(r"^\s*(-?\d+)/(\d+)·s\^(-?\d+)\s*$")


def _parse_terms(text: str):
    coeffs: dict[int, Fraction] = {}
    for part in text.split(" + "):
        m = _TERM.match(part)
        if not m:
            raise ValueError(f"bad scalar term {part!r}")
        k = int(m.group(3))
        coeffs[k] = coeffs.get(k, Fraction(0)) + Fraction(int(m.group(1)), int(m.group(2)))
    lo = min(coeffs)
    hi = max(coeffs)
    return [coeffs.get(k, Fraction(0)) for k in range(lo, hi + 1)], lo


def parse_qs(text: str) -> QS:
    """Inverse of :func:`format_qs`."""
    text = text.strip()
    if text == "0":
        return ZERO
    if text.startswith("(") and ")/(" in text and text.endswith(")"):
        a, b = text[1:-1].split(")/(")
        na, ea = _parse_terms(a)
        nb, eb = _parse_terms(b)
        return QS.from_polys(na, nb, ea - eb)
    na, ea = _parse_terms(text)
    return QS.from_polys(na, [1], ea)


def to_qs(x) -> QS:
    if isinstance(x, QS):
        return x
    if isinstance(x, str):
        return QS(Fraction(x))
    return QS(x)


def qnum(k: int, g: QS = q) -> QS:
    """[k]_g = (g**k - g**-k)/(g - g**-1)."""
    g = to_qs(g)
    if k == 0:
        return ZERO
    return (g ** k - g ** (-k)) / (g - g.inv())


def qfact(k: int, g: QS = q) -> QS:
    r = ONE
    for j in range(1, k + 1):
        r = r * qnum(j, g)
    return r


def qbinom(k: int, r: int, g: QS = q) -> QS:
    if not 0 <= r <= k:
        raise ValueError("qbinom needs 0 <= r <= k")
    return qfact(k, g) / (qfact(r, g) * qfact(k - r, g))


def sqrt_monomial(x: QS):
    """Square root of c*s**m with c a rational square and m even; None otherwise.

    The root with positive rational part is returned.
    """
    mono = x.monomial()
    if mono is None:
        return None
    c, m = mono
    if c <= 0 or m % 2:
        return None
    a, b = c.numerator, c.denominator
    ra, rb = isqrt(a), isqrt(b)
    if ra * ra != a or rb * rb != b:
        return None
    return QS(Fraction(ra, rb)) * QS.spow(m // 2)
