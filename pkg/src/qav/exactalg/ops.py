"""Sparse operators over Q(s) and series/polynomials with operator coefficients.

An :class:`Op` is a d x d matrix stored as ``{row: {col: triple}}`` with no
explicit zeros.  Entries are raw kernel triples; use :class:`QS` at the API
boundary.
"""

from __future__ import annotations

from math import comb

from . import kernels as K
from .scalar import QS, coerce_triple
from .series import INF_PT, ZERO_PT, TruncSeries

_Z = K.ZERO
_O = K.ONE
qadd, qsub, qmul, qinv, qneg = K.qs_add, K.qs_sub, K.qs_mul, K.qs_inv, K.qs_neg


class SingularOperator(ArithmeticError):
    pass


class Op:
    __slots__ = ("d", "rows")

    def __init__(self, d: int, rows=None):
        self.d = d
        self.rows = rows if rows is not None else {}

    # constructors --------------------------------------------------------
    @staticmethod
    def zero(d):
        return Op(d, {})

    @staticmethod
    def identity(d):
        return Op(d, {i: {i: _O} for i in range(d)})

    @staticmethod
    def scalar(d, x):
        t = coerce_triple(x)
        if not t[1]:
            return Op(d, {})
        return Op(d, {i: {i: t} for i in range(d)})

    @staticmethod
    def unit(d, i, j, x=1):
        t = coerce_triple(x)
        return Op(d, {i: {j: t}} if t[1] else {})

    @staticmethod
    def from_dense(m):
        d = len(m)
        rows = {}
        for i, r in enumerate(m):
            row = {}
            for j, x in enumerate(r):
                t = coerce_triple(x)
                if t[1]:
                    row[j] = t
            if row:
                rows[i] = row
        return Op(d, rows)

    def to_dense(self):
        out = [[QS(_Z)] * self.d for _ in range(self.d)]
        for i, row in self.rows.items():
            for j, t in row.items():
                out[i][j] = QS(t)
        return out

    def entry(self, i, j) -> QS:
        return QS(self.rows.get(i, {}).get(j, _Z))

    def entry_raw(self, i, j):
        return self.rows.get(i, {}).get(j, _Z)

    def nnz(self):
        return sum(len(r) for r in self.rows.values())

    def items(self):
        for i, row in self.rows.items():
            for j, t in row.items():
                yield i, j, t

    # arithmetic ------------------------------------------------------------
    def __add__(self, o: "Op") -> "Op":
        return Op(self.d, K.rows_add(self.rows, o.rows))

    def __neg__(self):
        return Op(self.d, {i: {j: qneg(t) for j, t in r.items()} for i, r in self.rows.items()})

    def __sub__(self, o):
        return self + (-o)

    def scale(self, x) -> "Op":
        t = coerce_triple(x) if not isinstance(x, tuple) else x
        if not t[1]:
            return Op(self.d, {})
        if t == _O:
            return self
        return Op(self.d, {i: {j: qmul(v, t) for j, v in r.items()} for i, r in self.rows.items()})

    def __mul__(self, o):
        if not isinstance(o, Op):
            if isinstance(o, (OpSeries, OpPoly)):
                return NotImplemented
            return self.scale(o)
        return Op(self.d, K.rows_mul(self.rows, o.rows))

    def __rmul__(self, x):
        return self.scale(x)

    def kron(self, o: "Op") -> "Op":
        """Tensor product; basis index (i, k) -> i * o.d + k."""
        d2 = o.d
        out = {}
        for i, row in self.rows.items():
            for k, orow in o.rows.items():
                r = {}
                for j, a in row.items():
                    for l, b in orow.items():
                        r[j * d2 + l] = qmul(a, b)
                out[i * d2 + k] = r
        return Op(self.d * d2, out)

    def transpose(self) -> "Op":
        out = {}
        for i, row in self.rows.items():
            for j, t in row.items():
                out.setdefault(j, {})[i] = t
        return Op(self.d, out)

    def commutator(self, o, g=None) -> "Op":
        """[A, B]_g = AB - g BA (g = 1 when omitted)."""
        ba = o * self
        return self * o - (ba if g is None else ba.scale(g))

    # predicates ---------------------------------------------------------------
    def __eq__(self, o):
        if not isinstance(o, Op):
            return NotImplemented
        return self.d == o.d and self.rows == o.rows

    def __hash__(self):
        return hash((self.d, tuple(sorted((i, tuple(sorted(r.items()))) for i, r in self.rows.items()))))

    def is_zero(self) -> bool:
        return not self.rows

    def scalar_value(self):
        """Triple c with self = c*Id, or None."""
        if not self.rows:
            return _Z
        if len(self.rows) != self.d:
            return None
        c = None
        for i, row in self.rows.items():
            if len(row) != 1 or i not in row:
                return None
            if c is None:
                c = row[i]
            elif row[i] != c:
                return None
        return c

    def first_nonzero(self):
        for i in sorted(self.rows):
            j = min(self.rows[i])
            return i, j, QS(self.rows[i][j])
        return None

    def apply(self, vec: dict) -> dict:
        """Action on a sparse vector {index: triple}."""
        out = {}
        for i, row in self.rows.items():
            acc = _Z
            for j, t in row.items():
                v = vec.get(j)
                if v is not None:
                    acc = qadd(acc, qmul(t, v))
            if acc[1]:
                out[i] = acc
        return out

    def inverse(self) -> "Op":
        return Op(self.d, sparse_inverse({i: dict(r) for i, r in self.rows.items()}, self.d))

    def __repr__(self):
        return f"Op(d={self.d}, nnz={self.nnz()})"


def _pivot_key(t):
    e, n, d = t
    return (len(n) + len(d), sum(abs(x).bit_length() for x in n))


def sparse_inverse(rows: dict, d: int) -> dict:
    """Gauss-Jordan inverse of a sparse matrix over Q(s) (rows are consumed)."""
    aug = {i: rows.get(i, {}) for i in range(d)}
    inv = {i: {i: _O} for i in range(d)}
    remaining = set(range(d))
    pivrow_of_col = {}
    for col in range(d):
        best = None
        for i in remaining:
            t = aug[i].get(col)
            if t is not None:
                key = (len(aug[i]), _pivot_key(t))
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            raise SingularOperator(f"singular operator (column {col})")
        p = best[1]
        remaining.discard(p)
        pivrow_of_col[col] = p
        pv = qinv(aug[p][col])
        arow = {j: qmul(t, pv) for j, t in aug[p].items()}
        irow = {j: qmul(t, pv) for j, t in inv[p].items()}
        aug[p], inv[p] = arow, irow
        for i in range(d):
            if i == p:
                continue
            f = aug[i].get(col)
            if f is None:
                continue
            ri, ii = aug[i], inv[i]
            for j, t in arow.items():
                v = qsub(ri.get(j, _Z), qmul(f, t))
                if v[1]:
                    ri[j] = v
                else:
                    ri.pop(j, None)
            for j, t in irow.items():
                v = qsub(ii.get(j, _Z), qmul(f, t))
                if v[1]:
                    ii[j] = v
                else:
                    ii.pop(j, None)
    out = {}
    for col, p in pivrow_of_col.items():
        if inv[p]:
            out[col] = inv[p]
    return out


class OpSeries:
    """Truncated series with Op coefficients: sum_{k<=order} C_k t**k."""

    __slots__ = ("point", "order", "d", "c")

    def __init__(self, point, coeffs, order=None, d=None):
        if order is None:
            order = len(coeffs) - 1
        if d is None:
            d = coeffs[0].d
        coeffs = list(coeffs[: order + 1])
        while len(coeffs) < order + 1:
            coeffs.append(Op.zero(d))
        self.point, self.order, self.d, self.c = point, order, d, coeffs

    @staticmethod
    def identity(point, order, d):
        return OpSeries(point, [Op.identity(d)], order, d)

    @staticmethod
    def zero(point, order, d):
        return OpSeries(point, [], order, d)

    @staticmethod
    def from_scalar(ts: TruncSeries, d):
        return OpSeries(ts.point, [Op.scalar(d, t) for t in ts.c], ts.order, d)

    def _chk(self, o):
        if self.point != o.point:
            raise ValueError("operator series at different points")
        return min(self.order, o.order)

    def __add__(self, o):
        n = self._chk(o)
        return OpSeries(self.point, [a + b for a, b in zip(self.c[: n + 1], o.c)], n, self.d)

    def __neg__(self):
        return OpSeries(self.point, [-a for a in self.c], self.order, self.d)

    def __sub__(self, o):
        n = self._chk(o)
        return OpSeries(self.point, [a - b for a, b in zip(self.c[: n + 1], o.c)], n, self.d)

    def __mul__(self, o):
        if isinstance(o, OpSeries):
            n = self._chk(o)
            out = []
            for k in range(n + 1):
                acc = Op.zero(self.d)
                for j in range(k + 1):
                    a, b = self.c[j], o.c[k - j]
                    if a.rows and b.rows:
                        acc = acc + a * b
                out.append(acc)
            return OpSeries(self.point, out, n, self.d)
        if isinstance(o, TruncSeries):
            n = min(self.order, o.order)
            out = []
            for k in range(n + 1):
                acc = Op.zero(self.d)
                for j in range(k + 1):
                    t = o.c[k - j]
                    if t[1] and self.c[j].rows:
                        acc = acc + self.c[j].scale(t)
                out.append(acc)
            return OpSeries(self.point, out, n, self.d)
        if isinstance(o, Op):
            return OpSeries(self.point, [a * o for a in self.c], self.order, self.d)
        t = coerce_triple(o)
        return OpSeries(self.point, [a.scale(t) for a in self.c], self.order, self.d)

    def __rmul__(self, o):
        if isinstance(o, Op):
            return OpSeries(self.point, [o * a for a in self.c], self.order, self.d)
        if isinstance(o, TruncSeries):
            return self * o
        t = coerce_triple(o)
        return OpSeries(self.point, [a.scale(t) for a in self.c], self.order, self.d)

    def inv(self) -> "OpSeries":
        c0i = self.c[0].inverse()
        out = [c0i]
        for k in range(1, self.order + 1):
            acc = Op.zero(self.d)
            for j in range(1, k + 1):
                if self.c[j].rows and out[k - j].rows:
                    acc = acc + self.c[j] * out[k - j]
            out.append(-(c0i * acc))
        return OpSeries(self.point, out, self.order, self.d)

    def shift_mul(self, g) -> "OpSeries":
        t = coerce_triple(g)
        if self.point == INF_PT:
            t = qinv(t)
        out, pw = [], _O
        for a in self.c:
            out.append(a.scale(pw))
            pw = qmul(pw, t)
        return OpSeries(self.point, out, self.order, self.d)

    def shift_add(self, c) -> "OpSeries":
        if self.point != INF_PT:
            raise ValueError("additive shifts are taken at infinity")
        t = coerce_triple(c)
        if not t[1]:
            return self
        negc = qneg(t)
        pw = [_O]
        for _ in range(self.order + 1):
            pw.append(qmul(pw[-1], negc))
        out = [Op.zero(self.d) for _ in range(self.order + 1)]
        out[0] = self.c[0]
        for k in range(1, self.order + 1):
            a = self.c[k]
            if not a.rows:
                continue
            for m in range(self.order + 1 - k):
                b = comb(k + m - 1, m)
                out[k + m] = out[k + m] + a.scale(qmul(pw[m], (0, (b,), (1,))))
        return OpSeries(self.point, out, self.order, self.d)

    def truncate(self, order):
        return OpSeries(self.point, self.c[: order + 1], min(order, self.order), self.d)

    def __eq__(self, o):
        if not isinstance(o, OpSeries):
            return NotImplemented
        n = min(self.order, o.order)
        return self.point == o.point and all(a == b for a, b in zip(self.c[: n + 1], o.c[: n + 1]))

    __hash__ = None

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.c)

    def first_difference(self, o):
        """(k, i, j, lhs, rhs) of the first differing coefficient entry, or None."""
        n = min(self.order, o.order)
        for k in range(n + 1):
            a, b = self.c[k], o.c[k]
            if a != b:
                diff = a - b
                i, j, _ = diff.first_nonzero()
                return k, i, j, a.entry(i, j), b.entry(i, j)
        return None

    def scalar_series(self):
        """TruncSeries if every coefficient is scalar, else None."""
        out = []
        for a in self.c:
            v = a.scalar_value()
            if v is None:
                return None
            out.append(v)
        return TruncSeries._mk(self.point, out, self.order)

    def __repr__(self):
        return f"OpSeries({self.point}, order={self.order}, d={self.d})"


class OpPoly:
    """Polynomial in u with Op coefficients (no truncation)."""

    __slots__ = ("d", "c")

    def __init__(self, d, coeffs):
        c = list(coeffs)
        while c and c[-1].is_zero():
            c.pop()
        self.d, self.c = d, c

    @property
    def deg(self):
        return len(self.c) - 1

    def __add__(self, o):
        n = max(len(self.c), len(o.c))
        z = Op.zero(self.d)
        return OpPoly(self.d, [(self.c[k] if k < len(self.c) else z) + (o.c[k] if k < len(o.c) else z)
                               for k in range(n)])

    def __neg__(self):
        return OpPoly(self.d, [-a for a in self.c])

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        if isinstance(o, OpPoly):
            if not self.c or not o.c:
                return OpPoly(self.d, [])
            out = [Op.zero(self.d) for _ in range(len(self.c) + len(o.c) - 1)]
            for i, a in enumerate(self.c):
                if a.rows:
                    for j, b in enumerate(o.c):
                        if b.rows:
                            out[i + j] = out[i + j] + a * b
            return OpPoly(self.d, out)
        if isinstance(o, Op):
            return OpPoly(self.d, [a * o for a in self.c])
        return self.scale_poly(o)

    def lmul(self, o: Op) -> "OpPoly":
        return OpPoly(self.d, [o * a for a in self.c])

    def scale_poly(self, p) -> "OpPoly":
        """Multiply by a scalar PolyU (or a scalar)."""
        from .poly import PolyU

        if not isinstance(p, PolyU):
            p = PolyU.const(p)
        if not p.c or not self.c:
            return OpPoly(self.d, [])
        out = [Op.zero(self.d) for _ in range(len(self.c) + len(p.c) - 1)]
        for i, a in enumerate(self.c):
            if a.rows:
                for j, t in enumerate(p.c):
                    if t[1]:
                        out[i + j] = out[i + j] + a.scale(t)
        return OpPoly(self.d, out)

    def eval(self, x) -> Op:
        t = coerce_triple(x)
        acc = Op.zero(self.d)
        for a in reversed(self.c):
            acc = acc.scale(t) + a
        return acc

    def __eq__(self, o):
        return isinstance(o, OpPoly) and self.d == o.d and self.c == o.c

    __hash__ = None

    def is_zero(self):
        return not self.c

    def first_difference(self, o):
        n = max(len(self.c), len(o.c))
        z = Op.zero(self.d)
        for k in range(n):
            a = self.c[k] if k < len(self.c) else z
            b = o.c[k] if k < len(o.c) else z
            if a != b:
                i, j, _ = (a - b).first_nonzero()
                return k, i, j, a.entry(i, j), b.entry(i, j)
        return None


__all__ = ["Op", "OpSeries", "OpPoly", "SingularOperator", "sparse_inverse", "ZERO_PT", "INF_PT"]
