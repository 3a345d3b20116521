"""Structural constants of classical types and the rational/trigonometric R-matrices.

Indices are 1-based throughout: ``i`` runs over ``1..N`` and ``i' = N+1-i``.
An :class:`EndoMat` stores the coefficient of ``e_ij (x) e_kl`` under the key
``(i, j, k, l)``.  Two-parameter R-matrices are kept as polynomials in (u, v)
after multiplying by a scalar clearing factor, so identities among them are
identities of polynomials.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .exactalg import kernels as K
from .exactalg.poly import PolyU, RatFun
from .exactalg.scalar import QS, coerce_triple, q

_Z = K.ZERO
_O = K.ONE
qadd, qsub, qmul, qinv, qneg = K.qs_add, K.qs_sub, K.qs_mul, K.qs_inv, K.qs_neg


class UnsupportedRank(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


# ---------------------------------------------------------------------------
# Lie type data


@dataclass(frozen=True)
class LieTypeData:
    family: str
    n: int
    N: int
    eps_list: tuple
    bar_list: tuple
    kappa: Fraction | None
    xi: QS | None
    r: tuple
    cartan: tuple
    roots: tuple = field(repr=False)

    @property
    def name(self) -> str:
        return f"{self.family}{self.n}"

    @property
    def rank(self) -> int:
        """Number of simple roots."""
        return len(self.r)

    @property
    def orthogonal(self) -> bool:
        return self.family in ("B", "D")

    def eps(self, i: int) -> int:
        return self.eps_list[i - 1]

    def p(self, i: int) -> int:
        return self.N + 1 - i

    def bar(self, i: int) -> Fraction:
        return self.bar_list[i - 1]

    def qbar(self, i: int) -> QS:
        return QS.qpow(self.bar_list[i - 1])

    def inner(self, i: int, j: int) -> Fraction:
        """(alpha_i, alpha_j) for simple roots (1-based)."""
        a, b = self.roots[i - 1], self.roots[j - 1]
        return sum((x * y for x, y in zip(a, b)), Fraction(0))

    def q_i(self, i: int) -> QS:
        return QS.qpow(self.r[i - 1])


def _cartan(roots):
    n = len(roots)

    def ip(a, b):
        return sum((x * y for x, y in zip(a, b)), Fraction(0))

    return tuple(tuple(int(2 * ip(roots[i], roots[j]) / ip(roots[i], roots[i])) for j in range(n))
                 for i in range(n))


def build_type(family: str, n: int, allow_abelian: bool = False) -> LieTypeData:
    """Structural constants for B_n, C_n, D_n, or the gl_n case of type A.

    ``allow_abelian`` admits the abelian o_2 case (family D, n = 1).
    """
    family = family.upper()
    if family not in ("A", "B", "C", "D"):
        raise UnsupportedRank(f"unknown family {family!r}")
    if n < 1 or (family in ("C", "D") and n < 2 and not (family == "D" and allow_abelian and n == 1)) \
            or (family == "A" and n < 2):
        raise UnsupportedRank(f"{family}{n} is not supported")
    half = Fraction(1, 2)
    if family == "A":
        N = n
        eps = (1,) * N
        bar = tuple(Fraction(0) for _ in range(N))
        roots = tuple(tuple(Fraction(1 if k == i else -1 if k == i + 1 else 0) for k in range(N))
                      for i in range(n - 1))
        return LieTypeData("A", n, N, eps, bar, None, None, tuple(Fraction(1) for _ in range(n - 1)),
                           _cartan(roots), roots)
    N = 2 * n + 1 if family == "B" else 2 * n
    if family == "C":
        eps = tuple(1 if i <= n else -1 for i in range(1, N + 1))
        kappa = Fraction(N, 2) + 1
        bar = tuple(Fraction(n - i + 1) for i in range(1, n + 1)) + \
            tuple(Fraction(-i) for i in range(1, n + 1))
    else:
        eps = (1,) * N
        kappa = Fraction(N, 2) - 1
        if family == "B":
            bar = tuple(Fraction(n - i) + half for i in range(1, n + 1)) + (Fraction(0),) + \
                tuple(-Fraction(i - 1) - half for i in range(1, n + 1))
        else:
            bar = tuple(Fraction(n - i) for i in range(1, n + 1)) + \
                tuple(-Fraction(i - 1) for i in range(1, n + 1))
    xi = QS.qpow(-2 * kappa)

    def e(k):
        return tuple(Fraction(1 if m == k else 0) for m in range(n))

    roots = [tuple(a - b for a, b in zip(e(i), e(i + 1))) for i in range(n - 1)]
    if family == "B":
        roots.append(e(n - 1))
    elif family == "C":
        roots.append(tuple(2 * x for x in e(n - 1)))
    elif n >= 2:
        roots.append(tuple(a + b for a, b in zip(e(n - 2), e(n - 1))))
    roots = tuple(roots)
    r = tuple(Fraction(1, 2) * sum((x * x for x in a), Fraction(0)) for a in roots)
    return LieTypeData(family, n, N, eps, bar, kappa, xi, r, _cartan(roots) if roots else (), roots)


def parse_type(spec: str) -> LieTypeData:
    """'B:2' or 'B2' -> LieTypeData."""
    spec = spec.strip().upper().replace(":", "")
    if len(spec) < 2 or not spec[1:].isdigit():
        raise UnsupportedRank(f"bad type spec {spec!r}")
    return build_type(spec[0], int(spec[1:]))


# ---------------------------------------------------------------------------
# bivariate polynomials in (u, v) over Q(s)


class BiPoly:
    """Polynomial in u and v: {(deg_u, deg_v): triple}."""

    __slots__ = ("t",)

    def __init__(self, terms=None):
        self.t = {k: v for k, v in (terms or {}).items() if v[1]}

    @staticmethod
    def const(x):
        t = coerce_triple(x)
        return BiPoly({(0, 0): t})

    @staticmethod
    def u(c=1):
        return BiPoly({(1, 0): coerce_triple(c)})

    @staticmethod
    def v(c=1):
        return BiPoly({(0, 1): coerce_triple(c)})

    def __add__(self, o):
        if not isinstance(o, BiPoly):
            o = BiPoly.const(o)
        r = dict(self.t)
        for k, x in o.t.items():
            r[k] = qadd(r[k], x) if k in r else x
        return BiPoly(r)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({k: qneg(x) for k, x in self.t.items()})

    def __sub__(self, o):
        if not isinstance(o, BiPoly):
            o = BiPoly.const(o)
        return self + (-o)

    def __rsub__(self, o):
        return BiPoly.const(o) - self

    def __mul__(self, o):
        if not isinstance(o, BiPoly):
            t = coerce_triple(o)
            return BiPoly({k: qmul(x, t) for k, x in self.t.items()})
        r = {}
        for (a, b), x in self.t.items():
            for (c, d), y in o.t.items():
                k = (a + c, b + d)
                p = qmul(x, y)
                r[k] = qadd(r[k], p) if k in r else p
        return BiPoly(r)

    __rmul__ = __mul__

    def __eq__(self, o):
        return isinstance(o, BiPoly) and self.t == o.t

    __hash__ = None

    def is_zero(self):
        return not self.t

    def deg_u(self):
        return max((a for a, _ in self.t), default=-1)

    def deg_v(self):
        return max((b for _, b in self.t), default=-1)

    def eval_v(self, v) -> PolyU:
        vt = coerce_triple(v)
        n = self.deg_u() + 1
        c = [_Z] * max(n, 0)
        pw = {}
        for (a, b), x in self.t.items():
            if b not in pw:
                pw[b] = coerce_triple(QS(vt) ** b)
            c[a] = qadd(c[a], qmul(x, pw[b]))
        return PolyU(c)

    def eval_uv(self, u, v):
        return self.eval_v(v)(u)

    def swap(self):
        return BiPoly({(b, a): x for (a, b), x in self.t.items()})


# ---------------------------------------------------------------------------
# endomorphism matrices of C^N (x) C^N


class EndoMat:
    """Sparse element of End C^N (x) End C^N; values of any ring type."""

    def __init__(self, N: int, entries=None, clear=None):
        self.N = N
        self.entries = dict(entries or {})
        self.clear = clear

    def __getitem__(self, key):
        return self.entries.get(key)

    def items(self):
        return self.entries.items()

    def nnz(self):
        return len(self.entries)

    def as_rows(self):
        """Row-major form {(i,k): {(j,l): value}} acting on C^N (x) C^N."""
        out = {}
        for (i, j, k, l), x in self.entries.items():
            out.setdefault((i, k), {})[(j, l)] = x
        return out

    def at_v(self, v) -> "EndoMat":
        """Specialize a cleared two-parameter matrix to v, returning RatFun entries in u."""
        den = self.clear.eval_v(v) if self.clear is not None else PolyU.const(1)
        out = {}
        for key, bp in self.entries.items():
            num = bp.eval_v(v)
            if num.c:
                out[key] = RatFun(num, den)
        return EndoMat(self.N, out)


def _add(entries, key, val):
    if key in entries:
        entries[key] = entries[key] + val
    else:
        entries[key] = val


def _prune(entries):
    return {k: v for k, v in entries.items() if not v.is_zero()}


def build_P(N: int) -> EndoMat:
    return EndoMat(N, {(i, j, j, i): BiPoly.const(1) for i in range(1, N + 1) for j in range(1, N + 1)})


def build_Q_rational(t: LieTypeData) -> EndoMat:
    """Q = sum eps_i eps_j e_ij (x) e_i'j'."""
    N = t.N
    return EndoMat(N, {(i, j, t.p(i), t.p(j)): BiPoly.const(t.eps(i) * t.eps(j))
                       for i in range(1, N + 1) for j in range(1, N + 1)})


def build_Q_trig(t: LieTypeData) -> EndoMat:
    """Q = sum q^(bar i - bar j) eps_i eps_j e_i'j' (x) e_ij."""
    N = t.N
    out = {}
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            out[(t.p(i), t.p(j), i, j)] = BiPoly.const(QS.qpow(t.bar(i) - t.bar(j)) * (t.eps(i) * t.eps(j)))
    return EndoMat(N, out)


def build_D(t: LieTypeData) -> list:
    """Diagonal of D = diag(q^bar1, ..., q^barN)."""
    return [t.qbar(i) for i in range(1, t.N + 1)]


def yangian_R_cleared(t: LieTypeData) -> EndoMat:
    """(u-v)(u-v-kappa) R(u-v) as a polynomial matrix (type A: (u-v)(1 - P/(u-v)))."""
    x = BiPoly.u() - BiPoly.v()
    out = {}
    N = t.N
    if t.family == "A":
        for i in range(1, N + 1):
            for k in range(1, N + 1):
                _add(out, (i, i, k, k), x)
                _add(out, (i, k, k, i), BiPoly.const(-1))
        return EndoMat(N, _prune(out), clear=x)
    kap = QS(t.kappa)
    xk = x - kap
    for i in range(1, N + 1):
        for k in range(1, N + 1):
            _add(out, (i, i, k, k), x * xk)
            _add(out, (i, k, k, i), -xk)
            _add(out, (i, k, t.p(i), t.p(k)), x * (t.eps(i) * t.eps(k)))
    return EndoMat(N, _prune(out), clear=x * xk)


def build_R_yangian(t: LieTypeData) -> EndoMat:
    """R(u) = 1 - P/u + Q/(u - kappa) with RatFun entries."""
    return yangian_R_cleared(t).at_v(0)


def d_coeff(t: LieTypeData, i: int, j: int) -> BiPoly:
    """d_ij(u, v) as a polynomial in u and v."""
    qq = q - q.inv()
    xi = t.xi
    if i < j:
        return BiPoly.v(qq * xi * QS.qpow(t.bar(i) - t.bar(j)) * (t.eps(i) * t.eps(j)))
    if i > j:
        return BiPoly.u(qq * QS.qpow(t.bar(i) - t.bar(j)) * (t.eps(i) * t.eps(j)))
    c = 1 - q.inv()
    if i != t.p(i):
        return BiPoly.u(c) + BiPoly.v(c * q * xi)
    return BiPoly.u(c * q) + BiPoly.v(c * xi)


def trig_R_cleared(t: LieTypeData) -> EndoMat:
    """(u - v xi) R(u, v) for types B, C, D; R_A(u, v) for type A (no clearing)."""
    N = t.N
    qq = q - q.inv()
    uu, vv = BiPoly.u(), BiPoly.v()
    base = {}
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            if i == j:
                _add(base, (i, i, j, j), uu * q - vv * q.inv())
            else:
                _add(base, (i, i, j, j), uu - vv)
                _add(base, (i, j, j, i), (uu if i < j else vv) * qq)
    if t.family == "A":
        return EndoMat(N, _prune(base), clear=None)
    clear = uu - vv * t.xi
    out = {k: v * clear for k, v in base.items()}
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            _add(out, (t.p(i), t.p(j), i, j), -((uu - vv) * d_coeff(t, i, j)))
    return EndoMat(N, _prune(out), clear=clear)


def build_R_trig(t: LieTypeData, v_value) -> EndoMat:
    """R(u, v_value) with RatFun entries in u."""
    v = QS(v_value) if not isinstance(v_value, QS) else v_value
    if v.is_zero():
        raise ValueError("v must be nonzero")
    return trig_R_cleared(t).at_v(v)


def build_R_typeA(n: int) -> EndoMat:
    """R_A(u) = R_A(u, 1)."""
    return trig_R_cleared(build_type("A", n)).at_v(1)


def build_R_constant(t: LieTypeData) -> EndoMat:
    """The constant trigonometric R-matrix (types B, C, D)."""
    N = t.N
    qq = q - q.inv()
    out = {}
    for i in range(1, N + 1):
        if i != t.p(i):
            _add(out, (i, i, i, i), q)
            _add(out, (i, i, t.p(i), t.p(i)), q.inv())
        else:
            _add(out, (i, i, i, i), QS(1))
        for j in range(1, N + 1):
            if j != i and j != t.p(i):
                _add(out, (i, i, j, j), QS(1))
            if i < j:
                _add(out, (i, j, j, i), qq)
            if i > j:
                _add(out, (t.p(i), t.p(j), i, j), -qq * QS.qpow(t.bar(i) - t.bar(j)) * (t.eps(i) * t.eps(j)))
    return EndoMat(N, {k: v for k, v in out.items() if not v.is_zero()})


def build_R_oneparam(t: LieTypeData) -> EndoMat:
    """R(u) = (u-1) R + (q - q^-1)(P - (u xi - xi)/(u - xi) Q) with RatFun entries."""
    N = t.N
    u = RatFun.u()
    qq = q - q.inv()
    fac = (u * t.xi - t.xi) / (u - t.xi)
    out = {}
    for k, c in build_R_constant(t).items():
        _add(out, k, (u - 1) * c)
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            _add(out, (i, j, j, i), RatFun.const(qq))
            _add(out, (t.p(i), t.p(j), i, j),
                 -(fac * (qq * QS.qpow(t.bar(i) - t.bar(j)) * (t.eps(i) * t.eps(j)))))
    return EndoMat(N, {k: v for k, v in out.items() if not v.is_zero()})


def aux_transpose_entries(t: LieTypeData, entry):
    """Transposition e_ij -> eps_i eps_j e_j'i' in the auxiliary space.

    ``entry(i, j)`` returns the (i, j) block; the result is a function of the
    same shape returning (M^t)_(a, b) = eps_a eps_b M_(b', a') as a pair
    (sign, (b', a')).
    """
    def tr(a, b):
        return t.eps(a) * t.eps(b), entry(t.p(b), t.p(a))

    return tr


def aux_transpose(M: EndoMat, t: LieTypeData) -> EndoMat:
    """Transposition in the first tensor factor of an EndoMat."""
    if M.N != t.N:
        raise DimensionMismatch("matrix size does not match the type")
    out = {}
    for (i, j, k, l), x in M.items():
        sgn = t.eps(i) * t.eps(j)
        out[(t.p(j), t.p(i), k, l)] = x * sgn if sgn != 1 else x
    return EndoMat(M.N, out, M.clear)


# ---------------------------------------------------------------------------
# structural checks


@dataclass
class StructResult:
    id: str
    status: str
    witness: dict | None = None
    params: dict = field(default_factory=dict)
    ms: float = 0.0


def _polymat_mul(A: dict, B: dict) -> dict:
    """Product of sparse matrices {row: {col: PolyU}}."""
    out = {}
    for r, row in A.items():
        acc = {}
        for k, a in row.items():
            brow = B.get(k)
            if brow is None:
                continue
            for c, b in brow.items():
                p = a * b
                acc[c] = acc[c] + p if c in acc else p
        acc = {c: v for c, v in acc.items() if v.c}
        if acc:
            out[r] = acc
    return out


def _embed3(M: EndoMat, slots, N, evaluate):
    """Embed a two-site EndoMat into End (C^N)^(x3) at the given pair of slots."""
    out = {}
    a, b = slots
    other = 3 - a - b
    for (i, j, k, l), x in M.items():
        val = evaluate(x)
        if not val.c:
            continue
        for m in range(1, N + 1):
            row = [0, 0, 0]
            col = [0, 0, 0]
            row[a], col[a] = i, j
            row[b], col[b] = k, l
            row[other] = col[other] = m
            out.setdefault(tuple(row), {})[tuple(col)] = val
    return out


def sample_points(count: int, start: int = 2):
    """Deterministic distinct positive integers (v-grid for polynomial identities)."""
    return [Fraction(start + 3 * k) for k in range(count)]


def check_ybe(t: LieTypeData, kind: str, extra_samples: int = 0) -> StructResult:
    """R12(u,v) R13(u,w) R23(v,w) = R23(v,w) R13(u,w) R12(u,v), u symbolic."""
    t0 = time.perf_counter()
    Rc = yangian_R_cleared(t) if kind == "rational" else trig_R_cleared(t)
    N = t.N
    dv = max(x.deg_v() for _, x in Rc.items())
    du = max(x.deg_u() for _, x in Rc.items())
    # degree of the identity in v: R12 contributes deg_v, R23 contributes deg_u
    nv = dv + du + 1 + extra_samples
    nw = 2 * dv + 1 + extra_samples
    vs = sample_points(nv)
    ws = sample_points(nw, start=1000)
    for v in vs:
        vt = QS(v)
        R12 = _embed3(Rc, (0, 1), N, lambda x: x.eval_v(vt))
        for w in ws:
            wt = QS(w)
            R13 = _embed3(Rc, (0, 2), N, lambda x: x.eval_v(wt))
            R23 = _embed3(Rc, (1, 2), N, lambda x: PolyU.const(x.eval_uv(vt, wt)))
            lhs = _polymat_mul(_polymat_mul(R12, R13), R23)
            rhs = _polymat_mul(_polymat_mul(R23, R13), R12)
            if lhs != rhs:
                for r in sorted(set(lhs) | set(rhs)):
                    a, b = lhs.get(r, {}), rhs.get(r, {})
                    if a != b:
                        c = sorted(set(a) | set(b), key=lambda key: key)
                        for cc in c:
                            if a.get(cc) != b.get(cc):
                                return StructResult(
                                    f"YBE_{kind.upper()}", "FAIL",
                                    {"row": list(r), "col": list(cc), "v": str(v), "w": str(w),
                                     "lhs": repr(a.get(cc)), "rhs": repr(b.get(cc))},
                                    ms=(time.perf_counter() - t0) * 1000)
    return StructResult(f"YBE_{'RATIONAL' if kind == 'rational' else 'TRIG'}", "PASS",
                        params={"v_samples": nv, "w_samples": nw},
                        ms=(time.perf_counter() - t0) * 1000)


def check_trans_sym(t: LieTypeData) -> StructResult:
    """R^{T1 T2}(u, v) = R_21(u, v) as an identity of polynomials in u and v."""
    t0 = time.perf_counter()
    Rc = trig_R_cleared(t)
    N = t.N
    zero = BiPoly()
    for a, b, c, d in itertools.product(range(1, N + 1), repeat=4):
        lhs = Rc.entries.get((b, a, d, c), zero)
        rhs = Rc.entries.get((c, d, a, b), zero)
        if lhs != rhs:
            return StructResult("R_TRANS_SYM", "FAIL", {"entry": [a, b, c, d]},
                                ms=(time.perf_counter() - t0) * 1000)
    return StructResult("R_TRANS_SYM", "PASS", ms=(time.perf_counter() - t0) * 1000)


def check_structural(t: LieTypeData, identity_id: str, sample_count: int = 0) -> StructResult:
    if identity_id == "YBE_RATIONAL":
        return check_ybe(t, "rational", sample_count)
    if identity_id == "YBE_TRIG":
        return check_ybe(t, "trig", sample_count)
    if identity_id == "R_TRANS_SYM":
        return check_trans_sym(t)
    raise ValueError(f"unknown structural identity {identity_id!r}")


def endo_product(A: EndoMat, B: EndoMat) -> EndoMat:
    """Product in End C^N (x) End C^N of matrices with ring-valued entries."""
    out = {}
    for (i, j, k, l), x in A.items():
        for (j2, m, l2, p), y in B.items():
            if j2 == j and l2 == l:
                _add(out, (i, m, k, p), x * y)
    return EndoMat(A.N, {k: v for k, v in out.items() if not v.is_zero()})
