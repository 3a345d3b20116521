"""Drinfeld currents, central series and highest weights extracted from modules.

All computations are exact and coefficientwise to a fixed truncation order.
Currents are built from Gauss factors of the module's L-operator series:
expansions at infinity (Yangian, and L- for quantum affine) or at zero (L+).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, permutations

from .exactalg import kernels as K
from .exactalg.ops import INF_PT, ZERO_PT, Op, OpSeries
from .exactalg.poly import PolyU, RatFun
from .exactalg.scalar import QS, q, qbinom, qnum, sqrt_monomial
from .exactalg.series import TruncSeries, series_expand, series_functional_sqrt_mul
from .exactalg.solvers import (
    DegreeMismatch,
    NoSolutionUpToDegree,
    default_dmax,
    nullspace,
    solve_drinfeld_additive,
    solve_drinfeld_multiplicative,
)
from .gauss import EHF, FHE, GaussFactors, ldu
from .repmod import YANGIAN, EvalModule, unitarity_scalar

HALF = QS(Fraction(1, 2))


class NotHighestWeight(ValueError):
    pass


class CurrentExtractionError(ArithmeticError):
    pass


# ---------------------------------------------------------------------------
# cached per-module data


class ModuleContext:
    """Lazily computed series, Gauss factors and currents of one module."""

    def __init__(self, V: EvalModule, order: int = 6):
        self.V, self.t, self.order = V, V.type, order
        self._cache = {}

    def _memo(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def series(self, point: str) -> dict:
        return self._memo(("series", point), lambda: self.V.L.series(point, self.order))

    def gauss(self, point: str, orientation: str = FHE) -> GaussFactors:
        return self._memo(("gauss", point, orientation), lambda: ldu(self.series(point), orientation))

    def unitarity_z(self) -> RatFun:
        def f():
            z, w = unitarity_scalar(self.V)
            if z is None:
                raise CurrentExtractionError(f"unitarity product is not scalar: {w}")
            return z
        return self._memo("uz", f)

    def currents(self, kind: str):
        builders = {"yangian": yangian_currents, "appendix": appendix_currents, "qaffine": qaff_currents}
        return self._memo(("currents", kind), lambda: builders[kind](self))


def ident_series(point, order, d):
    return OpSeries.identity(point, order, d)


def op_series_log(Y: OpSeries) -> OpSeries:
    """log Y for a series with identity constant term and commuting coefficients."""
    one = Op.identity(Y.d)
    if Y.c[0] != one:
        raise CurrentExtractionError("log needs identity constant term")
    X = Y - OpSeries.identity(Y.point, Y.order, Y.d)
    acc = OpSeries.zero(Y.point, Y.order, Y.d)
    pw = X
    for k in range(1, Y.order + 1):
        sign = 1 if k % 2 else -1
        acc = acc + pw * QS(Fraction(sign, k))
        pw = pw * X
    return acc


# ---------------------------------------------------------------------------
# node data


def node_yangian(t, i):
    """(a, b, shift, xi_minus_scale) for the Gaussian generators feeding node i."""
    n = t.n
    if i < n:
        return i, i + 1, Fraction(i - 1, 2), 1
    if t.family == "B":
        return n, n + 1, Fraction(n - 1, 2), 1
    if t.family == "C":
        return n, n + 1, Fraction(n, 2), Fraction(1, 2)
    return n - 1, n + 1, Fraction(n - 2, 2), 1


def node_qaff(t, i):
    """(a, b, q-power c, pairing scale) for node i; currents are read at u q^c."""
    n = t.n
    if t.family == "A" or i < n:
        return i, i + 1, i, ONE_QS()
    if t.family == "B":
        return n, n + 1, n, qnum(2, t.q_i(n))
    if t.family == "C":
        return n, n + 1, n + 1, ONE_QS()
    return n - 1, n + 1, n - 1, ONE_QS()


def ONE_QS():
    return QS(1)


# ---------------------------------------------------------------------------
# Yangian currents


@dataclass
class YCurrents:
    kind: str
    rank: int
    order: int
    kappa: dict  # i -> OpSeries (constant term 1)
    xp: dict  # i -> OpSeries
    xm: dict
    d: int

    def k(self, i, r) -> Op:
        return self.kappa[i].c[r + 1]

    def x(self, sign, i, r) -> Op:
        return (self.xp if sign > 0 else self.xm)[i].c[r + 1]

    @property
    def max_mode(self):
        return self.order - 1


def yangian_currents(ctx: ModuleContext) -> YCurrents:
    t = ctx.t
    G = ctx.gauss(INF_PT, FHE)
    kap, xp, xm = {}, {}, {}
    for i in range(1, t.rank + 1):
        a, b, c, sc = node_yangian(t, i)
        sh = QS(-c)
        kap[i] = G.h[a].shift_add(sh).inv() * G.h[b].shift_add(sh)
        xp[i] = G.f[(b, a)].shift_add(sh)
        xm[i] = G.e[(a, b)].shift_add(sh) * QS(sc)
    return YCurrents("yangian", t.rank, ctx.order, kap, xp, xm, ctx.V.d)


def appendix_currents(ctx: ModuleContext) -> YCurrents:
    """Currents from the opposite decomposition T = E H F."""
    t = ctx.t
    G = ctx.gauss(INF_PT, EHF)
    kap, xp, xm = {}, {}, {}
    for i in range(1, t.rank + 1):
        a, b, c, sc = node_yangian(t, i)
        sh = QS(c)
        kap[i] = G.h[a].shift_add(sh) * G.h[b].shift_add(sh).inv()
        xp[i] = G.e[(a, b)].shift_add(sh)
        xm[i] = G.f[(b, a)].shift_add(sh) * QS(sc)
    return YCurrents("appendix", t.rank, ctx.order, kap, xp, xm, ctx.V.d)


def negate_current(C, sign=1, i=1):
    """Copy of the currents with x^sign_i negated (negative control)."""
    import copy

    D = copy.copy(C)
    if isinstance(C, YCurrents):
        D.xp, D.xm = dict(C.xp), dict(C.xm)
        tgt = D.xp if sign > 0 else D.xm
        tgt[i] = -tgt[i]
    else:
        D.x = dict(C.x)
        for key in list(D.x):
            if key[0] == sign and key[1] == i:
                D.x[key] = -D.x[key]
    return D


def _comm(a: Op, b: Op) -> Op:
    return a * b - b * a


def _acomm(a: Op, b: Op) -> Op:
    return a * b + b * a


def _op_witness(rel, idx, lhs: Op, rhs: Op):
    diff = lhs - rhs
    r, c, _ = diff.first_nonzero()
    return {"relation": rel, "modes": list(idx), "op_entry": [r, c],
            "lhs": str(lhs.entry(r, c)), "rhs": str(rhs.entry(r, c))}


def check_yangian_relations(t, C: YCurrents, serre_window: int = 2) -> dict:
    """{relation id: witness or None} for the Drinfeld presentation of the Yangian."""
    n, M = t.rank, C.max_mode
    ident = Op.identity(C.d)
    out = {}

    def first(gen):
        for w in gen:
            if w is not None:
                return w
        return None

    def const_terms():
        for i in range(1, n + 1):
            if C.kappa[i].c[0] != ident:
                yield {"relation": "kappa constant term", "node": i}
            for sgn in (1, -1):
                if not (C.xp if sgn > 0 else C.xm)[i].c[0].is_zero():
                    yield {"relation": "xi constant term", "node": i}

    def kk():
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                for r in range(M + 1):
                    for s in range(M + 1):
                        z = _comm(C.k(i, r), C.k(j, s))
                        if not z.is_zero():
                            yield _op_witness("[k,k]", (i, r, j, s), z, Op.zero(C.d))

    def pair():
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                for r in range(M + 1):
                    for s in range(M + 1 - r):
                        lhs = _comm(C.x(1, i, r), C.x(-1, j, s))
                        rhs = C.k(i, r + s) if i == j else Op.zero(C.d)
                        if lhs != rhs:
                            yield _op_witness("[x+,x-]", (i, r, j, s), lhs, rhs)

    def k0x():
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                a = QS(t.inner(i, j))
                for sgn in (1, -1):
                    for s in range(M + 1):
                        x = C.x(sgn, j, s)
                        lhs = _comm(C.k(i, 0), x)
                        rhs = x.scale(a * sgn)
                        if lhs != rhs:
                            yield _op_witness("[k0,x]", (sgn, i, j, s), lhs, rhs)

    def kx():
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                h = QS(t.inner(i, j)) / 2
                for sgn in (1, -1):
                    for r in range(M):
                        for s in range(M):
                            lhs = _comm(C.k(i, r + 1), C.x(sgn, j, s)) - _comm(C.k(i, r), C.x(sgn, j, s + 1))
                            rhs = _acomm(C.k(i, r), C.x(sgn, j, s)).scale(h * sgn)
                            if lhs != rhs:
                                yield _op_witness("[k_r+1,x]-[k,x_s+1]", (sgn, i, r, j, s), lhs, rhs)

    def xx():
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                h = QS(t.inner(i, j)) / 2
                for sgn in (1, -1):
                    for r in range(M):
                        for s in range(M):
                            lhs = (_comm(C.x(sgn, i, r + 1), C.x(sgn, j, s))
                                   - _comm(C.x(sgn, i, r), C.x(sgn, j, s + 1)))
                            rhs = _acomm(C.x(sgn, i, r), C.x(sgn, j, s)).scale(h * sgn)
                            if lhs != rhs:
                                yield _op_witness("[x_r+1,x]-[x,x_s+1]", (sgn, i, r, j, s), lhs, rhs)

    def serre():
        W = min(serre_window, M + 1)
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i == j:
                    continue
                m = 1 - t.cartan[i - 1][j - 1]
                for sgn in (1, -1):
                    for rs in combinations_with_replacement(range(W), m):
                        for s in range(W):
                            acc = Op.zero(C.d)
                            for perm in set(permutations(rs)):
                                mult = _perm_multiplicity(rs)
                                y = C.x(sgn, j, s)
                                for r in reversed(perm):
                                    y = _comm(C.x(sgn, i, r), y)
                                acc = acc + y.scale(QS(mult))
                            if not acc.is_zero():
                                yield _op_witness("serre", (sgn, i, j, rs, s), acc, Op.zero(C.d))

    out["Y_CONST"] = first(const_terms())
    out["Y_KK"] = first(kk())
    out["Y_PAIR"] = first(pair())
    out["Y_K0X"] = first(k0x())
    out["Y_KX"] = first(kx())
    out["Y_XX"] = first(xx())
    out["Y_SERRE"] = first(serre())
    return out


def _perm_multiplicity(rs):
    """Number of permutations of S_m mapping to each distinct arrangement of rs."""
    from math import factorial
    from collections import Counter

    m = 1
    for c in Counter(rs).values():
        m *= factorial(c)
    return m


# ---------------------------------------------------------------------------
# quantum affine currents


@dataclass
class QCurrents:
    rank: int
    order: int
    d: int
    x: dict  # (sign, i, m) -> Op, |m| <= order
    psi: dict  # (i, m) -> Op, m >= 0
    phi: dict  # (i, m) -> Op, m <= 0
    a: dict  # (i, m) -> Op, m != 0
    pair_scale: dict  # i -> QS
    k_sqrt: Op | None = None  # square root used in the extended relations
    series: dict = field(default_factory=dict)

    def k(self, i):
        return self.psi[(i, 0)]

    def X(self, sign, i, m) -> Op:
        return self.x[(sign, i, m)]


def qaff_currents(ctx: ModuleContext) -> QCurrents:
    t = ctx.t
    T = ctx.order
    d = ctx.V.d
    Gp = ctx.gauss(ZERO_PT, FHE)
    Gm = ctx.gauss(INF_PT, FHE)
    x, psi, phi, a, scale = {}, {}, {}, {}, {}
    ser = {}
    for i in range(1, t.rank + 1):
        A, B, c, sc = node_qaff(t, i)
        qi = t.q_i(i)
        kfac = (qi - qi.inv()).inv()
        g = q ** c
        scale[i] = sc
        for sign, ep, em in ((1, Gp.e[(A, B)], Gm.e[(A, B)]), (-1, Gp.f[(B, A)], Gm.f[(B, A)])):
            sp, sm = ep.shift_mul(g), em.shift_mul(g)
            for m in range(1, T + 1):
                x[(sign, i, -m)] = sp.c[m].scale(kfac)
                x[(sign, i, m)] = sm.c[m].scale(-kfac)
            x[(sign, i, 0)] = (sp.c[0] - sm.c[0]).scale(kfac)
        ps = Gm.h[B].shift_mul(g) * Gm.h[A].shift_mul(g).inv()
        ph = Gp.h[B].shift_mul(g) * Gp.h[A].shift_mul(g).inv()
        ser[("psi", i)], ser[("phi", i)] = ps, ph
        for m in range(T + 1):
            psi[(i, m)] = ps.c[m]
            phi[(i, -m)] = ph.c[m]
        k = ps.c[0]
        kinv = k.inverse()
        la = op_series_log(ps * kinv)
        lb = op_series_log(ph * k)
        den = (qi - qi.inv()).inv()
        for m in range(1, T + 1):
            a[(i, m)] = la.c[m].scale(den)
            a[(i, -m)] = lb.c[m].scale(-den)
    C = QCurrents(t.rank, T, d, x, psi, phi, a, scale, series=ser)
    C.k_sqrt = _k_sqrt(ctx)
    return C


def _k_sqrt(ctx: ModuleContext):
    """zeta-[0] h-_m[0]^-1 (m = n for C, n-1 for D): a square root of k_n or k_(n-1) k_n."""
    t = ctx.t
    if t.family not in ("C", "D"):
        return None
    Gm = ctx.gauss(INF_PT, FHE)
    n = t.n
    zl = central_z_h(ctx, INF_PT).scalar_series()
    if zl is None:
        return None
    root = sqrt_monomial(QS(zl.c[0]))
    if root is None:
        return None
    m = n if t.family == "C" else n - 1
    return Gm.h[m].c[0].inverse().scale(root)


def check_qaff_relations(t, C: QCurrents, serre_window: int = 2) -> dict:
    """{relation id: witness or None} for the Drinfeld presentation of U_q."""
    n, T, d = C.rank, C.order, C.d
    ident = Op.identity(d)
    zero = Op.zero(d)
    out = {}

    def first(gen):
        for w in gen:
            if w is not None:
                return w
        return None

    def qexp(i, j, sgn):
        return QS.qpow(Fraction(sgn) * t.inner(i, j))

    def kk():
        for i in range(1, n + 1):
            if C.k(i) * C.phi[(i, 0)] != ident:
                yield {"relation": "k_i k_i^-1", "node": i}
            for j in range(1, n + 1):
                ops_i = [C.k(i)] + [C.a[(i, m)] for m in range(-T, T + 1) if m]
                for m in range(-T, T + 1):
                    if m == 0:
                        continue
                    for y in (C.k(j), C.a[(j, m)]):
                        for z in ops_i:
                            w = _comm(z, y)
                            if not w.is_zero():
                                yield _op_witness("[k/a, k/a]", (i, j, m), w, zero)

    def kx():
        for i in range(1, n + 1):
            k, kinv = C.k(i), C.phi[(i, 0)]
            for j in range(1, n + 1):
                for sgn in (1, -1):
                    f = qexp(i, j, sgn)
                    for m in range(-T, T + 1):
                        xx_ = C.X(sgn, j, m)
                        lhs, rhs = k * xx_ * kinv, xx_.scale(f)
                        if lhs != rhs:
                            yield _op_witness("k x k^-1", (sgn, i, j, m), lhs, rhs)

    def ax():
        for i in range(1, n + 1):
            qi = t.q_i(i)
            Aij = [t.cartan[i - 1][j - 1] for j in range(1, n + 1)]
            for j in range(1, n + 1):
                for sgn in (1, -1):
                    for m in range(-T, T + 1):
                        if m == 0:
                            continue
                        coef = qnum(m * Aij[j - 1], qi) / m * sgn
                        for l in range(-T, T + 1):
                            if abs(m + l) > T:
                                continue
                            lhs = _comm(C.a[(i, m)], C.X(sgn, j, l))
                            rhs = C.X(sgn, j, m + l).scale(coef)
                            if lhs != rhs:
                                yield _op_witness("[a,x]", (sgn, i, m, j, l), lhs, rhs)

    def exch():
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                for sgn in (1, -1):
                    f = qexp(i, j, sgn)
                    for m in range(-T, T):
                        for l in range(-T, T):
                            X = C.X
                            lhs = X(sgn, i, m + 1) * X(sgn, j, l) - (X(sgn, j, l) * X(sgn, i, m + 1)).scale(f)
                            rhs = (X(sgn, i, m) * X(sgn, j, l + 1)).scale(f) - X(sgn, j, l + 1) * X(sgn, i, m)
                            if lhs != rhs:
                                yield _op_witness("exchange", (sgn, i, m, j, l), lhs, rhs)

    def pair():
        for i in range(1, n + 1):
            qi = t.q_i(i)
            den = (qi - qi.inv()).inv()
            for j in range(1, n + 1):
                for m in range(-T, T + 1):
                    for l in range(-T, T + 1):
                        p = m + l
                        if abs(p) > T:
                            continue
                        lhs = _comm(C.X(1, i, m), C.X(-1, j, l))
                        if i != j:
                            rhs = zero
                        else:
                            ps = C.psi[(i, p)] if p >= 0 else zero
                            ph = C.phi[(i, p)] if p <= 0 else zero
                            rhs = (ps - ph).scale(den * C.pair_scale[i])
                        if lhs != rhs:
                            yield _op_witness("[x+,x-]", (i, m, j, l), lhs, rhs)

    def serre():
        W = serre_window
        modes = list(range(-(W - 1), W))
        for i in range(1, n + 1):
            qi = t.q_i(i)
            for j in range(1, n + 1):
                if i == j:
                    continue
                r = 1 - t.cartan[i - 1][j - 1]
                coeffs = [qbinom(r, l, qi) * (-1) ** l for l in range(r + 1)]
                for sgn in (1, -1):
                    for ss in combinations_with_replacement(modes, r):
                        for m in modes:
                            acc = zero
                            for perm in set(permutations(ss)):
                                mult = _perm_multiplicity(ss)
                                xs = [C.X(sgn, i, s) for s in perm]
                                xj = C.X(sgn, j, m)
                                for l in range(r + 1):
                                    prod = ident
                                    for y in xs[:l]:
                                        prod = prod * y
                                    prod = prod * xj
                                    for y in xs[l:]:
                                        prod = prod * y
                                    acc = acc + prod.scale(coeffs[l] * mult)
                            if not acc.is_zero():
                                yield _op_witness("q-serre", (sgn, i, j, ss, m), acc, zero)

    out["QA_KK"] = first(kk())
    out["QA_KX"] = first(kx())
    out["QA_AX"] = first(ax())
    out["QA_XX"] = first(exch())
    out["QA_PAIR"] = first(pair())
    out["QA_SERRE"] = first(serre())
    return out


def check_sqrt_extension(t, C: QCurrents):
    """Conjugation by the adjoined square root scales x^±_j by the expected q-power."""
    if C.k_sqrt is None:
        return {"reason": "no square root available"}
    n = t.n
    kk = C.k_sqrt
    kinv = kk.inverse()
    if t.family == "C":
        if kk * kk != C.k(n):
            return {"reason": "square root does not square to k_n"}
        expo = lambda j: Fraction(t.cartan[n - 1][j - 1])  # noqa: E731
    else:
        if kk * kk != C.k(n - 1) * C.k(n):
            return {"reason": "square root does not square to k_(n-1) k_n"}
        expo = lambda j: Fraction(t.cartan[n - 2][j - 1] + t.cartan[n - 1][j - 1], 2)  # noqa: E731
    for j in range(1, n + 1):
        for sgn in (1, -1):
            f = QS.qpow(sgn * expo(j))
            for m in range(-C.order, C.order + 1):
                x = C.X(sgn, j, m)
                lhs, rhs = kk * x * kinv, x.scale(f)
                if lhs != rhs:
                    return _op_witness("sqrt conjugation", (sgn, j, m), lhs, rhs)
    return None


# ---------------------------------------------------------------------------
# central series


def central_z_h(ctx: ModuleContext, point: str) -> OpSeries:
    """z(u) as the product of shifted diagonal Gaussian generators."""
    t = ctx.t
    G = ctx.gauss(point, FHE)
    h = G.h
    n, N = t.n, t.N
    odd = N % 2 == 1
    if ctx.V.realm == YANGIAN:
        kap = QS(t.kappa)

        def sh(i, c):
            return h[i].shift_add(QS(c))
        acc = None
        top = n if odd else n - 1
        for i in range(1, top + 1):
            x = sh(i, kap - i).inv()
            acc = x if acc is None else acc * x
        for i in range(1, n + 1):
            x = sh(i, kap - i + 1)
            acc = x if acc is None else acc * x
        acc = acc * h[n + 1]
        if odd:
            acc = acc * sh(n + 1, QS(Fraction(-1, 2)))
        return acc
    xi = t.xi

    def sm(i, g):
        return h[i].shift_mul(g)
    acc = None
    top = n if odd else n - 1
    for i in range(1, top + 1):
        x = sm(i, xi * q ** (2 * i)).inv()
        acc = x if acc is None else acc * x
    for i in range(1, n + 1):
        x = sm(i, xi * q ** (2 * i - 2))
        acc = x if acc is None else acc * x
    acc = acc * h[n + 1]
    if odd:
        acc = acc * sm(n + 1, q)
    return acc


def central_z_unitarity(ctx: ModuleContext, point: str) -> TruncSeries:
    return series_expand(ctx.unitarity_z(), point, ctx.order)


def central_points(ctx: ModuleContext):
    return [INF_PT] if ctx.V.realm == YANGIAN else [ZERO_PT, INF_PT]


def check_z_two_routes(ctx: ModuleContext):
    for pt in central_points(ctx):
        zh = central_z_h(ctx, pt)
        sc = zh.scalar_series()
        if sc is None:
            return {"point": pt, "reason": "h-product is not scalar"}
        zu = central_z_unitarity(ctx, pt)
        if sc != zu:
            k = next(k for k in range(ctx.order + 1) if sc.c[k] != zu.c[k])
            return {"point": pt, "coeff": k, "h_route": str(QS(sc.c[k])), "unitarity": str(QS(zu.c[k]))}
    return None


def zeta_series(ctx: ModuleContext, point: str) -> TruncSeries:
    z = central_z_unitarity(ctx, point)
    return series_functional_sqrt_mul(z, ctx.t.xi)


def check_zeta(ctx: ModuleContext):
    t = ctx.t
    for pt in (ZERO_PT, INF_PT):
        z = central_z_unitarity(ctx, pt)
        zeta = series_functional_sqrt_mul(z, t.xi)
        if zeta * zeta.shift_mul(t.xi) != z:
            return {"point": pt, "reason": "zeta(u) zeta(u xi) != z(u)"}
        if t.N % 2 == 0:
            S = ctx.series(pt)
            n = t.n
            c0 = S[(n, n)].c[0] * S[(t.p(n), t.p(n))].c[0]
            if c0.scalar_value() != z.c[0]:
                return {"point": pt, "reason": "z[0] != l_nn[0] l_n'n'[0]"}
    return None


def check_central_lemma(ctx: ModuleContext):
    """h_1(u~) h_1'(u) = z(u) and the chain h_i(u_i) h_i'(u) = h_(i+1)(u_i) h_(i+1)'(u)."""
    t = ctx.t
    n, N = t.n, t.N
    top = n if N % 2 else n - 1
    for pt in central_points(ctx):
        h = ctx.gauss(pt, FHE).h
        if ctx.V.realm == YANGIAN:
            def arg(i, x):
                return x.shift_add(QS(t.kappa) - i)
        else:
            def arg(i, x):
                return x.shift_mul(t.xi * q ** (2 * i))
        z = OpSeries.from_scalar(central_z_unitarity(ctx, pt), ctx.V.d)
        lhs = arg(0, h[1]) * h[t.p(1)]
        w = lhs.first_difference(z)
        if w is not None:
            return {"point": pt, "identity": "h_1 h_1' = z", "coeff": w[0], "lhs": str(w[3]), "rhs": str(w[4])}
        for i in range(1, top + 1):
            lhs = arg(i, h[i]) * h[t.p(i)]
            rhs = arg(i, h[i + 1]) * h[t.p(i + 1)]
            w = lhs.first_difference(rhs)
            if w is not None:
                return {"point": pt, "identity": f"chain i={i}", "coeff": w[0], "lhs": str(w[3]), "rhs": str(w[4])}
    return None


# ---------------------------------------------------------------------------
# highest weights and Drinfeld polynomials


@dataclass
class HighestWeight:
    vector: dict  # basis index -> triple
    dim: int  # dimension of the joint kernel
    lam: list  # lambda_i(u) as RatFun, i = 1..N


def highest_vector(V: EvalModule, lowest: bool = False):
    """Joint kernel of the coefficients of l_ij(u) for i < j (i > j if lowest)."""
    d = V.d
    rows = []
    for (i, j), p in V.L.num.items():
        if (i < j) != (not lowest) or i == j:
            continue
        for a in p.c:
            rows.extend(dict(r) for r in a.rows.values())
    return nullspace(rows, d)


def highest_weight(V: EvalModule, lowest: bool = False) -> HighestWeight:
    basis = highest_vector(V, lowest)
    if not basis:
        raise NotHighestWeight("no common kernel vector")
    vec = basis[0]
    piv = min(vec)
    lam = []
    for i in range(1, V.N + 1):
        p = V.L.entry(i, i)
        coeffs = []
        for a in p.c:
            img = a.apply(vec)
            c = K.qs_mul(img.get(piv, K.ZERO), K.qs_inv(vec[piv]))
            if any(K.qs_sub(img.get(k, K.ZERO), K.qs_mul(c, vec.get(k, K.ZERO)))[1]
                   for k in set(img) | set(vec)):
                raise NotHighestWeight(f"l_{i}{i} does not preserve the line of the highest vector")
            coeffs.append(c)
        lam.append(RatFun(PolyU(coeffs), V.L.den))
    return HighestWeight(vec, len(basis), lam)


def check_hw_series(ctx: ModuleContext, hw: HighestWeight):
    """e_ij(u) zeta = 0 and h_i(u) zeta = lambda_i(u) zeta at the series level."""
    vec = hw.vector
    for pt in central_points(ctx):
        G = ctx.gauss(pt, FHE)
        for (i, j), s in G.e.items():
            for k, a in enumerate(s.c):
                img = a.apply(vec)
                if any(v[1] for v in img.values()):
                    return {"point": pt, "entry": f"e_{i}{j}", "coeff": k, "reason": "does not annihilate"}
        for i, s in G.h.items():
            lam = series_expand(hw.lam[i - 1], pt, ctx.order)
            for k, a in enumerate(s.c):
                img = a.apply(vec)
                exp = {c: K.qs_mul(v, lam.c[k]) for c, v in vec.items()}
                keys = set(img) | set(exp)
                if any(K.qs_sub(img.get(c, K.ZERO), exp.get(c, K.ZERO))[1] for c in keys):
                    return {"point": pt, "entry": f"h_{i}", "coeff": k, "reason": "eigenvalue mismatch"}
    return None


def ratio_nodes(t):
    """[(i, a, b)]: node i is classified by lambda_a / lambda_b."""
    out = []
    for i in range(1, t.rank + 1):
        if t.family == "D" and i == t.n:
            out.append((i, t.n - 1, t.n + 1))
        else:
            out.append((i, i, i + 1))
    return out


def gamma_qaff(t, i):
    if t.family == "A" or i < t.n:
        return q
    return {"B": QS.spow(1), "C": q ** 2, "D": q}[t.family]


def drinfeld_polynomials(t, realm: str, lam: list, dmax: int | None = None) -> list:
    """P_1..P_rank from ratios of highest weights."""
    out = []
    for i, a, b in ratio_nodes(t):
        rho = lam[a - 1] / lam[b - 1]
        dm = dmax if dmax is not None else default_dmax(rho)
        if realm == YANGIAN:
            out.append(solve_drinfeld_additive(rho, QS(t.r[i - 1]), dm))
        else:
            out.append(solve_drinfeld_multiplicative(rho, gamma_qaff(t, i), dm))
    return out


def ratio_from_polynomial(t, realm, i, P: PolyU) -> RatFun:
    if realm == YANGIAN:
        return RatFun(P.shift_add(QS(t.r[i - 1])), P)
    g = gamma_qaff(t, i)
    return RatFun(P.shift_mul((g * g).inv()) * PolyU.const(g ** P.deg), P)


def check_lambda_consistency(t, realm: str, lam: list, z: RatFun | None):
    """lambda_i(u_i) lambda_i'(u) = lambda_(i+1)(u_i) lambda_(i+1)'(u), with z at i = 0."""
    n, N = t.n, t.N
    top = n if N % 2 else n - 1

    def arg(i, f):
        if realm == YANGIAN:
            return f.shift_add(QS(t.kappa) - i)
        return f.shift_mul(t.xi * q ** (2 * i))
    L = lambda i: lam[i - 1]  # noqa: E731
    if z is not None and arg(0, L(1)) * L(t.p(1)) != z:
        return {"identity": "z = lambda_1(u~) lambda_1'(u)"}
    for i in range(1, top + 1):
        if arg(i, L(i)) * L(t.p(i)) != arg(i, L(i + 1)) * L(t.p(i + 1)):
            return {"identity": f"chain i={i}"}
    return None


def format_poly(P: PolyU) -> list:
    from .exactalg.scalar import format_qs

    return [format_qs(QS(c)) for c in P.c]


# ---------------------------------------------------------------------------
# module-level entry points


def appendix_a_currents(V: EvalModule, order: int = 6) -> YCurrents:
    return appendix_currents(ModuleContext(V, order))


def extract_a_modes(C: QCurrents) -> dict:
    """{(i, m): a_(i,m)} recovered from the logarithms of k^-1 psi_i(u) and k phi_i(u)."""
    return dict(C.a)


@dataclass
class CentralSeries:
    z: dict  # point -> scalar TruncSeries from the h-product
    zeta: dict  # point -> TruncSeries with zeta(u) zeta(u xi) = z(u) (quantum affine)
    witness: dict | None  # disagreement with the unitarity route, None when equal


def central_z(V: EvalModule, order: int = 6) -> CentralSeries:
    """z(u) from the h-product, checked against the unitarity route; zeta where defined."""
    ctx = ModuleContext(V, order)
    z, zeta = {}, {}
    for pt in central_points(ctx):
        sc = central_z_h(ctx, pt).scalar_series()
        if sc is None:
            raise CurrentExtractionError(f"h-product at {pt} is not scalar")
        z[pt] = sc
        if V.realm != YANGIAN:
            zeta[pt] = series_functional_sqrt_mul(sc, ctx.t.xi)
    return CentralSeries(z, zeta, check_z_two_routes(ctx))


__all__ = [
    "ModuleContext", "YCurrents", "QCurrents", "yangian_currents", "appendix_currents",
    "qaff_currents", "check_yangian_relations", "check_qaff_relations", "check_sqrt_extension",
    "central_z_h", "central_z_unitarity", "check_z_two_routes", "check_zeta", "check_central_lemma",
    "highest_vector", "highest_weight", "check_hw_series", "drinfeld_polynomials",
    "ratio_from_polynomial", "check_lambda_consistency", "negate_current", "NotHighestWeight",
    "DegreeMismatch", "NoSolutionUpToDegree", "format_poly", "op_series_log", "HALF",
    "appendix_a_currents", "extract_a_modes", "central_z", "CentralSeries",
]
