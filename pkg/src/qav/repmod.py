"""Finite-dimensional modules for the R-matrix presentations.

An L-operator on a d-dimensional module is stored as an :class:`OpRatMat`:
a common scalar denominator ``den(u)`` and, for each pair (i, j), a
polynomial in u with d x d operator coefficients, so that
``l_ij(u) = num[i, j](u) / den(u)``.  For quantum affine modules L+(u) and
L-(u) are the expansions of one rational matrix at u = 0 and u = infinity.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .exactalg import kernels as K
from .exactalg.ops import INF_PT, ZERO_PT, Op, OpPoly, OpSeries, SingularOperator
from .exactalg.poly import PoleAtExpansionPoint, PolyU, RatFun
from .exactalg.scalar import QS, coerce_triple, q
from .exactalg.series import TruncSeries, series_div_raw
from .rmatrix import LieTypeData, trig_R_cleared, yangian_R_cleared

YANGIAN = "yangian"
QAFFINE = "qaffine"

_Z = K.ZERO
_O = K.ONE


class RelationCheckFailed(AssertionError):
    pass


class ZeroModeViolation(ValueError):
    pass


class NormalizationViolation(ValueError):
    pass


class TypeMismatch(ValueError):
    pass


class UnsupportedTwist(ValueError):
    pass


# ---------------------------------------------------------------------------
# helpers on operator polynomials


def oppoly_kron(A: OpPoly, B: OpPoly, d: int) -> OpPoly:
    if not A.c or not B.c:
        return OpPoly(d, [])
    out = [Op.zero(d) for _ in range(len(A.c) + len(B.c) - 1)]
    for i, a in enumerate(A.c):
        if not a.rows:
            continue
        for j, b in enumerate(B.c):
            if b.rows:
                out[i + j] = out[i + j] + a.kron(b)
    return OpPoly(d, out)


def oppoly_shift_add(A: OpPoly, c) -> OpPoly:
    """A(u + c)."""
    if not A.c:
        return A
    t = coerce_triple(c)
    n = len(A.c)
    out = [Op.zero(A.d) for _ in range(n)]
    pw = [_O]
    for _ in range(n):
        pw.append(K.qs_mul(pw[-1], t))
    from math import comb

    for k, a in enumerate(A.c):
        if not a.rows:
            continue
        for m in range(k + 1):
            out[m] = out[m] + a.scale(K.qs_mul(pw[k - m], (0, (comb(k, m),), (1,))))
    return OpPoly(A.d, out)


def oppoly_shift_mul(A: OpPoly, g) -> OpPoly:
    """A(u * g)."""
    t = coerce_triple(g)
    out, pw = [], _O
    for a in A.c:
        out.append(a.scale(pw))
        pw = K.qs_mul(pw, t)
    return OpPoly(A.d, out)


def oppoly_degree(A: OpPoly) -> int:
    return len(A.c) - 1


def poly_series(p: PolyU, point: str, order: int, degree: int):
    """Coefficients of p(u) / u**degree at infinity, or of p(u) at zero (raw triples)."""
    if point == ZERO_PT:
        return (list(p.c) + [_Z] * (order + 1))[: order + 1]
    out = [_Z] * (order + 1)
    for k, t in enumerate(p.c):
        m = degree - k
        if m < 0:
            raise PoleAtExpansionPoint("numerator degree exceeds denominator degree")
        if m <= order:
            out[m] = t
    return out


# ---------------------------------------------------------------------------
# the rational L-operator


class OpRatMat:
    """N x N matrix of d x d operators over Q(s)(u) with a common denominator."""

    def __init__(self, N: int, d: int, den: PolyU, num: dict):
        self.N, self.d, self.den = N, d, den
        self.num = {k: v for k, v in num.items() if not v.is_zero()}
        self._series = {}

    def entry(self, i, j) -> OpPoly:
        return self.num.get((i, j), OpPoly(self.d, []))

    def num_degree(self) -> int:
        return max((v.deg for v in self.num.values()), default=0)

    def entry_ratfun(self, i, j, r, c) -> RatFun:
        """Scalar rational function in matrix position (r, c) of l_ij(u) (0-based r, c)."""
        p = self.entry(i, j)
        coeffs = [a.entry_raw(r, c) for a in p.c]
        return RatFun(PolyU(coeffs), self.den)

    def series(self, point: str, order: int) -> dict:
        """{(i, j): OpSeries} expansion at 0 (in u) or infinity (in 1/u)."""
        key = (point, order)
        if key in self._series:
            return self._series[key]
        D = self.den.deg
        if point == ZERO_PT:
            if not self.den.c[0][1]:
                raise PoleAtExpansionPoint("denominator vanishes at u = 0")
            dser = list(self.den.c)
        else:
            dser = list(reversed(self.den.c))
        one = [_O] + [_Z] * order
        inv = TruncSeries._mk(point, series_div_raw(one, (dser + [_Z] * (order + 1))[: order + 1], order), order)
        out = {}
        for i in range(1, self.N + 1):
            for j in range(1, self.N + 1):
                p = self.entry(i, j)
                coeffs = [Op.zero(self.d) for _ in range(order + 1)]
                for k, a in enumerate(p.c):
                    m = k if point == ZERO_PT else D - k
                    if m < 0:
                        raise PoleAtExpansionPoint("numerator degree exceeds denominator degree")
                    if m <= order:
                        coeffs[m] = a
                out[(i, j)] = OpSeries(point, coeffs, order, self.d) * inv
        self._series[key] = out
        return out

    def scale(self, f: RatFun) -> "OpRatMat":
        """f(u) * L(u)."""
        return OpRatMat(self.N, self.d, self.den * f.den,
                        {k: v.scale_poly(f.num) for k, v in self.num.items()})

    def shift_add(self, c) -> "OpRatMat":
        return OpRatMat(self.N, self.d, self.den.shift_add(c),
                        {k: oppoly_shift_add(v, c) for k, v in self.num.items()})

    def shift_mul(self, g) -> "OpRatMat":
        return OpRatMat(self.N, self.d, self.den.shift_mul(g),
                        {k: oppoly_shift_mul(v, g) for k, v in self.num.items()})

    def __eq__(self, o):
        """Equality of the rational matrices (cross-multiplied)."""
        if not isinstance(o, OpRatMat) or (self.N, self.d) != (o.N, o.d):
            return False
        for key in set(self.num) | set(o.num):
            if self.entry(*key).scale_poly(o.den) != o.entry(*key).scale_poly(self.den):
                return False
        return True

    __hash__ = None

    # flattened forms ------------------------------------------------------
    def flat_ratfun(self):
        """Sparse (N d) x (N d) matrix {row: {col: RatFun}}."""
        d = self.d
        rows = {}
        for (i, j), p in self.num.items():
            for k, a in enumerate(p.c):
                for r, c, t in a.items():
                    R = (i - 1) * d + r
                    C = (j - 1) * d + c
                    rows.setdefault(R, {}).setdefault(C, [_Z] * len(p.c))[k] = t
        out = {}
        for R, row in rows.items():
            for C, coeffs in row.items():
                f = RatFun(PolyU(coeffs), self.den)
                if not f.is_zero():
                    out.setdefault(R, {})[C] = f
        return out

    @staticmethod
    def from_flat_ratfun(N: int, d: int, rows: dict) -> "OpRatMat":
        den = PolyU.const(1)
        for row in rows.values():
            for f in row.values():
                g = den.gcd(f.den)
                den = den * f.den.divmod(g)[0]
        den = den.monic()
        acc = {}
        for R, row in rows.items():
            for C, f in row.items():
                p = f.num * den.divmod(f.den)[0]
                i, r = divmod(R, d)
                j, c = divmod(C, d)
                acc.setdefault((i + 1, j + 1), {})[(r, c)] = p
        num = {}
        for key, ents in acc.items():
            deg = max(p.deg for p in ents.values())
            coeffs = [Op.zero(d) for _ in range(deg + 1)]
            for (r, c), p in ents.items():
                for k, t in enumerate(p.c):
                    if t[1]:
                        coeffs[k].rows.setdefault(r, {})[c] = t
            num[key] = OpPoly(d, coeffs)
        return OpRatMat(N, d, den, num)

    def blockwise_transpose(self) -> "OpRatMat":
        """Transpose every operator entry (not the auxiliary matrix)."""
        return OpRatMat(self.N, self.d, self.den,
                        {k: OpPoly(self.d, [a.transpose() for a in v.c]) for k, v in self.num.items()})


def ratfun_sparse_inverse(rows: dict, n: int) -> dict:
    """Gauss-Jordan inverse of a sparse matrix over Q(s)(u)."""
    aug = {i: dict(rows.get(i, {})) for i in range(n)}
    inv = {i: {i: RatFun.const(1)} for i in range(n)}
    remaining = set(range(n))
    pivot_of = {}
    for col in range(n):
        best = None
        for i in remaining:
            f = aug[i].get(col)
            if f is not None:
                key = (len(aug[i]), f.num.deg + f.den.deg)
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            raise SingularOperator(f"singular operator matrix (column {col})")
        p = best[1]
        remaining.discard(p)
        pivot_of[col] = p
        pv = aug[p][col].inv()
        aug[p] = {j: f * pv for j, f in aug[p].items()}
        inv[p] = {j: f * pv for j, f in inv[p].items()}
        for i in range(n):
            if i == p:
                continue
            f = aug[i].get(col)
            if f is None:
                continue
            for src, dst in ((aug[p], aug[i]), (inv[p], inv[i])):
                for j, g in src.items():
                    v = dst.get(j)
                    w = (-(f * g)) if v is None else v - f * g
                    if w.is_zero():
                        dst.pop(j, None)
                    else:
                        dst[j] = w
    return {col: inv[p] for col, p in pivot_of.items() if inv[p]}


# ---------------------------------------------------------------------------
# modules


@dataclass
class SignTwist:
    sigma: tuple
    antisymmetric: bool = False


@dataclass
class EvalModule:
    type: LieTypeData
    realm: str
    L: OpRatMat
    label: str
    params: dict = field(default_factory=dict)
    factors: tuple = ()

    @property
    def d(self) -> int:
        return self.L.d

    @property
    def N(self) -> int:
        return self.L.N


def _unit_ops(d):
    return {(k, l): Op.unit(d, k - 1, l - 1) for k in range(1, d + 1) for l in range(1, d + 1)}


def _module_from_cleared(t: LieTypeData, Rc, a, den: PolyU) -> OpRatMat:
    N = t.N
    units = _unit_ops(N)
    acc = {}
    for (i, j, k, l), bp in Rc.items():
        p = bp.eval_v(a)
        if p.is_zero():
            continue
        acc.setdefault((i, j), []).append((units[(k, l)], p))
    num = {}
    for key, terms in acc.items():
        deg = max(p.deg for _, p in terms)
        coeffs = [Op.zero(N) for _ in range(deg + 1)]
        for op, p in terms:
            for m, tt in enumerate(p.c):
                if tt[1]:
                    coeffs[m] = coeffs[m] + op.scale(tt)
        num[key] = OpPoly(N, coeffs)
    return OpRatMat(N, N, den, num)


def _qs(a) -> QS:
    if isinstance(a, QS):
        return a
    if isinstance(a, str):
        return QS(Fraction(a))
    return QS(Fraction(a))


def vector_module_yangian(t: LieTypeData, a=0) -> EvalModule:
    """T(u) = R(u - a) acting on C^N."""
    if t.family == "A":
        raise TypeMismatch("the Yangian realm covers types B, C and D")
    a = _qs(a)
    Rc = yangian_R_cleared(t)
    den = Rc.clear.eval_v(a)
    L = _module_from_cleared(t, Rc, a, den)
    return EvalModule(t, YANGIAN, L, f"V({a})", {"a": str(a), "normalization": "1"})


def _qaff_normalization_candidates(t: LieTypeData, a: QS):
    u = RatFun.u()
    yield "1", RatFun.const(1)
    yield "-1", RatFun.const(-1)
    if t.xi is not None:
        yield "(u-a)/(u-a*xi)", (u - a) / (u - a * t.xi)
        yield "(u-a*xi)/(u-a)", (u - a * t.xi) / (u - a)
    for k in (1, -1):
        yield f"q^{k}", RatFun.const(q ** k)


def zero_mode_violation(L: OpRatMat):
    """None if the zero-mode conditions hold, else a witness dict."""
    N, d = L.N, L.d
    try:
        plus = L.series(ZERO_PT, 0)
        minus = L.series(INF_PT, 0)
    except PoleAtExpansionPoint as exc:
        return {"reason": str(exc)}
    ident = Op.identity(d)
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            if i < j:
                if not plus[(i, j)].c[0].is_zero():
                    return {"entry": f"l+_{i}{j}[0]", "reason": "nonzero above the diagonal"}
                if not minus[(j, i)].c[0].is_zero():
                    return {"entry": f"l-_{j}{i}[0]", "reason": "nonzero below the diagonal"}
        lp, lm = plus[(i, i)].c[0], minus[(i, i)].c[0]
        if lp * lm != ident or lm * lp != ident:
            return {"entry": f"l+_{i}{i}[0] l-_{i}{i}[0]", "reason": "product is not 1"}
    return None


def vector_module_qaff(t: LieTypeData, a=1) -> EvalModule:
    """L(u) = c(u) R(u, a)/(u - a) on C^N with c chosen to meet the zero-mode conditions."""
    a = _qs(a)
    if a.is_zero():
        raise ValueError("evaluation parameter must be nonzero")
    Rc = trig_R_cleared(t)
    uma = PolyU([-a, 1])
    den = (Rc.clear.eval_v(a) if Rc.clear is not None else PolyU.const(1)) * uma
    base = _module_from_cleared(t, Rc, a, den)
    for name, f in _qaff_normalization_candidates(t, a):
        L = base.scale(f) if name != "1" else base
        if zero_mode_violation(L) is None:
            return EvalModule(t, QAFFINE, L, f"V({a})", {"a": str(a), "normalization": name})
    raise ZeroModeViolation(f"no scalar normalization meets the zero-mode conditions for {t.name}")


def vector_module(t: LieTypeData, realm: str, a) -> EvalModule:
    return vector_module_yangian(t, a) if realm == YANGIAN else vector_module_qaff(t, a)


def counit_module(t: LieTypeData, realm: str) -> EvalModule:
    N = t.N
    num = {(i, i): OpPoly(1, [Op.identity(1)]) for i in range(1, N + 1)}
    return EvalModule(t, realm, OpRatMat(N, 1, PolyU.const(1), num), "C", {"normalization": "1"})


def tensor_module(V: EvalModule, W: EvalModule) -> EvalModule:
    """Module structure on V (x) W through the coproduct l_ij -> sum_k l_ik (x) l_kj."""
    if V.type != W.type or V.realm != W.realm:
        raise TypeMismatch("tensor factors must share type and realm")
    N = V.N
    d = V.d * W.d
    num = {}
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            acc = OpPoly(d, [])
            for k in range(1, N + 1):
                A, B = V.L.num.get((i, k)), W.L.num.get((k, j))
                if A is None or B is None:
                    continue
                acc = acc + oppoly_kron(A, B, d)
            if not acc.is_zero():
                num[(i, j)] = acc
    L = OpRatMat(N, d, V.L.den * W.L.den, num)
    return EvalModule(V.type, V.realm, L, f"{V.label}⊗{W.label}",
                      {"factors": [V.params, W.params]}, factors=(V, W))


def inverse_L(L: OpRatMat) -> OpRatMat:
    """Inverse of L(u) computed on the flattened (N d) x (N d) matrix."""
    n = L.N * L.d
    return OpRatMat.from_flat_ratfun(L.N, L.d, ratfun_sparse_inverse(L.flat_ratfun(), n))


def antipode_module(V: EvalModule) -> EvalModule:
    """Module on the dual space through the antipode: l_ij acts by the transpose of (L^-1)_ij."""
    Li = inverse_L(V.L).blockwise_transpose()
    return EvalModule(V.type, V.realm, Li, f"S({V.label})", {"base": V.params})


def apply_mu_f(V: EvalModule, f: RatFun) -> EvalModule:
    """L(u) -> f(u) L(u); f+ and f- are the expansions of f at 0 and infinity."""
    if V.realm == QAFFINE:
        f0 = f(0)
        finf = _value_at_infinity(f)
        if f0 * finf != 1:
            raise NormalizationViolation("f+[0] f-[0] must equal 1")
    else:
        if _value_at_infinity(f) != 1:
            raise NormalizationViolation("f(u) must be 1 + O(1/u)")
    return EvalModule(V.type, V.realm, V.L.scale(f), f"mu({V.label})", {"base": V.params, "f": repr(f)})


def _value_at_infinity(f: RatFun) -> QS:
    if f.num.deg > f.den.deg:
        raise NormalizationViolation("f has a pole at infinity")
    if f.num.deg < f.den.deg:
        return QS(0)
    return f.num.lc() / f.den.lc()


def apply_sign_twist(V: EvalModule, S: SignTwist) -> EvalModule:
    """L+ -> S L+, L- -> S^-1 L- for diagonal S with S^t = S^-1 = S."""
    t = V.type
    if S.antisymmetric:
        raise UnsupportedTwist("S^t = S^-1 = -S needs sigma_i = ±sqrt(-1), outside Q(s)")
    sig = tuple(S.sigma)
    if len(sig) != t.N or any(x not in (1, -1) for x in sig):
        raise UnsupportedTwist("sigma must be a tuple of ±1 of length N")
    if t.family != "A" and any(sig[i - 1] != sig[t.p(i) - 1] for i in range(1, t.N + 1)):
        raise UnsupportedTwist("S^t = S requires sigma_i = sigma_i'")
    num = {}
    for (i, j), p in V.L.num.items():
        num[(i, j)] = p if sig[i - 1] == 1 else -p
    L = OpRatMat(V.N, V.d, V.L.den, num)
    return EvalModule(t, V.realm, L, f"sigma({V.label})", {"base": V.params, "sigma": list(sig)})


def apply_varsigma(V: EvalModule) -> EvalModule:
    """t_ij(u) -> t_i'j'(u)."""
    if V.realm != YANGIAN:
        raise TypeMismatch("the involution t_ij -> t_i'j' is used on Yangian modules")
    t = V.type
    num = {(t.p(i), t.p(j)): p for (i, j), p in V.L.num.items()}
    return EvalModule(t, V.realm, OpRatMat(V.N, V.d, V.L.den, num), f"vs({V.label})", {"base": V.params})


def apply_shift(V: EvalModule, c) -> EvalModule:
    """T(u) -> T(u + c)."""
    if V.realm != YANGIAN:
        raise TypeMismatch("additive shifts act on Yangian modules")
    c = _qs(c)
    return EvalModule(V.type, V.realm, V.L.shift_add(c), f"shift({V.label})", {"base": V.params, "c": str(c)})


# ---------------------------------------------------------------------------
# defining relations


@dataclass
class CheckResult:
    id: str
    status: str
    witness: dict | None = None
    params: dict = field(default_factory=dict)
    ms: float = 0.0
    family: str = ""
    rank: int = 0
    realm: str = ""

    def as_dict(self):
        out = {"id": self.id, "family": self.family, "rank": self.rank, "realm": self.realm,
               "params": self.params, "status": self.status, "ms": round(self.ms, 3)}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _result(cid, ok_witness, t0, params=None):
    status = "PASS" if ok_witness is None else "FAIL"
    return CheckResult(cid, status, ok_witness, params or {}, (time.perf_counter() - t0) * 1000)


def _R_cleared_for(V: EvalModule):
    if V.realm == YANGIAN:
        return yangian_R_cleared(V.type)
    return trig_R_cleared(V.type)


def _r_tables(Rc, v):
    """Rows {(i,k): [((a,b), p)]} and columns {(j,l): [((a,b), p)]} of R at a sampled v."""
    rows, cols = {}, {}
    for (i, a, k, b), bp in Rc.items():
        p = bp.eval_v(v)
        if p.is_zero():
            continue
        rows.setdefault((i, k), []).append(((a, b), p))
        cols.setdefault((a, b), []).append(((i, k), p))
    return rows, cols


def _accumulate(acc: dict, P: OpPoly, pc, negate: bool):
    """acc[power] += (or -=) the coefficients of pc(u) * P(u), as row dicts."""
    axpy = K.rows_axpy
    for e1, t in enumerate(pc):
        if not t[1]:
            continue
        if negate:
            t = K.qs_neg(t)
        for e0, a in enumerate(P.c):
            if a.rows:
                row = acc.get(e0 + e1)
                if row is None:
                    row = acc[e0 + e1] = {}
                axpy(row, a.rows, t)


def rll_violation(V: EvalModule, extra_samples: int = 0, Rc=None, extra_points=()):
    """Check R(u,v) L1(u) L2(v) = L2(v) L1(u) R(u,v) with u symbolic and v sampled.

    Both sides are multiplied by the denominators of R and of L(u) L(v), so
    only numerators enter.  The number of samples exceeds the v-degree of
    either side, making the sampled identities equivalent to the full one.
    ``Rc`` overrides the cleared R-matrix (an EndoMat of BiPoly); ``extra_points``
    are further v values checked after the grid (randomized spot checks).
    """
    L = V.L
    if Rc is None:
        Rc = _R_cleared_for(V)
    N, d = L.N, L.d
    dv_R = max(bp.deg_v() for _, bp in Rc.items())
    nsamp = dv_R + L.num_degree() + 1 + extra_samples
    grid = [QS((m + 1) // 2 * (1 if m % 2 else -1)) for m in range(nsamp)]
    for v in grid + [_qs(x) for x in extra_points]:
        M = {key: p.eval(v) for key, p in L.num.items()}
        rrows, rcols = _r_tables(Rc, v)
        # rcols is keyed by the row pair; regroup by column pair (j, l)
        bycol = {}
        for (i, k), lst in rrows.items():
            for (a, b), p in lst:
                bycol.setdefault((a, b), []).append(((i, k), p))
        cache_l, cache_r = {}, {}
        for i in range(1, N + 1):
            for k in range(1, N + 1):
                row = rrows.get((i, k), ())
                for j in range(1, N + 1):
                    for l in range(1, N + 1):
                        acc = {}
                        for (a, b), rp in row:
                            key = (a, j, b, l)
                            if key not in cache_l:
                                A, B = L.num.get((a, j)), M.get((b, l))
                                cache_l[key] = None if A is None or B is None else A * B
                            if cache_l[key] is not None:
                                _accumulate(acc, cache_l[key], rp.c, False)
                        for (a, b), rp in bycol.get((j, l), ()):
                            key = (i, a, k, b)
                            if key not in cache_r:
                                A, B = L.num.get((i, a)), M.get((k, b))
                                cache_r[key] = None if A is None or B is None else A.lmul(B)
                            if cache_r[key] is not None:
                                _accumulate(acc, cache_r[key], rp.c, True)
                        for e, rows in acc.items():
                            rest = K.rows_prune(rows)
                            if rest:
                                r, c, x = Op(d, rest).first_nonzero()
                                return {"entry": [i, k, j, l], "v": str(v), "u_power": e,
                                        "op_entry": [r, c], "lhs_minus_rhs": str(QS(x))}
    return None


def unitarity_scalar(V: EvalModule):
    """(z, witness): z(u) as a RatFun when the unitarity product is scalar, else a witness.

    Yangian: T^t(u + kappa) T(u).  Quantum affine: L(u) D L^t(u xi) D^-1.
    """
    t, L = V.type, V.L
    N, d = L.N, L.d
    if t.family == "A":
        raise TypeMismatch("type A has no unitarity condition")
    if V.realm == YANGIAN:
        S = L.shift_add(t.kappa)
        left, right = S, L
    else:
        S = L.shift_mul(t.xi)
        left, right = L, S
    Dq = [t.qbar(i) for i in range(1, N + 1)]
    common = None
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            acc = OpPoly(d, [])
            for k in range(1, N + 1):
                sgn = t.eps(i) * t.eps(k) if V.realm == YANGIAN else t.eps(k) * t.eps(j)
                if V.realm == YANGIAN:
                    A, B = left.num.get((t.p(k), t.p(i))), right.num.get((k, j))
                    coef = QS(sgn)
                else:
                    A, B = left.num.get((i, k)), right.num.get((t.p(j), t.p(k)))
                    coef = QS(sgn) * Dq[k - 1] / Dq[j - 1]
                if A is None or B is None:
                    continue
                acc = acc + (A * B).scale_poly(PolyU.const(coef))
            if i != j:
                if not acc.is_zero():
                    k0, r, c, x, _ = acc.first_difference(OpPoly(d, []))
                    return None, {"entry": [i, j], "u_power": k0, "op_entry": [r, c], "value": str(x)}
                continue
            coeffs = []
            for a in acc.c:
                sv = a.scalar_value()
                if sv is None:
                    return None, {"entry": [i, i], "reason": "diagonal entry is not scalar"}
                coeffs.append(sv)
            p = PolyU(coeffs)
            if common is None:
                common = p
            elif p != common:
                return None, {"entry": [i, i], "reason": "diagonal entries differ"}
    return RatFun(common, left.den * right.den), None


def check_defining_relations(V: EvalModule, extra_samples: int = 0, extra_points=()) -> list:
    """RTT (Yangian) or RLL, zero modes and unitarity for quantum affine modules."""
    t = V.type
    out = []
    params = {"module": V.label}
    if V.realm == YANGIAN:
        t0 = time.perf_counter()
        out.append(_result("RTT", rll_violation(V, extra_samples, extra_points=extra_points), t0, params))
        t0 = time.perf_counter()
        z, w = unitarity_scalar(V)
        out.append(_result("UNITARITY_Y", w, t0, params))
    else:
        t0 = time.perf_counter()
        w = rll_violation(V, extra_samples, extra_points=extra_points)
        for cid in ("RLL_PP", "RLL_MM", "RLL_PM"):
            r = _result(cid, w, t0, params)
            out.append(r)
        t0 = time.perf_counter()
        out.append(_result("ZERO_MODES", zero_mode_violation(V.L), t0, params))
        if t.family != "A":
            t0 = time.perf_counter()
            z, w = unitarity_scalar(V)
            out.append(_result("UNITARITY_QA", w, t0, params))
    for r in out:
        r.family, r.rank, r.realm = t.family, t.n, V.realm
    return out
