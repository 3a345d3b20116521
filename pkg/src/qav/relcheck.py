"""Identity registry: every checked relation as a named, runnable check on modules.

Each :class:`IdentityRegistryEntry` carries an id, the realm it lives in, an
applicability predicate over :class:`LieTypeData`, a formula anchor and a
check procedure.  Checks on modules verify the images of algebra identities,
so results are labelled ``verified on module``.  Inapplicable instances are
reported as SKIPPED.
"""

from __future__ import annotations

import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .drinfeld import (
    CurrentExtractionError,
    ModuleContext,
    NotHighestWeight,
    central_z_unitarity,
    check_central_lemma,
    check_hw_series,
    check_lambda_consistency,
    check_qaff_relations,
    check_sqrt_extension,
    check_yangian_relations,
    check_z_two_routes,
    check_zeta,
    drinfeld_polynomials,
    format_poly,
    highest_weight,
    node_yangian,
    ratio_from_polynomial,
    ratio_nodes,
)
from .exactalg.ops import INF_PT, ZERO_PT, Op, OpPoly, OpSeries
from .exactalg import kernels as K
from .exactalg.poly import RatFun
from .exactalg.scalar import QS, parse_qs, q, s
from .exactalg.series import TruncSeries, series_expand
from .exactalg.solvers import DegreeMismatch, NoSolutionUpToDegree
from .gauss import EHF, FHE, gauss_route_check, invert_flat, invert_unit_triangular, reconstruct, series_dict_difference
from .repmod import (
    QAFFINE,
    YANGIAN,
    CheckResult,
    EvalModule,
    OpRatMat,
    SignTwist,
    antipode_module,
    apply_mu_f,
    apply_sign_twist,
    apply_varsigma,
    check_defining_relations,
    counit_module,
    rll_violation,
    tensor_module,
    unitarity_scalar,
    vector_module,
)
from .rmatrix import EndoMat, LieTypeData, build_type, check_structural, trig_R_cleared

SUITES = ("ybe", "rll", "gauss", "drinfeld", "central", "hopf", "special", "classify")
REALMS = (YANGIAN, QAFFINE)
PASS, FAIL, SKIPPED, ERROR = "PASS", "FAIL", "SKIPPED", "ERROR"
ON_MODULE = "verified on module"


class NotApplicable(Exception):
    pass


class IdentityFailed(AssertionError):
    def __init__(self, result: CheckResult):
        super().__init__(f"{result.id} failed: {result.witness}")
        self.result = result


@dataclass(frozen=True)
class IdentityRegistryEntry:
    id: str
    suite: str
    realm: str  # "yangian", "qaffine" or "both"
    scope: str  # "type", "module", "vector" or "tensor"
    applies: Callable[[LieTypeData], bool]
    applicability: str
    anchor: str
    check: Callable
    displays: tuple = ()

    def in_realm(self, realm: str) -> bool:
        return self.realm in ("both", realm)


# ---------------------------------------------------------------------------
# applicability predicates


def _families(*fams, min_n=1, max_n=None):
    def pred(t):
        return t.family in fams and t.n >= min_n and (max_n is None or t.n <= max_n)
    return pred


BCD = _families("B", "C", "D")
ALL = _families("A", "B", "C", "D")


def _kpt_instances(t):
    N, p = t.N, t.p
    return [(k, i, j) for k in range(1, N + 1) for i in range(k + 1, N + 1)
            for j in range(i + 1, p(k)) if i != p(j)]


def _has_kpt(t):
    return t.family != "A" and bool(_kpt_instances(t))


# ---------------------------------------------------------------------------
# jobs


@dataclass
class Job:
    """One module (or one type for structural checks) together with cached data."""

    t: LieTypeData
    realm: str
    V: EvalModule | None
    order: int = 6
    dmax: int | None = None
    serre_window: int = 2
    spot_points: tuple = ()
    memo: dict = field(default_factory=dict)
    ctx: ModuleContext | None = None

    def __post_init__(self):
        if self.V is not None and self.ctx is None:
            self.ctx = ModuleContext(self.V, self.order)

    def get(self, key, fn):
        if key not in self.memo:
            self.memo[key] = fn()
        return self.memo[key]

    @property
    def points(self):
        return [INF_PT] if self.realm == YANGIAN else [ZERO_PT, INF_PT]

    def sub(self, V: EvalModule) -> "Job":
        return Job(self.t, self.realm, V, self.order, self.dmax, self.serre_window, self.spot_points)


def _sign(pt):
    return "+" if pt == ZERO_PT else "-"


def _sdiff(lhs: OpSeries, rhs: OpSeries, **where):
    w = lhs.first_difference(rhs)
    if w is None:
        return None
    k, r, c, a, b = w
    return {**where, "coeff": k, "op_entry": [r, c], "lhs": str(a), "rhs": str(b)}


def _first(gen):
    for w in gen:
        if w:
            return w
    return None


def _ratmat_witness(A: OpRatMat, B: OpRatMat, label="entry"):
    """First entry where A and B differ after clearing denominators, or None."""
    for key in sorted(set(A.num) | set(B.num)):
        zero = OpPoly(A.d, [])
        a = A.num.get(key, zero).scale_poly(B.den)
        b = B.num.get(key, zero).scale_poly(A.den)
        w = a.first_difference(b)
        if w is not None:
            k, r, c, x, y = w
            return {label: list(key), "u_power": k, "op_entry": [r, c], "lhs": str(x), "rhs": str(y)}
    return None


# ---------------------------------------------------------------------------
# structural checks (once per type)


def _structural(identity_id):
    def run(job: Job):
        r = check_structural(job.t, identity_id)
        return r.witness if r.status != PASS else None
    return run


# ---------------------------------------------------------------------------
# defining relations


def _defining(job: Job):
    return job.get("defining", lambda: {
        r.id: r for r in check_defining_relations(job.V, extra_points=job.spot_points)})


def _from_defining(cid):
    def run(job: Job):
        return _defining(job)[cid].witness
    return run


# ---------------------------------------------------------------------------
# Gauss decompositions


def _gauss_routes(orientation):
    def run(job: Job):
        for pt in job.points:
            w, _ = gauss_route_check(job.ctx.series(pt), orientation)
            if w is not None:
                return {"point": pt, **w}
        return None
    return run


def check_reconstruction(job: Job):
    for pt in job.points:
        M = job.ctx.series(pt)
        like = M[(1, 1)]
        for orient in (FHE, EHF):
            w = series_dict_difference(reconstruct(job.ctx.gauss(pt, orient), like), M, "T")
            if w is not None:
                return {"point": pt, "orientation": orient, **w}
    return None


def check_triangular_inverse(job: Job):
    """Alternating path sums invert the unipotent factors, compared with a flat inverse."""
    N = job.t.N
    for pt in job.points:
        G = job.ctx.gauss(pt, FHE)
        like = G.h[1]
        zero = OpSeries.zero(like.point, like.order, like.d)
        one = OpSeries.identity(like.point, like.order, like.d)
        for upper, src in ((True, G.e), (False, G.f)):
            full = {(i, j): one if i == j else src.get((i, j), zero)
                    for i in range(1, N + 1) for j in range(1, N + 1)}
            flat = invert_flat(full, N)
            path = invert_unit_triangular(src, N, upper)
            for key, val in path.items():
                w = _sdiff(val, flat[key], point=pt, entry=list(key), upper=upper)
                if w:
                    return w
    return None


# ---------------------------------------------------------------------------
# Drinfeld currents


def _yangian_suite(kind):
    def relations(job: Job):
        return job.get(("yrel", kind), lambda: check_yangian_relations(
            job.t, job.ctx.currents(kind), job.serre_window))
    return relations


def _current_check(kind, key):
    rel = _yangian_suite(kind)

    def run(job: Job):
        return rel(job)[key]
    return run


def _qaff_relations(job: Job):
    return job.get("qrel", lambda: check_qaff_relations(job.t, job.ctx.currents("qaffine"), job.serre_window))


def _qaff_check(key):
    def run(job: Job):
        return _qaff_relations(job)[key]
    return run


def check_sqrt_ext(job: Job):
    return check_sqrt_extension(job.t, job.ctx.currents("qaffine"))


def check_yangian_gauss_symmetry(job: Job):
    """e_(i+1)'i'(u) = -e_i,i+1(u + kappa - i) and f_i'(i+1)'(u) = -f_i+1,i(u + kappa - i)."""
    t, p = job.t, job.t.p
    G = job.ctx.gauss(INF_PT, FHE)
    for i in range(1, t.n):
        c = QS(t.kappa - i)
        w = _sdiff(G.e[(p(i + 1), p(i))], -G.e[(i, i + 1)].shift_add(c), series=f"e_{p(i + 1)}{p(i)}")
        if w:
            return w
        w = _sdiff(G.f[(p(i), p(i + 1))], -G.f[(i + 1, i)].shift_add(c), series=f"f_{p(i)}{p(i + 1)}")
        if w:
            return w
    return None


def check_varsigma(job: Job):
    """Gauss factors of the module twisted by t_ij -> t_i'j' against the opposite factors."""
    t, p = job.t, job.t.p
    W = job.sub(apply_varsigma(job.V))
    GW = W.ctx.gauss(INF_PT, FHE)
    Gb = job.ctx.gauss(INF_PT, EHF)
    for i in range(1, t.N + 1):
        w = _sdiff(GW.h[i], Gb.h[p(i)], series=f"h_{i}")
        if w:
            return w
    for (i, j), val in GW.e.items():
        w = _sdiff(val, Gb.f[(p(i), p(j))], series=f"e_{i}{j}")
        if w:
            return w
    for (j, i), val in GW.f.items():
        w = _sdiff(val, Gb.e[(p(j), p(i))], series=f"f_{j}{i}")
        if w:
            return w
    return None


# ---------------------------------------------------------------------------
# central series


def check_central(job: Job):
    return check_central_lemma(job.ctx)


def check_z_routes(job: Job):
    return check_z_two_routes(job.ctx)


def check_zeta_root(job: Job):
    return check_zeta(job.ctx)


def _z(job: Job) -> RatFun:
    return job.ctx.unitarity_z()


def check_z_tensor(job: Job):
    V, W = job.V.factors
    zt = _z(job)
    zv, zw = job.sub(V).ctx.unitarity_z(), job.sub(W).ctx.unitarity_z()
    if zt != zv * zw:
        return {"tensor_z": repr(zt), "product": repr(zv * zw)}
    return None


# ---------------------------------------------------------------------------
# Hopf structure and automorphisms


def _relations_witness(V: EvalModule, label: str):
    for r in check_defining_relations(V):
        if r.status != PASS:
            return {"module": label, "relation": r.id, **(r.witness or {})}
    return None


def check_counit(job: Job):
    C = counit_module(job.t, job.realm)
    w = _relations_witness(C, "counit")
    if w:
        return w
    for left, right, side in ((C, job.V, "counit (x) id"), (job.V, C, "id (x) counit")):
        w = _ratmat_witness(tensor_module(left, right).L, job.V.L)
        if w:
            return {"composite": side, **w}
    return None


def _antipode(job: Job) -> EvalModule:
    return job.get("antipode", lambda: antipode_module(job.V))


def check_antipode(job: Job):
    return _relations_witness(_antipode(job), "antipode")


def check_antipode_z(job: Job):
    zs, w = unitarity_scalar(_antipode(job))
    if zs is None:
        return {"reason": "unitarity product of the dual module is not scalar", **w}
    z = _z(job)
    if zs * z != RatFun.const(1):
        return {"dual_z": repr(zs), "expected": repr(z.inv())}
    return None


def _double_dual(job: Job) -> OpRatMat:
    return job.get("s2", lambda: antipode_module(_antipode(job)).L)


def _s2_base(job: Job) -> OpRatMat:
    t = job.t
    z = _z(job)
    return job.V.L.shift_mul(t.xi * t.xi).scale(z / z.shift_mul(t.xi))


def check_s2_printed(job: Job):
    """S^2: L(u) -> z(u)/z(u xi) L(u xi^2), compared with the double dual module."""
    return _ratmat_witness(_double_dual(job), _s2_base(job))


def check_s2_conjugated(job: Job):
    """S^2: L(u) -> z(u)/z(u xi) D^2 L(u xi^2) D^-2 with D = diag(q^bar i)."""
    t = job.t
    base = _s2_base(job)
    num = {}
    for (i, j), P in base.num.items():
        c = QS.qpow(2 * (t.bar(i) - t.bar(j)))
        num[(i, j)] = OpPoly(P.d, [a.scale(c) for a in P.c])
    return _ratmat_witness(_double_dual(job), OpRatMat(base.N, base.d, base.den, num))


def _mu_f_function(job: Job) -> RatFun:
    u = RatFun.u()
    if job.realm == QAFFINE:
        # f(0) f(infinity) = q^-1 * q = 1
        return (u - 2) / (u - 2 * q * q) * RatFun.const(q)
    return (u - 2) / (u - 3)


def check_mu_f(job: Job):
    t = job.t
    f = _mu_f_function(job)
    W = apply_mu_f(job.V, f)
    w = _relations_witness(W, "mu_f")
    if w:
        return w
    if t.family == "A":
        return None
    zw, w = unitarity_scalar(W)
    if zw is None:
        return w
    g = f.shift_mul(t.xi) if job.realm == QAFFINE else f.shift_add(QS(t.kappa))
    if zw != f * g * _z(job):
        return {"z_after": repr(zw), "expected": repr(f * g * _z(job))}
    return None


def _sign_vector(t):
    sig = [1] * t.N
    sig[0] = -1
    if t.family != "A":
        sig[t.p(1) - 1] = -1
    return tuple(sig)


def check_sign_twist(job: Job):
    t = job.t
    W = apply_sign_twist(job.V, SignTwist(_sign_vector(t)))
    w = _relations_witness(W, "sign twist")
    if w or t.family == "A":
        return w
    zw, w = unitarity_scalar(W)
    if zw is None:
        return w
    if zw != _z(job):
        return {"z_after": repr(zw), "expected": repr(_z(job))}
    return None


def _swap_R(Rc: EndoMat) -> EndoMat:
    return EndoMat(Rc.N, {(k, l, i, j): x for (i, j, k, l), x in Rc.items()}, Rc.clear)


def _transpose_series(S: OpSeries) -> OpSeries:
    return OpSeries(S.point, [a.transpose() for a in S.c], S.order, S.d)


def check_transpose_anti(job: Job):
    """L~ = full transpose of L obeys RLL with R_21; h~ = h^T, e~_ij = f_ji^T, f~_ji = e_ij^T."""
    V = job.V
    num = {(j, i): OpPoly(P.d, [a.transpose() for a in P.c]) for (i, j), P in V.L.num.items()}
    Vt = EvalModule(V.type, V.realm, OpRatMat(V.N, V.d, V.L.den, num), f"T({V.label})")
    w = rll_violation(Vt, Rc=_swap_R(trig_R_cleared(job.t)))
    if w:
        return {"relation": "RLL with R_21", **w}
    Jt = job.sub(Vt)
    for pt in job.points:
        G, Gt = job.ctx.gauss(pt, FHE), Jt.ctx.gauss(pt, FHE)
        for i, hv in G.h.items():
            w = _sdiff(Gt.h[i], _transpose_series(hv), point=pt, series=f"h_{i}")
            if w:
                return w
        for (i, j), ev in G.e.items():
            w = _sdiff(Gt.f[(j, i)], _transpose_series(ev), point=pt, series=f"f~_{j}{i}")
            if w:
                return w
        for (j, i), fv in G.f.items():
            w = _sdiff(Gt.e[(i, j)], _transpose_series(fv), point=pt, series=f"e~_{i}{j}")
            if w:
                return w
    return None


# ---------------------------------------------------------------------------
# proof-level identities (quantum affine, both L+ and L-)


def _lminus0(job: Job):
    return job.get("lm0", lambda: {k: v.c[0] for k, v in job.ctx.series(INF_PT).items()})


def _eminus0(job: Job):
    return job.get("em0", lambda: {k: v.c[0] for k, v in job.ctx.gauss(INF_PT, FHE).e.items()})


QQ = q - q.inv()


def check_loni(job: Job):
    """l_1i(u) l-_ij[0] = l-_ij[0] l_1i(u) - (q - q^-1) l-_ii[0] l_1j(u), 1 < i < j, j != i'."""
    p, N = job.t.p, job.t.N
    Lm = _lminus0(job)
    for pt in job.points:
        L = job.ctx.series(pt)
        for i in range(2, N + 1):
            for j in range(i + 1, N + 1):
                if j == p(i):
                    continue
                lhs = L[(1, i)] * Lm[(i, j)]
                rhs = Lm[(i, j)] * L[(1, i)] - (Lm[(i, i)] * L[(1, j)]) * QQ
                w = _sdiff(lhs, rhs, sign=_sign(pt), indices=[i, j])
                if w:
                    return w
    return None


def check_lonene(job: Job):
    """l_11(u) l-_im[0] = l-_im[0] l_11(u), 1 < i <= m, m != 1'."""
    p, N = job.t.p, job.t.N
    Lm = _lminus0(job)
    for pt in job.points:
        L = job.ctx.series(pt)
        for i in range(2, N + 1):
            for m in range(i, N + 1):
                if m == p(1):
                    continue
                w = _sdiff(L[(1, 1)] * Lm[(i, m)], Lm[(i, m)] * L[(1, 1)], sign=_sign(pt), indices=[i, m])
                if w:
                    return w
    return None


def check_eul(job: Job):
    """e_1i(u) l-_ij[0] = l-_ij[0] e_1i(u) - (q - q^-1) l-_ii[0] e_1j(u), 1 < i < j < 1', j != i'."""
    p, N = job.t.p, job.t.N
    Lm = _lminus0(job)
    for pt in job.points:
        e = job.ctx.gauss(pt, FHE).e
        for i in range(2, N + 1):
            for j in range(i + 1, p(1)):
                if j == p(i):
                    continue
                lhs = e[(1, i)] * Lm[(i, j)]
                rhs = Lm[(i, j)] * e[(1, i)] - (Lm[(i, i)] * e[(1, j)]) * QQ
                w = _sdiff(lhs, rhs, sign=_sign(pt), indices=[i, j])
                if w:
                    return w
    return None


def _epmi_indices(t, middle: bool):
    mid = t.n + 1 if t.family == "B" else None
    return [i for i in range(2, t.p(1)) if (i == mid) == middle]


def check_epmi(job: Job):
    """e_1i(u) l-_ii[0] = q^-1 l-_ii[0] e_1i(u) and the same for l_1i(u), 1 < i < 1'."""
    Lm = _lminus0(job)
    qi = q.inv()
    for pt in job.points:
        e = job.ctx.gauss(pt, FHE).e
        L = job.ctx.series(pt)
        for i in range(2, job.t.p(1)):
            for name, x in (("e", e[(1, i)]), ("l", L[(1, i)])):
                w = _sdiff(x * Lm[(i, i)], (Lm[(i, i)] * x) * qi, sign=_sign(pt), series=f"{name}_1{i}")
                if w:
                    return w
    return None


def check_epmi_middle(job: Job):
    """Middle index of type B: e_1,n+1(u) commutes with l-_n+1,n+1[0]."""
    Lm = _lminus0(job)
    m = job.t.n + 1
    for pt in job.points:
        e = job.ctx.gauss(pt, FHE).e
        w = _sdiff(e[(1, m)] * Lm[(m, m)], Lm[(m, m)] * e[(1, m)], sign=_sign(pt))
        if w:
            return w
    return None


def check_kpt(job: Job):
    """[e_ki(u), e-_ij[0]]_q = (1 - q^2) e_kj(u) for k < i < j < k', i != j'."""
    Em = _eminus0(job)
    only = job.memo.get("indices")
    for pt in job.points:
        e = job.ctx.gauss(pt, FHE).e
        for k, i, j in _kpt_instances(job.t):
            if only is not None and (k, i, j) != tuple(only):
                continue
            lhs = e[(k, i)] * Em[(i, j)] - (Em[(i, j)] * e[(k, i)]) * q
            w = _sdiff(lhs, e[(k, j)] * (1 - q * q), sign=_sign(pt), indices=[k, i, j])
            if w:
                return w
    return None


def check_kpt_middle(job: Job):
    """Type B, i = i': [e_ki(u), e-_i,i+1[0]] = (q^-1 - q) e_k,i+1(u) for i + 1 < k'."""
    Em = _eminus0(job)
    m = job.t.n + 1
    for pt in job.points:
        e = job.ctx.gauss(pt, FHE).e
        for k in [k for k in range(1, m) if m + 1 < job.t.p(k)]:
            lhs = e[(k, m)] * Em[(m, m + 1)] - Em[(m, m + 1)] * e[(k, m)]
            w = _sdiff(lhs, e[(k, m + 1)] * (q.inv() - q), sign=_sign(pt), indices=[k, m, m + 1])
            if w:
                return w
    return None


def check_ploni(job: Job):
    """l-_2'1'[0] l_11(u) = q^-1 l_11(u) l-_2'1'[0] - (q - q^-1) l-_2'2'[0] l_12(u)."""
    p = job.t.p
    a, b = p(2), p(1)
    Lm = _lminus0(job)
    for pt in job.points:
        L = job.ctx.series(pt)
        lhs = Lm[(a, b)] * L[(1, 1)]
        rhs = (L[(1, 1)] * Lm[(a, b)]) * q.inv() - (Lm[(a, a)] * L[(1, 2)]) * QQ
        w = _sdiff(lhs, rhs, sign=_sign(pt))
        if w:
            return w
    return None


def check_nthro(job: Job):
    """[e_12'(u), e-_2'1'[0]] = (1 - q^2)(e_11'(u) + e_12(u) e_12'(u))."""
    p = job.t.p
    a, b = p(2), p(1)
    Em = _eminus0(job)
    for pt in job.points:
        e = job.ctx.gauss(pt, FHE).e
        lhs = e[(1, a)] * Em[(a, b)] - Em[(a, b)] * e[(1, a)]
        rhs = (e[(1, b)] + e[(1, 2)] * e[(1, a)]) * (1 - q * q)
        w = _sdiff(lhs, rhs, sign=_sign(pt))
        if w:
            return w
    return None


def _gainv(job: Job, signed: bool):
    t, p, N = job.t, job.t.p, job.t.N
    for pt in job.points:
        e = job.ctx.gauss(pt, FHE).e
        inv = invert_unit_triangular(e, N, True)
        for i in range(1, N + 1):
            for j in range(i + 1, p(i)):
                lhs = e[(i, j)].shift_mul(t.xi * q ** (2 * i))
                c = QS.qpow(t.bar(j) - t.bar(i) + 1)
                if signed:
                    c = c * (t.eps(i) * t.eps(j))
                w = _sdiff(lhs, inv[(p(j), p(i))] * c, sign=_sign(pt), indices=[i, j])
                if w:
                    return w
    return None


def check_gainv(job: Job):
    """e_ij(u xi q^2i) = q^(bar j - bar i + 1) (E(u)^-1)_j'i' for i < j < i'."""
    return _gainv(job, False)


def check_gainv_signed(job: Job):
    """As above with the sign eps_i eps_j."""
    return _gainv(job, True)


def check_hexi(job: Job):
    """h_1(u) e_1j(u) = q^-1 e_1j(u q^2) h_1(u) and l_1j(u q^2) l_11(u) = q l_11(u q^2) l_1j(u), 1 < j < 1'."""
    for pt in job.points:
        G = job.ctx.gauss(pt, FHE)
        L = job.ctx.series(pt)
        h, e = G.h[1], G.e
        for j in range(2, job.t.p(1)):
            w = _sdiff(h * e[(1, j)], (e[(1, j)].shift_mul(q * q) * h) * q.inv(), sign=_sign(pt), series=f"e_1{j}")
            if w:
                return w
            lhs = L[(1, j)].shift_mul(q * q) * L[(1, 1)]
            rhs = (L[(1, 1)].shift_mul(q * q) * L[(1, j)]) * q
            w = _sdiff(lhs, rhs, sign=_sign(pt), series=f"l_1{j}")
            if w:
                return w
    return None


def check_spez(job: Job):
    """sp4: [e_12(u), e-_22'[0]]_(q^2) = (1 - q^4) e_12'(u), with its l-form."""
    Em, Lm = _eminus0(job), _lminus0(job)
    for pt in job.points:
        e = job.ctx.gauss(pt, FHE).e
        L = job.ctx.series(pt)
        lhs = e[(1, 2)] * Em[(2, 3)] - (Em[(2, 3)] * e[(1, 2)]) * q ** 2
        w = _sdiff(lhs, e[(1, 3)] * (1 - q ** 4), sign=_sign(pt), form="e")
        if w:
            return w
        lhs = L[(1, 2)] * Lm[(2, 3)]
        rhs = (Lm[(2, 3)] * L[(1, 2)]) * q + (Lm[(2, 2)] * L[(1, 3)]) * (q.inv() - q ** 3)
        w = _sdiff(lhs, rhs, sign=_sign(pt), form="l")
        if w:
            return w
    return None


def check_o3(job: Job):
    """o3: e_12(u)^2 = -(q^1/2 + q^-1/2) e_11'(u)."""
    for pt in job.points:
        e = job.ctx.gauss(pt, FHE).e
        w = _sdiff(e[(1, 2)] * e[(1, 2)], e[(1, 3)] * (-(s + s.inv())), sign=_sign(pt))
        if w:
            return w
    return None


def check_o4(job: Job):
    """o4: e_22'(u) = 0."""
    for pt in job.points:
        e = job.ctx.gauss(pt, FHE).e[(2, 3)]
        if not e.is_zero():
            return _sdiff(e, OpSeries.zero(e.point, e.order, e.d), sign=_sign(pt))
    return None


def check_o2(job: Job):
    """o2 (abelian, xi = 1): l_11'(u) = 0 on the vector module with the same evaluation point."""
    t2 = build_type("D", 1, allow_abelian=True)
    W = vector_module(t2, QAFFINE, parse_qs(job.V.params["a"]) if "a" in job.V.params else 5)
    w = _relations_witness(W, "o2 vector")
    if w:
        return w
    if (1, 2) in W.L.num and not W.L.num[(1, 2)].is_zero():
        return {"module": W.label, "reason": "l_11'(u) is nonzero"}
    return None


def _phi_series(job: Job, pt):
    C = job.ctx.currents("qaffine")
    key = "phi" if pt == ZERO_PT else "psi"
    return {i: C.series[(key, i)] for i in range(1, job.t.n + 1)}


def check_h_telescope(job: Job):
    """h_i(u) = phi_1(u q^-1) ... phi_(i-1)(u q^(1-i)) h_1(u), and the last index per type."""
    t, n = job.t, job.t.n
    for pt in job.points:
        h = job.ctx.gauss(pt, FHE).h
        ph = _phi_series(job, pt)
        top = n + 1 if t.family == "B" else n
        acc = h[1]
        for i in range(2, top + 1):
            acc = ph[i - 1].shift_mul(q ** (1 - i)) * acc
            w = _sdiff(acc, h[i], sign=_sign(pt), index=i)
            if w:
                return w
        if t.family == "C":
            w = _sdiff(ph[n].shift_mul(q ** (-n - 1)) * h[n], h[n + 1], sign=_sign(pt), index=n + 1)
        elif t.family == "D":
            w = _sdiff(ph[n].shift_mul(q ** (1 - n)) * h[n - 1], h[n + 1], sign=_sign(pt), index=n + 1)
        else:
            w = None
        if w:
            return w
    return None


def check_hzprod(job: Job):
    """h_1(u) h_1(u xi) times the type-dependent product of phi's equals z(u); constant-term form."""
    t, n, xi = job.t, job.t.n, job.t.xi
    C = job.ctx.currents("qaffine")
    for pt in job.points:
        h1 = job.ctx.gauss(pt, FHE).h[1]
        ph = _phi_series(job, pt)
        acc = h1 * h1.shift_mul(xi)
        full = {"B": n, "C": n - 1, "D": n - 2}[t.family]
        for i in range(1, full + 1):
            acc = acc * ph[i].shift_mul(q ** (-i)) * ph[i].shift_mul(xi * q ** i)
        if t.family == "C":
            acc = acc * ph[n].shift_mul(q ** (-n - 1))
        elif t.family == "D":
            acc = acc * ph[n - 1].shift_mul(q ** (1 - n)) * ph[n].shift_mul(xi * q ** (n - 1))
        z = OpSeries.from_scalar(central_z_unitarity(job.ctx, pt), job.V.d)
        w = _sdiff(acc, z, sign=_sign(pt), form="series")
        if w:
            return w
        ks = [C.k(i) for i in range(1, n + 1)]
        sq = {"B": n, "C": n - 1, "D": n - 2}[t.family]
        prod = Op.identity(job.V.d)
        for i, k in enumerate(ks):
            prod = prod * (k * k if i < sq else k)
        if pt == INF_PT:
            prod = prod.inverse()
        lhs = h1.c[0] * h1.c[0]
        rhs = z.c[0] * prod
        if lhs != rhs:
            r, c, _ = (lhs - rhs).first_nonzero()
            return {"sign": _sign(pt), "form": "constant term", "op_entry": [r, c],
                    "lhs": str(lhs.entry(r, c)), "rhs": str(rhs.entry(r, c))}
    return None


# ---------------------------------------------------------------------------
# highest weights and classification


def _hw(job: Job):
    return job.get("hw", lambda: highest_weight(job.V))


def _polys(job: Job):
    return job.get("polys", lambda: drinfeld_polynomials(job.t, job.realm, _hw(job).lam, job.dmax))


def _poly_params(job: Job):
    return {"polynomials": [format_poly(P) for P in _polys(job)]}


def check_hw(job: Job):
    hw = _hw(job)
    if hw.dim != 1:
        return {"reason": "highest vector space is not one-dimensional", "dim": hw.dim}
    return check_hw_series(job.ctx, hw)


def check_classification(job: Job):
    """lambda_a / lambda_b = ratio built from the extracted polynomial, node by node."""
    try:
        polys = _polys(job)
    except (NoSolutionUpToDegree, DegreeMismatch) as exc:
        return {"reason": str(exc)}
    lam = _hw(job).lam
    for (i, a, b), P in zip(ratio_nodes(job.t), polys):
        if ratio_from_polynomial(job.t, job.realm, i, P) != lam[a - 1] / lam[b - 1]:
            return {"node": i, "polynomial": format_poly(P)}
    return None


def _eigen_series(S: OpSeries, vec: dict):
    """Scalar series c with S vec = c vec, or None."""
    piv = min(vec)
    out = []
    for a in S.c:
        img = a.apply(vec)
        c = K.qs_mul(img.get(piv, K.ZERO), K.qs_inv(vec[piv]))
        for key in set(img) | set(vec):
            if K.qs_sub(img.get(key, K.ZERO), K.qs_mul(c, vec.get(key, K.ZERO)))[1]:
                return None
        out.append(c)
    return out


def check_kappa_eigen(job: Job):
    """kappa_i(u) acts on the highest vector by Q_i(u)/Q_i(u + r_i) with Q_i(u) = P_i(u - c_i)."""
    t = job.t
    C = job.ctx.currents("yangian")
    vec = _hw(job).vector
    for i, P in zip(range(1, t.rank + 1), _polys(job)):
        _, _, c, _ = node_yangian(t, i)
        Q = P.shift_add(QS(-c))
        expect = series_expand(RatFun(Q, Q.shift_add(QS(t.r[i - 1]))), INF_PT, job.order)
        got = _eigen_series(C.kappa[i], vec)
        if got is None:
            return {"node": i, "reason": "highest vector is not an eigenvector"}
        for k, (x, y) in enumerate(zip(got, expect.c)):
            if x != y:
                return {"node": i, "coeff": k, "lhs": str(QS(x)), "rhs": str(QS(y))}
    return None


def check_lambda_pm(job: Job):
    """Eigenvalue ratios read off h+ (at 0) and h- (at infinity) match the same polynomials."""
    t = job.t
    vec = _hw(job).vector
    for pt in (ZERO_PT, INF_PT):
        h = job.ctx.gauss(pt, FHE).h
        for (i, a, b), P in zip(ratio_nodes(t), _polys(job)):
            ea, eb = _eigen_series(h[a], vec), _eigen_series(h[b], vec)
            if ea is None or eb is None:
                return {"sign": _sign(pt), "node": i, "reason": "highest vector is not an eigenvector"}
            ratio = TruncSeries._mk(pt, ea, job.order) / TruncSeries._mk(pt, eb, job.order)
            expect = series_expand(ratio_from_polynomial(t, job.realm, i, P), pt, job.order)
            if ratio != expect:
                return {"sign": _sign(pt), "node": i, "polynomial": format_poly(P)}
    return None


def check_lambda(job: Job):
    z = _z(job) if job.t.family != "A" else None
    return check_lambda_consistency(job.t, job.realm, _hw(job).lam, z)


def check_fundamental(job: Job):
    """A vector module has exactly one nontrivial polynomial, of degree 1."""
    degs = [P.deg for P in _polys(job)]
    nontrivial = [d for d in degs if d > 0]
    if nontrivial != [1]:
        return {"degrees": degs}
    return None


def check_hopf_mult(job: Job):
    V, W = job.V.factors
    pv, pw = _polys(job.sub(V)), _polys(job.sub(W))
    for i, (P, A, B) in enumerate(zip(_polys(job), pv, pw), start=1):
        if P != A * B:
            return {"node": i, "tensor": format_poly(P), "product": format_poly(A * B)}
    return None


# ---------------------------------------------------------------------------
# registry


def _E(id, suite, realm, scope, applies, applicability, anchor, check, displays=()):
    return IdentityRegistryEntry(id, suite, realm, scope, applies, applicability, anchor, check, tuple(displays))


B_MID = _families("B", min_n=1)
B_MID2 = _families("B", min_n=2)

REGISTRY: tuple = (
    # R-matrices
    _E("YBE_RATIONAL", "ybe", YANGIAN, "type", ALL, "all types",
       "R12(u-v) R13(u-w) R23(v-w) = R23 R13 R12 for the rational R-matrix",
       _structural("YBE_RATIONAL"), ["rational-r-matrix"]),
    _E("YBE_TRIG", "ybe", QAFFINE, "type", ALL, "all types",
       "R12(u,v) R13(u,w) R23(v,w) = R23 R13 R12 for R(u,v) with coefficients d_ij(u,v)",
       _structural("YBE_TRIG"), ["trig-r-one-parameter", "trig-r-two-parameter", "trig-r-d-coefficients"]),
    _E("R_TRANS_SYM", "ybe", QAFFINE, "type", ALL, "all types",
       "R(u,v)^(t1 t2) = R_21(u,v)", _structural("R_TRANS_SYM"), ["r-transpose-symmetry"]),
    # defining relations
    _E("RTT", "rll", YANGIAN, "module", BCD, "types B, C, D",
       "R(u-v) T1(u) T2(v) = T2(v) T1(u) R(u-v)", _from_defining("RTT"), ["rtt-relation"]),
    _E("UNITARITY_Y", "rll", YANGIAN, "module", BCD, "types B, C, D",
       "T^t(u+kappa) T(u) = z(u), a scalar", _from_defining("UNITARITY_Y"), ["yangian-unitarity"]),
    _E("RLL_PP", "rll", QAFFINE, "module", ALL, "all types",
       "R(u,v) L+1(u) L+2(v) = L+2(v) L+1(u) R(u,v)", _from_defining("RLL_PP"), ["rll-same-sign"]),
    _E("RLL_MM", "rll", QAFFINE, "module", ALL, "all types",
       "R(u,v) L-1(u) L-2(v) = L-2(v) L-1(u) R(u,v)", _from_defining("RLL_MM")),
    _E("RLL_PM", "rll", QAFFINE, "module", ALL, "all types",
       "R(u,v) L+1(u) L-2(v) = L-2(v) L+1(u) R(u,v)", _from_defining("RLL_PM"), ["rll-mixed-sign"]),
    _E("ZERO_MODES", "rll", QAFFINE, "module", ALL, "all types",
       "l+_ij[0] = l-_ji[0] = 0 for i < j and l+_ii[0] l-_ii[0] = 1",
       _from_defining("ZERO_MODES"), ["zero-modes"]),
    _E("UNITARITY_QA", "rll", QAFFINE, "module", BCD, "types B, C, D",
       "L(u) D L^t(u xi) D^-1 = z(u), a scalar", _from_defining("UNITARITY_QA"), ["qaff-unitarity"]),
    # Gauss decompositions
    _E("GAUSS_FHE", "gauss", "both", "module", ALL, "all types",
       "T = F H E: block elimination equals quasideterminants",
       _gauss_routes(FHE), ["yangian-gauss", "qaff-gauss", "h-quasideterminants", "e-f-quasideterminants"]),
    _E("GAUSS_EHF", "gauss", "both", "module", ALL, "all types",
       "T = E H F: block elimination equals quasideterminants",
       _gauss_routes(EHF), ["opposite-gauss", "hbar-quasideterminants", "ebar-quasideterminants",
                             "fbar-quasideterminants"]),
    _E("GAUSS_RECON", "gauss", "both", "module", ALL, "all types",
       "F H E and E H F reproduce T", check_reconstruction),
    _E("EINV_PATH", "gauss", "both", "module", ALL, "all types",
       "(E^-1)_ij = sum over chains i < a1 < ... < j of (-1)^(s+1) e_i,a1 ... e_as,j",
       check_triangular_inverse, ["e-inverse-path-sum"]),
    # Drinfeld presentations
    *[_E(f"Y_{key}", "drinfeld", YANGIAN, "module", BCD, "types B, C, D", anchor,
         _current_check("yangian", f"Y_{key}"), disp)
      for key, anchor, disp in (
          ("CONST", "kappa_i(u) = 1 + O(u^-1), xi_i(u) = O(u^-1)", ()),
          ("KK", "[kappa_ir, kappa_js] = 0", ()),
          ("PAIR", "[xi+_ir, xi-_js] = delta_ij kappa_i,r+s", ["yangian-current-map"]),
          ("K0X", "[kappa_i0, xi±_js] = ±(alpha_i, alpha_j) xi±_js", ["simple-roots"]),
          ("KX", "[kappa_i,r+1, xi±_js] - [kappa_ir, xi±_j,s+1] = ±(alpha_i,alpha_j)/2 {kappa_ir, xi±_js}", ()),
          ("XX", "[xi±_i,r+1, xi±_js] - [xi±_ir, xi±_j,s+1] = ±(alpha_i,alpha_j)/2 {xi±_ir, xi±_js}", ()),
          ("SERRE", "sum over S_m of nested commutators of xi±_i with xi±_j vanishes, m = 1 - a_ij",
           ["cartan-matrix"]))],
    *[_E(f"APPA_{key}", "drinfeld", YANGIAN, "module", BCD, "types B, C, D",
         f"opposite-decomposition currents: {key.lower()} relations",
         _current_check("appendix", f"Y_{key}"), disp)
      for key, disp in (("CONST", ()), ("KK", ()), ("PAIR", ["opposite-current-map"]), ("K0X", ()),
                        ("KX", ()), ("XX", ()), ("SERRE", ()))],
    _E("Y_GAUSS_SYM", "drinfeld", YANGIAN, "module", BCD, "types B, C, D",
       "e_(i+1)'i'(u) = -e_i,i+1(u+kappa-i), f_i'(i+1)'(u) = -f_i+1,i(u+kappa-i)",
       check_yangian_gauss_symmetry, ["gauss-symmetry"]),
    _E("VARSIGMA", "drinfeld", YANGIAN, "module", BCD, "types B, C, D",
       "t_ij -> t_i'j' sends h_i -> hbar_i', e_ij -> fbar_i'j', f_ji -> ebar_j'i'",
       check_varsigma, ["involution-varsigma"]),
    *[_E(f"QA_{key}", "drinfeld", QAFFINE, "module", ALL, "all types", anchor, _qaff_check(f"QA_{key}"), disp)
      for key, anchor, disp in (
          ("KK", "k_i, a_i,m pairwise commute; k_i k_i^-1 = 1", ()),
          ("KX", "k_i x±_j,m k_i^-1 = q^(±(alpha_i,alpha_j)) x±_j,m", ()),
          ("AX", "[a_i,m, x±_j,l] = ±[m A_ij]_qi / m x±_j,m+l", ()),
          ("XX", "x±_i,m+1 x±_j,l - q^(±(alpha_i,alpha_j)) x±_j,l x±_i,m+1 = q^(±..) x±_i,m x±_j,l+1 - x±_j,l+1 x±_i,m",
           ()),
          ("PAIR", "[x+_i,m, x-_j,l] = delta_ij (psi_i,m+l - phi_i,m+l)/(q_i - q_i^-1)", ["qaff-current-map"]),
          ("SERRE", "sum_l (-1)^l [r over l]_qi x_i..x_i x_j x_i..x_i = 0 (symmetrized), r = 1 - A_ij", ()))],
    _E("QA_SQRT_EXT", "drinfeld", QAFFINE, "module", _families("C", "D"), "types C, D",
       "adjoined square root of k_n (C) or k_(n-1) k_n (D) conjugates x±_j by the halved q-power",
       check_sqrt_ext, ["square-root-extension"]),
    # central series
    _E("CENTRAL_Y", "central", YANGIAN, "module", BCD, "types B, C, D",
       "h_1(u+kappa) h_1'(u) = z(u); h_i(u+kappa-i) h_i'(u) = h_i+1(u+kappa-i) h_(i+1)'(u)",
       check_central, ["yangian-h1-z", "yangian-h-chain"]),
    _E("CENTRAL_QA", "central", QAFFINE, "module", BCD, "types B, C, D",
       "h_1(u xi) h_1'(u) = z(u); h_i(u xi q^2i) h_i'(u) = h_i+1(u xi q^2i) h_(i+1)'(u)",
       check_central, ["qaff-h1-z", "qaff-h-chain"]),
    _E("Z_TWO_ROUTES", "central", "both", "module", BCD, "types B, C, D",
       "z(u) as a product of shifted h_i equals the unitarity scalar",
       check_z_routes, ["yangian-z-product", "qaff-z-product", "unitarity-with-z"]),
    _E("ZETA", "central", QAFFINE, "module", BCD, "types B, C, D",
       "zeta(u) zeta(u xi) = z(u); z[0] = l_nn[0] l_n'n'[0] for even N", check_zeta_root, ["zeta-root"]),
    _E("Z_TENSOR", "central", "both", "tensor", BCD, "types B, C, D",
       "Delta(l_ij) = sum_k l_ik (x) l_kj gives Delta z = z (x) z", check_z_tensor,
       ["coproduct", "z-coproduct"]),
    # Hopf structure and automorphisms
    _E("COUNIT", "hopf", "both", "module", ALL, "all types",
       "epsilon(L) = 1; (epsilon (x) id) Delta = id = (id (x) epsilon) Delta", check_counit, ["counit"]),
    _E("ANTIPODE", "hopf", "both", "vector", ALL, "all types",
       "S(L) = L^-1: the dual module satisfies the defining relations", check_antipode, ["antipode"]),
    _E("ANTIPODE_Z", "hopf", "both", "vector", BCD, "types B, C, D",
       "S(z(u)) = z(u)^-1", check_antipode_z, ["antipode-of-z"]),
    _E("HOPF", "hopf", QAFFINE, "vector", BCD, "types B, C, D",
       "S^2(L(u)) = z(u)/z(u xi) L(u xi^2)", check_s2_printed, ["antipode-squared"]),
    _E("HOPF_S2_CONJ", "hopf", QAFFINE, "vector", BCD, "types B, C, D",
       "S^2(L(u)) = z(u)/z(u xi) D^2 L(u xi^2) D^-2", check_s2_conjugated),
    _E("MU_F", "hopf", "both", "module", ALL, "all types (z part for B, C, D)",
       "L(u) -> f(u) L(u) preserves the relations and sends z(u) to f(u) f(u xi) z(u)",
       check_mu_f, ["mu-f-automorphism", "mu-f-series"]),
    _E("SIGN_TWIST", "hopf", QAFFINE, "module", ALL, "all types",
       "L(u) -> S L(u) with S diagonal, S^t = S^-1 = S", check_sign_twist, ["sign-twist"]),
    _E("TRANSPOSE_ANTI", "hopf", QAFFINE, "vector", ALL, "all types",
       "L~ -> L^T: R_21-relations hold; h~_i -> h_i, e~_ij -> f_ji, f~_ij -> e_ji",
       check_transpose_anti, ["transpose-anti-isomorphism"]),
    # proof-level identities
    _E("LONI", "special", QAFFINE, "module", BCD, "types B, C, D",
       "l±_1i(u) l-_ij[0] = l-_ij[0] l±_1i(u) - (q-q^-1) l-_ii[0] l±_1j(u), 1<i<j, j!=i'",
       check_loni, ["l1i-lminus-exchange"]),
    _E("LONENE", "special", QAFFINE, "module", BCD, "types B, C, D",
       "l±_11(u) l-_im[0] = l-_im[0] l±_11(u), 1<i<=m, m!=1'", check_lonene, ["l11-lminus-commute"]),
    _E("EUL", "special", QAFFINE, "module", _families("B", "C", "D", min_n=2), "types B, C, D with n >= 2",
       "e±_1i(u) l-_ij[0] = l-_ij[0] e±_1i(u) - (q-q^-1) l-_ii[0] e±_1j(u), 1<i<j<1', j!=i'",
       check_eul, ["e1i-lminus-exchange"]),
    _E("EPMI", "special", QAFFINE, "module", BCD, "types B, C, D",
       "e±_1i(u) l-_ii[0] = q^-1 l-_ii[0] e±_1i(u), 1<i<1'", check_epmi, ["e1i-lminus-ii"]),
    _E("EPMI_BMID", "special", QAFFINE, "module", B_MID, "type B",
       "type B, i = i' = n+1: e±_1i(u) l-_ii[0] = l-_ii[0] e±_1i(u)", check_epmi_middle),
    _E("KPT", "special", QAFFINE, "module", _has_kpt, "types B, C, D with some k<i<j<k', i!=j'",
       "[e±_ki(u), e-_ij[0]]_q = (1-q^2) e±_kj(u), k<i<j<k', i!=j'", check_kpt, ["kpt-q-commutator"]),
    _E("KPT_BMID", "special", QAFFINE, "module", B_MID2, "type B with n >= 2",
       "type B, i = i' = n+1: [e±_ki(u), e-_i,i+1[0]] = (q^-1-q) e±_k,i+1(u), i+1 < k'", check_kpt_middle),
    _E("PLONI", "special", QAFFINE, "module", _families("B", "C", "D", min_n=2), "types B, C, D with n >= 2",
       "l-_2'1'[0] l±_11(u) = q^-1 l±_11(u) l-_2'1'[0] - (q-q^-1) l-_2'2'[0] l±_12(u)",
       check_ploni, ["lminus-2p1p-l11"]),
    _E("NTHRO", "special", QAFFINE, "module", _families("B", "C", "D", min_n=2), "types B, C, D with n >= 2",
       "[e±_12'(u), e-_2'1'[0]] = (1-q^2)(e±_11'(u) + e±_12(u) e±_12'(u))", check_nthro,
       ["nthro-commutator"]),
    _E("GAINV", "special", QAFFINE, "module", BCD, "types B, C, D",
       "e±_ij(u xi q^2i) = q^(bar j - bar i + 1) (E±(u)^-1)_j'i', i<j<i'", check_gainv,
       ["gauss-inverse-symmetry"]),
    _E("GAINV_EPS", "special", QAFFINE, "module", BCD, "types B, C, D",
       "e±_ij(u xi q^2i) = eps_i eps_j q^(bar j - bar i + 1) (E±(u)^-1)_j'i', i<j<i'", check_gainv_signed),
    _E("HEXI", "special", QAFFINE, "module", BCD, "types B, C, D",
       "h±_1(u) e±_1j(u) = q^-1 e±_1j(u q^2) h±_1(u); l_1j(u q^2) l_11(u) = q l_11(u q^2) l_1j(u), 1<j<1'",
       check_hexi, ["h1-e1j-shift"]),
    _E("SPEZ", "special", QAFFINE, "module", _families("C", min_n=2, max_n=2), "type C2",
       "[e±_12(u), e-_22'[0]]_(q^2) = (1-q^4) e±_12'(u)", check_spez, ["sp4-q2-commutator"]),
    _E("O3", "special", QAFFINE, "module", _families("B", max_n=1), "type B1",
       "e±_12(u)^2 = -(q^1/2 + q^-1/2) e±_11'(u)", check_o3, ["o3-square"]),
    _E("O4", "special", QAFFINE, "module", _families("D", min_n=2, max_n=2), "type D2",
       "e±_22'(u) = 0", check_o4, ["o4-vanishing"]),
    _E("O2", "special", QAFFINE, "module", _families("D", min_n=2, max_n=2), "type D2 (checked on o2)",
       "o2 with xi = 1: l±_11'(u) = 0", check_o2, ["o2-vanishing"]),
    _E("H_TELESCOPE", "special", QAFFINE, "module", BCD, "types B, C, D",
       "h+_i(u) = phi_1(u q^-1) ... phi_(i-1)(u q^(1-i)) h+_1(u), last index per type",
       check_h_telescope, ["h-telescope"]),
    _E("HZPROD", "special", QAFFINE, "module", BCD, "types B, C, D",
       "h_1(u) h_1(u xi) prod phi_i(u q^-i) phi_i(u xi q^i) = z(u); h_1,0^2 = z[0] k_1^2 ...",
       check_hzprod, ["h1-phi-product"]),
    # classification
    _E("HW_SERIES", "classify", "both", "module", ALL, "all types",
       "e_ij(u) zeta = 0, h_i(u) zeta = lambda_i(u) zeta on the unique highest vector",
       check_hw, ["yangian-hw-e", "yangian-hw-h", "qaff-hw-e"]),
    _E("CLASS_Y", "classify", YANGIAN, "module", BCD, "types B, C, D",
       "lambda_a(u)/lambda_b(u) = P_i(u + r_i)/P_i(u)", check_classification,
       ["yangian-drinfeld-ratio", "root-lengths"]),
    _E("CLASS_Y_Q", "classify", YANGIAN, "module", BCD, "types B, C, D",
       "kappa_i(u) zeta = Q_i(u)/Q_i(u + r_i) zeta", check_kappa_eigen, ["opposite-polynomials"]),
    _E("CLASS_QA", "classify", QAFFINE, "module", BCD, "types B, C, D",
       "lambda_a(u)/lambda_b(u) = gamma^deg P_i(u gamma^-2)/P_i(u)", check_classification,
       ["qaff-drinfeld-ratio"]),
    _E("CLASS_A", "classify", QAFFINE, "module", _families("A"), "type A",
       "lambda_i(u)/lambda_i+1(u) = q^deg P_i(u q^-2)/P_i(u)", check_classification, ["typea-drinfeld-ratio"]),
    _E("LAMBDA_PM", "classify", QAFFINE, "module", ALL, "all types",
       "eigenvalue ratios of h+ at 0 and h- at infinity give the same polynomials", check_lambda_pm),
    _E("LAMBDA_Y", "classify", YANGIAN, "module", BCD, "types B, C, D",
       "lambda_i(u+kappa-i) lambda_i'(u) = lambda_i+1(u+kappa-i) lambda_(i+1)'(u), z at i = 0",
       check_lambda, ["yangian-lambda-chain"]),
    _E("LAMBDA_QA", "classify", QAFFINE, "module", BCD, "types B, C, D",
       "lambda_i(u xi q^2i) lambda_i'(u) = lambda_i+1(u xi q^2i) lambda_(i+1)'(u), z at i = 0",
       check_lambda, ["qaff-lambda-chain"]),
    _E("CLASS_FUND", "classify", "both", "vector", ALL, "all types",
       "a vector module has exactly one nontrivial polynomial, of degree 1", check_fundamental),
    _E("HOPF_MULT", "classify", "both", "tensor", ALL, "all types",
       "polynomials of V (x) W are the products of those of V and W", check_hopf_mult),
)

BY_ID = {e.id: e for e in REGISTRY}
DISPLAYS = {d: e.id for e in REGISTRY for d in e.displays}


def display_map() -> dict:
    """{display slug: identity id}; raises if a display is claimed by two entries."""
    seen = {}
    for e in REGISTRY:
        for d in e.displays:
            if d in seen:
                raise ValueError(f"display {d!r} mapped to {seen[d]} and {e.id}")
            seen[d] = e.id
    return seen


def registry_listing():
    """[(id, realm, applicability, anchor)] in registry order."""
    return [(e.id, e.realm, e.applicability, e.anchor) for e in REGISTRY]


# ---------------------------------------------------------------------------
# running


def _result(entry_id, status, witness, params, t0, t, realm):
    if status == FAIL and not witness:
        witness = {"reason": "identity does not hold"}
    return CheckResult(entry_id, status, witness, params, (time.perf_counter() - t0) * 1000,
                       t.family, t.n, realm)


def _run_entry(e: IdentityRegistryEntry, job: Job) -> CheckResult:
    t0 = time.perf_counter()
    params = {}
    if job.V is not None:
        params["module"] = job.V.label
    if e.scope != "type":
        params["note"] = ON_MODULE
    if not e.in_realm(job.realm):
        return _result(e.id, SKIPPED, {"reason": f"not defined in the {job.realm} realm"}, params, t0, job.t, job.realm)
    if not e.applies(job.t):
        return _result(e.id, SKIPPED, {"reason": f"applies to {e.applicability}"}, params, t0, job.t, job.realm)
    try:
        w = e.check(job)
    except NotApplicable as exc:
        return _result(e.id, SKIPPED, {"reason": str(exc)}, params, t0, job.t, job.realm)
    except (NotHighestWeight, CurrentExtractionError, NoSolutionUpToDegree, DegreeMismatch) as exc:
        return _result(e.id, FAIL, {"reason": f"{type(exc).__name__}: {exc}"}, params, t0, job.t, job.realm)
    except Exception as exc:  # recorded, never raised
        return _result(e.id, ERROR, {"error": f"{type(exc).__name__}: {exc}"}, params, t0, job.t, job.realm)
    if e.suite == "classify" and "polys" in job.memo:
        params.update(_poly_params(job))
    return _result(e.id, FAIL if w else PASS, w, params, t0, job.t, job.realm)


def run_identity(V: EvalModule, identity_id: str, order: int = 6, dmax: int | None = None,
                 indices=None, raise_on_fail: bool = False) -> CheckResult:
    """Run one registry entry on a module; ``indices`` restricts KPT to one (k, i, j)."""
    e = BY_ID.get(identity_id.upper())
    if e is None:
        raise KeyError(f"unknown identity {identity_id!r}")
    job = Job(V.type, V.realm, V if e.scope != "type" else None, order, dmax)
    if e.scope != "type" and job.ctx is None:
        job.ctx = ModuleContext(V, order)
    if indices is not None:
        job.memo["indices"] = tuple(indices)
    if e.scope == "tensor" and not V.factors:
        r = _result(e.id, SKIPPED, {"reason": "needs a tensor product module"}, {"module": V.label},
                    time.perf_counter(), V.type, V.realm)
    elif e.scope == "vector" and V.factors:
        r = _result(e.id, SKIPPED, {"reason": "runs on vector modules"}, {"module": V.label},
                    time.perf_counter(), V.type, V.realm)
    else:
        r = _run_entry(e, job)
    if raise_on_fail and r.status == FAIL:
        raise IdentityFailed(r)
    return r


def run_drinfeld_suite(t: LieTypeData, currents, serre_window: int = 2) -> list:
    """Check every relation of the Drinfeld presentation on extracted currents."""
    t0 = time.perf_counter()
    if hasattr(currents, "kappa"):
        rel = check_yangian_relations(t, currents, serre_window)
        realm = YANGIAN
        prefix = "Y_" if currents.kind == "yangian" else "APPA_"
        rel = {prefix + k[2:]: v for k, v in rel.items()}
    else:
        rel = check_qaff_relations(t, currents, serre_window)
        realm = QAFFINE
    out = []
    for cid, w in rel.items():
        out.append(_result(cid, FAIL if w else PASS, w, {"order": currents.order}, t0, t, realm))
    return out


def _modules(t, realm, evals):
    """Vector modules in evaluation order, then tensor products of consecutive pairs.

    A single evaluation point a is paired with a + 2.
    """
    vecs = [vector_module(t, realm, a) for a in evals]
    if len(vecs) == 1:
        pairs = [(vecs[0], vector_module(t, realm, Fraction(evals[0]) + 2))]
    else:
        pairs = list(zip(vecs, vecs[1:]))
    return vecs, [tensor_module(V, W) for V, W in pairs]


def select_entries(suites):
    """(entries, unknown names) for a list of suite names or identity ids."""
    chosen, unknown = [], []
    for name in suites:
        key = name.strip()
        if not key:
            continue
        if key.lower() in SUITES:
            chosen.extend(e.id for e in REGISTRY if e.suite == key.lower())
        elif key.upper() in BY_ID:
            chosen.append(key.upper())
        else:
            unknown.append(key)
    order = {e.id: k for k, e in enumerate(REGISTRY)}
    return sorted(set(chosen), key=order.__getitem__), unknown


def spot_points(seed, count: int = 2) -> tuple:
    """Random rational v values for extra RLL spot checks; empty without a seed."""
    if seed is None:
        return ()
    rng = random.Random(seed)
    return tuple(Fraction(rng.randint(-60, 60), rng.randint(1, 9)) for _ in range(count))


def _run_group(args):
    t_spec, realm, ids, order, evals, dmax, serre_window, spots = args
    t = build_type(*t_spec)
    entries = [BY_ID[i] for i in ids]
    out = []
    base = Job(t, realm, None, order, dmax, serre_window, spots)
    for e in entries:
        if e.scope == "type":
            out.append(_run_entry(e, base))
    module_entries = [e for e in entries if e.scope != "type"]
    if not module_entries:
        return out
    if realm == YANGIAN and t.family == "A":
        for e in module_entries:
            out.append(CheckResult(e.id, SKIPPED, {"reason": "no Yangian modules for type A"}, {}, 0.0,
                                   t.family, t.n, realm))
        return out
    if not any(e.in_realm(realm) and e.applies(t) for e in module_entries):
        for e in module_entries:
            out.append(_run_entry(e, base))
        return out
    try:
        vecs, tens = _modules(t, realm, evals)
    except Exception as exc:
        for e in module_entries:
            out.append(CheckResult(e.id, ERROR, {"error": f"module construction: {exc}"}, {}, 0.0,
                                   t.family, t.n, realm))
        return out
    jobs = [(V, False) for V in vecs] + [(V, True) for V in tens]
    for V, is_tensor in jobs:
        job = Job(t, realm, V, order, dmax, serre_window, spots)
        for e in module_entries:
            if e.scope == "vector" and is_tensor or e.scope == "tensor" and not is_tensor:
                continue
            out.append(_run_entry(e, job))
    return out


def thread_cap() -> int:
    try:
        cap = int(os.environ.get("QAV_THREADS", "1"))
    except ValueError:
        cap = 1
    return max(1, min(cap, os.cpu_count() or 1))


def run_all(types, suites, config=None) -> list:
    """Run the selected suites on every type and realm; results in a deterministic order."""
    order = getattr(config, "trunc", 6)
    evals = list(getattr(config, "evals", None) or [Fraction(5)])
    dmax = getattr(config, "dmax", None)
    realms = list(getattr(config, "realms", None) or REALMS)
    serre_window = getattr(config, "serre_window", 2)
    spots = spot_points(getattr(config, "seed", None))
    ids, unknown = select_entries(suites)
    results = [CheckResult(name, ERROR, {"reason": "unknown suite or identity"}) for name in unknown]
    if not ids:
        return results
    groups = []
    for t in types:
        for realm in realms:
            groups.append(((t.family, t.n), realm, ids, order, evals, dmax, serre_window, spots))
    workers = min(thread_cap(), len(groups))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_run_group, groups))
    else:
        chunks = [_run_group(g) for g in groups]
    for chunk in chunks:
        results.extend(chunk)
    return results


def summarize(results) -> dict:
    counts = {PASS: 0, FAIL: 0, SKIPPED: 0, ERROR: 0}
    for r in results:
        counts[r.status] = counts.get(r.status, 0) + 1
    return counts
