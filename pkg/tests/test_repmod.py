from fractions import Fraction

import pytest
import sympy as sp
from conftest import U, lie, ratfun_to_sympy, sympy_equal, sympy_rational_R, tmod, vmod
from hypothesis import given
from hypothesis import strategies as st

from qav.exactalg import Op, OpPoly, PolyU, RatFun, q
from qav.repmod import (
    QAFFINE,
    YANGIAN,
    EvalModule,
    NormalizationViolation,
    OpRatMat,
    SignTwist,
    TypeMismatch,
    UnsupportedTwist,
    apply_mu_f,
    apply_sign_twist,
    check_defining_relations,
    counit_module,
    inverse_L,
    rll_violation,
    unitarity_scalar,
    vector_module,
    zero_mode_violation,
)

u = RatFun.u()


def statuses(V, **kw):
    return {r.id: r.status for r in check_defining_relations(V, **kw)}


def test_vector_module_label_and_params():
    V = vector_module(lie("B", 1), YANGIAN, 5)
    assert V.label == "V(5/1·s^0)"
    assert V.params["a"] == "5/1·s^0"
    assert (V.N, V.d) == (3, 3)


@pytest.mark.parametrize("fam, n", [("B", 1), ("C", 2), ("D", 2)])
@pytest.mark.parametrize("realm", [YANGIAN, QAFFINE])
def test_vector_module_relations(fam, n, realm):
    got = statuses(vmod(fam, n, realm))
    assert got and set(got.values()) == {"PASS"}


def test_type_a_qaffine_has_no_unitarity():
    got = statuses(vmod("A", 2, QAFFINE))
    assert got == {"RLL_PP": "PASS", "RLL_MM": "PASS", "RLL_PM": "PASS", "ZERO_MODES": "PASS"}


def test_type_a_has_no_yangian_module():
    with pytest.raises(TypeMismatch):
        vector_module(lie("A", 2), YANGIAN, 5)


@pytest.mark.parametrize("realm", [YANGIAN, QAFFINE])
def test_tensor_module_relations(realm):
    W = tmod("B", 1, realm)
    assert W.d == 9 and len(W.factors) == 2
    assert set(statuses(W).values()) == {"PASS"}


@given(st.sampled_from([Fraction(2), Fraction(-3), Fraction(7, 2)]), st.sampled_from([YANGIAN, QAFFINE]))
def test_rll_holds_for_any_evaluation_point(a, realm):
    assert rll_violation(vector_module(lie("B", 1), realm, a), extra_points=(Fraction(11, 3),)) is None


@pytest.mark.parametrize("realm", [YANGIAN, QAFFINE])
def test_counit_module(realm):
    assert set(statuses(counit_module(lie("C", 2), realm)).values()) == {"PASS"}


@pytest.mark.parametrize("fam, n", [("B", 1), ("C", 2)])
def test_yangian_unitarity_scalar_matches_sympy(fam, n):
    t = lie(fam, n)
    a = 5
    z, w = unitarity_scalar(vmod(fam, n, YANGIAN, a))
    assert w is None
    N = t.N
    kap = sp.Rational(t.kappa.numerator, t.kappa.denominator)
    A, B = sympy_rational_R(t, U + kap - a), sympy_rational_R(t, U - a)

    def blk(M, i, j):
        return M[i * N:(i + 1) * N, j * N:(j + 1) * N]

    prod = sp.zeros(N, N)
    for k in range(N):
        sgn = t.eps(1) * t.eps(k + 1)
        prod += sgn * blk(A, t.p(k + 1) - 1, t.p(1) - 1) * blk(B, k, 0)
    assert sympy_equal(ratfun_to_sympy(z), prod[0, 0])
    assert prod[0, 1] == 0 or sp.simplify(prod[0, 1]) == 0


def test_mu_f_scales_unitarity():
    t = lie("B", 1)
    V = vmod("B", 1, YANGIAN)
    f = (u - 2) / (u - 3)
    z0, _ = unitarity_scalar(V)
    z1, _ = unitarity_scalar(apply_mu_f(V, f))
    shifted = (u + t.kappa - 2) / (u + t.kappa - 3)
    assert z1 == z0 * f * shifted
    assert set(statuses(apply_mu_f(V, f)).values()) == {"PASS"}


@pytest.mark.parametrize("realm, f", [
    (YANGIAN, (u - 2) / (u - 4) * RatFun.const(2)),
    (QAFFINE, RatFun.const(q)),
    (QAFFINE, u / (u - 1)),
])
def test_mu_f_normalization_rejected(realm, f):
    with pytest.raises(NormalizationViolation):
        apply_mu_f(vmod("B", 1, realm), f)


def test_mu_f_trivial_is_identity():
    V = vmod("C", 2, QAFFINE)
    assert apply_mu_f(V, RatFun.const(1)).L == V.L
    W = apply_mu_f(V, (u - 2) / (u - RatFun.const(q * q) * 2) * RatFun.const(q))
    assert set(statuses(W).values()) == {"PASS"}


def test_sign_twist():
    V = vmod("B", 1, QAFFINE)
    assert apply_sign_twist(V, SignTwist((1, 1, 1))).L == V.L
    assert set(statuses(apply_sign_twist(V, SignTwist((-1, 1, -1)))).values()) == {"PASS"}
    with pytest.raises(UnsupportedTwist):
        apply_sign_twist(V, SignTwist((-1, 1, 1)))
    with pytest.raises(UnsupportedTwist):
        apply_sign_twist(V, SignTwist((1, 1, 1), antisymmetric=True))


@pytest.mark.parametrize("realm", [YANGIAN, QAFFINE])
def test_inverse_L_is_inverse(realm):
    V = vmod("B", 1, realm)
    Li = inverse_L(V.L)
    N, d = V.N, V.d
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            acc = OpPoly(d, [])
            for k in range(1, N + 1):
                acc = acc + V.L.entry(i, k) * Li.entry(k, j)
            expected = _identity_poly(V.L.den * Li.den, d) if i == j else OpPoly(d, [])
            assert acc.first_difference(expected) is None


def _identity_poly(p, d):
    return OpPoly(d, [Op.identity(d).scale(c) for c in p.c])


def _corrupt(V: EvalModule, key, factor) -> EvalModule:
    num = dict(V.L.num)
    num[key] = num[key].scale_poly(factor)
    return EvalModule(V.type, V.realm, OpRatMat(V.N, V.d, V.L.den, num), "corrupt", V.params)


@pytest.mark.parametrize("realm, rel", [(YANGIAN, "RTT"), (QAFFINE, "RLL_PP")])
def test_corrupted_entry_fails(realm, rel):
    bad = _corrupt(vmod("B", 1, realm), (1, 2), PolyU.const(2))
    got = statuses(bad)
    assert got[rel] == "FAIL"


def test_zero_mode_negative_control():
    V = vmod("B", 1, QAFFINE)
    assert zero_mode_violation(V.L) is None
    assert zero_mode_violation(V.L.scale(RatFun.const(q))) is not None
