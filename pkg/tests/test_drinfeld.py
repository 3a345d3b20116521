from fractions import Fraction

import pytest
import sympy as sp
from conftest import U, lie, poly_to_sympy, sympy_equal, sympy_rational_R, tmod, vmod
from hypothesis import given
from hypothesis import strategies as st

from qav.drinfeld import (
    ModuleContext,
    NotHighestWeight,
    appendix_a_currents,
    central_z,
    check_central_lemma,
    check_hw_series,
    check_lambda_consistency,
    check_qaff_relations,
    check_sqrt_extension,
    check_yangian_relations,
    check_z_two_routes,
    check_zeta,
    drinfeld_polynomials,
    extract_a_modes,
    format_poly,
    highest_weight,
    negate_current,
    node_qaff,
    node_yangian,
    ratio_from_polynomial,
)
from qav.exactalg import INF_PT, QS, ZERO_PT, PolyU, RatFun, qnum, s, series_expand
from qav.repmod import QAFFINE, YANGIAN, EvalModule, OpRatMat, unitarity_scalar, vector_module

YSET = {"Y_CONST", "Y_KK", "Y_PAIR", "Y_K0X", "Y_KX", "Y_XX", "Y_SERRE"}
QSET = {"QA_KK", "QA_KX", "QA_AX", "QA_XX", "QA_PAIR", "QA_SERRE"}


def failing(res):
    return {k for k, w in res.items() if w is not None}


def test_node_tables():
    assert node_yangian(lie("C", 2), 2) == (2, 3, 1, Fraction(1, 2))
    assert node_yangian(lie("B", 2), 2) == (2, 3, Fraction(1, 2), 1)
    assert node_yangian(lie("D", 3), 3) == (2, 4, Fraction(1, 2), 1)
    assert node_qaff(lie("B", 1), 1)[3] == qnum(2, s) == s + s.inv()


@pytest.mark.parametrize("fam, n", [("B", 1), ("B", 2), ("C", 2), ("D", 2), ("D", 3)])
@pytest.mark.parametrize("kind", ["yangian", "appendix"])
def test_yangian_currents_satisfy_relations(fam, n, kind):
    ctx = ModuleContext(vmod(fam, n, YANGIAN), 6)
    res = check_yangian_relations(ctx.t, ctx.currents(kind))
    assert set(res) == YSET and not failing(res)


@pytest.mark.parametrize("fam, n", [("A", 2), ("B", 1), ("B", 2), ("C", 2), ("D", 2)])
def test_qaff_currents_satisfy_relations(fam, n):
    ctx = ModuleContext(vmod(fam, n, QAFFINE), 5)
    res = check_qaff_relations(ctx.t, ctx.currents("qaffine"))
    assert set(res) == QSET and not failing(res)


@pytest.mark.parametrize("realm", [YANGIAN, QAFFINE])
def test_tensor_module_currents(realm):
    ctx = ModuleContext(tmod("B", 1, realm), 4)
    if realm == YANGIAN:
        assert not failing(check_yangian_relations(ctx.t, ctx.currents("yangian")))
    else:
        assert not failing(check_qaff_relations(ctx.t, ctx.currents("qaffine")))


@pytest.mark.parametrize("fam, n", [("C", 2), ("D", 2)])
def test_sqrt_extension(fam, n):
    ctx = ModuleContext(vmod(fam, n, QAFFINE), 4)
    assert check_sqrt_extension(ctx.t, ctx.currents("qaffine")) is None


@pytest.mark.parametrize("sign", [1, -1])
def test_negated_current_breaks_pairing(sign):
    ctx = ModuleContext(vmod("C", 2, YANGIAN), 6)
    assert "Y_PAIR" in failing(check_yangian_relations(ctx.t, negate_current(ctx.currents("yangian"), sign, 1)))
    qctx = ModuleContext(vmod("C", 2, QAFFINE), 5)
    assert "QA_PAIR" in failing(check_qaff_relations(qctx.t, negate_current(qctx.currents("qaffine"), sign, 2)))


def test_swapped_cartan_currents_break_kx():
    ctx = ModuleContext(vmod("C", 2, YANGIAN), 6)
    C = ctx.currents("yangian")
    bad = negate_current(C, 1, 1)
    bad.kappa = {1: C.kappa[2], 2: C.kappa[1]}
    bad.xp = dict(C.xp)
    assert {"Y_KX", "Y_K0X"} & failing(check_yangian_relations(ctx.t, bad))


def test_a_modes():
    ctx = ModuleContext(vmod("B", 1, QAFFINE), 5)
    C = ctx.currents("qaffine")
    a = extract_a_modes(C)
    assert a and all(m != 0 for _, m in a)
    assert {m for _, m in a} == set(range(-5, 0)) | set(range(1, 6))


def test_appendix_entry_point():
    C = appendix_a_currents(vmod("B", 1, YANGIAN), 5)
    assert C.kind == "appendix" and C.rank == 1


@pytest.mark.parametrize("fam, n", [("B", 1), ("C", 2), ("D", 2), ("B", 2)])
@pytest.mark.parametrize("realm", [YANGIAN, QAFFINE])
def test_central_series(fam, n, realm):
    V = vmod(fam, n, realm)
    cs = central_z(V, 5)
    assert cs.witness is None
    z, _ = unitarity_scalar(V)
    for pt, zs in cs.z.items():
        assert zs == series_expand(z, pt, 5)
    if realm == QAFFINE:
        assert set(cs.zeta) == {ZERO_PT, INF_PT}
        for pt, zeta in cs.zeta.items():
            assert zeta * zeta.shift_mul(V.type.xi) == cs.z[pt]
    ctx = ModuleContext(V, 5)
    assert check_z_two_routes(ctx) is None
    assert check_central_lemma(ctx) is None
    if realm == QAFFINE:
        assert check_zeta(ctx) is None


def test_central_z_of_tensor_is_product():
    W = tmod("B", 1, YANGIAN)
    V5, V7 = vmod("B", 1, YANGIAN, 5), vmod("B", 1, YANGIAN, 7)
    zw = central_z(W, 4).z[INF_PT]
    assert zw == central_z(V5, 4).z[INF_PT] * central_z(V7, 4).z[INF_PT]


@pytest.mark.parametrize("fam, n", [("B", 1), ("C", 2), ("D", 3)])
@pytest.mark.parametrize("realm", [YANGIAN, QAFFINE])
def test_highest_vector_is_last_basis_vector(fam, n, realm):
    V = vmod(fam, n, realm)
    hw = highest_weight(V)
    assert hw.dim == 1 and list(hw.vector) == [V.N - 1]
    assert check_hw_series(ModuleContext(V, 5), hw) is None


def test_no_highest_vector():
    V = vmod("B", 1, YANGIAN)
    num = {k: p for k, p in V.L.num.items()}
    for key in [(i, j) for i in range(1, 4) for j in range(1, 4) if i < j]:
        num[key] = num[(1, 1)]
    with pytest.raises(NotHighestWeight):
        highest_weight(EvalModule(V.type, V.realm, OpRatMat(3, 3, V.L.den, num), "bad"))


@pytest.mark.parametrize("fam, n", [("B", 1), ("B", 2), ("C", 2), ("D", 2)])
def test_yangian_weights_match_sympy(fam, n):
    t = lie(fam, n)
    a = 5
    hw = highest_weight(vmod(fam, n, YANGIAN, a))
    R = sympy_rational_R(t, U - a)
    N = t.N
    for i in range(N):
        lam = R[i * N + N - 1, i * N + N - 1]
        got = poly_to_sympy(hw.lam[i].num) / poly_to_sympy(hw.lam[i].den)
        assert sympy_equal(got, lam)


@pytest.mark.parametrize("fam, n, expected", [
    ("B", 1, [["55/2·s^0", "-21/2·s^0", "1/1·s^0"]]),
    ("B", 2, [["-13/2·s^0", "1/1·s^0"], ["1/1·s^0"]]),
    ("C", 2, [["-8/1·s^0", "1/1·s^0"], ["1/1·s^0"]]),
    ("D", 2, [["-6/1·s^0", "1/1·s^0"], ["-6/1·s^0", "1/1·s^0"]]),
])
def test_yangian_drinfeld_polynomials(fam, n, expected):
    t = lie(fam, n)
    lam = highest_weight(vmod(fam, n, YANGIAN)).lam
    P = drinfeld_polynomials(t, YANGIAN, lam)
    assert [format_poly(p) for p in P] == expected


@pytest.mark.parametrize("fam, n", [("B", 1), ("B", 2), ("C", 2), ("D", 2), ("D", 3)])
@pytest.mark.parametrize("realm", [YANGIAN, QAFFINE])
def test_polynomials_reproduce_weight_ratios(fam, n, realm):
    from qav.drinfeld import ratio_nodes

    t = lie(fam, n)
    V = vmod(fam, n, realm)
    lam = highest_weight(V).lam
    for (i, a, b), P in zip(ratio_nodes(t), drinfeld_polynomials(t, realm, lam)):
        assert ratio_from_polynomial(t, realm, i, P) == lam[a - 1] / lam[b - 1]
        assert P.coeff(0) == QS(1) if realm == QAFFINE else P.lc() == QS(1)
    assert check_lambda_consistency(t, realm, lam, ModuleContext(V).unitarity_z()) is None


def test_lambda_consistency_negative_control():
    t = lie("B", 2)
    lam = list(highest_weight(vmod("B", 2, YANGIAN)).lam)
    u = RatFun.u()
    lam[0] = lam[0] * (u - 1) / (u - 2)
    assert check_lambda_consistency(t, YANGIAN, lam, None) is not None


@given(st.sampled_from([Fraction(2), Fraction(-3), Fraction(9, 2)]))
def test_yangian_polynomial_root_tracks_evaluation_point(a):
    t = lie("C", 2)
    lam = highest_weight(vector_module(t, YANGIAN, a)).lam
    P1, P2 = drinfeld_polynomials(t, YANGIAN, lam)
    assert P2 == PolyU([1])
    assert sp.solve(poly_to_sympy(P1), U) == [sp.Rational(a.numerator, a.denominator) + 3]
