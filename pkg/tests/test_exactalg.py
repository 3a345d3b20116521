from fractions import Fraction

import pytest
import sympy as sp
from conftest import S, U, laurent_qs, nonzero_qs, poly_to_sympy, qs_to_sympy, qs_values, ratfun_to_sympy
from conftest import ratfuns, sympy_equal, unit_ratfuns
from hypothesis import given, settings
from hypothesis import strategies as st

from qav.exactalg import (
    INF_PT,
    ZERO_PT,
    ConstantTermNotOne,
    DegreeMismatch,
    NoSolutionUpToDegree,
    NonSquareConstantTerm,
    PolyU,
    QS,
    RatFun,
    TruncSeries,
    format_qs,
    parse_qs,
    q,
    qbinom,
    qnum,
    ratfun_shift_add,
    ratfun_shift_mul,
    s,
    series_expand,
    series_functional_sqrt_add,
    series_functional_sqrt_mul,
    solve_drinfeld_additive,
    solve_drinfeld_multiplicative,
)
from qav.exactalg import _pykernels as PY
from qav.exactalg import kernels as K
from qav.exactalg.solvers import default_dmax

u = RatFun.u()


# ---------------------------------------------------------------------------
# scalars against the sympy oracle


@given(qs_values(), qs_values())
def test_qs_add_mul_match_sympy(a, b):
    assert sympy_equal(qs_to_sympy(a + b), qs_to_sympy(a) + qs_to_sympy(b))
    assert sympy_equal(qs_to_sympy(a * b), qs_to_sympy(a) * qs_to_sympy(b))


@given(qs_values(), nonzero_qs())
def test_qs_division_matches_sympy(a, b):
    assert sympy_equal(qs_to_sympy(a / b), qs_to_sympy(a) / qs_to_sympy(b))


@given(qs_values(), qs_values(), qs_values())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if not a.is_zero():
        assert a * a.inv() == QS(1)


@given(qs_values(), nonzero_qs())
def test_canonical_form_is_unique(f, g):
    assert (f * g) / g == f
    assert hash((f * g) / g) == hash(f)


@given(qs_values())
def test_format_parse_round_trip(x):
    assert parse_qs(format_qs(x)) == x


@given(qs_values(), st.fractions(min_value=Fraction(1, 3), max_value=Fraction(7, 2)))
def test_subs_matches_sympy(x, v):
    expr = sp.together(qs_to_sympy(x))
    sv = sp.Rational(v.numerator, v.denominator)
    if sp.denom(expr).subs(S, sv) != 0:
        val = sp.Rational(expr.subs(S, sv))
        assert x.subs(v) == Fraction(int(val.p), int(val.q))


def test_q_is_s_squared():
    assert q == s * s
    assert QS.qpow(Fraction(1, 2)) == s


@pytest.mark.parametrize("k, r, expected", [
    (1, None, QS(1)),
    (2, None, q + q.inv()),
    (2, 1, q + q.inv()),
])
def test_qnum_qbinom(k, r, expected):
    assert (qnum(k, q) if r is None else qbinom(k, r, q)) == expected


@given(st.integers(min_value=1, max_value=6))
def test_qnum_matches_sympy(k):
    qq = S ** 2
    assert sympy_equal(qs_to_sympy(qnum(k, q)), (qq ** k - qq ** -k) / (qq - 1 / qq))


# ---------------------------------------------------------------------------
# rational functions


@given(ratfuns(), ratfuns())
@settings(max_examples=40, deadline=None)
def test_ratfun_arithmetic_matches_sympy(f, g):
    assert sympy_equal(ratfun_to_sympy(f + g), ratfun_to_sympy(f) + ratfun_to_sympy(g))
    assert sympy_equal(ratfun_to_sympy(f * g), ratfun_to_sympy(f) * ratfun_to_sympy(g))


@given(ratfuns(), ratfuns().filter(lambda g: not g.is_zero()))
@settings(max_examples=40, deadline=None)
def test_ratfun_canonical(f, g):
    assert (f * g) / g == f
    assert f.den.lc() == QS(1)


@pytest.mark.parametrize("f, c, expected", [
    (u * u, 1, u * u + 2 * u + 1),
    (1 / u, 0, 1 / u),
    (1 / (u - 5 - Fraction(1, 2)), Fraction(1, 2), 1 / (u - 5)),
])
def test_shift_add_examples(f, c, expected):
    assert ratfun_shift_add(f, c) == expected


@pytest.mark.parametrize("f, halfpow, expected", [
    (u, 1, u * RatFun.const(q)),
    (1 / (1 + u), -1, 1 / (1 + u * RatFun.const(q.inv()))),
    (u + RatFun.const(q), Fraction(1, 2), u * RatFun.const(s) + RatFun.const(s * s)),
])
def test_shift_mul_examples(f, halfpow, expected):
    assert ratfun_shift_mul(f, halfpow) == expected


@given(ratfuns(), st.fractions(min_value=-3, max_value=3, max_denominator=2))
@settings(max_examples=30, deadline=None)
def test_shift_add_matches_sympy(f, c):
    assert sympy_equal(ratfun_to_sympy(ratfun_shift_add(f, c)), ratfun_to_sympy(f).subs(U, U + c))


# ---------------------------------------------------------------------------
# series


def test_expand_examples():
    assert series_expand(1 / (1 - u), ZERO_PT, 3).c == [QS(1).t] * 4
    assert series_expand(RatFun.const(1), INF_PT, 5).c == [QS(1).t] + [QS(0).t] * 5


def test_expand_at_infinity_long_division():
    a = 5
    got = series_expand((u - a - 1) / (u - a), INF_PT, 2)
    t = sp.Symbol("t")
    oracle = sp.series(((1 / t - a - 1) / (1 / t - a)), t, 0, 3).removeO()
    expected = [oracle.coeff(t, k) for k in range(3)]
    assert [QS(c).to_fraction() for c in got.c] == expected == [1, -1, -a]


@given(unit_ratfuns(), unit_ratfuns(), st.sampled_from([ZERO_PT, INF_PT]))
@settings(max_examples=30, deadline=None)
def test_expand_is_multiplicative(f, g, point):
    k = 5
    assert series_expand(f * g, point, k) == series_expand(f, point, k) * series_expand(g, point, k)


@given(unit_ratfuns())
@settings(max_examples=20, deadline=None)
def test_expand_matches_sympy_at_zero(f):
    k = 4
    oracle = sp.series(ratfun_to_sympy(f), U, 0, k + 1).removeO()
    got = series_expand(f, ZERO_PT, k)
    assert [QS(c).to_fraction() for c in got.c] == [oracle.coeff(U, j) for j in range(k + 1)]


# ---------------------------------------------------------------------------
# Drinfeld polynomial solvers


@pytest.mark.parametrize("rho, c, expected", [
    ((u + 1) / u, 1, PolyU([0, 1])),
    ((u + 1) * (u + 3) / (u * (u + 2)), 1, PolyU([0, 2, 1])),
    (RatFun.const(1), Fraction(1, 2), PolyU([1])),
])
def test_solve_additive_examples(rho, c, expected):
    assert solve_drinfeld_additive(rho, c, default_dmax(rho)) == expected


@pytest.mark.parametrize("rho, gamma, expected", [
    (RatFun.const(q) * (1 + u * RatFun.const(q ** -2)) / (1 + u), q, PolyU([1, 1])),
    (RatFun.const(1), q * q, PolyU([1])),
])
def test_solve_multiplicative_examples(rho, gamma, expected):
    assert solve_drinfeld_multiplicative(rho, gamma, default_dmax(rho)) == expected


@given(st.lists(st.fractions(min_value=-6, max_value=6, max_denominator=3), min_size=1, max_size=3),
       st.sampled_from([Fraction(1), Fraction(1, 2), Fraction(2)]))
@settings(max_examples=25, deadline=None)
def test_additive_solution_substitutes_back_and_is_minimal(roots, c):
    P = PolyU([1])
    for r in roots:
        P = P * PolyU([-r, 1])
    rho = RatFun(P.shift_add(QS(c)), P)
    sol = solve_drinfeld_additive(rho, c, default_dmax(rho))
    assert RatFun(sol.shift_add(QS(c)), sol) == rho
    assert sol.lc() == QS(1)
    if sol.deg > 0:
        with pytest.raises(NoSolutionUpToDegree):
            solve_drinfeld_additive(rho, c, sol.deg - 1)


@given(st.lists(st.integers(min_value=1, max_value=7), min_size=1, max_size=2),
       st.sampled_from([q, s, q * q]))
@settings(max_examples=20, deadline=None)
def test_multiplicative_solution_substitutes_back(roots, gamma):
    P = PolyU([1])
    for r in roots:
        P = P * PolyU([1, Fraction(-1, r)])
    rho = RatFun(P.shift_mul((gamma * gamma).inv()) * PolyU.const(gamma ** P.deg), P)
    sol = solve_drinfeld_multiplicative(rho, gamma, default_dmax(rho))
    assert sol.coeff(0) == QS(1)
    assert RatFun(sol.shift_mul((gamma * gamma).inv()) * PolyU.const(gamma ** sol.deg), sol) == rho


def test_additive_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        solve_drinfeld_additive(u, 1, 4)


# ---------------------------------------------------------------------------
# functional square roots


def test_sqrt_mul_constant():
    z = TruncSeries(ZERO_PT, [q * q], 4)
    assert series_functional_sqrt_mul(z, q ** -6) == TruncSeries(ZERO_PT, [q], 4)


def test_sqrt_mul_linear_factor():
    xi = q ** -6
    z = series_expand(RatFun.const(q * q) * (1 + u) * (1 + u * RatFun.const(xi)), ZERO_PT, 5)
    assert series_functional_sqrt_mul(z, xi) == series_expand(RatFun.const(q) * (1 + u), ZERO_PT, 5)


@given(unit_ratfuns(), st.sampled_from([q ** -3, q ** -6, q ** -4]), st.sampled_from([ZERO_PT, INF_PT]))
@settings(max_examples=25, deadline=None)
def test_sqrt_mul_remultiplies(f, xi, point):
    z = series_expand(f * f, point, 5)
    c0 = QS(z.c[0])
    if c0.monomial() is None or c0.monomial()[0] < 0:
        return
    try:
        zeta = series_functional_sqrt_mul(z, xi)
    except NonSquareConstantTerm:
        return
    assert zeta * zeta.shift_mul(xi) == z


def test_sqrt_add_examples():
    assert series_functional_sqrt_add(TruncSeries(INF_PT, [1], 5), 0) == TruncSeries(INF_PT, [1], 5)
    z = series_expand(1 + 1 / u, INF_PT, 5)
    g = series_functional_sqrt_add(z, 0)
    assert g * g * z == TruncSeries(INF_PT, [1], 5)
    t = sp.Symbol("t")
    oracle = sp.series((1 + t) ** sp.Rational(-1, 2), t, 0, 6).removeO()
    assert [QS(c).to_fraction() for c in g.c] == [oracle.coeff(t, k) for k in range(6)]


@given(st.integers(min_value=1, max_value=9), st.sampled_from([Fraction(1, 2), Fraction(3), Fraction(2)]))
@settings(max_examples=20, deadline=None)
def test_sqrt_add_resubstitutes(a, kappa):
    z = series_expand((u - a) * (u + 2 * a) / ((u - 2 * a) * (u + a)), INF_PT, 5)
    g = series_functional_sqrt_add(z, kappa)
    assert g * g.shift_add(QS(kappa)) * z == TruncSeries(INF_PT, [1], 5)


def test_sqrt_add_rejects_constant_term():
    with pytest.raises(ConstantTermNotOne):
        series_functional_sqrt_add(TruncSeries(INF_PT, [2], 3), 1)


# ---------------------------------------------------------------------------
# compiled and pure-Python kernels agree


@given(qs_values(), qs_values())
def test_backends_agree_on_scalars(a, b):
    if K.BACKEND != "cython":
        pytest.skip("compiled kernels not built")
    from qav.exactalg import _ckernels as CK

    for name in ("qs_add", "qs_sub", "qs_mul"):
        assert getattr(CK, name)(a.t, b.t) == getattr(PY, name)(a.t, b.t)
    if not b.is_zero():
        assert CK.qs_inv(b.t) == PY.qs_inv(b.t)


@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), laurent_qs()), max_size=8),
       st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), laurent_qs()), max_size=8))
def test_backends_agree_on_rows(xs, ys):
    if K.BACKEND != "cython":
        pytest.skip("compiled kernels not built")
    from qav.exactalg import _ckernels as CK

    def rows(items):
        out = {}
        for i, j, v in items:
            if not v.is_zero():
                out.setdefault(i, {})[j] = v.t
        return out
    A, B = rows(xs), rows(ys)
    assert CK.rows_mul(A, B) == PY.rows_mul(A, B)
    assert CK.rows_add(A, B) == PY.rows_add(A, B)


def test_poly_to_sympy_helper():
    assert sympy_equal(poly_to_sympy(PolyU([1, 2])), 1 + 2 * U)
