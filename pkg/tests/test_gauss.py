from fractions import Fraction

import pytest
from conftest import vmod
from hypothesis import assume, given
from hypothesis import strategies as st

from qav.exactalg import INF_PT, QS, Op, OpSeries
from qav.gauss import (
    EHF,
    FHE,
    QuasiMinorSpec,
    SingularLeadingMinor,
    gauss_decompose,
    gauss_qdet,
    gauss_route_check,
    gaussian_generators,
    invert_flat,
    invert_unit_triangular,
    ldu,
    opposite_generators,
    quasideterminant,
    quasidet,
    reconstruct,
    series_dict_difference,
    triangular_matrices,
)
from qav.repmod import QAFFINE, YANGIAN

ORDER = 3


def const(x, d=1):
    return OpSeries(INF_PT, [Op.scalar(d, QS(x))] + [Op.zero(d)] * ORDER, ORDER, d)


def scalar_matrix(rows):
    return {(i + 1, j + 1): const(x) for i, r in enumerate(rows) for j, x in enumerate(r)}


def value(x: OpSeries):
    return x.c[0].entry(0, 0)


def test_two_by_two_fhe():
    G = ldu(scalar_matrix([[2, 3], [5, 7]]), FHE)
    assert value(G.h[1]) == QS(2)
    assert value(G.e[(1, 2)]) == QS(Fraction(3, 2))
    assert value(G.f[(2, 1)]) == QS(Fraction(5, 2))
    assert value(G.h[2]) == QS(7 - Fraction(15, 2))


def test_two_by_two_ehf():
    G = ldu(scalar_matrix([[2, 3], [5, 7]]), EHF)
    assert value(G.h[2]) == QS(7)
    assert value(G.e[(1, 2)]) == QS(Fraction(3, 7))
    assert value(G.f[(2, 1)]) == QS(Fraction(5, 7))
    assert value(G.h[1]) == QS(2 - Fraction(15, 7))


def test_quasideterminant_two_by_two():
    M = scalar_matrix([[2, 3], [5, 7]])
    assert value(quasideterminant(M, [1, 2], [1, 2], (2, 2))) == QS(7 - Fraction(15, 2))
    assert value(quasideterminant(M, [1, 2], [1, 2], (1, 2))) == QS(3 - Fraction(14, 5))


def test_singular_leading_minor():
    with pytest.raises(SingularLeadingMinor):
        ldu(scalar_matrix([[0, 1], [1, 0]]), FHE)


def test_quasi_minor_spec_validation():
    with pytest.raises(ValueError):
        QuasiMinorSpec((1, 2), (1, 2), (3, 1))
    with pytest.raises(ValueError):
        QuasiMinorSpec((2, 1), (1, 2), (1, 1))


@st.composite
def op_matrices(draw, n=3, d=2):
    """n x n matrix of d x d operator series at infinity with random rational coefficients."""
    entry = st.integers(min_value=-3, max_value=3)
    M = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            coeffs = [Op.from_dense([[draw(entry) for _ in range(d)] for _ in range(d)]) for _ in range(ORDER + 1)]
            if i == j:
                coeffs[0] = coeffs[0] + Op.scalar(d, QS(7))
            M[(i, j)] = OpSeries(INF_PT, coeffs, ORDER, d)
    return M


@given(op_matrices(), st.sampled_from([FHE, EHF]))
def test_routes_agree_and_reconstruct(M, orientation):
    try:
        G = ldu(M, orientation)
    except SingularLeadingMinor:
        assume(False)
    assert series_dict_difference(reconstruct(G, M[(1, 1)]), M) is None
    w, _ = gauss_route_check(M, orientation)
    assert w is None


@given(op_matrices())
def test_path_sum_inverse_matches_flat_inverse(M):
    try:
        G = ldu(M, FHE)
    except SingularLeadingMinor:
        assume(False)
    lo, _, up = triangular_matrices(G, M[(1, 1)])
    flat_up, flat_lo = invert_flat(up, 3), invert_flat(lo, 3)
    path_up = invert_unit_triangular(G.e, 3, upper=True)
    path_lo = invert_unit_triangular(G.f, 3, upper=False)
    assert series_dict_difference(path_up, {k: v for k, v in flat_up.items() if k[0] < k[1]}) is None
    assert series_dict_difference(path_lo, {k: v for k, v in flat_lo.items() if k[0] > k[1]}) is None


@given(op_matrices())
def test_quasidet_invariant_under_reordering(M):
    try:
        a = quasideterminant(M, [1, 2, 3], [1, 2, 3], (1, 1))
        b = quasideterminant(M, [3, 1, 2], [2, 3, 1], (1, 1))
    except SingularLeadingMinor:
        assume(False)
    assert a.first_difference(b) is None
    assert quasidet(M, QuasiMinorSpec((1, 2, 3), (1, 2, 3), (1, 1))).first_difference(a) is None


@given(op_matrices())
def test_perturbed_factor_breaks_reconstruction(M):
    try:
        G = ldu(M, FHE)
    except SingularLeadingMinor:
        assume(False)
    G.e[(1, 2)] = G.e[(1, 2)] + OpSeries(INF_PT, [Op.zero(2), Op.unit(2, 0, 1)] + [Op.zero(2)] * (ORDER - 1),
                                         ORDER, 2)
    assert series_dict_difference(reconstruct(G, M[(1, 1)]), M) is not None


@pytest.mark.parametrize("realm", [YANGIAN, QAFFINE])
@pytest.mark.parametrize("fam, n", [("B", 1), ("C", 2)])
def test_module_routes_agree(fam, n, realm):
    M = vmod(fam, n, realm).L.series(INF_PT, 4)
    for orientation in (FHE, EHF):
        assert gauss_route_check(M, orientation)[0] is None
        G = gauss_qdet(M, orientation)
        assert series_dict_difference(reconstruct(G, M[(1, 1)]), M) is None


def test_module_entry_points():
    V = vmod("B", 1, QAFFINE)
    G = gaussian_generators(V, order=4)
    Gbar = opposite_generators(V, order=4)
    assert G.orientation == FHE and Gbar.orientation == EHF
    assert gauss_decompose(V.L.series(INF_PT, 4), FHE).h[1].first_difference(G.h[1]) is None
    lead = G.h[1].c[0]
    assert all(set(row) == {r} for r, row in lead.rows.items())
    assert lead * lead.inverse() == Op.identity(3)
