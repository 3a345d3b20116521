"""Exact linear solving over Q(s) and Drinfeld-polynomial equations."""

from __future__ import annotations

from fractions import Fraction

from . import kernels as K
from .poly import PolyU, RatFun
from .scalar import QS, coerce_triple

_Z = K.ZERO
_O = K.ONE
qadd, qsub, qmul, qinv, qneg = K.qs_add, K.qs_sub, K.qs_mul, K.qs_inv, K.qs_neg


class NoSolutionUpToDegree(ArithmeticError):
    pass


class DegreeMismatch(ArithmeticError):
    pass


def row_reduce(rows, ncols):
    """Reduced row echelon form of a list of sparse rows {col: triple}.

    Returns (reduced rows, pivot columns) with each pivot normalized to 1.
    """
    rows = [dict(r) for r in rows if r]
    pivots = []
    out = []
    for col in range(ncols):
        p = None
        for idx, r in enumerate(rows):
            if col in r:
                if p is None or len(r) < len(rows[p]):
                    p = idx
        if p is None:
            continue
        prow = rows.pop(p)
        inv = qinv(prow[col])
        prow = {j: qmul(t, inv) for j, t in prow.items()}
        for r in rows + out:
            f = r.get(col)
            if f is None:
                continue
            for j, t in prow.items():
                v = qsub(r.get(j, _Z), qmul(f, t))
                if v[1]:
                    r[j] = v
                else:
                    r.pop(j, None)
        rows = [r for r in rows if r]
        out.append(prow)
        pivots.append(col)
    return out, pivots, rows


def nullspace(rows, ncols):
    """Basis (list of {col: triple}) of the right kernel of a sparse matrix."""
    red, pivots, _ = row_reduce(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        vec = {f: _O}
        for r, pc in zip(red, pivots):
            t = r.get(f)
            if t is not None:
                vec[pc] = qneg(t)
        basis.append(vec)
    return basis


def solve_linear(rows, rhs, ncols):
    """One solution x of A x = b (sparse rows, rhs triples) or None if inconsistent."""
    aug = []
    for r, b in zip(rows, rhs):
        rr = dict(r)
        if b[1]:
            rr[ncols] = b
        if rr:
            aug.append(rr)
    red, pivots, _ = row_reduce(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [_Z] * ncols
    for r, pc in zip(red, pivots):
        x[pc] = r.get(ncols, _Z)
    return x


def _poly_rows(polys, nunk):
    """Linear system 'sum_k x_k polys[k] = -polys[nunk]' as sparse rows by u-degree."""
    maxdeg = max((len(p.c) for p in polys), default=0)
    rows, rhs = [], []
    for deg in range(maxdeg):
        row = {}
        for k in range(nunk):
            c = polys[k].c
            if deg < len(c) and c[deg][1]:
                row[k] = c[deg]
        c = polys[nunk].c
        b = qneg(c[deg]) if deg < len(c) else _Z
        rows.append(row)
        rhs.append(b)
    return rows, rhs


def solve_drinfeld_additive(rho: RatFun, c, dmax: int) -> PolyU:
    """Smallest-degree monic P with P(u + c)/P(u) = rho(u)."""
    c = QS(Fraction(c)) if not isinstance(c, QS) else c
    if c.is_zero():
        raise ValueError("shift c must be nonzero")
    if rho.num.deg != rho.den.deg:
        raise DegreeMismatch("numerator and denominator degrees differ")
    num, den = rho.num, rho.den
    for d in range(dmax + 1):
        # unknown coefficients p_0..p_{d-1}; p_d = 1
        polys = []
        for k in range(d + 1):
            mono = PolyU([0] * k + [1])
            polys.append(mono.shift_add(c) * den - mono * num)
        rows, rhs = _poly_rows(polys, d)
        x = solve_linear(rows, rhs, d)
        if x is not None:
            return PolyU(list(x) + [_O])
    raise NoSolutionUpToDegree(f"no monic solution up to degree {dmax}")


def solve_drinfeld_multiplicative(rho: RatFun, gamma, dmax: int) -> PolyU:
    """Smallest-degree P with P(0) = 1 and gamma**deg P * P(u gamma**-2)/P(u) = rho(u)."""
    g = coerce_triple(gamma)
    if not g[1]:
        raise ValueError("gamma must be invertible")
    num, den = rho.num, rho.den
    gi2 = qinv(qmul(g, g))
    for d in range(dmax + 1):
        gd = QS(g) ** d
        # unknowns p_1..p_d (index k-1); p_0 = 1
        polys = []
        for k in list(range(1, d + 1)) + [0]:
            mono = PolyU([0] * k + [1])
            polys.append(mono.shift_mul(gi2) * den * gd - mono * num)
        rows, rhs = _poly_rows(polys, d)
        x = solve_linear(rows, rhs, d)
        if x is not None and (d == 0 or x[d - 1][1]):
            return PolyU([_O] + list(x))
    raise NoSolutionUpToDegree(f"no solution with constant term 1 up to degree {dmax}")


def default_dmax(rho: RatFun) -> int:
    return 2 * max(rho.num.deg, rho.den.deg, 0) + 8
