"""Gauss decompositions of operator-valued matrix series.

A matrix series is a dict ``{(i, j): OpSeries}`` with 1-based indices.  Two
orientations are supported:

* ``"FHE"``: T = F H E with F unit lower, H diagonal, E unit upper;
* ``"EHF"``: T = E H F with E unit upper, H diagonal, F unit lower.

Each orientation is computed by block elimination and, independently, by
quasideterminants of flattened minors.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations

from .exactalg.ops import Op, OpSeries, SingularOperator

FHE = "FHE"
EHF = "EHF"


class SingularLeadingMinor(ArithmeticError):
    pass


@dataclass
class GaussFactors:
    orientation: str
    N: int
    h: dict  # i -> OpSeries
    e: dict  # (i, j), i < j -> OpSeries
    f: dict  # (j, i), j > i -> OpSeries


def _inv(x: OpSeries, what: str) -> OpSeries:
    try:
        return x.inv()
    except SingularOperator as exc:
        raise SingularLeadingMinor(f"{what}: constant term not invertible") from exc


def _size(M: dict) -> int:
    return max(i for i, _ in M)


def ldu(M: dict, orientation: str = FHE) -> GaussFactors:
    """Block elimination.  FHE eliminates from the top-left corner, EHF from the bottom-right."""
    N = _size(M)
    A = dict(M)
    h, e, f = {}, {}, {}
    order = range(1, N + 1) if orientation == FHE else range(N, 0, -1)
    done = set()
    for i in order:
        done.add(i)
        rest = [j for j in range(1, N + 1) if j not in done]
        h[i] = A[(i, i)]
        hinv = _inv(h[i], f"h_{i}")
        left = {j: A[(j, i)] * hinv for j in rest}
        right = {j: hinv * A[(i, j)] for j in rest}
        for j in rest:
            if orientation == FHE:
                e[(i, j)] = right[j]
                f[(j, i)] = left[j]
            else:
                e[(j, i)] = left[j]
                f[(i, j)] = right[j]
        for j in rest:
            for k in rest:
                A[(j, k)] = A[(j, k)] - left[j] * A[(i, k)]
    return GaussFactors(orientation, N, h, e, f)


# ---------------------------------------------------------------------------
# quasideterminants


def _flatten(M: dict, rows, cols) -> OpSeries:
    first = M[(rows[0], cols[0])]
    d, point, order = first.d, first.point, first.order
    big = len(rows) * d
    coeffs = []
    for k in range(order + 1):
        out = {}
        for p, i in enumerate(rows):
            for qq, j in enumerate(cols):
                blk = M[(i, j)].c[k]
                for r, row in blk.rows.items():
                    tgt = out.setdefault(p * d + r, {})
                    for c, t in row.items():
                        tgt[qq * d + c] = t
        coeffs.append(Op(big, out))
    return OpSeries(point, coeffs, order, big)


def _block(big: Op, p: int, qq: int, d: int) -> Op:
    out = {}
    for r in range(d):
        row = big.rows.get(p * d + r)
        if not row:
            continue
        sub = {c - qq * d: t for c, t in row.items() if qq * d <= c < (qq + 1) * d}
        if sub:
            out[r] = sub
    return Op(d, out)


def _blocks(S: OpSeries, n: int, d: int):
    return {(p, qq): OpSeries(S.point, [_block(c, p, qq, d) for c in S.c], S.order, d)
            for p in range(n) for qq in range(n)}


def quasideterminant(M: dict, rows, cols, box) -> OpSeries:
    """|M restricted to rows x cols| with the box at (row, col) = box.

    Equals m_box - r * (minor)^-1 * c where the minor omits the box row and column.
    """
    bi, bj = box
    mrows = [i for i in rows if i != bi]
    mcols = [j for j in cols if j != bj]
    val = M[box]
    if not mrows:
        return val
    d = val.d
    inv = _inv(_flatten(M, mrows, mcols), f"minor for box {box}")
    blk = _blocks(inv, len(mrows), d)
    acc = None
    # the inverse minor has row blocks indexed by mcols and column blocks by mrows
    for p, j in enumerate(mcols):
        left = M[(bi, j)]
        for qq, i in enumerate(mrows):
            x = left * blk[(p, qq)] * M[(i, bj)]
            acc = x if acc is None else acc + x
    return val - acc


def gauss_qdet(M: dict, orientation: str = FHE) -> GaussFactors:
    """Gaussian generators from quasideterminant formulas."""
    N = _size(M)
    h, e, f = {}, {}, {}
    if orientation == FHE:
        for i in range(1, N + 1):
            first = list(range(1, i + 1))
            h[i] = quasideterminant(M, first, first, (i, i))
        for i in range(1, N + 1):
            hinv = _inv(h[i], f"h_{i}")
            for j in range(i + 1, N + 1):
                cols = list(range(1, i)) + [j]
                e[(i, j)] = hinv * quasideterminant(M, list(range(1, i + 1)), cols, (i, j))
                rows = list(range(1, i)) + [j]
                f[(j, i)] = quasideterminant(M, rows, list(range(1, i + 1)), (j, i)) * hinv
    else:
        for i in range(1, N + 1):
            tail = list(range(i, N + 1))
            h[i] = quasideterminant(M, tail, tail, (i, i))
        for j in range(1, N + 1):
            hinv = _inv(h[j], f"hbar_{j}")
            for i in range(1, j):
                rows = [i] + list(range(j + 1, N + 1))
                e[(i, j)] = quasideterminant(M, rows, list(range(j, N + 1)), (i, j)) * hinv
                cols = [i] + list(range(j + 1, N + 1))
                f[(j, i)] = hinv * quasideterminant(M, list(range(j, N + 1)), cols, (j, i))
    return GaussFactors(orientation, N, h, e, f)


# ---------------------------------------------------------------------------
# reconstruction and triangular inverses


def _unit(point, order, d):
    return OpSeries.identity(point, order, d)


def triangular_matrices(G: GaussFactors, like: OpSeries):
    """(lower, diag, upper) as dicts including unit diagonals and zeros."""
    N = G.N
    point, order, d = like.point, like.order, like.d
    zero = OpSeries.zero(point, order, d)
    one = _unit(point, order, d)
    up, lo, dg = {}, {}, {}
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            dg[(i, j)] = G.h[i] if i == j else zero
            if i == j:
                up[(i, j)] = lo[(i, j)] = one
            elif i < j:
                up[(i, j)] = G.e[(i, j)]
                lo[(i, j)] = zero
            else:
                lo[(i, j)] = G.f[(i, j)]
                up[(i, j)] = zero
    return lo, dg, up


def matmul(A: dict, B: dict) -> dict:
    N = _size(A)
    out = {}
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            acc = None
            for k in range(1, N + 1):
                a, b = A[(i, k)], B[(k, j)]
                if a.is_zero() or b.is_zero():
                    continue
                x = a * b
                acc = x if acc is None else acc + x
            out[(i, j)] = acc if acc is not None else A[(i, j)] - A[(i, j)]
    return out


def reconstruct(G: GaussFactors, like: OpSeries) -> dict:
    lo, dg, up = triangular_matrices(G, like)
    if G.orientation == FHE:
        return matmul(matmul(lo, dg), up)
    return matmul(matmul(up, dg), lo)


def invert_unit_triangular(E: dict, N: int, upper: bool = True) -> dict:
    """Inverse entries of a unit triangular matrix by the alternating path sum.

    (E^-1)_ij = sum over s >= 0 of (-1)^(s+1) sum over chains i = a0 < a1 < ... < a_(s+1) = j
    of e_(a0 a1) ... e_(a_s a_(s+1)) (chains decrease for lower triangular input).
    """
    out = {}
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            if (i < j) != upper or i == j:
                continue
            lo_, hi_ = (i, j) if upper else (j, i)
            inner = list(range(lo_ + 1, hi_))
            acc = None
            for s in range(len(inner) + 1):
                for mids in combinations(inner, s):
                    chain = (i,) + (mids if upper else tuple(reversed(mids))) + (j,)
                    term = E[(chain[0], chain[1])]
                    for a, b in zip(chain[1:], chain[2:]):
                        term = term * E[(a, b)]
                    if (s + 1) % 2:
                        term = -term
                    acc = term if acc is None else acc + term
            out[(i, j)] = acc
    return out


def invert_flat(M: dict, N: int) -> dict:
    """Inverse of the whole matrix series through one flattened inverse."""
    idx = list(range(1, N + 1))
    d = M[(1, 1)].d
    inv = _inv(_flatten(M, idx, idx), "matrix")
    blk = _blocks(inv, N, d)
    return {(i, j): blk[(i - 1, j - 1)] for i in idx for j in idx}


# ---------------------------------------------------------------------------
# comparisons


def series_dict_difference(A: dict, B: dict, label: str = ""):
    """Witness for the first differing entry of two series dicts, or None."""
    for key in sorted(set(A) | set(B)):
        a, b = A.get(key), B.get(key)
        if a is None or b is None:
            x = a if a is not None else b
            if x.is_zero():
                continue
            return {"entry": f"{label}{key}", "reason": "missing on one side"}
        diff = a.first_difference(b)
        if diff is not None:
            k, r, c, x, y = diff
            return {"entry": f"{label}{key}", "coeff": k, "op_entry": [r, c], "lhs": str(x), "rhs": str(y)}
    return None


def compare_factors(G1: GaussFactors, G2: GaussFactors):
    for name in ("h", "e", "f"):
        w = series_dict_difference(getattr(G1, name), getattr(G2, name), name)
        if w is not None:
            return w
    return None


def gauss_route_check(M: dict, orientation: str):
    """(witness or None, elapsed ms) comparing elimination with quasideterminants."""
    t0 = time.perf_counter()
    w = compare_factors(ldu(M, orientation), gauss_qdet(M, orientation))
    return w, (time.perf_counter() - t0) * 1000


# ---------------------------------------------------------------------------
# module-level entry points


SingularPrincipalBlock = SingularLeadingMinor


@dataclass(frozen=True)
class QuasiMinorSpec:
    rows: tuple
    cols: tuple
    box: tuple

    def __post_init__(self):
        if self.box[0] not in self.rows or self.box[1] not in self.cols:
            raise ValueError("boxed position must lie in the row and column lists")
        if list(self.rows) != sorted(set(self.rows)) or list(self.cols) != sorted(set(self.cols)):
            raise ValueError("row and column lists must be strictly increasing")


def quasidet(M: dict, spec: QuasiMinorSpec) -> OpSeries:
    return quasideterminant(M, list(spec.rows), list(spec.cols), spec.box)


def gauss_decompose(V, orientation: str = FHE, point=None, order: int = 6) -> GaussFactors:
    """Gauss factors of a module (expanded at ``point``) or of a series matrix dict."""
    if isinstance(V, dict):
        return ldu(V, orientation)
    from .exactalg.ops import INF_PT

    return ldu(V.L.series(point or INF_PT, order), orientation)


def gaussian_generators(V, point=None, order: int = 6) -> GaussFactors:
    """h_i, e_ij, f_ji of T = F H E."""
    return gauss_decompose(V, FHE, point, order)


def opposite_generators(V, point=None, order: int = 6) -> GaussFactors:
    """hbar_i, ebar_ij, fbar_ji of T = E H F."""
    return gauss_decompose(V, EHF, point, order)
