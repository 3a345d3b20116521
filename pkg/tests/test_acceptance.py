"""Acceptance criteria AC1-AC8; the terminal summary prints one line per criterion."""

import time
from functools import lru_cache
from types import SimpleNamespace

import pytest
from conftest import lie, tmod, vmod

from qav.drinfeld import ModuleContext, check_qaff_relations, check_yangian_relations, negate_current
from qav.relcheck import run_all, run_identity
from qav.repmod import QAFFINE, YANGIAN
from qav.rmatrix import check_trans_sym, check_ybe

MATRIX = [("B", 1), ("B", 2), ("C", 2), ("D", 2), ("D", 3), ("A", 2)]
BCD = [t for t in MATRIX if t[0] != "A"]
CONFIG = SimpleNamespace(trunc=6, evals=[5], dmax=None, realms=[YANGIAN, QAFFINE], serre_window=2, seed=None)


@lru_cache(maxsize=None)
def suite_run(suite):
    """(results, seconds) for one suite over the full type matrix at truncation 6."""
    t0 = time.perf_counter()
    res = run_all([lie(f, n) for f, n in MATRIX], [suite], CONFIG)
    return res, time.perf_counter() - t0


def outcomes(suite, fam, n, ids=None):
    res, _ = suite_run(suite)
    return [r for r in res if r.family == fam and r.rank == n and (ids is None or r.id in ids)]


def assert_all_pass(results):
    assert results, "no checks ran"
    bad = [(r.id, r.realm, r.params.get("module"), r.status, r.witness) for r in results
           if r.status not in ("PASS", "SKIPPED")]
    assert not bad, bad
    assert any(r.status == "PASS" for r in results)


# AC1: R-matrix suite


@pytest.mark.parametrize("fam, n", MATRIX + [("A", 3)])
@pytest.mark.parametrize("check", ["YBE_RATIONAL", "YBE_TRIG", "R_TRANS_SYM"])
def test_ac1_r_matrix(fam, n, check):
    t0 = time.perf_counter()
    t = lie(fam, n)
    if check == "R_TRANS_SYM":
        r = check_trans_sym(t)
    else:
        r = check_ybe(t, "rational" if check == "YBE_RATIONAL" else "trig")
    assert r.status == "PASS", r.witness
    assert time.perf_counter() - t0 <= 60


# AC2: module suite


@pytest.mark.parametrize("fam, n", MATRIX)
def test_ac2_module_relations(fam, n):
    res = outcomes("rll", fam, n)
    assert_all_pass(res)
    modules = {r.params.get("module") for r in res if r.status == "PASS"}
    assert any("⊗" in m for m in modules) and any("⊗" not in m for m in modules)


def test_ac2_runtime():
    _, seconds = suite_run("rll")
    assert seconds <= 300, f"module suite took {seconds:.0f} s"


# AC3: Gauss suite


@pytest.mark.parametrize("fam, n", MATRIX)
def test_ac3_gauss(fam, n):
    res = outcomes("gauss", fam, n)
    assert_all_pass(res)
    assert {"GAUSS_FHE", "GAUSS_EHF", "GAUSS_RECON"} <= {r.id for r in res if r.status == "PASS"}


# AC4: central suite


@pytest.mark.parametrize("fam, n", BCD)
def test_ac4_central(fam, n):
    res = outcomes("central", fam, n)
    assert_all_pass(res)
    assert {"CENTRAL_Y", "CENTRAL_QA", "Z_TWO_ROUTES", "ZETA", "Z_TENSOR"} <= {r.id for r in res}


# AC5: Drinfeld currents


@pytest.mark.parametrize("fam, n", MATRIX)
def test_ac5_currents(fam, n):
    res = outcomes("drinfeld", fam, n)
    assert_all_pass(res)
    ids = {r.id for r in res if r.status == "PASS"}
    if fam != "A":
        assert {"Y_SERRE", "APPA_SERRE", "QA_SERRE"} <= ids
    assert any("⊗" in r.params.get("module", "") for r in res if r.status == "PASS")


@pytest.mark.parametrize("fam, n", [("B", 2), ("C", 2)])
@pytest.mark.parametrize("realm, kind", [(YANGIAN, "yangian"), (YANGIAN, "appendix"), (QAFFINE, "qaffine")])
def test_ac5_negative_controls(fam, n, realm, kind):
    ctx = ModuleContext(vmod(fam, n, realm), 6)
    C = ctx.currents(kind)
    check = check_yangian_relations if realm == YANGIAN else check_qaff_relations
    assert all(w is None for w in check(ctx.t, C).values())
    broken = check(ctx.t, negate_current(C, 1, 1))
    assert any(w is not None for w in broken.values())


# AC6: classification


@pytest.mark.parametrize("fam, n", MATRIX)
def test_ac6_classification(fam, n):
    assert_all_pass(outcomes("classify", fam, n))


# AC7: special identities on their smallest applicable types


SPECIAL = [
    ("O3", "B", 1), ("O4", "D", 2), ("O2", "D", 2), ("SPEZ", "C", 2),
    ("KPT", "B", 2), ("KPT", "C", 3), ("KPT", "D", 3),
    ("NTHRO", "B", 2), ("NTHRO", "C", 2), ("NTHRO", "D", 2),
    ("GAINV", "B", 1), ("GAINV", "C", 2), ("GAINV", "D", 2),
    ("LONI", "B", 1), ("LONI", "C", 2), ("LONI", "D", 2),
    ("LONENE", "B", 1), ("LONENE", "C", 2), ("LONENE", "D", 2),
    ("EUL", "B", 2), ("EUL", "C", 2), ("EUL", "D", 2),
    ("EPMI", "B", 1), ("EPMI", "C", 2), ("EPMI", "D", 2),
    ("PLONI", "B", 2), ("PLONI", "C", 2), ("PLONI", "D", 2),
    ("HEXI", "B", 1), ("HEXI", "C", 2), ("HEXI", "D", 2),
    ("H_TELESCOPE", "B", 1), ("H_TELESCOPE", "C", 2), ("H_TELESCOPE", "D", 2),
    ("HZPROD", "B", 1), ("HZPROD", "C", 2), ("HZPROD", "D", 2),
]


@pytest.mark.parametrize("cid, fam, n", SPECIAL)
def test_ac7_special(cid, fam, n):
    r = run_identity(vmod(fam, n, QAFFINE), cid)
    assert r.status == "PASS", r.witness


# AC8: Hopf structure


@pytest.mark.parametrize("fam, n", [("B", 1), ("C", 2)])
def test_ac8_s2_twist(fam, n):
    r = run_identity(vmod(fam, n, QAFFINE), "HOPF")
    assert r.status == "PASS", r.witness


@pytest.mark.parametrize("fam, n", [("B", 1), ("C", 2)])
@pytest.mark.parametrize("realm", [YANGIAN, QAFFINE])
def test_ac8_counit(fam, n, realm):
    for V in (vmod(fam, n, realm), tmod(fam, n, realm)):
        r = run_identity(V, "COUNIT")
        assert r.status == "PASS", r.witness
