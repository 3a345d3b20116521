from types import SimpleNamespace

import pytest
from conftest import lie, tmod, vmod

from qav.drinfeld import ModuleContext
from qav.exactalg import PolyU, RatFun, q
from qav.relcheck import (
    BY_ID,
    REGISTRY,
    SUITES,
    IdentityFailed,
    display_map,
    registry_listing,
    run_all,
    run_drinfeld_suite,
    run_identity,
    select_entries,
    spot_points,
    summarize,
    thread_cap,
)
from qav.repmod import QAFFINE, YANGIAN, EvalModule, OpRatMat


def test_registry_ids_unique_and_checks_callable():
    ids = [e.id for e in REGISTRY]
    assert len(ids) == len(set(ids))
    for e in REGISTRY:
        assert callable(e.check)
        assert e.suite in SUITES
        assert e.realm in (YANGIAN, QAFFINE, "both")
        assert e.anchor


def test_display_map_is_injective():
    dm = display_map()
    assert dm["o3-square"] == "O3"
    assert dm["sp4-q2-commutator"] == "SPEZ"
    assert set(dm.values()) <= set(BY_ID)


def test_listing_order_matches_registry():
    listing = registry_listing()
    assert [row[0] for row in listing] == [e.id for e in REGISTRY]
    assert {"O3", "CENTRAL_Y", "KPT", "HOPF"} <= {row[0] for row in listing}


def test_select_entries():
    ids, unknown = select_entries(["special", "rtt", "nope", ""])
    assert "KPT" in ids and "RTT" in ids and unknown == ["nope"]
    assert select_entries([]) == ([], [])


@pytest.mark.parametrize("fam, n, cid, indices", [
    ("B", 2, "KPT", (1, 2, 3)),
    ("B", 1, "O3", None),
    ("C", 2, "SPEZ", None),
    ("D", 2, "O4", None),
    ("D", 2, "O2", None),
])
def test_spec_examples_pass(fam, n, cid, indices):
    r = run_identity(vmod(fam, n, QAFFINE), cid, indices=indices)
    assert r.status == "PASS", r.witness


@pytest.mark.parametrize("fam, n, printed, corrected, indices", [
    ("B", 1, "EPMI", "EPMI_BMID", None),
    ("B", 2, "KPT", "KPT_BMID", (1, 3, 4)),
    ("C", 2, "GAINV", "GAINV_EPS", None),
    ("B", 1, "HOPF", "HOPF_S2_CONJ", None),
    ("C", 2, "HOPF", "HOPF_S2_CONJ", None),
])
def test_printed_forms_fail_and_corrections_pass(fam, n, printed, corrected, indices):
    V = vmod(fam, n, QAFFINE)
    bad = run_identity(V, printed, indices=indices)
    assert bad.status == "FAIL" and bad.witness
    assert run_identity(V, corrected).status == "PASS"


def test_kpt_away_from_middle_passes_on_b2():
    assert run_identity(vmod("B", 2, QAFFINE), "KPT", indices=(1, 2, 3)).status == "PASS"


@pytest.mark.parametrize("fam, n", [("C", 3), ("D", 3)])
def test_kpt_on_types_without_middle_index(fam, n):
    assert run_identity(vmod(fam, n, QAFFINE), "KPT").status == "PASS"


@pytest.mark.parametrize("cid, fam, n, realm", [
    ("O3", "C", 2, QAFFINE),
    ("RTT", "B", 1, QAFFINE),
    ("SPEZ", "B", 1, QAFFINE),
    ("EUL", "B", 1, QAFFINE),
])
def test_out_of_scope_is_skipped(cid, fam, n, realm):
    assert run_identity(vmod(fam, n, realm), cid).status == "SKIPPED"


def test_scope_mismatch_is_skipped():
    assert run_identity(vmod("B", 1, YANGIAN), "Z_TENSOR").status == "SKIPPED"
    assert run_identity(tmod("B", 1, QAFFINE), "HOPF").status == "SKIPPED"


def test_unknown_identity():
    with pytest.raises(KeyError):
        run_identity(vmod("B", 1, QAFFINE), "NOT_AN_ID")


def test_raise_on_fail():
    with pytest.raises(IdentityFailed) as exc:
        run_identity(vmod("B", 1, QAFFINE), "EPMI", raise_on_fail=True)
    assert exc.value.result.status == "FAIL"


def _corrupt(V):
    num = dict(V.L.num)
    num[(1, 2)] = num[(1, 2)].scale_poly(PolyU.const(3))
    return EvalModule(V.type, V.realm, OpRatMat(V.N, V.d, V.L.den, num), "corrupt", V.params)


@pytest.mark.parametrize("fam, n, realm, cid", [
    ("A", 2, QAFFINE, "RLL_PP"),
    ("B", 1, QAFFINE, "RLL_PM"),
    ("C", 2, QAFFINE, "UNITARITY_QA"),
    ("D", 2, QAFFINE, "ZERO_MODES"),
    ("B", 1, YANGIAN, "RTT"),
    ("C", 2, YANGIAN, "UNITARITY_Y"),
    ("D", 2, YANGIAN, "RTT"),
])
def test_negative_controls(fam, n, realm, cid):
    V = vmod(fam, n, realm)
    assert run_identity(V, cid).status == "PASS"
    if cid == "ZERO_MODES":
        bad = EvalModule(V.type, V.realm, V.L.scale(RatFun.const(q)), "scaled", V.params)
    else:
        bad = _corrupt(V)
    assert run_identity(bad, cid).status == "FAIL"


def test_drinfeld_suite_names():
    ctx = ModuleContext(vmod("B", 1, YANGIAN), 5)
    names = {r.id for r in run_drinfeld_suite(lie("B", 1), ctx.currents("appendix"))}
    assert names == {"APPA_" + k for k in ("CONST", "KK", "PAIR", "K0X", "KX", "XX", "SERRE")}


def test_run_all_edge_cases():
    assert run_all([lie("B", 1)], []) == []
    res = run_all([lie("B", 1)], ["nosuch"])
    assert [(r.id, r.status) for r in res] == [("nosuch", "ERROR")]


def test_run_all_is_deterministic():
    cfg = SimpleNamespace(trunc=4, evals=[5], dmax=None, realms=[QAFFINE], serre_window=2, seed=3)
    a = run_all([lie("B", 1), lie("A", 2)], ["rll", "o3"], cfg)
    b = run_all([lie("B", 1), lie("A", 2)], ["rll", "o3"], cfg)
    assert [(r.id, r.family, r.status) for r in a] == [(r.id, r.family, r.status) for r in b]
    assert summarize(a)["FAIL"] == 0 and summarize(a)["ERROR"] == 0


def test_yangian_type_a_skipped():
    res = run_all([lie("A", 2)], ["rll"], SimpleNamespace(realms=[YANGIAN]))
    assert res and {r.status for r in res} == {"SKIPPED"}


def test_spot_points_are_seeded():
    assert spot_points(None) == ()
    assert spot_points(7) == spot_points(7) != spot_points(8)


def test_thread_cap(monkeypatch):
    monkeypatch.setenv("QAV_THREADS", "junk")
    assert thread_cap() == 1
    monkeypatch.setenv("QAV_THREADS", "1")
    assert thread_cap() == 1


def test_results_serialize():
    d = run_identity(vmod("B", 1, QAFFINE), "O3").as_dict()
    assert d["id"] == "O3" and d["family"] == "B" and d["rank"] == 1 and d["realm"] == QAFFINE
