import json

import pytest

from qav import cli
from qav.cli import (
    InvalidConfig,
    ParseError,
    Report,
    RunConfig,
    exit_code,
    load_report,
    main,
    parse_type_spec,
    report_diff,
)


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_run_passing_suite_exits_zero(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, _, err = run(["run", "--type", "C:2", "--suite", "spez", "--out", str(path)], capsys)
    assert code == 0
    rep = load_report(str(path))
    assert rep.summary["PASS"] >= 1 and rep.summary["FAIL"] == 0
    assert "SPEZ" in err


def test_run_writes_json_to_stdout(capsys):
    code, out, _ = run(["run", "--type", "B:1", "--realm", "qaffine", "--suite", "O3"], capsys)
    assert code == 0
    d = json.loads(out)
    assert {c["id"] for c in d["checks"]} == {"O3"}
    assert [c["params"]["module"] for c in d["checks"]] == ["V(5/1·s^0)", "V(5/1·s^0)⊗V(7/1·s^0)"]


def test_failing_identity_exits_one(capsys):
    code, _, _ = run(["run", "--type", "B:1", "--realm", "qaffine", "--suite", "EPMI", "--out", "-"], capsys)
    assert code == 1


@pytest.mark.parametrize("argv", [
    ["run", "--type", "Q:9"],
    ["run", "--type", "B:9"],
    ["run", "--type", "C:1"],
    ["run", "--trunc", "-1"],
    ["run", "--eval", "0"],
    ["run", "--realm", "elliptic"],
])
def test_invalid_config_exits_two(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2 and "invalid config" in err


def test_unknown_family_message(capsys):
    _, _, err = run(["run", "--type", "Q:9"], capsys)
    assert "unknown family 'Q'" in err


def test_unknown_suite_is_error(capsys):
    code, out, _ = run(["run", "--type", "B:1", "--suite", "bogus"], capsys)
    assert code == 2
    assert json.loads(out)["summary"]["ERROR"] == 1


def test_config_file_and_override(tmp_path):
    cfg_path = tmp_path / "qav.cfg"
    cfg_path.write_text("# defaults\ntype = B:1, C:2\ntrunc = 4\nseed = 9\n")
    args = cli._parser().parse_args(["run", "--config", str(cfg_path), "--trunc", "5"])
    cfg = cli.build_config(args)
    assert cfg.types == [["B", 1], ["C", 2]] and cfg.trunc == 5 and cfg.seed == 9
    cfg_path.write_text("colour = blue\n")
    with pytest.raises(InvalidConfig):
        cli.build_config(cli._parser().parse_args(["run", "--config", str(cfg_path)]))


def test_parse_type_spec():
    assert parse_type_spec("b:2") == ["B", 2]
    assert parse_type_spec("D3") == ["D", 3]
    with pytest.raises(InvalidConfig):
        parse_type_spec("B:")


def test_list_is_stable(capsys):
    _, first, _ = run(["list"], capsys)
    _, second, _ = run(["list"], capsys)
    assert first == second
    ids = [line.split()[0] for line in first.splitlines()]
    assert "O3" in ids and "CENTRAL_Y" in ids
    assert ids.index("YBE_RATIONAL") == 0


def test_exit_code():
    assert exit_code({"PASS": 3, "FAIL": 0, "ERROR": 0}) == 0
    assert exit_code({"PASS": 3, "FAIL": 1, "ERROR": 0}) == 1
    assert exit_code({"PASS": 3, "FAIL": 1, "ERROR": 1}) == 2


def _report(statuses):
    checks = [{"id": cid, "family": "B", "rank": 1, "realm": "qaffine", "status": st,
               "params": {"module": "V(5/1·s^0)"}} for cid, st in statuses]
    return Report("0", {}, checks, {}, 0.0)


def test_report_round_trip():
    rep = _report([("O3", "PASS")])
    assert Report.from_json(rep.to_json()) == rep
    with pytest.raises(ParseError):
        Report.from_json("{not json")
    with pytest.raises(ParseError):
        Report.from_json('{"version": "0"}')


def test_report_diff():
    a = _report([("O3", "PASS"), ("HOPF", "FAIL")])
    assert report_diff(a, a) == []
    b = _report([("O3", "FAIL"), ("HOPF", "FAIL")])
    assert report_diff(a, b) == ["O3 B1 qaffine V(5/1·s^0): PASS -> FAIL"]


def test_report_diff_command(tmp_path, capsys):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    p1.write_text(_report([("O3", "PASS")]).to_json())
    p2.write_text(_report([("O3", "PASS")]).to_json())
    code, out, _ = run(["report-diff", str(p1), str(p2)], capsys)
    assert code == 0 and out == ""
    code, _, err = run(["report-diff", str(p1), str(tmp_path / "missing.json")], capsys)
    assert code == 2 and "error" in err


def test_default_config_validates():
    cfg = RunConfig().validate()
    assert ["A", 2] in cfg.types and cfg.trunc == 6
