"""Command-line runner: ``qav run``, ``qav list`` and ``qav report-diff``."""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

from . import __version__
from .relcheck import REALMS, SUITES, registry_listing, run_all, select_entries, summarize
from .rmatrix import UnsupportedRank, build_type

DEFAULT_TYPES = (("B", 1), ("B", 2), ("C", 2), ("D", 2), ("D", 3), ("A", 2))
MAX_RANK = 4
EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class InvalidConfig(ValueError):
    pass


class ParseError(ValueError):
    pass


@dataclass
class RunConfig:
    types: list = field(default_factory=lambda: [list(t) for t in DEFAULT_TYPES])
    realms: list = field(default_factory=lambda: list(REALMS))
    suites: list = field(default_factory=lambda: list(SUITES))
    trunc: int = 6
    evals: list = field(default_factory=lambda: ["5"])
    dmax: int | None = None
    out: str = "-"
    seed: int | None = None

    def validate(self) -> "RunConfig":
        if self.trunc < 0:
            raise InvalidConfig("truncation order must be >= 0")
        if self.dmax is not None and self.dmax < 0:
            raise InvalidConfig("dmax must be >= 0")
        for fam, n in self.types:
            try:
                build_type(fam, n)
            except UnsupportedRank as exc:
                raise InvalidConfig(str(exc)) from exc
            if n > MAX_RANK:
                raise InvalidConfig(f"rank {n} of {fam} exceeds the ceiling {MAX_RANK}")
        for r in self.realms:
            if r not in REALMS:
                raise InvalidConfig(f"unknown realm {r!r}")
        for a in self.evals:
            if Fraction(a) == 0:
                raise InvalidConfig("evaluation parameters must be nonzero")
        return self

    def lie_types(self):
        return [build_type(f, n) for f, n in self.types]

    @property
    def eval_points(self):
        return [Fraction(a) for a in self.evals]


# ---------------------------------------------------------------------------
# parsing


def parse_type_spec(text: str):
    spec = text.strip().upper().replace(":", "")
    if len(spec) < 2 or not spec[0].isalpha() or not spec[1:].isdigit():
        raise InvalidConfig(f"bad type {text!r}; expected FAMILY:RANK")
    return [spec[0], int(spec[1:])]


def _csv(text: str):
    return [x.strip() for x in text.split(",") if x.strip()]


def _realms(text: str):
    return list(REALMS) if text == "both" else [text]


def _fraction(text: str) -> str:
    try:
        return str(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidConfig(f"bad evaluation parameter {text!r}") from exc


def _int(key, text):
    try:
        return int(text)
    except (TypeError, ValueError) as exc:
        raise InvalidConfig(f"{key} must be an integer, got {text!r}") from exc


def read_config_file(path: str) -> dict:
    """Flat ``key = value`` lines; ``#`` starts a comment.  Keys mirror the flags."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InvalidConfig(f"cannot read config {path}: {exc}") from exc
    out = {}
    for num, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidConfig(f"{path}:{num}: expected key = value")
        key, value = (x.strip() for x in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def build_config(args) -> RunConfig:
    """Config file values first, then command-line flags on top."""
    raw = read_config_file(args.config) if args.config else {}
    flags = {"type": args.type, "realm": args.realm, "suite": args.suite, "trunc": args.trunc,
             "eval": args.eval, "dmax": args.dmax, "out": args.out, "seed": args.seed}
    for key, val in flags.items():
        if val is not None:
            raw[key] = val
    unknown = set(raw) - set(flags)
    if unknown:
        raise InvalidConfig(f"unknown config keys: {sorted(unknown)}")
    cfg = RunConfig()
    if "type" in raw:
        specs = raw["type"] if isinstance(raw["type"], list) else _csv(raw["type"])
        cfg.types = [parse_type_spec(x) for x in specs]
    if "realm" in raw:
        if raw["realm"] not in ("yangian", "qaffine", "both"):
            raise InvalidConfig(f"unknown realm {raw['realm']!r}")
        cfg.realms = _realms(raw["realm"])
    if "suite" in raw:
        cfg.suites = _csv(raw["suite"])
    if "trunc" in raw:
        cfg.trunc = _int("trunc", raw["trunc"])
    if "eval" in raw:
        cfg.evals = [_fraction(x) for x in _csv(raw["eval"])]
        if not cfg.evals:
            raise InvalidConfig("at least one evaluation parameter is needed")
    if raw.get("dmax") not in (None, ""):
        cfg.dmax = _int("dmax", raw["dmax"])
    if "out" in raw:
        cfg.out = raw["out"]
    if raw.get("seed") not in (None, ""):
        cfg.seed = _int("seed", raw["seed"])
    return cfg.validate()


# ---------------------------------------------------------------------------
# reports


@dataclass
class Report:
    version: str
    config: dict
    checks: list
    summary: dict
    elapsed: float

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, default=str)

    @staticmethod
    def from_json(text: str) -> "Report":
        try:
            d = json.loads(text)
            return Report(d["version"], d["config"], d["checks"], d["summary"], d["elapsed"])
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise ParseError(f"not a report: {exc}") from exc


class _Runtime:
    """Adapter giving run_all the attributes it reads."""

    def __init__(self, cfg: RunConfig):
        self.trunc, self.evals, self.dmax = cfg.trunc, cfg.eval_points, cfg.dmax
        self.realms, self.seed = cfg.realms, cfg.seed


def make_report(cfg: RunConfig) -> Report:
    t0 = time.perf_counter()
    results = run_all(cfg.lie_types(), cfg.suites, _Runtime(cfg))
    checks = [json.loads(json.dumps(r.as_dict(), default=str)) for r in results]
    return Report(__version__, asdict(cfg), checks, summarize(results), round(time.perf_counter() - t0, 3))


def exit_code(summary: dict) -> int:
    if summary.get("ERROR"):
        return EXIT_ERROR
    if summary.get("FAIL"):
        return EXIT_FAIL
    return EXIT_OK


def load_report(path: str) -> Report:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return Report.from_json(text)


def _check_key(c: dict):
    return (c["id"], c["family"], c["rank"], c["realm"], c.get("params", {}).get("module", ""))


def report_diff(a: Report, b: Report) -> list:
    """Lines ``id family+rank realm module: OLD -> NEW`` for every status change."""
    old = {_check_key(c): c["status"] for c in a.checks}
    new = {_check_key(c): c["status"] for c in b.checks}
    lines = []
    for key in sorted(set(old) | set(new), key=lambda k: tuple(str(x) for x in k)):
        s1, s2 = old.get(key, "ABSENT"), new.get(key, "ABSENT")
        if s1 != s2:
            cid, fam, rank, realm, module = key
            lines.append(f"{cid} {fam}{rank} {realm} {module}: {s1} -> {s2}".replace("  ", " "))
    return lines


# ---------------------------------------------------------------------------
# commands


def cmd_run(cfg: RunConfig, stream=None) -> int:
    stream = stream or sys.stderr
    _, unknown = select_entries(cfg.suites)
    report = make_report(cfg)
    for c in report.checks:
        module = c.get("params", {}).get("module", "")
        print(f"{c['status']:8} {c['id']:14} {c['family']}{c['rank']} {c['realm']:8} {module}", file=stream)
    s = report.summary
    print(f"PASS {s['PASS']}  FAIL {s['FAIL']}  SKIPPED {s['SKIPPED']}  ERROR {s['ERROR']}  "
          f"({report.elapsed:.1f} s)", file=stream)
    if unknown:
        print(f"unknown suites: {', '.join(unknown)}", file=stream)
    if cfg.out == "-":
        print(report.to_json())
    else:
        Path(cfg.out).write_text(report.to_json() + "\n")
    return exit_code(s)


def cmd_list(stream=None) -> int:
    stream = stream or sys.stdout
    for cid, realm, applicability, anchor in registry_listing():
        print(f"{cid:14} {realm:8} {applicability:42} {anchor}", file=stream)
    return EXIT_OK


def cmd_report_diff(a: str, b: str, stream=None) -> int:
    stream = stream or sys.stdout
    for line in report_diff(load_report(a), load_report(b)):
        print(line, file=stream)
    return EXIT_OK


def _parser():
    p = argparse.ArgumentParser(prog="qav", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run identity suites and write a JSON report")
    run.add_argument("--type", action="append", help="FAMILY:RANK, repeatable (default B1 B2 C2 D2 D3 A2)")
    run.add_argument("--realm", help="yangian, qaffine or both (default both)")
    run.add_argument("--suite", help=f"comma-separated suites or identity ids ({','.join(SUITES)})")
    run.add_argument("--trunc", help="series truncation order (default 6)")
    run.add_argument("--eval", help="comma-separated rational evaluation points (default 5)")
    run.add_argument("--dmax", help="degree bound for Drinfeld polynomial extraction")
    run.add_argument("--out", help="report path, '-' for stdout (default)")
    run.add_argument("--config", help="flat key = value file; flags override it")
    run.add_argument("--seed", help="seed for randomized RLL spot checks")
    sub.add_parser("list", help="list the identity registry")
    diff = sub.add_parser("report-diff", help="status changes between two reports")
    diff.add_argument("a")
    diff.add_argument("b")
    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    if args.command == "list":
        return cmd_list()
    if args.command == "report-diff":
        try:
            return cmd_report_diff(args.a, args.b)
        except ParseError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_ERROR
    try:
        cfg = build_config(args)
    except InvalidConfig as exc:
        print(f"invalid config: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return cmd_run(cfg)


if __name__ == "__main__":
    sys.exit(main())
