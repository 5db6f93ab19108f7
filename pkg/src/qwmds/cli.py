"""Command-line front end: build, expand, verify, ppart, coeffs.

Exit status: 0 success, 1 a check failed, 2 usage error, 3 budget or cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field, fields

from .invariant import (
    BudgetExceeded,
    InvariantFunction,
    build_f,
    coeff_table,
    series_coefficients,
    stable_form,
    x_monomial_count,
)
from .qcoeffs import HContext, InsufficientDepth, export_csv
from .rootsys import DEFAULT_CAP, EnumerationCapExceeded, InvalidRootSystem, build_root_system
from .verify import CheckReport, DEFAULT_CHECKS, any_failed, reports_table, reports_to_json, run_all, summarize

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

SUBCOMMANDS = ("build", "expand", "verify", "ppart", "coeffs")


@dataclass
class RunConfig:
    subcommand: str
    family: str | None = None
    rank: int | None = None
    max_deg: int = 4
    q: int | None = None
    bound: int = 5
    checks: list = field(default_factory=list)
    budget: float | None = None
    term_budget: int | None = None
    cap: int = DEFAULT_CAP
    inp: str | None = None
    out: str | None = None

    def to_text(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_text(cls, text: str) -> "RunConfig":
        data = json.loads(text)
        names = {f.name for f in fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise ValueError(f"unknown configuration keys {sorted(unknown)}")
        return cls(**data)


class UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qwmds", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="subcommand", required=True)
    for name in SUBCOMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--type", dest="family", choices=["A", "D", "E"])
        s.add_argument("--rank", type=int)
        s.add_argument("--max-deg", dest="max_deg", type=int)
        s.add_argument("--q", type=int)
        s.add_argument("--bound", type=int)
        s.add_argument("--checks", help=f"comma-separated subset of {','.join(DEFAULT_CHECKS)}")
        s.add_argument("--budget", type=float, help="time budget in seconds")
        s.add_argument("--term-budget", dest="term_budget", type=int)
        s.add_argument("--cap", type=int, help="largest Weyl group to enumerate")
        s.add_argument("--in", dest="inp", help="serialized InvariantFunction from `build`")
        s.add_argument("--out", help="output path (default: stdout)")
        s.add_argument("--config", help="JSON file with the same keys as the flags")
    return p


def parse_config(argv) -> RunConfig:
    args = _parser().parse_args(argv)
    base = {"subcommand": args.subcommand}
    if args.config:
        with open(args.config) as fh:
            cfg = RunConfig.from_text(fh.read())
        base = asdict(cfg)
        base["subcommand"] = args.subcommand
    for key in ("family", "rank", "max_deg", "q", "bound", "budget", "term_budget", "cap", "inp", "out"):
        v = getattr(args, key)
        if v is not None:
            base[key] = v
    if args.checks is not None:
        base["checks"] = [c.strip() for c in args.checks.split(",") if c.strip()]
    cfg = RunConfig(**base)
    bad = set(cfg.checks) - set(DEFAULT_CHECKS)
    if bad:
        raise UsageError(f"unknown checks: {', '.join(sorted(bad))}")
    return cfg


def _emit(cfg: RunConfig, text: str):
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _root_system(cfg: RunConfig):
    if cfg.family is None or cfg.rank is None:
        raise UsageError("--type and --rank are required")
    return build_root_system(cfg.family, cfg.rank)


def _load_or_build(cfg: RunConfig) -> InvariantFunction:
    if cfg.inp:
        with open(cfg.inp) as fh:
            return InvariantFunction.from_json(fh.read())
    return build_f(_root_system(cfg), cfg.cap, cfg.term_budget, cfg.budget)


def cmd_build(cfg: RunConfig) -> int:
    inv = build_f(_root_system(cfg), cfg.cap, cfg.term_budget, cfg.budget)
    _emit(cfg, inv.to_json())
    return EXIT_OK


def cmd_expand(cfg: RunConfig) -> int:
    try:
        table = coeff_table(_load_or_build(cfg), cfg.max_deg)
    except BudgetExceeded as exc:
        print(f"exact build over budget ({exc}); expanding term by term", file=sys.stderr)
        table = series_coefficients(_root_system(cfg), cfg.max_deg, cfg.cap)
    _emit(cfg, table.to_csv(cfg.q))
    return EXIT_OK


def cmd_ppart(cfg: RunConfig) -> int:
    inv = _load_or_build(cfg)
    st = stable_form(inv)
    record = {
        "root_system": inv.rs.name,
        "ppart": inv.ppart.to_dict(),
        "stable_form": st.to_dict(),
        "x_monomials": x_monomial_count(st),
        "terms": st.nterms,
    }
    if cfg.out:
        _emit(cfg, json.dumps(record, indent=1))
    else:
        print(f"f*D = {inv.ppart}")
        print(f"stable form = {st}")
        print(f"{record['x_monomials']} x-monomials ({record['terms']} terms in t and x)")
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    checks = cfg.checks or None
    if cfg.inp:
        with open(cfg.inp) as fh:
            data = json.load(fh)
        try:
            inv = InvariantFunction.from_dict(data)
        except ValueError as exc:
            rs_data = data.get("root_system", {})
            rep = CheckReport("file_consistency", f"{rs_data.get('family', '?')}{rs_data.get('rank', '')}",
                              {"file": cfg.inp}, "fail", str(exc))
            print(reports_table([rep]))
            print(json.dumps({"witness": rep.witness}))
            return EXIT_FAIL
        reports = run_all([inv.rs], cfg.budget, checks, invariants={inv.rs.name: inv})
    else:
        reports = run_all([_root_system(cfg)], cfg.budget, checks)
    print(reports_table(reports))
    print(json.dumps(summarize(reports), sort_keys=True))
    for r in reports:
        if r.failed:
            print(f"FAILED {r.system} {r.name} {json.dumps(r.params)}: {json.dumps(r.witness, default=str)[:2000]}")
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(reports_to_json(reports))
    return EXIT_FAIL if any_failed(reports) else EXIT_OK


def cmd_coeffs(cfg: RunConfig) -> int:
    rs = _root_system(cfg)
    inv = build_f(rs, cfg.cap, cfg.term_budget, cfg.budget)
    _emit(cfg, export_csv(HContext(rs, inv), cfg.bound))
    return EXIT_OK


COMMANDS = {"build": cmd_build, "expand": cmd_expand, "verify": cmd_verify, "ppart": cmd_ppart,
            "coeffs": cmd_coeffs}


def main(argv=None) -> int:
    try:
        cfg = parse_config(argv)
    except SystemExit as exc:  # argparse usage errors
        return EXIT_USAGE if exc.code else EXIT_OK
    except (UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[cfg.subcommand](cfg)
    except (EnumerationCapExceeded, BudgetExceeded, InsufficientDepth) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, InvalidRootSystem, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
