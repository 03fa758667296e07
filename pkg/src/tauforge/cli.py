"""Command-line front end: ``tauforge gen-tau``, ``tauforge check``, ``tauforge report``.

Exit codes: 0 all pass, 1 some check failed or errored, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import __version__
from .checks import ALL_CHECKS, NUMERIC_CHECKS, TauSource, run_tasks, suite_tasks
from .config import ConfigError, RunConfig, load_config
from .report import PASS
from .tau import staircase_tau

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _floats(s: str):
    try:
        return tuple(float(x) for x in s.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {s!r}") from None


def _ints(s: str):
    try:
        return tuple(int(x) for x in s.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {s!r}") from None


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat key = value config file")
    p.add_argument("--json", action="store_true", help="emit the JSON document instead of text")
    p.add_argument("--seed", type=int)
    p.add_argument("--trials", type=int, help="random_point_check trials per exact check")
    p.add_argument("--q", type=_floats, help="comma-separated nomes for theta sweeps")
    p.add_argument("--points", type=int, help="sample count for numeric sweeps")
    p.add_argument("--tol", type=float, help="override the numeric tolerance")
    p.add_argument("--convention", choices=("mumford", "unit"))
    p.add_argument("--order", type=_ints, help="comma-separated n for the generated family")
    p.add_argument("--jobs", type=int, help="worker processes (default: available cores)")
    p.add_argument("--no-timing", action="store_true", help="drop elapsed_ms from the output")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tauforge", description="Exact and numeric checks of KdV tau-function identities.")
    parser.add_argument("--version", action="version", version=f"tauforge {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen-tau", help="print the staircase Schur tau for index k")
    g.add_argument("k", type=int)
    g.add_argument("--json", action="store_true")
    g.add_argument("--serialize", action="store_true", help="print the tau file format")

    c = sub.add_parser("check", help="run one check")
    c.add_argument("name", choices=ALL_CHECKS)
    sel = c.add_mutually_exclusive_group()
    sel.add_argument("--tau", type=int, help="staircase index k (default: every k up to --max-k)")
    sel.add_argument("--tau-file", help="file holding a tau polynomial")
    c.add_argument("--max-k", type=int)
    _common(c)

    r = sub.add_parser("report", help="run every check on every staircase tau up to --max-k")
    r.add_argument("--max-k", type=int)
    r.add_argument("--tau-file", help="also run the exact checks on this tau")
    _common(r)
    return parser


def _config(args) -> RunConfig:
    overrides = {
        "seed": args.seed,
        "trials": args.trials,
        "q": args.q,
        "tolerance": args.tol,
        "convention": args.convention,
        "orders": args.order,
        "jobs": args.jobs,
        "max_k": getattr(args, "max_k", None),
        "tau": getattr(args, "tau", None),
        "tau_file": getattr(args, "tau_file", None),
    }
    if args.points is not None:
        overrides["theta_points"] = overrides["sine_points"] = args.points
    if args.json:
        overrides["format"] = "json"
    if args.no_timing:
        overrides["timing"] = False
    return load_config(args.config, overrides=overrides)


def _document(command: str, cfg: RunConfig, reports) -> dict:
    counts = {s: sum(r.status == s for r in reports) for s in ("pass", "fail", "error")}
    return {
        "tool": "tauforge",
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "config": cfg.public_dict(),
        "summary": dict(counts, total=len(reports),
                        status="pass" if reports and counts["pass"] == len(reports) else "fail"),
        "reports": [r.to_dict(include_timing=cfg.timing) for r in reports],
    }


def _emit(command: str, cfg: RunConfig, reports, out) -> int:
    if cfg.format == "json":
        json.dump(_document(command, cfg, reports), out, sort_keys=True, indent=2)
        out.write("\n")
    else:
        for r in reports:
            out.write(r.text_line() + "\n")
            for side, text in zip(("lhs", "rhs"), r.details.get("sides", ())):
                out.write(f"      {side} = {text}\n")
            for note in r.notes:
                out.write(f"      note: {note}\n")
        ok = sum(r.passed for r in reports)
        out.write(f"{ok}/{len(reports)} passed\n")
    return EXIT_OK if reports and all(r.status == PASS for r in reports) else EXIT_FAIL


def _sources(cfg: RunConfig) -> list[TauSource]:
    if cfg.tau_file:
        return [TauSource.from_file(cfg.tau_file)]
    if cfg.tau is not None:
        return [TauSource.staircase(cfg.tau)]
    return [TauSource.staircase(k) for k in range(1, cfg.max_k + 1)]


def cmd_gen_tau(args, out) -> int:
    if args.k < 1:
        sys.stderr.write("tauforge gen-tau: k must be >= 1\n")
        return EXIT_USAGE
    tau = staircase_tau(args.k)
    if args.json:
        doc = {"k": args.k, "tau": str(tau.poly), "certified": True,
               "terms": tau.poly.term_count(), "degree": tau.poly.total_degree()}
        json.dump(doc, out, sort_keys=True)
        out.write("\n")
    elif args.serialize:
        out.write(tau.serialize())
    else:
        out.write(str(tau.poly) + "\n")
        sys.stderr.write(f"certified: KdV (no even times) and Fay residual zero for k = {args.k}\n")
    return EXIT_OK


def cmd_check(args, out) -> int:
    cfg = _config(args)
    if args.name in NUMERIC_CHECKS:
        tasks = [(args.name, None, cfg)]
    else:
        tasks = [(args.name, s, cfg) for s in _sources(cfg)]
    return _emit("check", cfg, run_tasks(tasks, cfg.jobs), out)


def cmd_report(args, out) -> int:
    cfg = _config(args)
    extra = (TauSource.from_file(cfg.tau_file),) if cfg.tau_file else ()
    return _emit("report", cfg, run_tasks(suite_tasks(cfg, extra), cfg.jobs), out)


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if args.command == "gen-tau":
            return cmd_gen_tau(args, out)
        if args.command == "check":
            return cmd_check(args, out)
        return cmd_report(args, out)
    except ConfigError as exc:
        sys.stderr.write(f"tauforge: configuration error: {exc}\n")
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())
