"""Command-line surface: run checkers, searches, and experiments.

Subcommands: verify, kmin, brute, sidon, explore-t, report.  Reports stream
as JSON Lines (one object per check, each embedding the resolved config);
frontiers are CSV.  Exit codes: 0 pass, 1 check failure, 2 usage/config
error, 3 resource cap exceeded.  The checkpoint directory for resumable
searches comes from $CHOWLA_LAB_CACHE.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass, field

from . import instances, oracle, verify
from .errors import ChowlaLabError, TooLargeError
from .reports import LemmaReport
from .sets import SymSet
from .trigpoly import indicator, min_norm
from .verify import DEFAULT_CONSTANTS

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_CAP = 3


@dataclass
class RunConfig:
    """Resolved run configuration; embedded in every emitted report line."""

    command: str
    tol: float = 1e-6
    grid_factor: int = 64
    constants: dict = field(default_factory=lambda: dict(DEFAULT_CONSTANTS))
    seed: int = 0
    parallelism: int = 1
    output: str | None = None

    def validate(self) -> None:
        if self.tol <= 0:
            raise ChowlaLabError(f"tol must be positive, got {self.tol}")
        if self.grid_factor < 16:
            raise ChowlaLabError(f"grid factor must be >= 16, got {self.grid_factor}")
        if self.parallelism < 1:
            raise ChowlaLabError("parallelism must be >= 1")

    def to_json_dict(self) -> dict:
        return {
            "command": self.command,
            "tol": self.tol,
            "grid_factor": self.grid_factor,
            "constants": dict(self.constants),
            "seed": self.seed,
            "parallelism": self.parallelism,
            "output": self.output,
        }


def cache_dir() -> str:
    return os.environ.get(
        "CHOWLA_LAB_CACHE",
        os.path.join(os.path.expanduser("~"), ".cache", "chowla-lab"),
    )


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tol", type=float, default=1e-6)
    parser.add_argument("--grid-factor", type=int, default=64)
    parser.add_argument("--const", action="append", default=[],
                        metavar="NAME=VALUE",
                        help="override a named constant (c1 c2 c3 C_a C_b C_ap C_l1 C_prime)")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--out", type=str, default=None)
    parser.add_argument("--resume", action="store_true")


def _build_config(args: argparse.Namespace, command: str) -> RunConfig:
    constants = dict(DEFAULT_CONSTANTS)
    for item in args.const:
        if "=" not in item:
            raise ChowlaLabError(f"bad --const {item!r}, expected NAME=VALUE")
        name, value = item.split("=", 1)
        if name not in constants:
            raise ChowlaLabError(
                f"unknown constant {name!r}; known: {sorted(constants)}")
        constants[name] = float(value)
    config = RunConfig(
        command=command,
        tol=args.tol,
        grid_factor=args.grid_factor,
        constants=constants,
        seed=args.seed,
        parallelism=args.jobs,
        output=args.out,
    )
    config.validate()
    return config


class _Output:
    """Single-writer line sink: stdout or a file."""

    def __init__(self, path: str | None):
        self.path = path
        self._fh = open(path, "w") if path else sys.stdout

    def line(self, text: str) -> None:
        self._fh.write(text + "\n")

    def close(self) -> None:
        if self.path:
            self._fh.close()
        else:
            self._fh.flush()


def _emit_report(out: _Output, config: RunConfig, suite: str,
                 report: LemmaReport) -> None:
    payload = {"type": "lemma_report", "suite": suite,
               "config": config.to_json_dict()}
    payload.update(report.to_json_dict())
    out.line(json.dumps(payload, sort_keys=True))


def _parse_sets(tokens: list[str]) -> list[SymSet]:
    sets = []
    for token in tokens:
        if token.startswith("file:"):
            with open(token[5:]) as fh:
                for line in fh:
                    line = line.strip()
                    if line:
                        sets.append(SymSet(json.loads(line)))
        else:
            sets.append(instances.parse_set_token(token))
    return sets


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------

def cmd_verify(args: argparse.Namespace) -> int:
    config = _build_config(args, "verify")
    rng = random.Random(config.seed)
    sets = _parse_sets(args.sets or [])
    suites = [s for token in (args.suite or ["all"]) for s in token.split(",")]
    opts = {
        "tol": config.tol,
        "grid_factor": config.grid_factor,
        "constants": config.constants,
    }
    out = _Output(config.output)
    failures = 0
    total = 0
    vacuous = 0
    try:
        for name, report in instances.run_suites(
                suites, rng, sets, args.trials, opts):
            total += 1
            if report.vacuous:
                vacuous += 1
            elif not report.passed:
                failures += 1
            _emit_report(out, config, name, report)
        out.line(json.dumps({
            "type": "summary",
            "total": total,
            "failures": failures,
            "vacuous": vacuous,
            "config": config.to_json_dict(),
        }, sort_keys=True))
    finally:
        out.close()
    return EXIT_CHECK_FAILED if failures else EXIT_OK


def cmd_kmin(args: argparse.Namespace) -> int:
    config = _build_config(args, "kmin")
    if args.sidon:
        target = instances.sidon_difference_construction(args.sidon)
    elif args.set:
        target = instances.parse_set_token(args.set)
    else:
        raise ChowlaLabError("kmin needs --set or --sidon")
    cert = min_norm(indicator(target), tol=min(config.tol, 1e-9),
                    grid_factor=config.grid_factor)
    payload = {
        "type": "min_certificate",
        "set": target.to_json(),
        "certificate": cert.to_json_dict(),
        "min_norm_upper": cert.min_norm_upper,
        "min_norm_lower": cert.min_norm_lower,
        "cosine_value": cert.min_norm_lower / 2.0,
        "conventions": {
            "symmetric": "norm of the exponential sum over A",
            "cosine": "half of it: -min of the cosine sum over the positive half",
        },
        "config": config.to_json_dict(),
    }
    out = _Output(config.output)
    out.line(json.dumps(payload, sort_keys=True))
    out.close()
    return EXIT_OK


def cmd_brute(args: argparse.Namespace) -> int:
    config = _build_config(args, "brute")
    entry = oracle.brute_k(
        args.n, args.M, tol=min(config.tol, 1e-7),
        cap=args.cap,
        checkpoint_dir=cache_dir(),
        resume=args.resume,
        grid_factor=config.grid_factor,
    )
    out = _Output(config.output)
    if config.output is None or not os.path.exists(config.output) \
            or os.path.getsize(config.output) == 0:
        out.line(oracle.CSV_HEADER)
    out.line(entry.to_csv_row())
    out.close()
    return EXIT_OK


def cmd_sidon(args: argparse.Namespace) -> int:
    config = _build_config(args, "sidon")
    if ".." in args.m:
        lo, hi = args.m.split("..")
        m_values = range(int(lo), int(hi) + 1)
    else:
        m_values = [int(args.m)]
    out = _Output(config.output)
    out.line(oracle.SIDON_CSV_HEADER)
    for m in m_values:
        out.line(oracle.sidon_upper_experiment(
            m, grid_factor=config.grid_factor).to_csv_row())
    out.close()
    return EXIT_OK


def cmd_explore_t(args: argparse.Namespace) -> int:
    config = _build_config(args, "explore-t")
    if args.sidon:
        target = instances.sidon_difference_construction(args.sidon)
    elif args.set:
        target = instances.parse_set_token(args.set)
    else:
        raise ChowlaLabError("explore-t needs --set or --sidon")
    best = oracle.best_t_energy(target)
    search = oracle.prime_product_t_search(
        target, m_param=args.t_max_prime, cap_length=args.L,
        explore_depth=args.depth)
    bad_steps = [s for s in search.trace if s.r_le_l and not s.ok]
    payload = {
        "type": "shift_search",
        "set": target.to_json(),
        "best_shift": {"t": best.t, "size": best.size, "energy": best.energy},
        "orbit": search.to_json_dict() if args.full_trace else {
            "t_best": search.t_best,
            "bt_size": search.bt_size,
            "t0": search.t0,
            "orbit_size": search.orbit_size,
            "trace_steps": len(search.trace),
            "violated_steps": len(bad_steps),
        },
        "config": config.to_json_dict(),
    }
    out = _Output(config.output)
    out.line(json.dumps(payload, sort_keys=True))
    out.close()
    return EXIT_CHECK_FAILED if bad_steps else EXIT_OK


def cmd_report(args: argparse.Namespace) -> int:
    """Bundle: quick verification pass, Sidon sweep, small frontier, figures."""
    from . import figures

    config = _build_config(args, "report")
    outdir = args.out or "chowla-report"
    os.makedirs(outdir, exist_ok=True)
    fig_dir = os.path.join(outdir, "figures")
    os.makedirs(fig_dir, exist_ok=True)
    rng = random.Random(config.seed)
    opts = {
        "tol": config.tol,
        "grid_factor": config.grid_factor,
        "constants": config.constants,
    }

    reports: list[LemmaReport] = []
    jsonl = _Output(os.path.join(outdir, "report.jsonl"))
    failures = 0
    for name, report in instances.run_suites(
            args.suite or ["all"], rng, [], args.trials, opts):
        reports.append(report)
        if not report.passed and not report.vacuous:
            failures += 1
        _emit_report(jsonl, config, name, report)
    jsonl.close()

    experiments = [oracle.sidon_upper_experiment(m, grid_factor=config.grid_factor)
                   for m in range(2, args.sidon_max + 1)]
    with open(os.path.join(outdir, "sidon.csv"), "w") as fh:
        fh.write(oracle.SIDON_CSV_HEADER + "\n")
        for e in experiments:
            fh.write(e.to_csv_row() + "\n")

    entries = oracle.frontier(
        range(1, args.frontier_n + 1), range(2, args.frontier_m + 1),
        tol=1e-7, checkpoint_dir=cache_dir(), grid_factor=config.grid_factor)
    with open(os.path.join(outdir, "frontier.csv"), "w") as fh:
        fh.write(oracle.CSV_HEADER + "\n")
        for e in entries:
            fh.write(e.to_csv_row() + "\n")

    figures.sidon_ratio_figure(experiments, os.path.join(fig_dir, "sidon_ratio.png"))
    figures.frontier_figure(entries, os.path.join(fig_dir, "frontier.png"))
    figures.slack_histogram(reports, os.path.join(fig_dir, "slack_hist.png"))
    print(f"report written to {outdir}/ ({len(reports)} checks, "
          f"{failures} failures, figures in {fig_dir}/)")
    return EXIT_CHECK_FAILED if failures else EXIT_OK


# --------------------------------------------------------------------------
# entry point
# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chowla-lab",
        description="Certified one-sided estimates for sparse cosine sums "
                    "over symmetric integer sets",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run lemma checkers over instances")
    p.add_argument("--suite", action="append",
                   help="suite name or alias (repeatable, comma-separated ok)")
    p.add_argument("--sets", "--set", dest="sets", action="append",
                   help="instance source: sidon:M, ap:K, random:H[:B[:S]], "
                        "file:PATH, or a JSON array")
    p.add_argument("--trials", type=int, default=20)
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("kmin", help="certify the one-sided norm of a set")
    p.add_argument("--set", type=str, default=None)
    p.add_argument("--sidon", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_kmin)

    p = sub.add_parser("brute", help="exhaustive frontier row for (n, M)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--cap", type=int, default=oracle.DEFAULT_CAP)
    _add_common(p)
    p.set_defaults(func=cmd_brute)

    p = sub.add_parser("sidon", help="difference-set upper-bound experiments")
    p.add_argument("--m", type=str, default="2..8",
                   help="base size or range, e.g. 4 or 2..10")
    _add_common(p)
    p.set_defaults(func=cmd_sidon)

    p = sub.add_parser("explore-t", help="shift searches and orbit traces")
    p.add_argument("--set", type=str, default=None)
    p.add_argument("--sidon", type=int, default=None)
    p.add_argument("--t-max-prime", type=int, default=3)
    p.add_argument("--L", type=int, default=None)
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--full-trace", action="store_true")
    _add_common(p)
    p.set_defaults(func=cmd_explore_t)

    p = sub.add_parser("report", help="write reports, tables, and figures")
    p.add_argument("--suite", action="append")
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--sidon-max", type=int, default=8)
    p.add_argument("--frontier-n", type=int, default=3)
    p.add_argument("--frontier-m", type=int, default=10)
    _add_common(p)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except TooLargeError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ChowlaLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def console_main() -> None:  # pragma: no cover - thin wrapper
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
