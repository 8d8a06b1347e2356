"""``recall-lab`` command line: capacity sweeps and single-network demos.

Exit codes: 0 success, 1 runtime error (I/O, training failure), 2 usage error.
"""
from __future__ import annotations

import argparse
import os
import sys
import warnings
from dataclasses import dataclass

from .errors import RecallLabError
from .harness import ExperimentConfig, Rule, run_capacity_sweep, run_trial_detailed, write_curve
from .learning import LearningConfig
from .memcore import Levels, QuantizerConfig

SEED_ENV = "RECALL_LAB_SEED"
U64_MAX = 2**64 - 1


@dataclass(frozen=True)
class CliInvocation:
    subcommand: str
    config: ExperimentConfig
    out: str


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {text}")
    return value


def _seed(text):
    value = int(text)
    if not 0 <= value <= U64_MAX:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned 64-bit integer, got {text}")
    return value


def _default_seed():
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 42
    try:
        return _seed(raw)
    except (ValueError, argparse.ArgumentTypeError):
        raise RecallLabError(f"{SEED_ENV}={raw!r} is not an unsigned 64-bit integer") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def build_parser(default_seed: int = 42) -> argparse.ArgumentParser:
    parser = _Parser(prog="recall-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)
    for name, help_text in [
        ("sweep", "run a capacity sweep and write its CSV"),
        ("demo", "train one network and report each memory's retrieval"),
    ]:
        p = sub.add_parser(name, help=help_text, allow_abbrev=False)
        p.add_argument("--neurons", type=int, default=16)
        p.add_argument("--levels", type=int, choices=(2, 4), default=2)
        p.add_argument("--rule", choices=[r.value for r in Rule], default=Rule.DELTA.value)
        p.add_argument("--sites", type=_positive_int, default=1)
        p.add_argument("--eta", type=float, default=0.1)
        p.add_argument("--theta", type=float, default=1.0)
        p.add_argument("--epochs", type=_positive_int, default=100)
        p.add_argument("--passes", type=_positive_int, default=50)
        p.add_argument("--wh-epsilon", type=float, default=0.01)
        p.add_argument("--trials", type=_positive_int, default=50)
        p.add_argument("--seed", type=_seed, default=default_seed)
        p.add_argument("--min-memories", type=_positive_int, default=1)
        p.add_argument("--max-memories", type=_positive_int, default=None,
                       help="defaults to --neurons for sweep and --neurons // 2 for demo")
        p.add_argument("--out", default="curve.csv")
    return parser


def parse_args(argv=None) -> CliInvocation:
    """Parse and validate; usage problems exit with status 2."""
    try:
        default_seed = _default_seed()
    except RecallLabError as exc:
        print(f"recall-lab: error: {exc}", file=sys.stderr)
        raise SystemExit(2)
    parser = build_parser(default_seed)
    ns = parser.parse_args(argv)
    if ns.neurons < 2:
        parser.error(f"argument --neurons: need at least 2 neurons, got {ns.neurons}")
    if ns.max_memories is None:
        ns.max_memories = ns.neurons if ns.subcommand == "sweep" else max(1, ns.neurons // 2)
    if ns.subcommand == "demo":
        ns.min_memories = ns.max_memories
    if ns.min_memories > ns.max_memories:
        parser.error(f"argument --min-memories: {ns.min_memories} exceeds --max-memories {ns.max_memories}")
    try:
        levels = Levels.from_count(ns.levels)
        cfg = ExperimentConfig(
            n=ns.neurons,
            levels=levels,
            rule=Rule(ns.rule),
            sites_per_memory=ns.sites,
            learning=LearningConfig(
                eta=ns.eta,
                max_passes_per_memory=ns.passes,
                max_epochs=ns.epochs,
                wh_error_tolerance=ns.wh_epsilon,
                quantizer=QuantizerConfig(levels, ns.theta),
            ),
            trials=ns.trials,
            base_seed=ns.seed,
            memory_range=(ns.min_memories, ns.max_memories),
        )
    except RecallLabError as exc:
        parser.error(str(exc))
    if ns.min_memories > cfg.max_feasible():
        parser.error(
            f"argument --min-memories: {ns.min_memories} memories cannot get unique active sites "
            f"(at most {cfg.max_feasible()} for {ns.neurons} neurons, {ns.sites} site(s) each)"
        )
    return CliInvocation(ns.subcommand, cfg, ns.out)


def _sweep(inv: CliInvocation) -> int:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        curve = run_capacity_sweep(inv.config)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    write_curve(curve, inv.out)
    peak = curve.peak()
    print(f"peak: trained={peak.trained} mean_retrieved={peak.mean_retrieved:.6f} "
          f"std_retrieved={peak.std_retrieved:.6f} trials={peak.trials} -> {inv.out}")
    return 0


def _demo(inv: CliInvocation) -> int:
    cfg = inv.config
    M = cfg.memory_range[1]
    result = run_trial_detailed(cfg, M, 0)
    print(f"{cfg.rule.value} rule, n={cfg.n}, {cfg.levels.name.lower()}, M={M}, seed={cfg.base_seed}")
    if result.report is not None:
        print(f"training: epochs={result.report.epochs_run} converged={result.report.converged}")
    for i, (memory, g, ok) in enumerate(zip(result.memories, result.generators, result.verdicts)):
        values = " ".join(f"{v:+d}" for v in memory)
        print(f"memory {i}: [{values}] sites={list(g.order.start_sites)} "
              f"order={list(g.order.pi)} {'retrieved' if ok else 'FAILED'}")
    print(f"retrieved {result.retrieved}/{M}")
    return 0


def main(argv=None) -> int:
    try:
        inv = parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _sweep(inv) if inv.subcommand == "sweep" else _demo(inv)
    except (OSError, RecallLabError) as exc:
        print(f"recall-lab: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
