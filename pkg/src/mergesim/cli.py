"""Command-line front end: trace generation, single runs, and sweeps.

Exit codes: 0 success, 2 usage or validation error, 3 I/O error,
4 internal invariant violation.  Errors go to stderr prefixed ``error:``.
"""

from __future__ import annotations

import argparse
import re
import sys

from .errors import (
    ConfigError,
    ContractViolationError,
    InvariantViolationError,
    TraceParseError,
    UndefinedImprovementError,
)
from .experiment import SweepEntry, SweepFamily, SweepSpec, render, run_sweep
from .hierarchy import HierarchyConfig, LevelConfig, simulate
from .policies import PolicySpec, parse_policy
from .trace import generate_merge_sort_trace, read_trace, write_trace

_FORMAT_NAMES = {"csv": "csv", "md": "markdown", "gnuplot": "gnuplot-data"}
_RANGE = re.compile(r"^(\d+)\.\.(\d+)x(\d+)$")


def _parse_int_list(text: str, flag: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ConfigError(f"{flag} expects a comma-separated list of integers, got {text!r}") from None
    if not values:
        raise ConfigError(f"{flag} must not be empty")
    return values

def _parse_lengths(text: str) -> tuple[int, ...]:
    """Either a comma list or a geometric range ``a..bxk``."""
    match = _RANGE.match(text.strip())
    if not match:
        return _parse_int_list(text, "--lengths")
    start, end, factor = (int(g) for g in match.groups())
    if factor < 2:
        raise ConfigError(f"range factor must be >= 2, got {factor}")
    values = []
    v = start
    while v <= end:
        values.append(v)
        v *= factor
    if not values:
        raise ConfigError(f"empty range {text!r}")
    return tuple(values)


def _parse_policy_list(text: str) -> tuple[PolicySpec, ...]:
    return tuple(parse_policy(part) for part in text.split(","))


def _parse_pair_list(text: str) -> tuple[SweepEntry, ...]:
    """Comma list of ``l1pol/l2pol`` pairs; a bare name runs L1-only."""
    entries = []
    for item in text.split(","):
        parts = item.split("/")
        if len(parts) == 1:
            entries.append(SweepEntry(parse_policy(parts[0])))
        elif len(parts) == 2:
            entries.append(SweepEntry(parse_policy(parts[0]), parse_policy(parts[1])))
        else:
            raise ConfigError(f"bad pair {item!r} (expected 'l1policy/l2policy')")
    return tuple(entries)


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as sink:
            sink.write(text)


def _cmd_gen_trace(args) -> int:
    trace = generate_merge_sort_trace(args.n)
    if args.out is None:
        write_trace(trace, sys.stdout)
    else:
        with open(args.out, "w", encoding="utf-8") as sink:
            write_trace(trace, sink)
    return 0


def _cmd_simulate(args) -> int:
    if (args.trace is None) == (args.n is None):
        raise ConfigError("provide exactly one of --trace or --n")
    if args.trace is not None:
        with open(args.trace, "r", encoding="utf-8") as source:
            trace = read_trace(source)
    else:
        trace = generate_merge_sort_trace(args.n)

    l2 = None
    if (args.l2 is None) != (args.policy_l2 is None):
        raise ConfigError("--l2 and --policy-l2 must be given together")
    if args.l2 is not None:
        l2 = LevelConfig(args.l2, parse_policy(args.policy_l2))
    config = HierarchyConfig(LevelConfig(args.l1, parse_policy(args.policy_l1)), l2)

    stats = simulate(trace, config, validate=args.validate)
    report = stats.report()

    lines = [f"trace: n={trace.list_len} events={len(trace.events)}"]
    lines.append(f"l1: capacity={config.l1.capacity} policy={config.l1.policy.label}")
    if l2 is not None:
        lines.append(f"l2: capacity={l2.capacity} policy={l2.policy.label}")
    for name in (
        "refs",
        "l1_hits",
        "l1_misses",
        "l2_accesses",
        "l2_hits",
        "l2_misses",
        "memory_fetches",
        "compulsory_misses",
        "demotions_to_l2",
        "l2_evictions_to_memory",
    ):
        lines.append(f"{name}: {getattr(stats, name)}")
    suffix = "_nocomp" if args.metric == "nocomp" else ""
    lines.append(f"metric: {args.metric}")
    for name in ("l1_miss_rate", "l2_local_miss_rate", "global_miss_rate"):
        lines.append(f"{name}: {getattr(report, name + suffix):.2f}")
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def _run_and_emit(args, spec: SweepSpec) -> int:
    table = run_sweep(spec)
    fmt = _FORMAT_NAMES[args.format]
    _emit(render(table, fmt, rate=args.rate, variant=args.metric), args.out)
    if args.plot is not None:
        from .plotting import plot_sweep  # matplotlib import is slow; defer

        plot_sweep(table, args.plot, rate=args.rate, variant=args.metric)
    return 0


def _cmd_sweep_l1(args) -> int:
    spec = SweepSpec(
        family=SweepFamily.L1_SWEEP,
        axis=_parse_int_list(args.sizes, "--sizes"),
        entries=tuple(SweepEntry(p) for p in _parse_policy_list(args.policies)),
        list_len=args.n,
        warmup=args.warmup,
    )
    return _run_and_emit(args, spec)


def _cmd_sweep_pairs(args) -> int:
    entries = tuple(
        SweepEntry(l1p, l2p)
        for l1p in _parse_policy_list(args.l1_policies)
        for l2p in _parse_policy_list(args.l2_policies)
    )
    spec = SweepSpec(
        family=SweepFamily.PAIR_SWEEP,
        axis=_parse_int_list(args.l2_sizes, "--l2-sizes"),
        entries=entries,
        list_len=args.n,
        l1_capacity=args.l1,
        warmup=args.warmup,
    )
    return _run_and_emit(args, spec)


def _cmd_sweep_list(args) -> int:
    spec = SweepSpec(
        family=SweepFamily.LIST_SWEEP,
        axis=_parse_lengths(args.lengths),
        entries=_parse_pair_list(args.pair),
        l1_capacity=args.l1,
        l2_capacity=args.l2,
        warmup=args.warmup,
    )
    return _run_and_emit(args, spec)


def _add_sweep_output_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--format", choices=sorted(_FORMAT_NAMES), default="csv",
                     help="table format (default: csv)")
    sub.add_argument("--metric", choices=("raw", "nocomp"), default="nocomp",
                     help="count or exclude compulsory misses (default: nocomp)")
    sub.add_argument("--rate", choices=("l1", "l2", "global"), default="global",
                     help="which miss rate to tabulate (default: global)")
    sub.add_argument("--out", metavar="PATH", help="write the table here instead of stdout")
    sub.add_argument("--plot", metavar="PATH", help="also render the sweep as a figure (png/pdf/svg)")
    sub.add_argument("--warmup", action="store_true",
                     help="run each trace twice and measure the second pass")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mergesim",
        description="Block-granularity cache replacement simulator driven by merge-sort reference traces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen-trace", help="generate a merge-sort reference trace")
    gen.add_argument("--n", type=int, required=True, help="list length (power of two)")
    gen.add_argument("--out", metavar="PATH", help="trace file (default: stdout)")
    gen.set_defaults(func=_cmd_gen_trace)

    sim = sub.add_parser("simulate", help="run one trace through a cache hierarchy")
    sim.add_argument("--trace", metavar="PATH", help="trace file to replay")
    sim.add_argument("--n", type=int, help="generate the trace for this list length instead")
    sim.add_argument("--l1", type=int, required=True, help="L1 capacity in blocks")
    sim.add_argument("--policy-l1", required=True, help="lru|fifo|lfu|pbr[:f=<k>]|opt")
    sim.add_argument("--l2", type=int, help="L2 capacity in blocks")
    sim.add_argument("--policy-l2", help="lru|fifo|lfu")
    sim.add_argument("--metric", choices=("raw", "nocomp"), default="raw",
                     help="count or exclude compulsory misses in the rates (default: raw)")
    sim.add_argument("--validate", action="store_true",
                     help="check residency, exclusivity, and counter identities per event")
    sim.set_defaults(func=_cmd_simulate)

    l1sweep = sub.add_parser("sweep-l1", help="single-level miss rates over L1 sizes")
    l1sweep.add_argument("--n", type=int, default=256)
    l1sweep.add_argument("--policies", default="lru,fifo,lfu,pbr")
    l1sweep.add_argument("--sizes", default="8,16,32,64,128,256")
    _add_sweep_output_flags(l1sweep)
    l1sweep.set_defaults(func=_cmd_sweep_l1)

    pairs = sub.add_parser("sweep-pairs", help="policy-pair miss rates over L2 sizes")
    pairs.add_argument("--n", type=int, default=256)
    pairs.add_argument("--l1", type=int, default=8)
    pairs.add_argument("--l1-policies", default="lru,fifo,pbr")
    pairs.add_argument("--l2-policies", default="lru,fifo,lfu")
    pairs.add_argument("--l2-sizes", default="16,56,96,136,176,216,256")
    _add_sweep_output_flags(pairs)
    pairs.set_defaults(func=_cmd_sweep_pairs)

    lists = sub.add_parser("sweep-list", help="miss rates over list lengths at fixed capacities")
    lists.add_argument("--l1", type=int, default=32)
    lists.add_argument("--l2", type=int, default=128)
    lists.add_argument("--lengths", default="8..1024x2",
                       help="comma list or geometric range a..bxk (default: 8..1024x2)")
    lists.add_argument("--pair", default="pbr/fifo,lru/fifo,fifo/fifo,lfu/fifo",
                       help="comma list of l1policy/l2policy pairs; a bare name runs L1-only")
    _add_sweep_output_flags(lists)
    lists.set_defaults(func=_cmd_sweep_list)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except (ConfigError, TraceParseError, UndefinedImprovementError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InvariantViolationError, ContractViolationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
