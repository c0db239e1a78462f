"""Sweep harness: run families of simulations and render result tables.

Three sweep families cover the standard experiments:

* ``L1_SWEEP``   fixed list length, single-level cache, L1 capacity varied.
* ``PAIR_SWEEP`` fixed list length and L1 capacity, policy pairs compared
  while the L2 capacity is varied.
* ``LIST_SWEEP`` fixed capacities, list length varied.

Every cell is simulated cold-started (optionally warmed) on a trace shared
by all cells of the same list length, so output is fully deterministic.
"""

from __future__ import annotations

import enum
import io
from dataclasses import dataclass
from typing import Optional

from .errors import ConfigError, UndefinedImprovementError
from .hierarchy import HierarchyConfig, LevelConfig, MissRateReport, simulate
from .policies import PolicyKind, PolicySpec
from .trace import Trace, generate_merge_sort_trace


class SweepFamily(enum.Enum):
    L1_SWEEP = "l1"
    PAIR_SWEEP = "pairs"
    LIST_SWEEP = "list"


@dataclass(frozen=True)
class SweepEntry:
    """One compared column: an L1 policy, optionally paired with an L2 policy."""

    l1_policy: PolicySpec
    l2_policy: Optional[PolicySpec] = None

    @property
    def label(self) -> str:
        if self.l2_policy is None:
            return self.l1_policy.label
        return f"{self.l1_policy.label}/{self.l2_policy.label}"


@dataclass(frozen=True)
class SweepSpec:
    family: SweepFamily
    axis: tuple[int, ...]
    entries: tuple[SweepEntry, ...]
    list_len: Optional[int] = None       # fixed n (L1_SWEEP, PAIR_SWEEP)
    l1_capacity: Optional[int] = None    # fixed L1 (PAIR_SWEEP, LIST_SWEEP)
    l2_capacity: Optional[int] = None    # fixed L2 (LIST_SWEEP)
    warmup: bool = False

    def check(self) -> None:
        if not self.axis:
            raise ConfigError("sweep axis must not be empty")
        if any(b <= a for a, b in zip(self.axis, self.axis[1:])):
            raise ConfigError("sweep axis values must be strictly increasing")
        if not self.entries:
            raise ConfigError("sweep needs at least one policy entry")
        for entry in self.entries:
            if entry.l2_policy is not None and entry.l2_policy.kind in (PolicyKind.PBR, PolicyKind.OPT):
                raise ConfigError(f"{entry.l2_policy.label} is valid at l1 only")
        if self.family in (SweepFamily.L1_SWEEP, SweepFamily.PAIR_SWEEP):
            if self.list_len is None:
                raise ConfigError("this sweep family needs a fixed list length")
        if self.family is SweepFamily.L1_SWEEP:
            if any(e.l2_policy is not None for e in self.entries):
                raise ConfigError("l1 sweep entries are single-level policies")
        if self.family is SweepFamily.PAIR_SWEEP:
            if self.l1_capacity is None:
                raise ConfigError("pair sweep needs a fixed l1 capacity")
            if any(e.l2_policy is None for e in self.entries):
                raise ConfigError("pair sweep entries must name an l2 policy")
        if self.family is SweepFamily.LIST_SWEEP:
            if self.l1_capacity is None:
                raise ConfigError("list sweep needs a fixed l1 capacity")
            if self.l2_capacity is None and any(e.l2_policy is not None for e in self.entries):
                raise ConfigError("paired list sweep entries need a fixed l2 capacity")


@dataclass(frozen=True)
class SweepTable:
    spec: SweepSpec
    labels: tuple[str, ...]
    cells: dict[tuple[str, int], MissRateReport]

    def cell(self, label: str, axis_value: int) -> MissRateReport:
        return self.cells[(label, axis_value)]


def _cell_config(spec: SweepSpec, entry: SweepEntry, axis_value: int) -> HierarchyConfig:
    if spec.family is SweepFamily.L1_SWEEP:
        return HierarchyConfig(LevelConfig(axis_value, entry.l1_policy))
    if spec.family is SweepFamily.PAIR_SWEEP:
        return HierarchyConfig(
            LevelConfig(spec.l1_capacity, entry.l1_policy),
            LevelConfig(axis_value, entry.l2_policy),
        )
    l2 = None
    if entry.l2_policy is not None:
        l2 = LevelConfig(spec.l2_capacity, entry.l2_policy)
    return HierarchyConfig(LevelConfig(spec.l1_capacity, entry.l1_policy), l2)


def run_sweep(spec: SweepSpec) -> SweepTable:
    """Fill every (entry, axis value) cell; traces are reused per list length."""
    spec.check()
    traces: dict[int, Trace] = {}
    cells: dict[tuple[str, int], MissRateReport] = {}
    for axis_value in spec.axis:
        n = axis_value if spec.family is SweepFamily.LIST_SWEEP else spec.list_len
        trace = traces.get(n)
        if trace is None:
            trace = traces.setdefault(n, generate_merge_sort_trace(n))
        for entry in spec.entries:
            config = _cell_config(spec, entry, axis_value)
            stats = simulate(trace, config, warmup=spec.warmup)
            cells[(entry.label, axis_value)] = stats.report()
    return SweepTable(spec, tuple(e.label for e in spec.entries), cells)


def improvement(better: float, baseline: float) -> float:
    """Relative miss-rate reduction in percent: (baseline - better) / baseline * 100.

    Both arguments are miss-rate fractions in [0, 1].  Equals 100 exactly
    when ``better`` is 0 against a nonzero baseline; a zero baseline leaves
    the improvement undefined and raises.
    """
    for name, value in (("better", better), ("baseline", baseline)):
        if not 0.0 <= value <= 1.0:
            raise ConfigError(f"{name} must be a fraction in [0, 1], got {value}")
    if baseline == 0.0:
        raise UndefinedImprovementError("improvement over a zero baseline is undefined")
    return (baseline - better) / baseline * 100.0


_RATE_ATTRS = {
    "l1": "l1_miss_rate",
    "l2": "l2_local_miss_rate",
    "global": "global_miss_rate",
}

FORMATS = ("csv", "markdown", "gnuplot-data")


def cell_value(report: MissRateReport, rate: str = "global", variant: str = "nocomp") -> float:
    """Pick one percentage out of a report by rate kind and compulsory handling."""
    try:
        attr = _RATE_ATTRS[rate]
    except KeyError:
        raise ConfigError(f"unknown rate {rate!r} (expected l1, l2, or global)") from None
    if variant == "nocomp":
        attr += "_nocomp"
    elif variant != "raw":
        raise ConfigError(f"unknown metric variant {variant!r} (expected raw or nocomp)")
    return getattr(report, attr)


def render(table: SweepTable, fmt: str, rate: str = "global", variant: str = "nocomp") -> str:
    """Render a sweep table as csv, markdown, or gnuplot-data text."""
    rows = []
    for axis_value in table.spec.axis:
        values = [
            f"{cell_value(table.cell(label, axis_value), rate, variant):.2f}"
            for label in table.labels
        ]
        rows.append((str(axis_value), values))

    out = io.StringIO()
    if fmt == "csv":
        out.write("axis," + ",".join(table.labels) + "\n")
        for axis_text, values in rows:
            out.write(axis_text + "," + ",".join(values) + "\n")
    elif fmt == "markdown":
        out.write("| axis | " + " | ".join(table.labels) + " |\n")
        out.write("| ---: |" + " ---: |" * len(table.labels) + "\n")
        for axis_text, values in rows:
            out.write("| " + axis_text + " | " + " | ".join(values) + " |\n")
    elif fmt == "gnuplot-data":
        out.write("# axis " + " ".join(table.labels) + "\n")
        for axis_text, values in rows:
            out.write(axis_text + " " + " ".join(values) + "\n")
    else:
        raise ConfigError(f"unknown format {fmt!r} (expected one of {', '.join(FORMATS)})")
    return out.getvalue()
