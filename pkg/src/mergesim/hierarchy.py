"""Single- and two-level cache simulation with exclusive demotion semantics.

Per trace event: L1 is looked up first; a hit ends the event.  On an L1 miss
with an L2 configured, L2 is looked up -- a hit removes the block from L2
(it is promoted into L1), a miss costs a memory fetch.  Either way the block
is inserted into L1; if that displaces a victim, the victim is demoted into
L2, whose own victim (if any) is discarded to memory.  The L2 lookup always
happens before the victim's demotion, so a fetch can never evict its own
target from L2.  No block is ever resident in both levels.

L2 observes only demotion insertions and the lookups caused by L1 misses; it
never sees phase tags, so phase-routed policies are valid at L1 only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import ConfigError, InvariantViolationError
from .policies import CachePolicy, PolicyKind, PolicySpec, make_policy
from .trace import Trace


@dataclass(frozen=True)
class LevelConfig:
    capacity: int
    policy: PolicySpec


@dataclass(frozen=True)
class HierarchyConfig:
    l1: LevelConfig
    l2: Optional[LevelConfig] = None

    def check(self) -> None:
        if self.l1.capacity < 1:
            raise ConfigError(f"l1 capacity must be >= 1, got {self.l1.capacity}")
        if self.l2 is not None:
            if self.l2.capacity < self.l1.capacity:
                raise ConfigError(
                    f"l2 capacity ({self.l2.capacity}) must be >= l1 capacity ({self.l1.capacity})"
                )
            if self.l2.policy.kind is PolicyKind.PBR:
                raise ConfigError("pbr needs phase tags and is valid at l1 only")
            if self.l2.policy.kind is PolicyKind.OPT:
                raise ConfigError("opt predicts the reference stream and is valid at l1 only")


@dataclass
class SimStats:
    """Raw event counters for one simulation run."""

    refs: int = 0
    l1_hits: int = 0
    l1_misses: int = 0
    l2_accesses: int = 0
    l2_hits: int = 0
    l2_misses: int = 0
    memory_fetches: int = 0
    compulsory_misses: int = 0
    demotions_to_l2: int = 0
    l2_evictions_to_memory: int = 0

    def report(self) -> "MissRateReport":
        def rate(numerator: int, denominator: int) -> float:
            return 100.0 * numerator / denominator if denominator else 0.0

        def nocomp(numerator: int) -> int:
            return max(0, numerator - self.compulsory_misses)

        return MissRateReport(
            l1_miss_rate=rate(self.l1_misses, self.refs),
            l2_local_miss_rate=rate(self.l2_misses, self.l2_accesses),
            global_miss_rate=rate(self.memory_fetches, self.refs),
            l1_miss_rate_nocomp=rate(nocomp(self.l1_misses), self.refs),
            l2_local_miss_rate_nocomp=rate(nocomp(self.l2_misses), self.l2_accesses),
            global_miss_rate_nocomp=rate(nocomp(self.memory_fetches), self.refs),
        )


@dataclass(frozen=True)
class MissRateReport:
    """Miss rates as percentages; the ``_nocomp`` variants subtract
    compulsory misses from the numerator (floored at zero)."""

    l1_miss_rate: float
    l2_local_miss_rate: float
    global_miss_rate: float
    l1_miss_rate_nocomp: float
    l2_local_miss_rate_nocomp: float
    global_miss_rate_nocomp: float


def _check_event_invariants(
    l1: CachePolicy,
    l2: CachePolicy | None,
    block: int,
    stats: SimStats,
) -> None:
    if len(l1.resident) > l1.capacity:
        raise InvariantViolationError("l1 residency exceeds capacity")
    if block not in l1:
        raise InvariantViolationError(f"block {block} not resident in l1 after its own access")
    if l2 is not None:
        if len(l2.resident) > l2.capacity:
            raise InvariantViolationError("l2 residency exceeds capacity")
        # isdisjoint iterates its argument, so probe l2 with the smaller l1 view
        if not l2.resident.isdisjoint(l1.resident):
            raise InvariantViolationError("block resident in both levels (exclusivity broken)")
    if stats.l1_hits + stats.l1_misses != stats.refs:
        raise InvariantViolationError("l1 hit/miss counters do not add up to refs")
    if l2 is not None:
        if stats.l2_accesses != stats.l1_misses:
            raise InvariantViolationError("l2 accesses diverge from l1 misses")
        if stats.l2_hits + stats.l2_misses != stats.l2_accesses:
            raise InvariantViolationError("l2 hit/miss counters do not add up to l2 accesses")
    expected_fetches = stats.l2_misses if l2 is not None else stats.l1_misses
    if stats.memory_fetches != expected_fetches:
        raise InvariantViolationError("memory fetches diverge from miss counters")
    if stats.compulsory_misses > stats.memory_fetches:
        raise InvariantViolationError("compulsory misses exceed memory fetches")


def simulate(
    trace: Trace,
    config: HierarchyConfig,
    *,
    validate: bool = False,
    warmup: bool = False,
) -> SimStats:
    """Run a trace through the configured hierarchy and return its counters.

    ``validate`` re-checks residency bounds, exclusivity, and the counter
    identities after every event.  ``warmup`` runs the trace once untallied
    to warm the caches, then tallies a second pass (compulsory misses are
    then zero by construction).
    """
    config.check()
    if warmup and config.l1.policy.kind is PolicyKind.OPT:
        raise ConfigError("warmup mode cannot be combined with the opt policy")
    l1 = make_policy(config.l1.policy, config.l1.capacity, trace=trace)
    l2 = make_policy(config.l2.policy, config.l2.capacity) if config.l2 else None

    stats = SimStats()
    seen: set[int] = set()

    def step(block: int, phase, tally: bool) -> None:
        out = l1.access(block, phase)
        if tally:
            stats.refs += 1
            if block not in seen:
                seen.add(block)
                stats.compulsory_misses += 1
        else:
            seen.add(block)
        if out.hit:
            if tally:
                stats.l1_hits += 1
            return
        if tally:
            stats.l1_misses += 1
        if l2 is None:
            if tally:
                stats.memory_fetches += 1
        else:
            if tally:
                stats.l2_accesses += 1
            if block in l2:
                l2.remove(block)  # promote: the block now lives in L1 only
                if tally:
                    stats.l2_hits += 1
            elif tally:
                stats.l2_misses += 1
                stats.memory_fetches += 1
            if out.evicted is not None:
                demoted = l2.access(out.evicted)
                if demoted.hit:
                    raise InvariantViolationError("demoted block was already resident in l2")
                if tally:
                    stats.demotions_to_l2 += 1
                    if demoted.evicted is not None:
                        stats.l2_evictions_to_memory += 1

    passes = (False, True) if warmup else (True,)
    for tally in passes:
        for ev in trace.events:
            step(ev.block, ev.phase, tally)
            if validate:
                _check_event_invariants(l1, l2, ev.block, stats)
    return stats
