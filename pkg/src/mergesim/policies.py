"""Replacement policies over block ids, all behind one access interface.

Every policy tracks at most ``capacity`` resident blocks.  ``access`` looks
the block up, updates bookkeeping, and on a miss inserts it, evicting at
most one victim.  Tie-breaking rules are part of the contract:

* LRU      evicts the least recently used block; hits refresh recency.
* FIFO     evicts the earliest-inserted block; hits never refresh position.
* LFU      evicts the lowest-frequency block, least recently used among
           ties; a block re-entering after eviction restarts at count 1.
* partitioned ("pbr")  splits capacity into a small fixed part that absorbs
           build-phase insertions and a variable part for final-merge
           insertions; lookups search both, each part evicts FIFO within
           itself.
* OPT      is the offline oracle: it evicts the resident block whose next
           use lies farthest ahead, preferring blocks never used again
           (lowest block id among those).  Requires the full reference
           stream up front via :func:`prepare_opt`.
"""

from __future__ import annotations

import collections
import enum
import math
import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional

from .errors import ConfigError, ContractViolationError
from .trace import Phase, Trace, TraceEvent

DEFAULT_PBR_FIXED = 2


class PolicyKind(enum.Enum):
    LRU = "lru"
    FIFO = "fifo"
    LFU = "lfu"
    PBR = "pbr"
    OPT = "opt"


class AccessOutcome(NamedTuple):
    hit: bool
    evicted: Optional[int] = None


class CachePolicy:
    """Base for one cache level's replacement bookkeeping.

    Instances are single-threaded; distinct instances are independent.
    """

    def __init__(self, capacity: int):
        if capacity < 1:
            raise ConfigError(f"cache capacity must be >= 1, got {capacity}")
        self.capacity = capacity

    def access(self, block: int, phase: Phase | None = None) -> AccessOutcome:
        raise NotImplementedError

    def remove(self, block: int) -> None:
        """Drop a resident block without evicting (exclusive-hierarchy promote)."""
        raise NotImplementedError

    def reset(self) -> None:
        raise NotImplementedError

    @property
    def resident(self):
        raise NotImplementedError

    def __contains__(self, block: int) -> bool:
        return block in self.resident

    def __len__(self) -> int:
        return len(self.resident)


class LruCache(CachePolicy):
    def __init__(self, capacity: int):
        super().__init__(capacity)
        self._order: collections.OrderedDict[int, None] = collections.OrderedDict()

    def access(self, block, phase=None):
        if block in self._order:
            self._order.move_to_end(block)
            return AccessOutcome(True)
        evicted = None
        if len(self._order) >= self.capacity:
            evicted, _ = self._order.popitem(last=False)
        self._order[block] = None
        return AccessOutcome(False, evicted)

    def remove(self, block):
        del self._order[block]

    def reset(self):
        self._order.clear()

    @property
    def resident(self):
        return self._order.keys()


class FifoCache(CachePolicy):
    """Insertion-ordered eviction.

    The queue holds (entry id, block) pairs and skips entries invalidated by
    remove(), so removal stays O(1) amortised.
    """

    def __init__(self, capacity: int):
        super().__init__(capacity)
        self._queue: collections.deque[tuple[int, int]] = collections.deque()
        self._live: dict[int, int] = {}  # block -> current entry id
        self._next_id = 0

    def access(self, block, phase=None):
        if block in self._live:
            return AccessOutcome(True)
        evicted = self._evict_oldest() if len(self._live) >= self.capacity else None
        self._live[block] = self._next_id
        self._queue.append((self._next_id, block))
        self._next_id += 1
        return AccessOutcome(False, evicted)

    def _evict_oldest(self) -> int:
        while True:
            entry, block = self._queue.popleft()
            if self._live.get(block) == entry:
                del self._live[block]
                return block

    def remove(self, block):
        del self._live[block]  # stale queue entry is skipped at eviction time

    def reset(self):
        self._queue.clear()
        self._live.clear()
        self._next_id = 0

    @property
    def resident(self):
        return self._live.keys()


class LfuCache(CachePolicy):
    def __init__(self, capacity: int):
        super().__init__(capacity)
        self._entries: dict[int, list[int]] = {}  # block -> [frequency, last use tick]
        self._tick = 0

    def access(self, block, phase=None):
        self._tick += 1
        entry = self._entries.get(block)
        if entry is not None:
            entry[0] += 1
            entry[1] = self._tick
            return AccessOutcome(True)
        evicted = None
        if len(self._entries) >= self.capacity:
            evicted = min(self._entries, key=lambda b: (self._entries[b][0], self._entries[b][1]))
            del self._entries[evicted]
        self._entries[block] = [1, self._tick]
        return AccessOutcome(False, evicted)

    def remove(self, block):
        del self._entries[block]

    def reset(self):
        self._entries.clear()
        self._tick = 0

    @property
    def resident(self):
        return self._entries.keys()


class PartitionedCache(CachePolicy):
    """Phase-routed partitioned cache.

    Build-phase misses insert into the fixed partition, final-merge misses
    into the variable partition; a hit in either partition is a hit and
    (both partitions being FIFO) leaves bookkeeping untouched.  Insertions
    never cross partitions, so build traffic cannot evict merge-resident
    blocks.
    """

    def __init__(self, capacity: int, fixed_size: int = DEFAULT_PBR_FIXED):
        super().__init__(capacity)
        if not 1 <= fixed_size < capacity:
            raise ConfigError(
                f"fixed partition must satisfy 1 <= f < capacity, got f={fixed_size} capacity={capacity}"
            )
        self.fixed_size = fixed_size
        self._fixed = FifoCache(fixed_size)
        self._variable = FifoCache(capacity - fixed_size)

    def access(self, block, phase=None):
        if block in self._fixed or block in self._variable:
            return AccessOutcome(True)
        if phase is None:
            raise ContractViolationError("partitioned policy needs a phase tag on every access")
        part = self._variable if phase is Phase.FINAL_MERGE else self._fixed
        return part.access(block)

    def remove(self, block):
        if block in self._fixed:
            self._fixed.remove(block)
        else:
            self._variable.remove(block)

    def reset(self):
        self._fixed.reset()
        self._variable.reset()

    @property
    def resident(self):
        return set(self._fixed.resident) | set(self._variable.resident)

    @property
    def fixed_resident(self):
        return self._fixed.resident

    @property
    def variable_resident(self):
        return self._variable.resident


class OptCache(CachePolicy):
    """Offline optimal replacement over one precomputed reference stream.

    Must be driven with exactly the stream it was prepared for, in order;
    anything else raises :class:`ContractViolationError`.
    """

    def __init__(self, capacity: int, blocks: Iterable[int]):
        super().__init__(capacity)
        self._blocks = tuple(blocks)
        self._next_use = self._compute_next_use(self._blocks)
        self._pos = 0
        self._resident: dict[int, float] = {}  # block -> position of its next use

    @staticmethod
    def _compute_next_use(blocks: tuple[int, ...]) -> list[float]:
        next_use: list[float] = [math.inf] * len(blocks)
        upcoming: dict[int, int] = {}
        for i in range(len(blocks) - 1, -1, -1):
            block = blocks[i]
            next_use[i] = upcoming.get(block, math.inf)
            upcoming[block] = i
        return next_use

    def access(self, block, phase=None):
        if self._pos >= len(self._blocks):
            raise ContractViolationError("opt oracle exhausted its precomputed reference stream")
        if block != self._blocks[self._pos]:
            raise ContractViolationError(
                f"opt oracle expected block {self._blocks[self._pos]} at position {self._pos}, got {block}"
            )
        nxt = self._next_use[self._pos]
        self._pos += 1
        if block in self._resident:
            self._resident[block] = nxt
            return AccessOutcome(True)
        evicted = None
        if len(self._resident) >= self.capacity:
            # farthest next use wins; never-used-again first, lowest id among those
            evicted = max(self._resident, key=lambda b: (self._resident[b], -b))
            del self._resident[evicted]
        self._resident[block] = nxt
        return AccessOutcome(False, evicted)

    def remove(self, block):
        del self._resident[block]

    def reset(self):
        self._pos = 0
        self._resident.clear()

    @property
    def resident(self):
        return self._resident.keys()


def prepare_opt(trace: Trace, capacity: int) -> OptCache:
    """Build the offline oracle for a trace (test/benchmark reference)."""
    return OptCache(capacity, (ev.block for ev in trace.events))


@dataclass(frozen=True)
class PolicySpec:
    """A policy choice as named on the command line, before instantiation."""

    kind: PolicyKind
    pbr_fixed: int = DEFAULT_PBR_FIXED

    @property
    def label(self) -> str:
        if self.kind is PolicyKind.PBR and self.pbr_fixed != DEFAULT_PBR_FIXED:
            return f"pbr:f={self.pbr_fixed}"
        return self.kind.value


_PBR_PARAM = re.compile(r"^pbr:f=(\d+)$")


def parse_policy(text: str) -> PolicySpec:
    """Parse ``lru|fifo|lfu|pbr|opt`` (case-insensitive) or ``pbr:f=<k>``."""
    name = text.strip().lower()
    match = _PBR_PARAM.match(name)
    if match:
        fixed = int(match.group(1))
        if fixed < 1:
            raise ConfigError(f"pbr fixed partition must be >= 1, got {fixed}")
        return PolicySpec(PolicyKind.PBR, fixed)
    for kind in PolicyKind:
        if name == kind.value:
            return PolicySpec(kind)
    raise ConfigError(f"unknown policy {text!r} (expected lru, fifo, lfu, pbr[:f=<k>], or opt)")


def make_policy(spec: PolicySpec, capacity: int, trace: Trace | None = None) -> CachePolicy:
    """Instantiate a policy at a capacity; OPT additionally needs the trace."""
    if spec.kind is PolicyKind.LRU:
        return LruCache(capacity)
    if spec.kind is PolicyKind.FIFO:
        return FifoCache(capacity)
    if spec.kind is PolicyKind.LFU:
        return LfuCache(capacity)
    if spec.kind is PolicyKind.PBR:
        return PartitionedCache(capacity, spec.pbr_fixed)
    if trace is None:
        raise ConfigError("opt policy needs the full trace in advance")
    return prepare_opt(trace, capacity)


def run_trace(policy: CachePolicy, events: Iterable[TraceEvent]) -> list[AccessOutcome]:
    """Drive one policy over an event sequence, collecting outcomes."""
    return [policy.access(ev.block, ev.phase) for ev in events]


def miss_count(policy: CachePolicy, events: Iterable[TraceEvent]) -> int:
    return sum(1 for out in run_trace(policy, events) if not out.hit)
