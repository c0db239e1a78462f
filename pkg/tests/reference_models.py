"""Independent naive reference implementations used as test oracles.

Everything here is deliberately written from scratch with plain lists and
dicts, sharing no code with the package under test.
"""

from __future__ import annotations

from functools import lru_cache

from mergesim import Phase, TraceEvent

PHASES = (Phase.BUILD_LEFT, Phase.BUILD_RIGHT, Phase.FINAL_MERGE)


def events_of(blocks, phase=Phase.FINAL_MERGE):
    """Wrap plain block ids into trace events with a single phase."""
    return [TraceEvent(b, phase) for b in blocks]


def lru_misses(blocks, capacity):
    order = []
    misses = 0
    for b in blocks:
        if b in order:
            order.remove(b)
            order.append(b)
        else:
            misses += 1
            if len(order) >= capacity:
                order.pop(0)
            order.append(b)
    return misses


def fifo_misses(blocks, capacity):
    queue = []
    misses = 0
    for b in blocks:
        if b not in queue:
            misses += 1
            if len(queue) >= capacity:
                queue.pop(0)
            queue.append(b)
    return misses


def lfu_misses(blocks, capacity):
    """Least frequency first, least-recently-used among ties, counts reset on
    eviction (mirrors the documented contract)."""
    freq = {}
    last = {}
    tick = 0
    misses = 0
    for b in blocks:
        tick += 1
        if b in freq:
            freq[b] += 1
            last[b] = tick
        else:
            misses += 1
            if len(freq) >= capacity:
                victim = min(freq, key=lambda k: (freq[k], last[k]))
                del freq[victim]
                del last[victim]
            freq[b] = 1
            last[b] = tick
    return misses


def opt_misses_exhaustive(blocks, capacity):
    """True offline minimum via exhaustive search over eviction choices."""
    blocks = tuple(blocks)

    @lru_cache(maxsize=None)
    def best(pos, resident):
        if pos == len(blocks):
            return 0
        b = blocks[pos]
        if b in resident:
            return best(pos + 1, resident)
        if len(resident) < capacity:
            return 1 + best(pos + 1, tuple(sorted(set(resident) | {b})))
        return 1 + min(
            best(pos + 1, tuple(sorted((set(resident) - {v}) | {b})))
            for v in resident
        )

    result = best(0, ())
    best.cache_clear()
    return result


def two_level_fifo(blocks, c1, c2, lookup_first=True):
    """Naive exclusive FIFO/FIFO hierarchy; ``lookup_first`` switches the
    intra-event order of L2 lookup vs victim demotion."""
    l1, l2 = [], []
    stats = {"l1_hits": 0, "l1_misses": 0, "l2_hits": 0, "l2_misses": 0,
             "memory_fetches": 0, "demotions": 0, "l2_evictions": 0}
    for b in blocks:
        if b in l1:
            stats["l1_hits"] += 1
            continue
        stats["l1_misses"] += 1
        victim = None
        if len(l1) >= c1:
            victim = l1.pop(0)
        l1.append(b)

        def lookup():
            if b in l2:
                l2.remove(b)
                stats["l2_hits"] += 1
            else:
                stats["l2_misses"] += 1
                stats["memory_fetches"] += 1

        def demote():
            if victim is not None:
                stats["demotions"] += 1
                if len(l2) >= c2:
                    l2.pop(0)
                    stats["l2_evictions"] += 1
                l2.append(victim)

        if lookup_first:
            lookup()
            demote()
        else:
            demote()
            lookup()
    return stats


def instrumented_merge_sort(values):
    """A real top-down merge sort that records every array index it touches.

    Each merge logs the index of the element it consumes and the index the
    produced element lands on; the merged run is written back in place, so
    the log uses a single index space.  Returns (sorted list, touched
    indices).
    """
    a = list(values)
    touched = []

    def sort(lo, hi):
        if hi - lo <= 1:
            return
        mid = (lo + hi) // 2
        sort(lo, mid)
        sort(mid, hi)
        merged = []
        i, j = lo, mid
        while i < mid or j < hi:
            take_left = j >= hi or (i < mid and a[i] <= a[j])
            src = i if take_left else j
            touched.append(src)                    # read of the consumed element
            merged.append(a[src])
            if take_left:
                i += 1
            else:
                j += 1
            touched.append(lo + len(merged) - 1)   # write of the produced element
        a[lo:hi] = merged

    sort(0, len(a))
    return a, touched


def random_phase_trace(rng, n_blocks, length):
    """Random block ids with phases that follow the L* R* M* ordering."""
    cut1 = rng.randint(0, length)
    cut2 = rng.randint(cut1, length)
    events = []
    for i in range(length):
        phase = PHASES[0] if i < cut1 else PHASES[1] if i < cut2 else PHASES[2]
        events.append(TraceEvent(rng.randrange(n_blocks), phase))
    return events
