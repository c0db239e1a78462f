"""Merge-sort memory reference traces: generation and the text file format.

A trace models top-down recursive merge sort over ``n`` list elements, one
cache block per element index.  Each merge of two adjacent runs emits one
read event per source element consumed and one write event per element
produced; the merge output is addressed in place (no separate buffer address
range), so both events for the element landing at index ``k`` reference
block ``k``.  A merge of the subrange ``[lo, hi)`` therefore touches that
range in ascending order, twice per block, and the emitted sequence does not
depend on the values being sorted -- the generator takes no input data.

For ``n >= 2`` the event count is exactly ``2 * n * log2(n)`` (each element
contributes one read and one write per merge level), i.e. the emission
constant relative to ``n * log2(n)`` is 2.

Phase tags mirror the three stages of the sort: everything emitted while
sorting ``[0, n/2)`` is ``BUILD_LEFT``, everything while sorting
``[n/2, n)`` is ``BUILD_RIGHT``, and the top-level merge is ``FINAL_MERGE``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple, TextIO

from .errors import ConfigError, TraceParseError

_HEADER_PREFIX = "# merge-sort-trace n="


class Phase(enum.Enum):
    """Which stage of the sort emitted a reference.

    The single-letter values double as the trace file encoding.
    """

    BUILD_LEFT = "L"
    BUILD_RIGHT = "R"
    FINAL_MERGE = "M"


class TraceEvent(NamedTuple):
    block: int
    phase: Phase


@dataclass(frozen=True)
class Trace:
    """An ordered reference string over blocks ``0 .. list_len - 1``."""

    list_len: int
    events: tuple[TraceEvent, ...]

    def distinct_blocks(self) -> int:
        return len({ev.block for ev in self.events})


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def generate_merge_sort_trace(n: int) -> Trace:
    """Emit the reference string of merge sort over ``n`` elements.

    ``n`` must be a power of two.  For ``n = 1`` no merge occurs and the
    trace is empty.  Deterministic: equal ``n`` gives an identical trace.
    """
    if not isinstance(n, int) or not _is_power_of_two(n):
        raise ConfigError("n must be a power of two")

    events: list[TraceEvent] = []

    def emit_merges(lo: int, hi: int, phase: Phase) -> None:
        if hi - lo <= 1:
            return
        mid = (lo + hi) // 2
        emit_merges(lo, mid, phase)
        emit_merges(mid, hi, phase)
        for k in range(lo, hi):
            ev = TraceEvent(k, phase)
            events.append(ev)  # read of the element landing at k
            events.append(ev)  # write of that element
        return

    if n >= 2:
        mid = n // 2
        emit_merges(0, mid, Phase.BUILD_LEFT)
        emit_merges(mid, n, Phase.BUILD_RIGHT)
        for k in range(n):
            ev = TraceEvent(k, Phase.FINAL_MERGE)
            events.append(ev)
            events.append(ev)
    return Trace(n, tuple(events))


def write_trace(trace: Trace, sink: TextIO) -> None:
    """Write the textual trace format: header line, then one event per line."""
    sink.write(f"{_HEADER_PREFIX}{trace.list_len}\n")
    for ev in trace.events:
        sink.write(f"{ev.block} {ev.phase.value}\n")


def read_trace(source: TextIO) -> Trace:
    """Parse the textual trace format; inverse of :func:`write_trace`.

    Blank lines and ``#`` comment lines after the header are ignored.
    Raises :class:`TraceParseError` naming the offending line.
    """
    lines = source.read().splitlines()
    if not lines or not lines[0].startswith(_HEADER_PREFIX):
        raise TraceParseError(1, f"expected header '{_HEADER_PREFIX}<N>'")
    raw_n = lines[0][len(_HEADER_PREFIX):].strip()
    try:
        n = int(raw_n)
    except ValueError:
        raise TraceParseError(1, f"bad list length {raw_n!r}") from None
    if n < 1:
        raise TraceParseError(1, f"list length must be positive, got {n}")

    events: list[TraceEvent] = []
    for line_no, line in enumerate(lines[1:], start=2):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split()
        if len(parts) != 2:
            raise TraceParseError(line_no, f"expected '<block> <phase>', got {line!r}")
        try:
            block = int(parts[0])
        except ValueError:
            raise TraceParseError(line_no, f"bad block id {parts[0]!r}") from None
        if block < 0:
            raise TraceParseError(line_no, f"block id must be non-negative, got {block}")
        if block >= n:
            raise TraceParseError(line_no, f"block {block} out of range for n={n}")
        try:
            phase = Phase(parts[1])
        except ValueError:
            raise TraceParseError(line_no, f"unknown phase letter {parts[1]!r}") from None
        events.append(TraceEvent(block, phase))
    return Trace(n, tuple(events))
