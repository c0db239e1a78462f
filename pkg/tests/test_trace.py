"""Trace generation and file format tests."""

from __future__ import annotations

import io
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mergesim import (
    ConfigError,
    Phase,
    Trace,
    TraceEvent,
    TraceParseError,
    generate_merge_sort_trace,
    read_trace,
    write_trace,
)
from reference_models import instrumented_merge_sort

POWERS_OF_TWO = [2 ** k for k in range(11)]  # 1 .. 1024


def test_n1_trace_is_empty():
    trace = generate_merge_sort_trace(1)
    assert trace.list_len == 1
    assert trace.events == ()


def test_n2_all_final_merge():
    trace = generate_merge_sort_trace(2)
    assert all(ev.phase is Phase.FINAL_MERGE for ev in trace.events)
    assert {ev.block for ev in trace.events} == {0, 1}


@pytest.mark.parametrize("bad", [0, -4, 3, 6, 10, 100])
def test_rejects_non_powers_of_two(bad):
    with pytest.raises(ConfigError, match="power of two"):
        generate_merge_sort_trace(bad)


def test_n8_matches_independently_instrumented_sort():
    # oracle: run a real merge sort on already-ordered data and log every
    # index it touches; the consumption order is then index-ascending, which
    # is exactly the canonical order the generator encodes
    _, touched = instrumented_merge_sort(list(range(8)))
    trace = generate_merge_sort_trace(8)
    assert [ev.block for ev in trace.events] == touched


def test_n16_matches_independently_instrumented_sort():
    _, touched = instrumented_merge_sort(list(range(16)))
    assert [ev.block for ev in generate_merge_sort_trace(16).events] == touched


def test_instrumented_sort_actually_sorts():
    values = [5, 3, 7, 1, 0, 6, 2, 4]
    ordered, _ = instrumented_merge_sort(values)
    assert ordered == sorted(values)


@pytest.mark.parametrize("n", [2, 4, 8, 64, 256, 1024])
def test_event_count_is_2_n_log2_n(n):
    trace = generate_merge_sort_trace(n)
    assert len(trace.events) == 2 * n * int(math.log2(n))


@pytest.mark.parametrize("n", [2, 16, 256])
def test_coverage_and_phase_partition(n):
    trace = generate_merge_sort_trace(n)
    assert {ev.block for ev in trace.events} == set(range(n))
    half = n // 2
    for ev in trace.events:
        if ev.phase is Phase.BUILD_LEFT:
            assert 0 <= ev.block < half
        elif ev.phase is Phase.BUILD_RIGHT:
            assert half <= ev.block < n
    order = [Phase.BUILD_LEFT, Phase.BUILD_RIGHT, Phase.FINAL_MERGE]
    indices = [order.index(ev.phase) for ev in trace.events]
    assert indices == sorted(indices), "phases must appear as L* R* M*"


def test_determinism():
    assert generate_merge_sort_trace(64) == generate_merge_sort_trace(64)


def test_write_empty_trace_is_header_only():
    buf = io.StringIO()
    write_trace(generate_merge_sort_trace(1), buf)
    assert buf.getvalue() == "# merge-sort-trace n=1\n"


def test_write_event_line_format():
    buf = io.StringIO()
    write_trace(Trace(8, (TraceEvent(5, Phase.FINAL_MERGE),)), buf)
    assert buf.getvalue() == "# merge-sort-trace n=8\n5 M\n"


def test_read_simple_trace():
    trace = read_trace(io.StringIO("# merge-sort-trace n=2\n0 M\n1 M\n"))
    assert trace == Trace(2, (TraceEvent(0, Phase.FINAL_MERGE), TraceEvent(1, Phase.FINAL_MERGE)))


def test_read_ignores_blank_lines_and_comments():
    text = "# merge-sort-trace n=4\n\n# a comment\n2 L\n\n3 R\n"
    trace = read_trace(io.StringIO(text))
    assert [ev.block for ev in trace.events] == [2, 3]


@pytest.mark.parametrize("n", POWERS_OF_TWO)
def test_round_trip_generated_traces(n):
    trace = generate_merge_sort_trace(n)
    buf = io.StringIO()
    write_trace(trace, buf)
    assert read_trace(io.StringIO(buf.getvalue())) == trace


@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_round_trip_arbitrary_traces(data):
    n = data.draw(st.integers(min_value=1, max_value=64))
    events = data.draw(
        st.lists(
            st.tuples(st.integers(min_value=0, max_value=n - 1), st.sampled_from(list(Phase))),
            max_size=50,
        )
    )
    trace = Trace(n, tuple(TraceEvent(b, p) for b, p in events))
    buf = io.StringIO()
    write_trace(trace, buf)
    assert read_trace(io.StringIO(buf.getvalue())) == trace


@pytest.mark.parametrize(
    "text,line_no",
    [
        ("no header\n0 M\n", 1),
        ("# merge-sort-trace n=zero\n", 1),
        ("# merge-sort-trace n=0\n", 1),
        ("# merge-sort-trace n=2\nx M\n", 2),
        ("# merge-sort-trace n=2\n0 M\n1 Q\n", 3),
        ("# merge-sort-trace n=2\n2 M\n", 2),
        ("# merge-sort-trace n=2\n-1 M\n", 2),
        ("# merge-sort-trace n=2\n0 M extra\n", 2),
        ("# merge-sort-trace n=2\n0\n", 2),
    ],
)
def test_parse_errors_name_the_line(text, line_no):
    with pytest.raises(TraceParseError) as excinfo:
        read_trace(io.StringIO(text))
    assert excinfo.value.line_no == line_no
    assert f"line {line_no}:" in str(excinfo.value)
