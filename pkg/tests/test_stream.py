import io

import pytest
from hypothesis import given, strategies as st

from streamlang.stream import (
    EndOfPass,
    LengthMismatch,
    PassBudgetExceeded,
    SpaceMeter,
    format_input,
    meter_report,
    open_stream,
    parse_input_text,
    read_input,
)


def test_open_stream_reads_in_order():
    s = open_stream(["a", "b"], 2)
    assert (s.read(), s.read()) == ("a", "b")
    assert s.exhausted
    with pytest.raises(EndOfPass):
        s.read()


def test_rewind_budget():
    s = open_stream(["a"], 1)
    with pytest.raises(PassBudgetExceeded):
        s.rewind()
    s = open_stream(["a"], 1, passes_allowed=2)
    s.read()
    s.rewind()
    assert s.passes_used == 2 and s.position == 1 and s.read() == "a"
    with pytest.raises(PassBudgetExceeded):
        s.rewind()


def test_length_mismatch():
    with pytest.raises(LengthMismatch):
        open_stream(["a"], 2)
    with pytest.raises(LengthMismatch):
        open_stream([], -1)
    with pytest.raises(ValueError):
        open_stream([], 0, passes_allowed=0)


def test_chunks_and_skip():
    s = open_stream(list("abcdef"), 6)
    assert list(s.read_chunk(4)) == list("abcd")
    s.skip(1)
    assert list(s.read_chunk(4)) == ["f"]
    assert list(s.read_chunk(4)) == []
    with pytest.raises(EndOfPass):
        s.skip(1)


@given(st.lists(st.sampled_from("ab"), max_size=30), st.integers(1, 7))
def test_chunked_reads_cover_source(tokens, size):
    s = open_stream(tokens, len(tokens))
    out = []
    while not s.exhausted:
        out.extend(s.read_chunk(size))
    assert out == tokens and s.position == len(tokens) + 1


def test_input_format_round_trip(tmp_path, monkeypatch):
    tokens = ["a", "a", "b", "b"]
    text = format_input(tokens)
    assert text == "n: 4\na a b b\n"
    assert parse_input_text(text) == tokens
    assert parse_input_text("n: 0\n") == []
    path = tmp_path / "w.txt"
    path.write_text(text)
    assert read_input(path) == tokens
    monkeypatch.setattr("sys.stdin", io.StringIO(text))
    assert read_input("-") == tokens


@pytest.mark.parametrize("text", ["a a b", "n: 3\na b", "n: x\n", "m: 1\na"])
def test_input_format_errors(text):
    with pytest.raises(LengthMismatch):
        parse_input_text(text)


def test_meter():
    m = SpaceMeter()
    assert meter_report(m).peak_words == 0
    m.charge(5)
    m.release(2)
    assert (m.current, m.peak) == (3, 5)
    m.charge()
    assert meter_report(m).peak_words == 5 and meter_report(m).word_bits == 64
    with pytest.raises(ValueError):
        m.release(10)


@given(st.lists(st.integers(-5, 5), max_size=40))
def test_meter_peak_monotone(ops):
    m = SpaceMeter()
    last_peak = 0
    for op in ops:
        if op >= 0:
            m.charge(op)
        elif -op <= m.current:
            m.release(-op)
        assert m.peak >= m.current >= 0 and m.peak >= last_peak
        last_peak = m.peak
