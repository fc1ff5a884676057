"""Length-prefixed token streams with pass accounting, and a word-level space meter."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterator, Sequence
import sys


class StreamError(Exception):
    pass


class LengthMismatch(StreamError):
    pass


class PassBudgetExceeded(StreamError):
    pass


class EndOfPass(StreamError):
    pass


class TokenStream:
    """Sequential reader over a source of known length ``n``.

    ``position`` is the 1-based index of the next symbol. A pass ends when all
    ``n`` symbols were read; :meth:`rewind` starts another pass and counts it
    against ``passes_allowed``.
    """

    __slots__ = ("_source", "n", "position", "passes_used", "passes_allowed")

    def __init__(self, source: Sequence[Any], n: int, passes_allowed: int = 1):
        if not isinstance(n, int) or n < 0:
            raise LengthMismatch(f"declared length must be a nonnegative integer, got {n!r}")
        if len(source) != n:
            raise LengthMismatch(f"declared n={n} but source holds {len(source)} symbols")
        if passes_allowed < 1:
            raise ValueError("passes_allowed must be positive")
        self._source = source
        self.n = n
        self.position = 1
        self.passes_used = 1
        self.passes_allowed = passes_allowed

    def read(self):
        pos = self.position
        if pos > self.n:
            raise EndOfPass(f"read past symbol {self.n} in pass {self.passes_used}")
        self.position = pos + 1
        return self._source[pos - 1]

    def read_chunk(self, size: int) -> Sequence[Any]:
        """Up to ``size`` next symbols; empty once the pass is exhausted."""
        start = self.position - 1
        stop = min(start + size, self.n)
        self.position = stop + 1
        return self._source[start:stop]

    def skip(self, count: int) -> None:
        if self.position + count > self.n + 1:
            raise EndOfPass(f"skip of {count} runs past symbol {self.n}")
        self.position += count

    @property
    def exhausted(self) -> bool:
        return self.position > self.n

    def rewind(self) -> None:
        if self.passes_used >= self.passes_allowed:
            raise PassBudgetExceeded(f"pass budget of {self.passes_allowed} used up")
        self.passes_used += 1
        self.position = 1

    def __iter__(self) -> Iterator[Any]:
        while self.position <= self.n:
            yield self.read()


def open_stream(source: Sequence[Any], n: int, passes_allowed: int = 1) -> TokenStream:
    return TokenStream(source, n, passes_allowed)


def parse_input_text(text: str) -> list[str]:
    """Parse ``n: <int>`` followed by exactly n whitespace-separated tokens."""
    header, _, body = text.lstrip().partition("\n")
    key, sep, value = header.partition(":")
    if key.strip() != "n" or not sep:
        raise LengthMismatch("input must start with 'n: <integer>'")
    try:
        n = int(value)
    except ValueError:
        raise LengthMismatch(f"bad length header {header!r}") from None
    tokens = body.split()
    if len(tokens) != n:
        raise LengthMismatch(f"header declares n={n} but {len(tokens)} tokens follow")
    return tokens


def read_input(path: str | Path) -> list[str]:
    if str(path) == "-":
        return parse_input_text(sys.stdin.read())
    return parse_input_text(Path(path).read_text(encoding="utf-8"))


def format_input(tokens: Sequence[str]) -> str:
    return f"n: {len(tokens)}\n" + " ".join(tokens) + "\n"


@dataclass(frozen=True)
class MeterReport:
    peak_words: int
    word_bits: int


class SpaceMeter:
    """Counts persistent words held by an algorithm; per-symbol scratch is not charged."""

    __slots__ = ("current", "peak", "word_bits")

    def __init__(self, word_bits: int = 64):
        self.current = 0
        self.peak = 0
        self.word_bits = word_bits

    def charge(self, words: int = 1) -> None:
        self.current += words
        if self.current > self.peak:
            self.peak = self.current

    def release(self, words: int = 1) -> None:
        if words > self.current:
            raise ValueError(f"releasing {words} words but only {self.current} charged")
        self.current -= words


def meter_report(meter: SpaceMeter) -> MeterReport:
    return MeterReport(meter.peak, meter.word_bits)
