"""Streaming verification that an edge list realizes a declared out-degree sequence.

The stream carries the n declared degrees (ints) followed by the edges
(``(u, v)`` pairs) in any order. Only the source ``u`` of each edge counts.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from streamlang import kernels
from streamlang.decision import Decision
from streamlang.finite_field import FieldContext
from streamlang.stream import SpaceMeter, TokenStream

CHUNK = 1 << 14
# alpha, p, running sum, running power, degree index, n, edge counter
RANDOMIZED_WORDS = 7
# n, passes, pass index, window start, window size, stream index
MULTIPASS_WORDS = 6


class MalformedStream(ValueError):
    pass


@dataclass(frozen=True)
class DegSeqInstance:
    n: int
    degrees: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one vertex")
        if len(self.degrees) != self.n:
            raise ValueError(f"{len(self.degrees)} degrees for n={self.n}")

    @property
    def m(self) -> int:
        return len(self.edges)

    def tokens(self) -> list:
        return [*self.degrees, *self.edges]

    def stream(self, passes: int = 1) -> TokenStream:
        return TokenStream(self.tokens(), self.n + self.m, passes)


def parse_instance(text: str) -> DegSeqInstance:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]

    def header(line: str, key: str) -> str:
        k, sep, rest = line.partition(":")
        if not sep or k.strip() != key:
            raise MalformedStream(f"expected '{key}: ...', got {line!r}")
        return rest

    if len(lines) < 3:
        raise MalformedStream("need 'n:', 'degrees:' and 'm:' lines")
    try:
        n = int(header(lines[0], "n"))
        degrees = tuple(int(x) for x in header(lines[1], "degrees").split())
        m = int(header(lines[2], "m"))
        edges = []
        for line in lines[3:]:
            u, v = line.split()
            edges.append((int(u), int(v)))
    except ValueError as exc:
        raise MalformedStream(str(exc)) from None
    if len(edges) != m:
        raise MalformedStream(f"header declares m={m} but {len(edges)} edges follow")
    if len(degrees) != n:
        raise MalformedStream(f"header declares n={n} but {len(degrees)} degrees follow")
    if any(d < 0 for d in degrees):
        raise MalformedStream("negative degree")
    return DegSeqInstance(n, degrees, tuple(edges))


def load_instance(path: str | Path) -> DegSeqInstance:
    return parse_instance(Path(path).read_text(encoding="utf-8"))


def format_instance(inst: DegSeqInstance) -> str:
    lines = [f"n: {inst.n}", "degrees: " + " ".join(map(str, inst.degrees)), f"m: {inst.m}"]
    lines.extend(f"{u} {v}" for u, v in inst.edges)
    return "\n".join(lines) + "\n"


def _int_chunk(chunk: Sequence) -> array:
    try:
        out = array("q", chunk)
    except (TypeError, OverflowError):
        raise MalformedStream("edge or non-integer among the degrees") from None
    if any(d < 0 for d in out):
        raise MalformedStream("negative degree")
    return out


def _edges(chunk: Sequence, n: int) -> tuple[array, int]:
    """Sources of ``chunk`` and the offset of the first target outside [1, n], or -1."""
    try:
        sources = array("q", [u for u, _ in chunk])
        targets = [v for _, v in chunk]
        if targets and (min(targets) < 1 or max(targets) > n):
            bad = next(k for k, v in enumerate(targets) if not 1 <= v <= n)
            return sources[:bad], bad
    except (TypeError, ValueError, OverflowError):
        raise MalformedStream("degree after the first edge, or malformed edge") from None
    return sources, -1


def degseq_randomized(
    stream: TokenStream, n: int, ctx: FieldContext, meter: SpaceMeter | None = None
) -> Decision:
    """One pass: evaluate sum(d_i a^i) - sum(a^{u_j}) at the context's point; accept iff zero."""
    if stream.n < n:
        raise MalformedStream(f"stream of {stream.n} tokens cannot hold {n} degrees")
    kernel = kernels.DegSeqKernel(n, ctx.p, ctx.alpha)
    if meter is not None:
        meter.charge(RANDOMIZED_WORDS)
    try:
        seen = 0
        while seen < n:
            chunk = stream.read_chunk(min(CHUNK, n - seen))
            kernel.feed_degrees(_int_chunk(chunk))
            seen += len(chunk)
        bad_target = False
        while not stream.exhausted:
            sources, bad = _edges(stream.read_chunk(CHUNK), n)
            if not kernel.feed_sources(sources):
                break
            if bad >= 0:
                bad_target = True
                break
        if not bad_target:
            kernel.finish()
    finally:
        if meter is not None:
            meter.release(RANDOMIZED_WORDS)
    if bad_target and kernel.status == kernels.RUNNING:
        return Decision.reject("vertex-out-of-range")
    if kernel.status == kernels.ACCEPTED:
        return Decision.accept()
    reason = kernels.REASONS[kernel.reason]
    if reason == "malformed-stream":
        raise MalformedStream("degree sequence incomplete or invalid")
    return Decision.reject(reason)


def degseq_multipass(stream: TokenStream, n: int, passes: int, meter: SpaceMeter | None = None) -> Decision:
    """Deterministic: pass j checks the out-degrees of a window of ceil(n/passes) vertices."""
    if passes < 1:
        raise ValueError("need at least one pass")
    if stream.n < n:
        raise MalformedStream(f"stream of {stream.n} tokens cannot hold {n} degrees")
    width = -(-n // passes)
    for j in range(passes):
        if j:
            stream.rewind()
        lo = j * width
        size = max(0, min(width, n - lo))
        # residual[k] = declared degree of vertex lo+k+1 minus edges seen from it
        residual = array("q", bytes(8 * size))
        if meter is not None:
            meter.charge(MULTIPASS_WORDS + size)
        try:
            seen = 0
            while seen < n:
                chunk = _int_chunk(stream.read_chunk(min(CHUNK, n - seen)))
                a, b = max(lo, seen), min(lo + size, seen + len(chunk))
                if a < b:
                    residual[a - lo:b - lo] = chunk[a - seen:b - seen]
                seen += len(chunk)
            edge_index = 0
            while not stream.exhausted:
                sources, bad_target = _edges(stream.read_chunk(CHUNK), n)
                bad = kernels.window_subtract(residual, lo, n, sources)
                if bad < 0:
                    bad = bad_target
                if bad >= 0:
                    return Decision.reject(
                        "vertex-out-of-range", n + edge_index + bad + 1, passes_used=stream.passes_used
                    )
                edge_index += len(sources)
            for k, r in enumerate(residual):
                if r:
                    return Decision.reject("degree-mismatch", lo + k + 1, passes_used=stream.passes_used)
        finally:
            if meter is not None:
                meter.release(MULTIPASS_WORDS + size)
    return Decision.accept(passes_used=stream.passes_used, window=width)
