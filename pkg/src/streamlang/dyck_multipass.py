"""Deterministic p-pass checker for 1-turn Dyck_2 and multi-pass DLIN membership."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from streamlang.decision import Decision
from streamlang.dlin import BracketAlphabet, dyck2_width, encode_dyckk_to_dyck2, reduce_to_1turn_dyck
from streamlang.grammar import Grammar
from streamlang.stream import EndOfPass, PassBudgetExceeded, SpaceMeter, TokenStream

OPENERS = {"(": ")", "[": "]"}
CLOSERS = frozenset(OPENERS.values())

# n, p, pass index, block length, position, stack depth
CHECKER_WORDS = 6
# non_term, stack height, input index, n, reduced length, pending-block cursor
ADAPTER_WORDS = 6


@dataclass(frozen=True)
class BlockPlan:
    """Blocks of length ceil(n/2p) over the left half, mirrored onto the right half.

    Pass j pairs the left block B_j with B_{2p-(j+1)}, the mirror image of
    B_j about the centre. When 2p does not divide n the short blocks sit next
    to the centre, so each pair still covers exactly mirrored positions.
    """

    n: int
    passes: int

    @property
    def block_len(self) -> int:
        return -(-self.n // (2 * self.passes))

    @property
    def half(self) -> int:
        return self.n // 2

    def left_block(self, j: int) -> tuple[int, int]:
        lo = j * self.block_len + 1
        return lo, min((j + 1) * self.block_len, self.half)

    def right_block(self, j: int) -> tuple[int, int]:
        lo, hi = self.left_block(j)
        return self.n + 1 - hi, self.n + 1 - lo


def check_1turn_dyck2_multipass(stream, passes: int, meter: SpaceMeter | None = None) -> Decision:
    """Decide membership in ``{w w~R : w in {(,[}^k, k >= 1}`` using ``passes`` passes.

    Every symbol read is also checked against its half (openers left of the
    centre, closers right of it), which makes the pairwise block checks
    decide 1-turn membership exactly.
    """
    if passes < 1:
        raise ValueError("need at least one pass")
    n = stream.n
    plan = BlockPlan(n, passes)
    if n % 2:
        return Decision.reject("odd-length", passes_used=stream.passes_used, block_len=plan.block_len)
    if n == 0:
        return Decision.reject("empty", passes_used=stream.passes_used, block_len=plan.block_len)
    half = plan.half
    blen = plan.block_len
    if meter is not None:
        meter.charge(CHECKER_WORDS)
    stack: list[str] = []
    try:
        for j in range(passes):
            if j:
                stream.rewind()
            # same bounds as plan.left_block(j) / plan.right_block(j), inlined
            lo = j * blen + 1
            hi = min(lo + blen - 1, half)
            rlo, rhi = n + 1 - hi, n + 1 - lo
            if lo > hi:
                continue
            for pos in range(1, rhi + 1):
                tok = stream.read()
                if pos <= half:
                    if tok not in OPENERS:
                        return _reject("closer-in-left-half", pos, stream, plan)
                    if lo <= pos <= hi:
                        stack.append(tok)
                        if meter is not None:
                            meter.charge()
                elif tok not in CLOSERS:
                    return _reject("opener-in-right-half", pos, stream, plan)
                elif pos >= rlo:
                    top = stack.pop()
                    if meter is not None:
                        meter.release()
                    if OPENERS[top] != tok:
                        return _reject("mismatch", pos, stream, plan)
    finally:
        if meter is not None:
            meter.release(CHECKER_WORDS + len(stack))
    return Decision.accept(passes_used=stream.passes_used, block_len=plan.block_len)


def _reject(reason: str, pos: int, stream, plan: BlockPlan) -> Decision:
    return Decision.reject(reason, pos, passes_used=stream.passes_used, block_len=plan.block_len)


class ReducedStream:
    """Virtual bracket stream: the reduction of ``base`` re-run on demand, one base pass per pass.

    Holds only the reduction's O(1) state; the reduced string is never stored.
    """

    def __init__(self, g: Grammar, base: TokenStream, n: int):
        self.g = g
        self.base = base
        self.n = n
        self.alphabet = BracketAlphabet(g.terminals)
        self._first_base_pass = base.passes_used
        self._restart()

    def _restart(self) -> None:
        self.base.rewind()
        self.position = 1
        self._tokens: Iterator[str] = encode_dyckk_to_dyck2(
            reduce_to_1turn_dyck(self.g, self.base), self.alphabet
        )

    @property
    def passes_used(self) -> int:
        return self.base.passes_used - self._first_base_pass

    @property
    def exhausted(self) -> bool:
        return self.position > self.n

    def read(self) -> str:
        if self.position > self.n:
            raise EndOfPass(f"read past symbol {self.n}")
        self.position += 1
        return next(self._tokens)

    def rewind(self) -> None:
        if self.base.passes_used >= self.base.passes_allowed:
            raise PassBudgetExceeded(f"pass budget of {self.base.passes_allowed} used up")
        self._restart()


def recognize_dlin_multipass(
    g: Grammar, stream: TokenStream, passes: int, meter: SpaceMeter | None = None
) -> Decision:
    """Deterministic DLIN membership in ``passes + 1`` passes.

    Pass 0 runs the reduction once to learn the reduced length and catch
    structural failures; passes 1..p feed the re-run reduction, spelled over
    ``(``, ``[``, ``)``, ``]``, to the block-pairing checker.
    """
    failure: list[tuple[str, int]] = []
    if meter is not None:
        meter.charge(ADAPTER_WORDS)
    try:
        reduced_len = 0
        for _ in reduce_to_1turn_dyck(g, stream, lambda reason, pos: failure.append((reason, pos))):
            reduced_len += 1
        if failure:
            reason, pos = failure[0]
            return Decision.reject(reason, pos, passes_used=stream.passes_used, reduced_length=reduced_len)
        if reduced_len == 0:
            # empty reduced string: the input drove the grammar to an empty stack
            return Decision.accept(passes_used=stream.passes_used, reduced_length=0, block_len=0)
        encoded_len = reduced_len * dyck2_width(len(g.terminals))
        virtual = ReducedStream(g, stream, encoded_len)
        verdict = check_1turn_dyck2_multipass(virtual, passes, meter)
    finally:
        if meter is not None:
            meter.release(ADAPTER_WORDS)
    return Decision(
        verdict.accepted,
        verdict.reason,
        verdict.position,
        dict(verdict.stats, passes_used=stream.passes_used, reduced_length=reduced_len),
    )
