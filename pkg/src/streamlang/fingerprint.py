"""Polynomial fingerprints of stack segments.

A segment ``s`` (bottom to top) of height ``h`` is encoded as
``sum(code(s[j]) * alpha**(j-1))`` over F_p, so the topmost symbol carries
``alpha**(h-1)``.  Pushing a string ``v`` (``v[0]`` ends on top) adds
``fp_eval(reversed(v), h)``; popping subtracts the top monomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from streamlang import kernels
from streamlang.finite_field import FieldContext


class EmptySegment(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class SegmentFingerprint:
    value: int = 0
    h: int = 0
    power: int = 1  # alpha ** h

    def matches(self, codes_bottom_to_top: Sequence[int], ctx: FieldContext) -> bool:
        return (
            self.h == len(codes_bottom_to_top)
            and self.value == fp_eval(codes_bottom_to_top, 0, ctx)
            and self.power == pow(ctx.alpha, self.h, ctx.p)
        )


def fp_eval(codes: Sequence[int], offset: int, ctx: FieldContext) -> int:
    """``sum(codes[j] * alpha**(offset + j))`` mod p, j counted from 0."""
    if not codes:
        return 0
    return kernels.fp_eval(codes, offset, ctx.alpha, ctx.p)


def push_segment(fp: SegmentFingerprint, v_reversed: Sequence[int], ctx: FieldContext) -> SegmentFingerprint:
    if not v_reversed:
        return fp
    p = ctx.p
    value = (fp.value + fp.power * fp_eval(v_reversed, 0, ctx)) % p
    power = fp.power * pow(ctx.alpha, len(v_reversed), p) % p
    return SegmentFingerprint(value, fp.h + len(v_reversed), power)


def pop_match(fp: SegmentFingerprint, code: int, ctx: FieldContext) -> SegmentFingerprint:
    """Remove the top symbol, assuming it is ``code``.

    The subtraction cancels exactly when ``code`` is the true top; otherwise
    the encoded polynomial stays nonzero.
    """
    if fp.h == 0:
        raise EmptySegment("pop from an empty segment")
    p = ctx.p
    power = fp.power * ctx.alpha_inv % p
    return SegmentFingerprint((fp.value - code * power) % p, fp.h - 1, power)


def is_zero(fp: SegmentFingerprint) -> bool:
    return fp.value == 0 and fp.h == 0
