"""One-pass randomized LL(1) membership over a stack of compressed segments."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, NamedTuple

from streamlang.decision import Decision
from streamlang.finite_field import FieldContext
from streamlang.fingerprint import fp_eval
from streamlang.grammar import END, Grammar, GrammarClassError, compute_select, decompose_rhs, validate_ll1
from streamlang.stream import SpaceMeter, TokenStream

ITEM_WORDS = 3
# alpha, p, n, i, bound, loop counter, lookahead
FIXED_WORDS = 7


class CompressedItem(NamedTuple):
    comp_part: int
    non_term: str | None
    h: int


@dataclass(frozen=True)
class Expansion:
    """Items pushed for one production, bottom first.

    ``items[0]`` extends the popped item's segment: its fingerprint is added at
    the popped height. The rest start fresh segments at offset 0.
    """

    items: tuple[tuple[str | None, int, int], ...]  # (nonterminal, fp at offset 0, length)


@lru_cache(maxsize=None)
def ll1_table(g: Grammar):
    """(nonterminal, lookahead) -> production, with ``$`` as the end-of-input lookahead."""
    select = compute_select(g)
    verdict = validate_ll1(g, select)
    if not verdict.ok:
        raise GrammarClassError("; ".join(v.message for v in verdict.violations))
    table = {}
    for prod, tokens in select.select.items():
        for tok in tokens:
            table[(prod.lhs, tok)] = prod
    return table


@lru_cache(maxsize=256)
def _expansions(g: Grammar, ctx: FieldContext) -> dict[tuple[str, str], Expansion]:
    out = {}
    for key, prod in ll1_table(g).items():
        groups = decompose_rhs(prod.rhs, g.nonterminals)
        items = []
        for group in reversed(groups):  # group 0 first
            codes = [g.codes[t] for t in reversed(group.terminals)]
            items.append((group.nonterminal, fp_eval(codes, 0, ctx), len(codes)))
        out[key] = Expansion(tuple(items))
    return out


def expansion_budget(g: Grammar, n: int) -> int:
    longest = max((len(p.rhs) for p in g.productions), default=0)
    return (n + 2) * (len(g.nonterminals) + 1) * (1 + longest)


def recognize_ll1(
    g: Grammar,
    stream: TokenStream,
    bound: int,
    ctx: FieldContext,
    *,
    meter: SpaceMeter | None = None,
    observer: Callable[[list[CompressedItem]], None] | None = None,
) -> Decision:
    """Predictive parse with each stack segment kept as (fingerprint, nonterminal, height).

    Input advances only when a terminal is matched. Once the input is
    consumed the loop keeps running with lookahead ``$`` so nullable
    nonterminals and exhausted items drain. More than ``bound`` items on the
    stack rejects with ``bound-exceeded``.

    ``observer`` sees the item list (top last) at the start of each loop
    iteration.
    """
    expansions = _expansions(g, ctx)
    codes = g.codes
    p, alpha = ctx.p, ctx.alpha
    n = stream.n
    budget = expansion_budget(g, n)
    if bound < 1:
        return Decision.reject("bound-exceeded", 1, peak_items=1)
    stack = [CompressedItem(0, g.start, 0)]
    peak = 1
    if meter is not None:
        meter.charge(FIXED_WORDS + ITEM_WORDS)
    i = 1
    tok = stream.read() if n else END
    if n and tok not in codes:
        return _done(Decision.reject("unknown-symbol", i, peak_items=peak), meter, stack)
    steps = 0
    while stack:
        steps += 1
        if steps > budget:
            return _done(Decision.reject("expansion-budget", i, peak_items=peak), meter, stack)
        if observer is not None:
            observer(list(stack))
        comp, nt, h = stack.pop()
        if nt is not None:
            exp = expansions.get((nt, tok))
            if exp is None:
                stack.append(CompressedItem(comp, nt, h))
                return _done(Decision.reject("no-rule", i, peak_items=peak), meter, stack)
            (b0, fp0, len0), *rest = exp.items
            size = len(stack) + 1 + len(rest)
            if size > bound:
                stack.append(CompressedItem(comp, nt, h))
                return _done(Decision.reject("bound-exceeded", i, peak_items=size), meter, stack)
            stack.append(CompressedItem((comp + pow(alpha, h, p) * fp0) % p, b0, h + len0))
            for b, fp, length in rest:
                stack.append(CompressedItem(fp, b, length))
            if meter is not None:
                meter.charge(ITEM_WORDS * len(rest))
            if size > peak:
                peak = size
        elif h:
            if tok == END:
                stack.append(CompressedItem(comp, nt, h))
                return _done(Decision.reject("input-underflow", i, peak_items=peak), meter, stack)
            # subtract the matched symbol at the top exponent h-1
            stack.append(CompressedItem((comp - codes[tok] * pow(alpha, h - 1, p)) % p, None, h - 1))
            i += 1
            if i > n:
                tok = END
            elif (tok := stream.read()) not in codes:
                return _done(Decision.reject("unknown-symbol", i, peak_items=peak), meter, stack)
        elif comp:
            stack.append(CompressedItem(comp, nt, h))
            return _done(Decision.reject("residue", i, peak_items=peak), meter, stack)
        elif meter is not None:
            meter.release(ITEM_WORDS)
    if tok != END:
        return _done(Decision.reject("leftover-input", i, peak_items=peak), meter, stack)
    return _done(Decision.accept(peak_items=peak), meter, stack)


def _done(decision: Decision, meter: SpaceMeter | None, stack: list) -> Decision:
    if meter is not None:
        meter.release(FIXED_WORDS + ITEM_WORDS * len(stack))
    return decision
