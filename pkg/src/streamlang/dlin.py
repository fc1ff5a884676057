"""One-pass randomized membership for DLIN, and the streaming reduction to 1-turn Dyck."""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Iterator

from streamlang import kernels
from streamlang.decision import Decision
from streamlang.finite_field import FieldContext
from streamlang.fingerprint import fp_eval
from streamlang.grammar import CLOSE_SUFFIX, Grammar, GrammarClassError, validate_dlcfg
from streamlang.stream import SpaceMeter, TokenStream

# alpha, alpha_inv, p, value, h, power, non_term, i, n
DLIN_STATE_WORDS = 9


@dataclass(frozen=True)
class DlinRule:
    lhs: str
    lead: str
    next_nt: str | None
    pushed: tuple[str, ...]  # v, in body order; v[0] ends on top of the stack


@dataclass(frozen=True)
class DlinState:
    value: int
    h: int
    non_term: str | None
    i: int  # 1-based index of the next input symbol


@lru_cache(maxsize=None)
def dlin_rules(g: Grammar) -> dict[tuple[str, str], DlinRule]:
    verdict = validate_dlcfg(g)
    if not verdict.ok:
        raise GrammarClassError("; ".join(v.message for v in verdict.violations))
    rules = {}
    for prod in g.productions:
        if not prod.rhs:
            continue
        lead, rest = prod.rhs[0], prod.rhs[1:]
        nxt = None
        if rest and rest[0] in g.nonterminal_set:
            nxt, rest = rest[0], rest[1:]
        rules[(prod.lhs, lead)] = DlinRule(prod.lhs, lead, nxt, rest)
    return rules


@lru_cache(maxsize=256)
def _kernel_tables(g: Grammar, ctx: FieldContext):
    rules = dlin_rules(g)
    m = len(g.terminals)
    index = {nt: k for k, nt in enumerate(g.nonterminals)}
    size = len(g.nonterminals) * (m + 1)
    next_nt = [kernels.NO_RULE] * size
    seg_fp = [0] * size
    seg_len = [0] * size
    seg_pow = [1] * size
    for (lhs, lead), rule in rules.items():
        idx = index[lhs] * (m + 1) + g.codes[lead]
        next_nt[idx] = kernels.NO_NT if rule.next_nt is None else index[rule.next_nt]
        codes = [g.codes[t] for t in reversed(rule.pushed)]
        seg_fp[idx] = fp_eval(codes, 0, ctx)
        seg_len[idx] = len(codes)
        seg_pow[idx] = pow(ctx.alpha, len(codes), ctx.p)
    has_eps = [int(g.has_epsilon_rule(nt)) for nt in g.nonterminals]
    return index[g.start], next_nt, seg_fp, seg_len, seg_pow, has_eps


def recognize_dlin(
    g: Grammar,
    stream: TokenStream,
    ctx: FieldContext,
    *,
    meter: SpaceMeter | None = None,
    observer: Callable[[DlinState], None] | None = None,
    chunk_size: int = 8192,
) -> Decision:
    """Single pass over ``stream``; members always accept, others with prob <= n/(p-1).

    The canonical PDA is simulated with its terminal stack replaced by one
    fingerprint. The pending nonterminal is rewritten by ``A -> eps`` exactly
    when stack height plus consumed symbols equals n; that step reads no input.

    ``observer`` receives the state before the first symbol and after every
    consumed symbol (before any epsilon step at the next position).
    """
    n = stream.n
    start, next_nt, seg_fp, seg_len, seg_pow, has_eps = _kernel_tables(g, ctx)
    kernel = kernels.DlinKernel(
        n, len(g.terminals), ctx.p, ctx.alpha, ctx.alpha_inv, start,
        next_nt, seg_fp, seg_len, seg_pow, has_eps,
    )
    if meter is not None:
        meter.charge(DLIN_STATE_WORDS)
    codes = g.codes
    if observer is not None:
        names = g.nonterminals
        observer(DlinState(0, 0, g.start, 1))
        chunk_size = 1
    while not stream.exhausted:
        chunk = stream.read_chunk(chunk_size)
        ok = kernel.feed(array("q", [codes.get(t, 0) for t in chunk]))
        if not ok:
            break
        if observer is not None:
            nt = kernel.nt
            observer(DlinState(kernel.value, kernel.h, names[nt] if nt >= 0 else None, kernel.consumed + 1))
    status = kernel.finish()
    if meter is not None:
        meter.release(DLIN_STATE_WORDS)
    if status == kernels.ACCEPTED:
        return Decision.accept()
    return Decision.reject(kernels.REASONS[kernel.reason], kernel.consumed + 1)


# -- reductions -------------------------------------------------------------


class UnknownToken(ValueError):
    pass


class BracketAlphabet:
    """Pairs each terminal ``a`` with a closer spelled ``a~``."""

    def __init__(self, terminals: Iterable[str]):
        self.terminals = tuple(terminals)
        self._index = {}
        for i, t in enumerate(self.terminals, start=1):
            self._index[t] = (i, False)
            self._index[t + CLOSE_SUFFIX] = (i, True)

    @property
    def k(self) -> int:
        return len(self.terminals)

    @staticmethod
    def closer(token: str) -> str:
        return token + CLOSE_SUFFIX

    def classify(self, token: str) -> tuple[int, bool]:
        """(1-based pair index, is_closer)."""
        try:
            return self._index[token]
        except KeyError:
            raise UnknownToken(token) from None


def reduce_to_1turn_dyck(
    g: Grammar,
    stream: TokenStream,
    on_failure: Callable[[str, int], None] | None = None,
) -> Iterator[str]:
    """Emit the reduced string block by block while reading ``stream`` once.

    Each expansion emits the pushed terminals (top last) as openers and each
    matched symbol emits its closer, so the output is in 1-turn Dyck_k iff
    the input is in L(g). A structural failure emits ``a1~ a1`` and stops;
    ``on_failure(reason, position)`` is told about it first.
    """
    rules = dlin_rules(g)
    n = stream.n
    pair = (BracketAlphabet.closer(g.terminals[0]), g.terminals[0])

    def sentinel(reason: str, position: int):
        if on_failure is not None:
            on_failure(reason, position)
        return pair

    non_term: str | None = g.start
    h = 0
    i = 1
    while i <= n:
        if non_term is not None and h + i - 1 == n:
            if not g.has_epsilon_rule(non_term):
                yield from sentinel("epsilon-missing", i)
                return
            non_term = None
            continue
        token = stream.read()
        if non_term is not None:
            rule = rules.get((non_term, token))
            if rule is None:
                yield from sentinel("no-rule", i)
                return
            yield from reversed(rule.pushed)
            h += len(rule.pushed)
            non_term = rule.next_nt
        elif token in g.codes:
            yield BracketAlphabet.closer(token)
        else:
            yield from sentinel("unknown-symbol", i)
            return
        i += 1
    if non_term is not None and not g.has_epsilon_rule(non_term):
        yield from sentinel("pending-nonterminal", i)


def dyck2_width(k: int) -> int:
    """Bracket symbols per Dyck_k token: ceil(log2 k), at least 1."""
    return max(1, (k - 1).bit_length())


def encode_dyckk_to_dyck2(tokens: Iterable[str], alphabet: BracketAlphabet) -> Iterator[str]:
    """Spell pair i as the bits of i-1 (MSB first) in ``(``/``[``; closers mirror them."""
    width = dyck2_width(alphabet.k)
    for token in tokens:
        i, is_close = alphabet.classify(token)
        bits = [(i - 1) >> (width - 1 - j) & 1 for j in range(width)]
        if is_close:
            for b in reversed(bits):
                yield "]" if b else ")"
        else:
            for b in bits:
                yield "[" if b else "("
