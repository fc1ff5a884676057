"""Brute-force ground truth: explicit pushdown runs, CYK, explicit Dyck checks, naive degree counts.

Nothing here is streaming or small-space. The CYK path shares no code with
the recognizers and is the reference for every membership claim.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from streamlang.degseq import DegSeqInstance
from streamlang.grammar import END, Grammar, compute_select

# -- explicit CPDA for DL-CFGs ----------------------------------------------


@dataclass(frozen=True)
class CpdaStep:
    """Configuration after ``i - 1`` consumed symbols.

    ``stack`` is the terminal segment bottom to top; ``non_term`` is the
    nonterminal sitting on top of it, if any.
    """

    i: int
    stack: tuple[str, ...]
    non_term: str | None


@dataclass(frozen=True)
class ExplicitCpdaTrace:
    accepted: bool
    steps: tuple[CpdaStep, ...]
    reject_step: int | None = None  # 1-based index of the symbol that failed, n+1 for end of input


def cpda_run(g: Grammar, w: Sequence[str]) -> ExplicitCpdaTrace:
    """Run the one-state pushdown automaton of ``g`` with its whole stack.

    A step is recorded before the first symbol and after every consumed
    symbol. ``A -> eps`` fires exactly when consumed symbols plus stacked
    terminals reach ``len(w)``.
    """
    n = len(w)
    nts = g.nonterminal_set
    stack: list[str] = [g.start]  # top last
    steps = []

    def snapshot(i: int) -> CpdaStep:
        if stack and stack[-1] in nts:
            return CpdaStep(i, tuple(stack[:-1]), stack[-1])
        return CpdaStep(i, tuple(stack), None)

    def fail(i: int) -> ExplicitCpdaTrace:
        return ExplicitCpdaTrace(False, tuple(steps), i)

    steps.append(snapshot(1))
    i = 1
    while i <= n:
        if stack and stack[-1] in nts:
            a = stack[-1]
            if len(stack) - 1 + i - 1 == n:
                if () not in {p.rhs for p in g.rules_for(a)}:
                    return fail(i)
                stack.pop()
                continue
            bodies = [p.rhs for p in g.rules_for(a) if p.rhs and p.rhs[0] == w[i - 1]]
            if len(bodies) != 1:
                return fail(i)
            stack.pop()
            stack.extend(reversed(bodies[0]))
        if not stack or stack[-1] != w[i - 1]:
            return fail(i)
        stack.pop()
        i += 1
        steps.append(snapshot(i))
    if stack and stack[-1] in nts and any(not p.rhs for p in g.rules_for(stack[-1])):
        stack.pop()
    if stack:
        return fail(n + 1)
    return ExplicitCpdaTrace(True, tuple(steps))


# -- explicit LL(1) parse ----------------------------------------------------


@dataclass(frozen=True)
class ParseRankReport:
    accepted: bool
    rank: int  # most nonterminals in any sentential form of the leftmost derivation
    peak_items: int  # most segments in the equivalent compressed stack
    stacks: tuple[tuple[str, ...], ...] = field(default=(), compare=False)


def _items(stack: Sequence[str], nts) -> int:
    count = sum(1 for s in stack if s in nts)
    return count + (1 if stack and stack[-1] not in nts else 0)


def ll1_parse_rank(g: Grammar, w: Sequence[str], *, keep_stacks: bool = False) -> ParseRankReport:
    """Table-driven predictive parse with the full stack.

    With ``keep_stacks`` the stack (bottom to top) is recorded at the start
    of every expand or match step.
    """
    table = {}
    for prod, tokens in compute_select(g).select.items():
        for tok in tokens:
            table.setdefault((prod.lhs, tok), prod)
    nts = g.nonterminal_set
    stack = [g.start]
    rank = peak = 1
    seen = []
    pos = 0
    ok = True
    while stack:
        if keep_stacks:
            seen.append(tuple(stack))
        look = w[pos] if pos < len(w) else END
        top = stack.pop()
        if top in nts:
            prod = table.get((top, look))
            if prod is None:
                ok = False
                break
            stack.extend(reversed(prod.rhs))
            rank = max(rank, sum(1 for s in stack if s in nts))
            peak = max(peak, _items(stack, nts))
        elif top == look:
            pos += 1
        else:
            ok = False
            break
    return ParseRankReport(ok and pos == len(w), rank, peak, tuple(seen))


# -- CYK ---------------------------------------------------------------------


@dataclass(frozen=True)
class CnfGrammar:
    start: str
    nullable_start: bool
    unary: dict[str, frozenset[str]]  # terminal -> nonterminals deriving it
    binary: tuple[tuple[str, str, str], ...]  # (A, B, C) for A -> B C


@lru_cache(maxsize=None)
def to_cnf(g: Grammar) -> CnfGrammar:
    """Chomsky normal form via START, TERM, BIN, DEL and UNIT."""
    start = "S0'"
    rules: set[tuple[str, tuple[str, ...]]] = {(start, (g.start,))}
    rules |= {(p.lhs, p.rhs) for p in g.productions}
    nts = set(g.nonterminals) | {start}

    # TERM: terminals inside long bodies get their own nonterminal
    proxy = {t: f"T<{t}>" for t in g.terminals}
    term_rules = set()
    for lhs, rhs in list(rules):
        if len(rhs) >= 2 and any(s not in nts for s in rhs):
            rules.discard((lhs, rhs))
            rules.add((lhs, tuple(proxy[s] if s not in nts else s for s in rhs)))
            term_rules |= {(proxy[s], (s,)) for s in rhs if s not in nts}
    rules |= term_rules
    nts |= {lhs for lhs, _ in term_rules}

    # BIN: split bodies longer than two
    fresh = 0
    for lhs, rhs in list(rules):
        if len(rhs) > 2:
            rules.discard((lhs, rhs))
            head = lhs
            for sym in rhs[:-2]:
                fresh += 1
                nxt = f"X{fresh}'"
                rules.add((head, (sym, nxt)))
                nts.add(nxt)
                head = nxt
            rules.add((head, rhs[-2:]))

    # DEL: drop epsilon rules, adding variants with nullable symbols removed
    nullable: set[str] = set()
    changed = True
    while changed:
        changed = False
        for lhs, rhs in rules:
            if lhs not in nullable and all(s in nullable for s in rhs):
                nullable.add(lhs)
                changed = True
    for lhs, rhs in list(rules):
        if len(rhs) == 2:
            b, c = rhs
            if b in nullable:
                rules.add((lhs, (c,)))
            if c in nullable:
                rules.add((lhs, (b,)))
    rules = {(lhs, rhs) for lhs, rhs in rules if rhs}

    # UNIT: close over A -> B chains
    units = {(lhs, rhs[0]) for lhs, rhs in rules if len(rhs) == 1 and rhs[0] in nts}
    reach = {a: {a} for a in nts}
    changed = True
    while changed:
        changed = False
        for a, b in units:
            for x in nts:
                if a in reach[x] and b not in reach[x]:
                    reach[x].add(b)
                    changed = True
    unary: dict[str, set[str]] = {}
    binary = set()
    for x in nts:
        for lhs, rhs in rules:
            if lhs not in reach[x]:
                continue
            if len(rhs) == 2:
                binary.add((x, rhs[0], rhs[1]))
            elif rhs[0] not in nts:
                unary.setdefault(rhs[0], set()).add(x)
    return CnfGrammar(
        start,
        start in nullable,
        {t: frozenset(s) for t, s in unary.items()},
        tuple(sorted(binary)),
    )


def cyk_member(g: Grammar, w: Sequence[str]) -> bool:
    cnf = to_cnf(g)
    n = len(w)
    if n == 0:
        return cnf.nullable_start
    # chart[l][i]: nonterminals deriving w[i:i+l+1]
    chart = [[cnf.unary.get(t, frozenset()) for t in w]]
    for length in range(2, n + 1):
        row = []
        for i in range(n - length + 1):
            cell = set()
            for split in range(1, length):
                left = chart[split - 1][i]
                right = chart[length - split - 1][i + split]
                if left and right:
                    cell.update(a for a, b, c in cnf.binary if b in left and c in right)
            row.append(cell)
        chart.append(row)
    return cnf.start in chart[n - 1][0]


# -- Dyck and degree sequences -----------------------------------------------

_PAIRS = {"(": ")", "[": "]"}


def dyck_explicit(tokens: Sequence[str], one_turn: bool) -> bool:
    """Balanced over ``()`` and ``[]``; with ``one_turn``, also nonempty with every opener first."""
    stack = []
    closed = False
    for tok in tokens:
        if tok in _PAIRS:
            if closed and one_turn:
                return False
            stack.append(_PAIRS[tok])
        elif not stack or stack.pop() != tok:
            return False
        else:
            closed = True
    if one_turn and not tokens:
        return False
    return not stack


class VertexOutOfRange(ValueError):
    pass


def degseq_naive(inst: DegSeqInstance) -> bool:
    for u, v in inst.edges:
        if not (1 <= u <= inst.n and 1 <= v <= inst.n):
            raise VertexOutOfRange(f"edge ({u}, {v}) outside [1, {inst.n}]")
    counts = Counter(u for u, _ in inst.edges)
    return all(counts[i] == d for i, d in enumerate(inst.degrees, start=1))
