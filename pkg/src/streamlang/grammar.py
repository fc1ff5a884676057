"""Grammar model, file format, DL-CFG / LL(1) validation and SELECT sets."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

EPS = "eps"
ARROW = "->"
END = "$"
RESERVED = frozenset({EPS, ARROW, END})
CLOSE_SUFFIX = "~"


class GrammarError(Exception):
    pass


class GrammarSyntaxError(GrammarError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        prefix = f"line {lineno}: " if lineno is not None else ""
        super().__init__(prefix + message)


class UndeclaredSymbol(GrammarError):
    pass


class DuplicateProduction(GrammarError):
    pass


class GrammarClassError(GrammarError):
    """Raised when a recognizer is handed a grammar outside its class."""


@dataclass(frozen=True)
class Production:
    lhs: str
    rhs: tuple[str, ...] = ()

    def __str__(self):
        body = " ".join(self.rhs) if self.rhs else EPS
        return f"{self.lhs} {ARROW} {body}"


@dataclass(frozen=True)
class Grammar:
    start: str
    terminals: tuple[str, ...]
    nonterminals: tuple[str, ...]
    productions: tuple[Production, ...]

    def __post_init__(self):
        for name in self.terminals + self.nonterminals:
            if name in RESERVED or name.endswith(CLOSE_SUFFIX) or not name or any(c.isspace() for c in name):
                raise GrammarSyntaxError(f"illegal symbol name {name!r}")
        if len(set(self.terminals)) != len(self.terminals):
            raise GrammarSyntaxError("terminal declared twice")
        if len(set(self.nonterminals)) != len(self.nonterminals):
            raise GrammarSyntaxError("nonterminal declared twice")
        clash = set(self.terminals) & set(self.nonterminals)
        if clash:
            raise GrammarSyntaxError(f"declared as both terminal and nonterminal: {sorted(clash)}")
        if self.start not in self.nonterminals:
            raise UndeclaredSymbol(f"start symbol {self.start!r} is not a declared nonterminal")
        seen = set()
        for prod in self.productions:
            if prod.lhs not in self.nonterminals:
                raise UndeclaredSymbol(f"undeclared nonterminal {prod.lhs!r} in '{prod}'")
            for sym in prod.rhs:
                if sym not in self.terminals and sym not in self.nonterminals:
                    raise UndeclaredSymbol(f"undeclared symbol {sym!r} in '{prod}'")
            if prod in seen:
                raise DuplicateProduction(str(prod))
            seen.add(prod)

    @cached_property
    def codes(self) -> dict[str, int]:
        """The fixed terminal numbering: i-th declared terminal maps to i (1-based)."""
        return {t: i for i, t in enumerate(self.terminals, start=1)}

    @cached_property
    def nonterminal_set(self) -> frozenset[str]:
        return frozenset(self.nonterminals)

    def is_terminal(self, sym: str) -> bool:
        return sym in self.codes

    def rules_for(self, nt: str) -> list[Production]:
        return [p for p in self.productions if p.lhs == nt]

    def has_epsilon_rule(self, nt: str) -> bool:
        return Production(nt, ()) in self.productions


def parse_grammar(text: str) -> Grammar:
    """Parse the line-based grammar format.

    ::

        start: S
        terminals: a b
        nonterminals: S
        S -> a S b
        S -> eps
    """
    header: dict[str, list[str]] = {}
    productions: list[Production] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ARROW in line.split():
            parts = line.split()
            if parts.count(ARROW) != 1 or parts[1] != ARROW:
                raise GrammarSyntaxError(f"malformed production {line!r}", lineno)
            if len(header) < 3:
                raise GrammarSyntaxError("productions must follow the three declarations", lineno)
            lhs, body = parts[0], parts[2:]
            if not body:
                raise GrammarSyntaxError("empty body; write 'eps'", lineno)
            if body == [EPS]:
                body = []
            elif EPS in body or END in body:
                raise GrammarSyntaxError("reserved name inside a production body", lineno)
            prod = Production(lhs, tuple(body))
            if prod in productions:
                raise DuplicateProduction(f"line {lineno}: {prod}")
            productions.append(prod)
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep or key not in ("start", "terminals", "nonterminals"):
            raise GrammarSyntaxError(f"expected a declaration or production, got {line!r}", lineno)
        if productions:
            raise GrammarSyntaxError(f"declaration {key!r} after productions", lineno)
        if key in header:
            raise GrammarSyntaxError(f"duplicate {key!r} declaration", lineno)
        header[key] = rest.split()
        if key == "start" and len(header[key]) != 1:
            raise GrammarSyntaxError("start takes exactly one nonterminal", lineno)
    missing = {"start", "terminals", "nonterminals"} - header.keys()
    if missing:
        raise GrammarSyntaxError(f"missing declarations: {sorted(missing)}")
    return Grammar(
        start=header["start"][0],
        terminals=tuple(header["terminals"]),
        nonterminals=tuple(header["nonterminals"]),
        productions=tuple(productions),
    )


def load_grammar(path: str | Path) -> Grammar:
    return parse_grammar(Path(path).read_text(encoding="utf-8"))


def serialize_grammar(g: Grammar) -> str:
    lines = [
        f"start: {g.start}",
        "terminals: " + " ".join(g.terminals),
        "nonterminals: " + " ".join(g.nonterminals),
    ]
    lines.extend(str(p) for p in g.productions)
    return "\n".join(lines) + "\n"


# -- validation -------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    productions: tuple[Production, ...] = ()
    token: str | None = None


@dataclass
class ValidationResult:
    ok: bool
    violations: list[Violation] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def _useless_nonterminals(g: Grammar) -> list[str]:
    productive: set[str] = set()
    changed = True
    while changed:
        changed = False
        for prod in g.productions:
            if prod.lhs not in productive and all(
                g.is_terminal(s) or s in productive for s in prod.rhs
            ):
                productive.add(prod.lhs)
                changed = True
    reachable = {g.start}
    frontier = [g.start]
    while frontier:
        nt = frontier.pop()
        for prod in g.rules_for(nt):
            for s in prod.rhs:
                if s in g.nonterminal_set and s not in reachable:
                    reachable.add(s)
                    frontier.append(s)
    notes = []
    for nt in g.nonterminals:
        if nt not in productive:
            notes.append(f"nonterminal {nt} derives no terminal string")
        if nt not in reachable:
            notes.append(f"nonterminal {nt} is unreachable from {g.start}")
    return notes


def validate_dlcfg(g: Grammar) -> ValidationResult:
    """Check every rule is ``A -> eps`` or ``A -> a [B] v`` and rules are deterministic in (A, a)."""
    violations = []
    by_key: dict[tuple[str, str], Production] = {}
    for prod in g.productions:
        rhs = prod.rhs
        if not rhs:
            continue
        if not g.is_terminal(rhs[0]):
            violations.append(Violation("form", f"'{prod}' does not start with a terminal", (prod,)))
            continue
        nts = [k for k, s in enumerate(rhs) if s in g.nonterminal_set]
        if len(nts) > 1 or (nts and nts[0] != 1):
            violations.append(
                Violation("form", f"'{prod}' has a nonterminal outside the position after the leading terminal", (prod,))
            )
            continue
        key = (prod.lhs, rhs[0])
        if key in by_key:
            other = by_key[key]
            violations.append(
                Violation(
                    "determinism",
                    f"'{other}' and '{prod}' share lhs {prod.lhs} and leading terminal {rhs[0]}",
                    (other, prod),
                    rhs[0],
                )
            )
        else:
            by_key[key] = prod
    return ValidationResult(not violations, violations, _useless_nonterminals(g))


@dataclass(frozen=True)
class SelectTable:
    select: dict[Production, frozenset[str]]
    nullable: frozenset[str]
    first: dict[str, frozenset[str]]
    follow: dict[str, frozenset[str]]

    def lookup(self, g: Grammar, nt: str, token: str) -> Production | None:
        for prod in g.rules_for(nt):
            if token in self.select[prod]:
                return prod
        return None


def _first_of(seq: Sequence[str], g: Grammar, first: dict[str, set[str]], nullable: set[str]):
    out: set[str] = set()
    for sym in seq:
        if g.is_terminal(sym):
            out.add(sym)
            return out, False
        out |= first[sym]
        if sym not in nullable:
            return out, False
    return out, True


def compute_select(g: Grammar) -> SelectTable:
    """FIRST/FOLLOW fixpoint over the grammar augmented with ``S' -> S $``."""
    nullable: set[str] = set()
    changed = True
    while changed:
        changed = False
        for prod in g.productions:
            if prod.lhs not in nullable and all(s in nullable for s in prod.rhs):
                nullable.add(prod.lhs)
                changed = True

    first: dict[str, set[str]] = {nt: set() for nt in g.nonterminals}
    changed = True
    while changed:
        changed = False
        for prod in g.productions:
            f, _ = _first_of(prod.rhs, g, first, nullable)
            if not f <= first[prod.lhs]:
                first[prod.lhs] |= f
                changed = True

    follow: dict[str, set[str]] = {nt: set() for nt in g.nonterminals}
    follow[g.start].add(END)
    changed = True
    while changed:
        changed = False
        for prod in g.productions:
            for k, sym in enumerate(prod.rhs):
                if sym not in g.nonterminal_set:
                    continue
                f, rest_nullable = _first_of(prod.rhs[k + 1:], g, first, nullable)
                if rest_nullable:
                    f = f | follow[prod.lhs]
                if not f <= follow[sym]:
                    follow[sym] |= f
                    changed = True

    select = {}
    for prod in g.productions:
        f, body_nullable = _first_of(prod.rhs, g, first, nullable)
        if body_nullable:
            f = f | follow[prod.lhs]
        select[prod] = frozenset(f)
    return SelectTable(
        select=select,
        nullable=frozenset(nullable),
        first={k: frozenset(v) for k, v in first.items()},
        follow={k: frozenset(v) for k, v in follow.items()},
    )


def validate_ll1(g: Grammar, table: SelectTable | None = None) -> ValidationResult:
    table = table or compute_select(g)
    violations = []
    for nt in g.nonterminals:
        rules = g.rules_for(nt)
        for x in range(len(rules)):
            for y in range(x + 1, len(rules)):
                shared = table.select[rules[x]] & table.select[rules[y]]
                for token in sorted(shared):
                    violations.append(
                        Violation(
                            "select-clash",
                            f"'{rules[x]}' and '{rules[y]}' both select on {token!r}",
                            (rules[x], rules[y]),
                            token,
                        )
                    )
    return ValidationResult(not violations, violations, _useless_nonterminals(g))


# -- rhs grouping -----------------------------------------------------------


@dataclass(frozen=True)
class RhsGroup:
    nonterminal: str | None
    terminals: tuple[str, ...]


def decompose_rhs(rhs: Iterable[str], nonterminals: Iterable[str]) -> list[RhsGroup]:
    """Split a body into ``B_t beta_t ... B_0 beta_0`` groups, listed from t down to 0.

    A leading run of terminals becomes a group with no nonterminal; each
    nonterminal then owns the terminals that follow it. The empty body is the
    single group ``(None, ())``.
    """
    nts = set(nonterminals)
    groups: list[RhsGroup] = []
    current_nt: str | None = None
    run: list[str] = []
    started = False
    for sym in rhs:
        if sym in nts:
            if started or run:
                groups.append(RhsGroup(current_nt, tuple(run)))
            current_nt, run, started = sym, [], True
        else:
            run.append(sym)
    groups.append(RhsGroup(current_nt, tuple(run)))
    return groups
