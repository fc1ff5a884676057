from __future__ import annotations

import itertools

import pytest

from streamlang import kernels
from streamlang.grammar import parse_grammar

ANBN = """
start: S
terminals: a b
nonterminals: S
S -> a S b
S -> eps
"""

# S -> a T b, T -> b T | eps : a b^k b
ATB = """
start: S
terminals: a b
nonterminals: S T
S -> a T b
T -> b T
T -> eps
"""

MIRROR = """
start: S
terminals: a b
nonterminals: S A
S -> a S b a
S -> b A
A -> a A b
A -> eps
"""

G2 = """
start: S
terminals: a b
nonterminals: S
S -> a S S
S -> b
"""

DLIN_SOURCES = {"anbn": ANBN, "atb": ATB, "mirror": MIRROR}
LL1_SOURCES = {"g2": G2, "anbn": ANBN}


def strings(alphabet, max_len: int):
    for n in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=n)


@pytest.fixture(scope="session")
def anbn():
    return parse_grammar(ANBN)


@pytest.fixture(scope="session")
def g2():
    return parse_grammar(G2)


@pytest.fixture(scope="session")
def dlin_grammars():
    return {name: parse_grammar(text) for name, text in DLIN_SOURCES.items()}


@pytest.fixture(scope="session")
def ll1_grammars():
    return {name: parse_grammar(text) for name, text in LL1_SOURCES.items()}


@pytest.fixture(params=kernels.available_backends())
def backend(request, monkeypatch):
    """Route the kernel entry points through one backend for the test's duration."""
    impl = kernels.load_backend(request.param)
    for name in ("is_prime", "fp_eval", "DlinKernel", "DegSeqKernel", "window_subtract"):
        monkeypatch.setattr(kernels, name, getattr(impl, name))
    return request.param


ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture
def criterion(request):
    """Record one pass/fail line for an acceptance criterion; fails the test on a miss."""
    lines = request.config.stash.setdefault(ACCEPTANCE_KEY, [])

    def record(label: str, ok: bool, detail: str) -> None:
        line = f"{'PASS' if ok else 'FAIL'} {label}: {detail}"
        lines.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
