import itertools

import pytest
from hypothesis import given, strategies as st

from streamlang.dyck_multipass import (
    ADAPTER_WORDS,
    CHECKER_WORDS,
    BlockPlan,
    ReducedStream,
    check_1turn_dyck2_multipass,
    recognize_dlin_multipass,
)
from streamlang.oracles import cyk_member, dyck_explicit
from streamlang.stream import EndOfPass, PassBudgetExceeded, SpaceMeter, TokenStream

from conftest import strings


def check(w, p, meter=None):
    return check_1turn_dyck2_multipass(TokenStream(list(w), len(w), p), p, meter)


def multipass(g, w, p, meter=None):
    return recognize_dlin_multipass(g, TokenStream(list(w), len(w), p + 1), p, meter)


def test_examples():
    assert check("([])", 1).accepted
    assert check("([)]", 1).reason == "mismatch"
    d = check("(([[]]))", 2)
    assert d.accepted and d.stats["passes_used"] == 2 and d.stats["block_len"] == 2


def test_reject_reasons():
    assert check("(((", 1).reason == "odd-length"
    assert check("", 1).reason == "empty"
    assert check("()()", 1).reason == "closer-in-left-half"
    assert check("((()((", 1).reason == "opener-in-right-half"
    assert check("([)]", 2).position == 4  # pass 0 pairs positions 1 and 4


def test_pass_budget_enforced():
    with pytest.raises(PassBudgetExceeded):
        check_1turn_dyck2_multipass(TokenStream(list("(())"), 4, 1), 2)
    with pytest.raises(ValueError):
        check("()", 0)


def test_uneven_blocks_pair_mirror_positions():
    # n = 6, p = 2: blocks of 2 and 1 on each side of the centre
    plan = BlockPlan(6, 2)
    assert [plan.left_block(j) for j in range(2)] == [(1, 2), (3, 3)]
    assert [plan.right_block(j) for j in range(2)] == [(5, 6), (4, 4)]
    assert check("((()))", 2).accepted
    assert check("(([]))", 2).accepted
    assert not check("(([)))", 2).accepted


@pytest.mark.parametrize("n", range(2, 41, 2))
@pytest.mark.parametrize("p", [1, 2, 3, 5, 8])
def test_block_plan_tiles_both_halves(n, p):
    plan = BlockPlan(n, p)
    left = [i for j in range(p) for i in range(plan.left_block(j)[0], plan.left_block(j)[1] + 1)]
    right = [i for j in range(p) for i in range(plan.right_block(j)[0], plan.right_block(j)[1] + 1)]
    assert left == list(range(1, n // 2 + 1))
    assert sorted(right) == list(range(n // 2 + 1, n + 1))


@pytest.mark.parametrize("p", [1, 2, 3])
def test_agrees_with_explicit_up_to_8(p):
    for n in range(9):
        for w in itertools.product("([)]", repeat=n):
            assert check(w, p).accepted == dyck_explicit(w, True), w


@given(st.lists(st.sampled_from("(["), min_size=1, max_size=40), st.integers(1, 12), st.data())
def test_members_accept_and_single_flips_reject(opens, p, data):
    closes = [{"(": ")", "[": "]"}[t] for t in reversed(opens)]
    w = opens + closes
    meter = SpaceMeter()
    d = check(w, p, meter)
    assert d.accepted and d.stats["passes_used"] == p
    assert meter.peak <= -(-len(w) // (2 * p)) + CHECKER_WORDS and meter.current == 0
    k = data.draw(st.integers(0, len(w) - 1))
    flipped = list(w)
    flipped[k] = {"(": "[", "[": "(", ")": "]", "]": ")"}[w[k]]
    assert not check(flipped, p).accepted


@pytest.mark.parametrize("p", [1, 2, 4, 8])
def test_space_bound_4096(p):
    w = ["(", "["] * 1024 + ["]", ")"] * 1024
    meter = SpaceMeter()
    assert check(w, p, meter).accepted
    assert meter.peak <= -(-4096 // (2 * p)) + 8


def test_reduced_stream_replays(anbn):
    base = TokenStream(list("aabb"), 4, 3)
    virtual = ReducedStream(anbn, base, 4)
    assert [virtual.read() for _ in range(4)] == ["[", "[", "]", "]"]
    assert virtual.exhausted
    with pytest.raises(EndOfPass):
        virtual.read()
    virtual.rewind()
    assert virtual.read() == "[" and virtual.passes_used == 2
    with pytest.raises(PassBudgetExceeded):
        virtual.rewind()


def test_multipass_examples(anbn):
    d = multipass(anbn, "aabb", 2)
    assert d.accepted and d.stats["passes_used"] == 3 and d.stats["reduced_length"] == 4
    assert not multipass(anbn, "aaba", 2).accepted
    d = multipass(anbn, "aab", 1)
    assert d.reason == "no-rule" and d.stats["passes_used"] == 1
    assert multipass(anbn, "", 1).accepted


def test_empty_reduction_accepts_after_calibration(dlin_grammars):
    d = multipass(dlin_grammars["mirror"], "b", 2)
    assert d.accepted and d.stats == {"passes_used": 1, "reduced_length": 0, "block_len": 0}


@pytest.mark.parametrize("name", ["anbn", "atb", "mirror"])
@pytest.mark.parametrize("p", [1, 2])
def test_multipass_agrees_with_cyk(dlin_grammars, name, p):
    g = dlin_grammars[name]
    for w in strings(g.terminals, 10):
        meter = SpaceMeter()
        d = multipass(g, w, p, meter)
        assert d.accepted == cyk_member(g, w), w
        assert meter.current == 0
        if d.accepted and d.stats["reduced_length"]:
            assert d.stats["passes_used"] == p + 1
            assert meter.peak <= -(-d.stats["reduced_length"] // (2 * p)) + CHECKER_WORDS + ADAPTER_WORDS
