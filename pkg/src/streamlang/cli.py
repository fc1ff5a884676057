"""Command-line front end: ``streamlang <command> ...``.

Exit status is 0 for accept, 1 for reject and 2 for usage or input errors.
Reports are JSON objects with sorted keys, so a fixed seed gives
byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from streamlang import __version__
from streamlang.decision import Decision
from streamlang.degseq import MalformedStream, degseq_multipass, degseq_randomized, load_instance
from streamlang.dlin import BracketAlphabet, encode_dyckk_to_dyck2, recognize_dlin, reduce_to_1turn_dyck
from streamlang.dyck_multipass import check_1turn_dyck2_multipass, recognize_dlin_multipass
from streamlang.finite_field import FieldContext, all_points, default_prime, find_prime
from streamlang.grammar import GrammarError, load_grammar, validate_dlcfg, validate_ll1
from streamlang.ll1 import recognize_ll1
from streamlang.stream import SpaceMeter, StreamError, TokenStream, read_input
from streamlang import oracles

ACCEPT, REJECT, ERROR = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunReport:
    decision: str
    algorithm: str
    n: int | None
    reason: str | None = None
    p: int | None = None
    alpha: int | None = None
    passes_used: int | None = None
    peak_words: int | None = None
    error_bound: str | None = None
    extra: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> str:
        out = {k: v for k, v in vars(self).items() if k != "extra" and v is not None}
        out.update(self.extra)
        return json.dumps(out, sort_keys=True)


def _decision_report(algorithm: str, n: int, d: Decision, **fields) -> RunReport:
    extra = {k: v for k, v in d.stats.items() if k in ("block_len", "peak_items", "reduced_length", "window")}
    if d.position is not None and not d.accepted:
        extra["position"] = d.position
    fields.setdefault("passes_used", d.stats.get("passes_used"))
    return RunReport("accept" if d.accepted else "reject", algorithm, n, d.reason, extra=extra, **fields)


def _field(args, n: int) -> FieldContext:
    prime = args.prime if args.prime is not None else default_prime(n)
    return FieldContext.for_length(n, seed=args.seed, prime=prime)


def _randomized(args, n: int, algorithm: str, run: Callable[[FieldContext, SpaceMeter], Decision]) -> RunReport:
    ctx = _field(args, n)
    bound = str(Fraction(n, ctx.p - 1))
    if args.alpha_exhaustive:
        accepts = sum(bool(run(FieldContext.create(ctx.p, a), SpaceMeter())) for a in all_points(ctx.p))
        trials = ctx.p - 1
        return RunReport(
            "accept" if accepts == trials else "reject",
            algorithm,
            n,
            None if accepts == trials else "some-alpha-rejects",
            p=ctx.p,
            passes_used=1,
            error_bound=bound,
            extra={"accepts": accepts, "trials": trials, "accept_fraction": accepts / trials},
        )
    meter = SpaceMeter()
    d = run(ctx, meter)
    return _decision_report(
        algorithm, n, d, p=ctx.p, alpha=ctx.alpha, passes_used=1, peak_words=meter.peak, error_bound=bound
    )


def cmd_validate(args) -> tuple[int, RunReport | None]:
    g = load_grammar(args.grammar)
    verdict = validate_dlcfg(g) if args.grammar_class == "dlin" else validate_ll1(g)
    for warning in verdict.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    for v in verdict.violations:
        print(f"{v.kind}: {v.message}", file=sys.stderr)
    report = RunReport(
        "valid" if verdict.ok else "invalid",
        f"validate-{args.grammar_class}",
        None,
        None if verdict.ok else verdict.violations[0].kind,
        extra={"productions": len(g.productions), "violations": [v.message for v in verdict.violations]},
    )
    return (ACCEPT if verdict.ok else ERROR), report


def cmd_recognize(args) -> tuple[int, RunReport]:
    tokens = read_input(args.input)
    n = len(tokens)
    algo = args.algo
    if algo == "dyck2-1turn":
        meter = SpaceMeter()
        d = check_1turn_dyck2_multipass(TokenStream(tokens, n, args.passes), args.passes, meter)
        report = _decision_report(algo, n, d, peak_words=meter.peak)
    else:
        if args.grammar is None:
            raise UsageError(f"--grammar is required for --algo {algo}")
        g = load_grammar(args.grammar)
        if algo == "dlin":
            report = _randomized(
                args, n, algo, lambda ctx, meter: recognize_dlin(g, TokenStream(tokens, n), ctx, meter=meter)
            )
        elif algo == "ll1":
            if args.bound is None:
                raise UsageError("--bound is required for --algo ll1")
            report = _randomized(
                args, n, algo,
                lambda ctx, meter: recognize_ll1(g, TokenStream(tokens, n), args.bound, ctx, meter=meter),
            )
        else:
            meter = SpaceMeter()
            d = recognize_dlin_multipass(g, TokenStream(tokens, n, args.passes + 1), args.passes, meter)
            report = _decision_report(algo, n, d, peak_words=meter.peak)
    return (ACCEPT if report.decision == "accept" else REJECT), report


def cmd_reduce(args) -> tuple[int, RunReport]:
    g = load_grammar(args.grammar)
    tokens = read_input(args.input)
    failure = []
    out = reduce_to_1turn_dyck(g, TokenStream(tokens, len(tokens)), lambda r, pos: failure.append((r, pos)))
    if args.to == "dyck-2":
        out = encode_dyckk_to_dyck2(out, BracketAlphabet(g.terminals))
    reduced = list(out)
    extra = {"tokens": reduced, "reduced_length": len(reduced)}
    if failure:
        extra["failure"], extra["position"] = failure[0]
    if args.report == "quiet":
        print(f"n: {len(reduced)}\n{' '.join(reduced)}")
    return ACCEPT, RunReport("reduced", f"reduce-{args.to}", len(tokens), extra=extra)


def cmd_degseq(args) -> tuple[int, RunReport]:
    inst = load_instance(args.input)
    size = inst.n + inst.m
    if args.mode == "randomized":
        report = _randomized(
            args, inst.n, "degseq-randomized",
            lambda ctx, meter: degseq_randomized(inst.stream(), inst.n, ctx, meter),
        )
    else:
        meter = SpaceMeter()
        d = degseq_multipass(inst.stream(args.passes), inst.n, args.passes, meter)
        report = _decision_report("degseq-multipass", inst.n, d, peak_words=meter.peak)
    report.extra["stream_length"] = size
    return (ACCEPT if report.decision == "accept" else REJECT), report


def cmd_oracle(args) -> tuple[int, RunReport]:
    kind = args.kind
    extra: dict[str, Any] = {}
    if kind == "degseq":
        inst = load_instance(args.input)
        n = inst.n
        try:
            ok = oracles.degseq_naive(inst)
        except oracles.VertexOutOfRange:
            return REJECT, RunReport("reject", "oracle-degseq", n, "vertex-out-of-range")
    else:
        tokens = read_input(args.input)
        n = len(tokens)
        if kind == "dyck":
            ok = oracles.dyck_explicit(tokens, args.one_turn)
        else:
            if args.grammar is None:
                raise UsageError(f"--grammar is required for --kind {kind}")
            g = load_grammar(args.grammar)
            if kind == "cyk":
                ok = oracles.cyk_member(g, tokens)
            elif kind == "cpda":
                if not validate_dlcfg(g):
                    raise UsageError("cpda oracle needs a DL-CFG")
                ok = oracles.cpda_run(g, tokens).accepted
            else:
                if not validate_ll1(g):
                    raise UsageError("ll1 oracle needs an LL(1) grammar")
                rep = oracles.ll1_parse_rank(g, tokens)
                ok = rep.accepted
                extra = {"rank": rep.rank, "peak_items": rep.peak_items}
    return (ACCEPT if ok else REJECT), RunReport("accept" if ok else "reject", f"oracle-{kind}", n, extra=extra)


def cmd_prime(args) -> tuple[int, RunReport]:
    n = args.n
    if n < 1:
        raise UsageError("--n must be positive")
    lo = max(n, 2) ** 2
    p = find_prime(lo, 2 * lo)
    if args.report == "quiet":
        print(p)
    return ACCEPT, RunReport("found", "prime", n, p=p)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="streamlang", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--report", choices=("json", "quiet"), default="json")
    common.add_argument("--seed", type=int, default=0, help="seed for the evaluation point (default 0)")
    common.add_argument("--prime", type=int, help="field modulus override")
    common.add_argument("--passes", type=int, default=1)
    common.add_argument("--alpha-exhaustive", action="store_true", help="run every alpha in [1, p-1]")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check a grammar's class")
    p.add_argument("--grammar", required=True)
    p.add_argument("--class", dest="grammar_class", choices=("dlin", "ll1"), default="dlin")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("recognize", parents=[common], help="decide membership of an input")
    p.add_argument("--algo", choices=("dlin", "ll1", "dyck2-1turn", "dlin-multipass"), required=True)
    p.add_argument("--grammar")
    p.add_argument("--input", required=True, help="input file, or - for stdin")
    p.add_argument("--bound", type=int, help="stack bound in items (ll1)")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("reduce", parents=[common], help="emit the 1-turn Dyck reduction of an input")
    p.add_argument("--to", choices=("dyck-k", "dyck-2"), default="dyck-k")
    p.add_argument("--grammar", required=True)
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("degseq", parents=[common], help="verify a degree sequence against an edge stream")
    p.add_argument("--mode", choices=("randomized", "multipass"), default="randomized")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_degseq)

    p = sub.add_parser("oracle", parents=[common], help="brute-force reference decision")
    p.add_argument("--kind", choices=("cyk", "cpda", "ll1", "dyck", "degseq"), required=True)
    p.add_argument("--grammar")
    p.add_argument("--input", required=True)
    p.add_argument("--one-turn", action="store_true", help="dyck: require all openers first")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("prime", parents=[common], help="smallest prime in [n^2, 2n^2]")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_prime)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return ERROR if exc.code else ACCEPT
    if getattr(args, "passes", 1) < 1:
        print("error: --passes must be positive", file=sys.stderr)
        return ERROR
    try:
        code, report = args.func(args)
    except (UsageError, GrammarError, StreamError, MalformedStream, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR
    if report is not None and args.report == "json":
        print(report.to_json())
    return code


if __name__ == "__main__":
    sys.exit(main())
