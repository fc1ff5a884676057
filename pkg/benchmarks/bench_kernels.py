"""Compare the compiled and pure-Python kernel backends.

    python3 benchmarks/bench_kernels.py [--size N] [--repeat R]

Each row times one kernel on the same input under both backends and prints
the speedup of the compiled one. Python-only runs just print its timings.
"""

from __future__ import annotations

import argparse
import timeit
from array import array

from streamlang import kernels
from streamlang.dlin import _kernel_tables
from streamlang.finite_field import FieldContext, default_prime
from streamlang.grammar import parse_grammar

ANBN = "start: S\nterminals: a b\nnonterminals: S\nS -> a S b\nS -> eps\n"


def cases(size: int):
    g = parse_grammar(ANBN)
    ctx = FieldContext.for_length(size, seed=1)
    start, next_nt, seg_fp, seg_len, seg_pow, has_eps = _kernel_tables(g, ctx)
    word = array("q", [g.codes["a"]] * (size // 2) + [g.codes["b"]] * (size // 2))
    degrees = array("q", [1] * size)
    sources = array("q", range(1, size + 1))
    p = default_prime(size)

    def dlin(mod):
        k = mod.DlinKernel(size, 2, ctx.p, ctx.alpha, ctx.alpha_inv, start,
                           next_nt, seg_fp, seg_len, seg_pow, has_eps)
        k.feed(word)
        assert k.finish() == mod.ACCEPTED

    def degseq(mod):
        k = mod.DegSeqKernel(size, ctx.p, ctx.alpha)
        k.feed_degrees(degrees)
        k.feed_sources(sources)
        k.finish()
        assert k.status == mod.ACCEPTED

    def fingerprint(mod):
        mod.fp_eval(word, 0, ctx.alpha, ctx.p)

    def window(mod):
        residual = array("q", [1] * size)
        assert mod.window_subtract(residual, 0, size, sources) == -1

    def primality(mod):
        for q in range(p, p + 200):
            mod.is_prime(q)

    return {"DlinKernel": dlin, "DegSeqKernel": degseq, "fp_eval": fingerprint,
            "window_subtract": window, "is_prime x200": primality}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = {name: kernels.load_backend(name) for name in kernels.available_backends()}
    print(f"size={args.size}, best of {args.repeat}, backends: {', '.join(backends)}")
    print(f"{'kernel':<18}" + "".join(f"{name + ' (ms)':>14}" for name in backends) + f"{'speedup':>10}")
    for label, fn in cases(args.size).items():
        times = {name: min(timeit.repeat(lambda: fn(mod), number=1, repeat=args.repeat)) * 1e3
                 for name, mod in backends.items()}
        row = f"{label:<18}" + "".join(f"{t:>14.2f}" for t in times.values())
        if "c" in times:
            row += f"{times['python'] / times['c']:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
