"""Command-line front end.

Subcommands: `encode` prints encodings, `match` runs one of the three
matchers, `collisions` reproduces the hash-collision experiments, `gen`
writes seeded random instances, `bench` emits a CSV timing sweep.

Inputs named on the command line are read from the file of that name if
one exists, otherwise the argument itself is the string.  One byte is
one symbol by default; `--symbols tokens` treats whitespace-separated
tokens as symbols instead.

Exit codes: 0 success, 2 usage or input error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from .encoding import Alphabet, InputError, PString, encode
from .experiments import (DEFAULT_ALPHABET, ExperimentSpec, bench_sweep,
                          collision_experiment, derive_base, gen_instance)
from .general import MatchQuery, match_k, mismatch_profile, set_parallelism
from .hashing import MOD61_A, MOD61_B, ConfigError, HashConfig
from .oracle import oracle_profile
from .single import match_single

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3


def _read_source(src: str) -> str:
    if os.path.exists(src):
        with open(src, "r", encoding="utf-8") as fh:
            data = fh.read()
        if data.endswith("\n"):
            data = data[:-1]
        return data
    return src


def _symbols(data: str, mode: str) -> tuple:
    return tuple(data.split()) if mode == "tokens" else tuple(data)


def _parse_static(chars: str, mode: str) -> tuple:
    statics = tuple(chars.split()) if mode == "tokens" else tuple(chars)
    if len(set(statics)) != len(statics):
        raise InputError("static symbols must be pairwise distinct")
    return statics


def _render_code(code: int, static_base: int) -> str:
    if code >= static_base:
        return f"S{code - static_base}"
    return str(code)


def cmd_encode(args) -> int:
    statics = _parse_static(args.static, args.symbols)
    sources = [_symbols(_read_source(s), args.symbols) for s in args.source]
    alphabet = Alphabet.infer(sources, static=statics)
    for syms in sources:
        enc = encode(PString(syms, alphabet))
        print(" ".join(_render_code(int(c), enc.static_base) for c in enc.codes))
    return EXIT_OK


def _hash_config(args, max_code: int) -> HashConfig:
    if args.mod1 is None:
        mod1, mod2 = MOD61_A, MOD61_B
    else:
        mod1, mod2 = args.mod1, args.mod2
    limit = mod1 if mod2 is None else min(mod1, mod2)
    base = args.base if args.base is not None else derive_base(args.seed, limit)
    return HashConfig(base=base, mod1=mod1, mod2=mod2, strict=False)


def cmd_match(args) -> int:
    if args.algorithm == "single" and args.k != 1:
        raise InputError("--algorithm single supports exactly k=1")
    set_parallelism(args.threads)
    statics = _parse_static(args.static, args.symbols)
    text = _symbols(_read_source(args.text), args.symbols)
    pattern = _symbols(_read_source(args.pattern), args.symbols)
    alphabet = Alphabet.infer([text, pattern], static=statics)
    t = PString(text, alphabet)
    p = PString(pattern, alphabet)

    if args.algorithm == "single":
        cfg = _hash_config(args, max_code=len(t) + 1 + len(statics))
        verdicts = match_single(t, p, cfg)
        if args.report == "positions":
            for i in np.nonzero(verdicts)[0]:
                print(int(i) + 1)
        else:
            for i, ok in enumerate(verdicts):
                print(f"{i + 1}\t{1 if ok else 0}")
        return EXIT_OK

    if args.algorithm == "oracle":
        profile = np.asarray(oracle_profile(t, p), dtype=np.int64)
    else:
        profile = mismatch_profile(MatchQuery(t, p, k=args.k))

    if args.report == "positions":
        for i in np.nonzero(profile <= args.k)[0]:
            print(int(i) + 1)
    else:
        for i, c in enumerate(profile):
            print(f"{i + 1}\t{int(c)}")
    return EXIT_OK


def cmd_collisions(args) -> int:
    spec = ExperimentSpec(runs=args.runs, n=args.n, m=args.m,
                          alphabet=args.alphabet, mod1=args.mod1,
                          mod2=args.mod2, seed=args.seed, base=args.base)
    counts = collision_experiment(spec, jobs=args.jobs)
    print(f"incorrect={int(counts[0])}")
    return EXIT_OK


def cmd_gen(args) -> int:
    text, pattern = gen_instance(args.seed, 0, args.n, args.m or 0, args.alphabet)
    try:
        with open(args.out_text, "w", encoding="utf-8") as fh:
            fh.write(text)
        if args.out_pattern:
            with open(args.out_pattern, "w", encoding="utf-8") as fh:
                fh.write(pattern)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_bench(args) -> int:
    n_list = [int(x) for x in args.n_list.split(",") if x]
    rows = bench_sweep(n_list, m=args.m, sigma=args.sigma, k=args.k, seed=args.seed)
    for algo, n, m, sigma, k, millis in rows:
        print(f"{algo},{n},{m},{sigma},{k},{millis:.3f}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pmatch",
                                 description="Parameterized string matching with mismatches")
    sub = ap.add_subparsers(dest="command", required=True)

    enc = sub.add_parser("encode", help="print previous-occurrence encodings")
    enc.add_argument("source", nargs="+", help="file path or literal string")
    enc.add_argument("--static", default="", help="static symbols")
    enc.add_argument("--symbols", choices=("chars", "tokens"), default="chars")
    enc.set_defaults(func=cmd_encode)

    mat = sub.add_parser("match", help="find matching windows")
    mat.add_argument("--text", required=True)
    mat.add_argument("--pattern", required=True)
    mat.add_argument("--k", type=int, required=True)
    mat.add_argument("--algorithm", choices=("general", "single", "oracle"),
                     default="general")
    mat.add_argument("--report", choices=("positions", "counts"), default="positions")
    mat.add_argument("--static", default="")
    mat.add_argument("--symbols", choices=("chars", "tokens"), default="chars")
    mat.add_argument("--mod1", type=int, default=None)
    mat.add_argument("--mod2", type=int, default=None)
    mat.add_argument("--base", type=int, default=None)
    mat.add_argument("--seed", type=int, default=0)
    mat.add_argument("--threads", type=int, default=1)
    mat.set_defaults(func=cmd_match)

    col = sub.add_parser("collisions", help="hash collision experiment")
    col.add_argument("--runs", type=int, required=True)
    col.add_argument("--n", type=int, required=True)
    col.add_argument("--m", type=int, required=True)
    col.add_argument("--alphabet", default=DEFAULT_ALPHABET)
    col.add_argument("--mod1", type=int, required=True)
    col.add_argument("--mod2", type=int, default=None)
    col.add_argument("--base", type=int, default=None)
    col.add_argument("--seed", type=int, default=0)
    col.add_argument("--jobs", type=int, default=1)
    col.set_defaults(func=cmd_collisions)

    gen = sub.add_parser("gen", help="write seeded random instance files")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--m", type=int, default=None)
    gen.add_argument("--alphabet", default=DEFAULT_ALPHABET)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out-text", required=True)
    gen.add_argument("--out-pattern", default=None)
    gen.set_defaults(func=cmd_gen)

    ben = sub.add_parser("bench", help="CSV timing sweep: algorithm,n,m,sigma,k,millis")
    ben.add_argument("--n-list", default="20000,50000")
    ben.add_argument("--m", type=int, default=500)
    ben.add_argument("--sigma", type=int, default=12)
    ben.add_argument("--k", type=int, default=2)
    ben.add_argument("--seed", type=int, default=1)
    ben.set_defaults(func=cmd_bench)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
