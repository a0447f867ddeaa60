"""Seeded random instances, collision experiments, and benchmark sweeps.

All randomness flows through numpy's PCG64 generator with explicit
SeedSequence entropy, namespaced so the same CLI seed always produces
the same instances:

* base draw:      ``SeedSequence([seed, 0])``
* run r instance: ``SeedSequence([seed, 1, r])``

A collision experiment replays the paper-style protocol: for each run,
draw a random text and pattern, solve with the deterministic general
matcher thresholded at one mismatch, solve again with the hash-based
single-mismatch matcher under each hash configuration, and count the
runs whose verdict vectors differ anywhere.  The deterministic baseline
does not depend on the hash configuration, so evaluating several
configurations in one pass shares it.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
import time

import numpy as np

from .encoding import Alphabet, PString
from .general import MatchQuery, mismatch_profile
from .hashing import HashConfig
from .single import match_single

DEFAULT_ALPHABET = "abcdefghijklmnopqrstuvwxyz"


def derive_base(seed: int, limit: int) -> int:
    """Deterministic odd hash base in [3, limit) from the experiment seed."""
    rng = np.random.default_rng(np.random.SeedSequence([seed, 0]))
    if limit <= 4:
        return 3
    base = int(rng.integers(3, limit - 1)) | 1
    return base


def gen_instance(seed: int, run: int, n: int, m: int, alphabet: str):
    """The run-th random (text, pattern) pair of an experiment stream."""
    rng = np.random.default_rng(np.random.SeedSequence([seed, 1, run]))
    syms = list(alphabet)
    text = "".join(rng.choice(syms, size=n)) if n else ""
    pattern = "".join(rng.choice(syms, size=m)) if m else ""
    return text, pattern


@dataclass(frozen=True)
class ExperimentSpec:
    runs: int
    n: int
    m: int
    alphabet: str = DEFAULT_ALPHABET
    mod1: int = 0
    mod2: int | None = None
    seed: int = 0
    base: int | None = None

    def __post_init__(self):
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        if self.m > self.n:
            raise ValueError("pattern length exceeds text length")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("alphabet symbols must be distinct")


def _configs_for(spec: ExperimentSpec, mod_pairs) -> list[HashConfig]:
    configs = []
    for mod1, mod2 in mod_pairs:
        limit = mod1 if mod2 is None else min(mod1, mod2)
        base = spec.base if spec.base is not None else derive_base(spec.seed, limit)
        configs.append(HashConfig(base=base, mod1=mod1, mod2=mod2, strict=False))
    return configs


def _run_chunk(args):
    spec, mod_pairs, runs = args
    configs = _configs_for(spec, mod_pairs)
    alpha = Alphabet.infer([spec.alphabet])
    incorrect = np.zeros(len(configs), dtype=np.int64)
    for r in runs:
        text, pattern = gen_instance(spec.seed, r, spec.n, spec.m, spec.alphabet)
        t = PString(tuple(text), alpha)
        p = PString(tuple(pattern), alpha)
        truth = mismatch_profile(MatchQuery(t, p, k=1)) <= 1
        for ci, cfg in enumerate(configs):
            got = match_single(t, p, cfg)
            if not np.array_equal(got, truth):
                incorrect[ci] += 1
    return incorrect


def collision_experiment(spec: ExperimentSpec, mod_pairs=None, jobs: int = 1):
    """Incorrect-run counts for one or more hash configurations.

    `mod_pairs` defaults to the single pair from the spec.  Returns a
    list of counts aligned with `mod_pairs`.  The result is independent
    of `jobs`: runs are seeded individually and the counts are sums.
    """
    if mod_pairs is None:
        mod_pairs = [(spec.mod1, spec.mod2)]
    all_runs = list(range(spec.runs))
    if jobs <= 1:
        return _run_chunk((spec, mod_pairs, all_runs))
    chunks = [all_runs[i::jobs] for i in range(jobs)]
    totals = np.zeros(len(mod_pairs), dtype=np.int64)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part in pool.map(_run_chunk, [(spec, mod_pairs, c) for c in chunks]):
            totals += part
    return totals


def bench_sweep(n_list, m: int, sigma: int, k: int, seed: int):
    """Wall-clock timings of both matchers; yields CSV-ready rows."""
    alphabet = DEFAULT_ALPHABET[:sigma]
    rows = []
    for n in n_list:
        text, pattern = gen_instance(seed, 0, n, m, alphabet)
        alpha = Alphabet.infer([alphabet])
        t = PString(tuple(text), alpha)
        p = PString(tuple(pattern), alpha)

        t0 = time.perf_counter()
        mismatch_profile(MatchQuery(t, p, k=k))
        rows.append(("general", n, m, sigma, k, (time.perf_counter() - t0) * 1000.0))

        t0 = time.perf_counter()
        match_single(t, p)
        rows.append(("single", n, m, sigma, k, (time.perf_counter() - t0) * 1000.0))
    return rows
