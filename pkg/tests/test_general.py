import numpy as np
import pytest

from pmatch import (Alphabet, InputError, MatchQuery, PString, match_k,
                    mismatch_profile, oracle_min_mismatch, oracle_profile,
                    set_parallelism)


@pytest.fixture(scope="module")
def fig1():
    alpha = Alphabet.infer(["abcbbbaaaca", "deeeef"])
    t = PString.from_text("abcbbbaaaca", alpha)
    p = PString.from_text("deeeef", alpha)
    return t, p


def random_instance(rng, max_n=60, max_m=15, max_sp=5, max_ss=2):
    sp = int(rng.integers(1, max_sp + 1))
    ss = int(rng.integers(0, max_ss + 1))
    alpha = Alphabet(static_symbols=tuple("XYZ"[:ss]),
                     param_symbols=tuple("abcdef"[:sp]))
    pool = list("abcdef"[:sp] + "XYZ"[:ss])
    n = int(rng.integers(2, max_n))
    m = int(rng.integers(1, min(n, max_m) + 1))
    t = PString.from_text("".join(rng.choice(pool, n)), alpha)
    p = PString.from_text("".join(rng.choice(pool, m)), alpha)
    return t, p


class TestMatchQuery:
    def test_pattern_longer_than_text_rejected(self, fig1):
        t, p = fig1
        with pytest.raises(InputError):
            MatchQuery(p, t, 0)

    def test_k_out_of_range_rejected(self, fig1):
        t, p = fig1
        with pytest.raises(InputError):
            MatchQuery(t, p, 7)


class TestFig1:
    def test_windows_1_and_6_match_with_exactly_2(self, fig1):
        t, p = fig1
        report = match_k(MatchQuery(t, p, 2))
        assert 1 in report.positions and 6 in report.positions
        assert report.mismatch_counts[0] == 2
        assert report.mismatch_counts[5] == 2

    def test_full_profile_matches_oracle(self, fig1):
        t, p = fig1
        prof = mismatch_profile(MatchQuery(t, p, 2))
        assert prof.tolist() == oracle_profile(t, p)
        assert prof.tolist() == [2, 2, 1, 3, 1, 2]

    def test_optimal_discard_sets_differ_between_windows(self, fig1):
        # Window 1 and window 6 both need two discards, but no common
        # pair of pattern-side positions fixes both: per-window choice
        # of discarded positions really is window-local.
        from itertools import permutations
        t, p = fig1
        m = len(p)

        def optimal_discard_sets(window_start):
            win = t.symbols[window_start - 1:window_start - 1 + m]
            best = None
            sets = set()
            for perm in permutations("abcdef"):
                pi = dict(zip("abcdef", perm))
                miss = frozenset(q + 1 for q in range(m) if pi[win[q]] != p.symbols[q])
                if best is None or len(miss) < best:
                    best = len(miss)
                    sets = {miss}
                elif len(miss) == best:
                    sets.add(miss)
            return best, sets

        k1, sets1 = optimal_discard_sets(1)
        k6, sets6 = optimal_discard_sets(6)
        assert k1 == 2 and k6 == 2
        assert not (sets1 & sets6)


class TestMatchK:
    def test_k_equals_m_matches_everywhere(self, fig1):
        t, p = fig1
        report = match_k(MatchQuery(t, p, len(p)))
        assert report.positions == list(range(1, len(t) - len(p) + 2))

    def test_identical_strings_k0(self):
        alpha = Alphabet.infer(["abcab"])
        t = PString.from_text("abcab", alpha)
        report = match_k(MatchQuery(t, t, 0))
        assert report.positions == [1]

    def test_positions_monotone_in_k(self):
        rng = np.random.default_rng(30)
        for _ in range(30):
            t, p = random_instance(rng)
            prev: set = set()
            for k in range(len(p) + 1):
                pos = set(match_k(MatchQuery(t, p, k)).positions)
                assert prev <= pos
                prev = pos

    def test_report_invariant(self):
        rng = np.random.default_rng(31)
        for _ in range(30):
            t, p = random_instance(rng)
            k = int(rng.integers(0, len(p) + 1))
            rep = match_k(MatchQuery(t, p, k))
            for i, c in enumerate(rep.mismatch_counts, start=1):
                assert (i in rep.positions) == (c <= k)
                assert 0 <= c <= len(p)


class TestOracleEquivalence:
    def test_profile_equals_oracle_on_random_instances(self):
        rng = np.random.default_rng(32)
        for _ in range(150):
            t, p = random_instance(rng)
            got = mismatch_profile(MatchQuery(t, p, 0)).tolist()
            assert got == oracle_profile(t, p)

    def test_empty_param_alphabet_reduces_to_hamming_on_statics(self):
        alpha = Alphabet(static_symbols=("X", "Y", "Z"), param_symbols=())
        t = PString.from_text("XYZXYZXY", alpha)
        p = PString.from_text("XYY", alpha)
        prof = mismatch_profile(MatchQuery(t, p, 0))
        want = [sum(1 for q in range(3) if t.symbols[w + q] != p.symbols[q])
                for w in range(len(t) - 2)]
        assert prof.tolist() == want

    def test_renaming_invariance(self):
        rng = np.random.default_rng(33)
        alpha = Alphabet.infer(["abcd"])
        for _ in range(30):
            n = int(rng.integers(2, 40))
            m = int(rng.integers(1, min(n, 10) + 1))
            txt = "".join(rng.choice(list("abcd"), n))
            pat = "".join(rng.choice(list("abcd"), m))
            t = PString.from_text(txt, alpha)
            p = PString.from_text(pat, alpha)
            base = mismatch_profile(MatchQuery(t, p, 1)).tolist()
            perm = "".join(rng.permutation(list("abcd")))
            t2 = PString.from_text(txt.translate(str.maketrans("abcd", perm)), alpha)
            assert mismatch_profile(MatchQuery(t2, p, 1)).tolist() == base


class TestParallelism:
    def test_thread_count_does_not_change_output(self):
        rng = np.random.default_rng(34)
        instances = [random_instance(rng) for _ in range(20)]
        results = {}
        for threads in (1, 2, 8):
            eff = set_parallelism(threads)
            assert eff >= 1
            results[threads] = [
                mismatch_profile(MatchQuery(t, p, 1)).tolist() for t, p in instances
            ]
        set_parallelism(1)
        assert results[1] == results[2] == results[8]
