import numpy as np
import pytest

from pmatch import Alphabet, PString, oracle_min_mismatch, oracle_profile, oracle_single
from pmatch.oracle import SizeError


def pstrs(x, y, static=""):
    alpha = Alphabet.infer([x, y], static=static)
    return PString.from_text(x, alpha), PString.from_text(y, alpha)


class TestOracleMinMismatch:
    def test_worked_example(self):
        x, y = pstrs("abcaaeebbcd", "adbeeaaddac")
        assert oracle_min_mismatch(x, y) == 2

    def test_identical(self):
        x, y = pstrs("abab", "abab")
        assert oracle_min_mismatch(x, y) == 0

    def test_conflicting_pair(self):
        x, y = pstrs("aa", "ab")
        assert oracle_min_mismatch(x, y) == 1

    def test_too_many_params_rejected(self):
        x, y = pstrs("abcdefghi", "ihgfedcba")
        with pytest.raises(SizeError):
            oracle_min_mismatch(x, y)


class TestOracleProfile:
    def test_fig1_anchors(self):
        alpha = Alphabet.infer(["abcbbbaaaca", "deeeef"])
        t = PString.from_text("abcbbbaaaca", alpha)
        p = PString.from_text("deeeef", alpha)
        prof = oracle_profile(t, p)
        assert prof[0] == 2 and prof[5] == 2

    def test_single_position_pattern_all_params(self):
        x, _ = pstrs("abcab", "a")
        p = PString.from_text("a", x.alphabet)
        assert oracle_profile(x, p) == [0] * 5


class TestOracleSingle:
    def test_discardable_pair(self):
        t, p = pstrs("aab", "cdd")
        assert oracle_single(t, p) == [True]

    def test_identical(self):
        t, p = pstrs("abcab", "abcab")
        assert oracle_single(t, p) == [True]

    def test_cross_check_with_profile_thresholded(self):
        rng = np.random.default_rng(40)
        for _ in range(150):
            sp = int(rng.integers(1, 5))
            ss = int(rng.integers(0, 3))
            alpha = Alphabet(static_symbols=tuple("XY"[:ss]),
                             param_symbols=tuple("abcd"[:sp]))
            pool = list("abcd"[:sp] + "XY"[:ss])
            n = int(rng.integers(2, 40))
            m = int(rng.integers(1, min(n, 12) + 1))
            t = PString.from_text("".join(rng.choice(pool, n)), alpha)
            p = PString.from_text("".join(rng.choice(pool, m)), alpha)
            thresholded = [c <= 1 for c in oracle_profile(t, p)]
            assert oracle_single(t, p) == thresholded

    def test_statics_must_align_literally(self):
        t, p = pstrs("XaX", "XbY", static="XY")
        # one discard fixes the X/Y clash at position 3
        assert oracle_single(t, p) == [True]
        t2, p2 = pstrs("XYX", "YXY", static="XY")
        assert oracle_single(t2, p2) == [False]
