import numpy as np
import pytest

from pmatch import (Alphabet, InputError, PString, discard_position, encode,
                    occurrence_index, revert_discard)


def pstr(text, static=""):
    return PString.from_text(text, Alphabet.infer([text], static=static))


def naive_prev_values(text):
    """Independent two-loop previous-occurrence scan."""
    out = []
    for i, c in enumerate(text):
        prev = -1
        for j in range(i - 1, -1, -1):
            if text[j] == c:
                prev = j
                break
        out.append(0 if prev == -1 else i - prev)
    return out


class TestAlphabet:
    def test_disjoint_sets_required(self):
        with pytest.raises(InputError):
            Alphabet(static_symbols=("a",), param_symbols=("a", "b"))

    def test_membership(self):
        a = Alphabet(static_symbols=("X",), param_symbols=("a", "b"))
        assert a.is_static("X") and not a.is_param("X")
        assert a.is_param("a") and "a" in a and "q" not in a

    def test_symbol_outside_alphabet_rejected(self):
        a = Alphabet(param_symbols=("a", "b"))
        with pytest.raises(InputError):
            PString(("a", "z"), a)


class TestEncode:
    def test_repeated_symbols(self):
        assert encode(pstr("deeeef")).tolist() == [0, 0, 1, 1, 1, 0]

    def test_all_distinct_is_zero(self):
        assert encode(pstr("abcdef")).tolist() == [0] * 6

    def test_static_symbols_get_reserved_codes(self):
        s = pstr("aba", static="a")
        enc = encode(s)
        assert enc.static_base == 4
        assert enc.tolist() == [4, 0, 4]

    def test_matches_naive_scan_on_random_strings(self):
        rng = np.random.default_rng(0)
        for _ in range(200):
            n = int(rng.integers(1, 40))
            text = "".join(rng.choice(list("abcd"), n))
            assert encode(pstr(text)).tolist() == naive_prev_values(text)

    def test_equal_pstrings_encode_equal(self):
        assert encode(pstr("abcabc")) == encode(pstr("abcabc"))

    def test_bijection_renaming_invariance(self):
        rng = np.random.default_rng(1)
        letters = list("abcd")
        for _ in range(100):
            n = int(rng.integers(1, 30))
            text = "".join(rng.choice(letters, n))
            perm = list(rng.permutation(letters))
            renamed = text.translate(str.maketrans("abcd", "".join(perm)))
            a = Alphabet.infer(["abcd"])
            assert (encode(PString.from_text(text, a))
                    == encode(PString.from_text(renamed, a)))

    def test_custom_static_base(self):
        s = pstr("aXa", static="X")
        enc = encode(s, static_base=100)
        assert enc.tolist() == [0, 100, 2]


class TestOccurrenceIndex:
    def test_spec_example(self):
        occ = occurrence_index(pstr("aab"))
        assert occ.prev.tolist() == [-1, 1, -1]
        assert occ.next.tolist() == [2, -1, -1]

    def test_single_char(self):
        occ = occurrence_index(pstr("a"))
        assert occ.prev.tolist() == [-1] and occ.next.tolist() == [-1]

    def test_all_distinct(self):
        occ = occurrence_index(pstr("abc"))
        assert occ.prev.tolist() == [-1] * 3 and occ.next.tolist() == [-1] * 3

    def test_against_quadratic_scan(self):
        rng = np.random.default_rng(2)
        for _ in range(200):
            n = int(rng.integers(1, 30))
            text = "".join(rng.choice(list("abc"), n))
            occ = occurrence_index(pstr(text))
            for i in range(n):
                prev = next_ = -1
                for j in range(i - 1, -1, -1):
                    if text[j] == text[i]:
                        prev = j + 1
                        break
                for j in range(i + 1, n):
                    if text[j] == text[i]:
                        next_ = j + 1
                        break
                assert occ.prev_of(i + 1) == prev
                assert occ.next_of(i + 1) == next_

    def test_prev_next_inverse(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            text = "".join(rng.choice(list("ab"), int(rng.integers(2, 25))))
            occ = occurrence_index(pstr(text))
            for i in range(1, len(text) + 1):
                j = occ.next_of(i)
                if j != -1:
                    assert occ.prev_of(j) == i


class TestDiscard:
    def test_spec_example_both_sides(self):
        t, p = pstr("aab"), pstr("cdd")
        res = discard_position(encode(t), encode(p), 2,
                               occurrence_index(t), occurrence_index(p))
        assert res.text.tolist() == [0, 0, 0]
        assert res.pattern.tolist() == [0, 0, 0]

    def test_case_2b_style_discard(self):
        t, p = pstr("abb"), pstr("ccc")
        res = discard_position(encode(t), encode(p), 1,
                               occurrence_index(t), occurrence_index(p))
        assert res.pattern.tolist() == [0, 0, 1]

    def test_singleton_position_only_zeroes_itself(self):
        t, p = pstr("abc"), pstr("xyz")
        res = discard_position(encode(t), encode(p), 2,
                               occurrence_index(t), occurrence_index(p))
        assert res.text.tolist() == [0, 0, 0]
        assert len(res.undo_text) == 1  # no next-occurrence rewrite happened

    def test_out_of_range_rejected(self):
        t, p = pstr("ab"), pstr("cd")
        with pytest.raises(InputError):
            discard_position(encode(t), encode(p), 3,
                             occurrence_index(t), occurrence_index(p))

    def test_undo_restores_exactly(self):
        rng = np.random.default_rng(4)
        for _ in range(100):
            n = int(rng.integers(1, 20))
            t = pstr("".join(rng.choice(list("abc"), n)))
            p = PString.from_text("".join(rng.choice(list("abc"), n)), t.alphabet)
            te, pe = encode(t), encode(p)
            before_t, before_p = te.tolist(), pe.tolist()
            i = int(rng.integers(1, n + 1))
            res = discard_position(te, pe, i, occurrence_index(t), occurrence_index(p))
            revert_discard(res.text, res.undo_text)
            revert_discard(res.pattern, res.undo_pattern)
            assert res.text.tolist() == before_t
            assert res.pattern.tolist() == before_p

    def test_matches_physical_deletion_reencoding(self):
        # Discarding position i must equal re-encoding with position i
        # replaced by a fresh never-seen symbol, for p-symbol positions.
        rng = np.random.default_rng(5)
        for _ in range(300):
            n = int(rng.integers(1, 9))
            a = Alphabet.infer(["abc", "!"])
            t = PString.from_text("".join(rng.choice(list("abc"), n)), a)
            p = PString.from_text("".join(rng.choice(list("abc"), n)), a)
            i = int(rng.integers(1, n + 1))
            res = discard_position(encode(t), encode(p), i,
                                   occurrence_index(t), occurrence_index(p))
            for s, got in ((t, res.text), (p, res.pattern)):
                spliced = list(s.symbols)
                spliced[i - 1] = "!"
                want = encode(PString.from_text("".join(spliced), a)).tolist()
                assert got.tolist() == want
