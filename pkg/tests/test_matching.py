from itertools import permutations

import numpy as np
import pytest

from pmatch import (Alphabet, InputError, PString, SymbolGraph,
                    max_weight_matching, min_mismatches)


def perm_max(w):
    """Exhaustive maximum assignment weight over all permutations."""
    nl, nr = len(w), len(w[0]) if len(w) else 0
    s = max(nl, nr)
    best = 0
    for perm in permutations(range(s)):
        total = sum(w[i][perm[i]] for i in range(nl) if perm[i] < nr)
        best = max(best, total)
    return best


def graph(w):
    syms = tuple(chr(ord("a") + i) for i in range(len(w)))
    return SymbolGraph(syms, syms, np.array(w, dtype=np.int64))


class TestMaxWeightMatching:
    def test_worked_example(self):
        alpha = Alphabet.infer(["abcaaeebbcd", "adbeeaaddac"])
        x = PString.from_text("abcaaeebbcd", alpha)
        y = PString.from_text("adbeeaaddac", alpha)
        g = SymbolGraph.from_strings(x, y)
        value, assignment = max_weight_matching(g)
        assert value == 9
        assert sum(1 for _ in assignment) == len(set(assignment.values()))
        total = sum(int(g.weights[g.left.index(a)][g.right.index(b)])
                    for a, b in assignment.items())
        assert total == value

    def test_diagonal_matrix(self):
        g = graph([[3, 0, 0], [0, 5, 0], [0, 0, 2]])
        value, assignment = max_weight_matching(g)
        assert value == 10
        assert assignment == {"a": "a", "b": "b", "c": "c"}

    def test_zero_weight_pairs_never_reported(self):
        g = graph([[0, 0], [0, 7]])
        value, assignment = max_weight_matching(g)
        assert value == 7
        assert assignment == {"b": "b"}

    def test_empty_graph(self):
        g = SymbolGraph((), (), np.zeros((0, 0), dtype=np.int64))
        assert max_weight_matching(g) == (0, {})

    def test_negative_weights_rejected(self):
        with pytest.raises(InputError):
            graph([[1, -1], [0, 0]])

    def test_against_permutation_brute_force(self):
        rng = np.random.default_rng(20)
        for _ in range(500):
            s = int(rng.integers(1, 7))
            w = rng.integers(0, 12, (s, s))
            g = graph(w.tolist())
            value, assignment = max_weight_matching(g)
            assert value == perm_max(w.tolist())
            assert sum(int(w[g.left.index(a)][g.right.index(b)])
                       for a, b in assignment.items()) == value

    def test_monotone_in_edge_weight(self):
        rng = np.random.default_rng(21)
        for _ in range(100):
            s = int(rng.integers(1, 6))
            w = rng.integers(0, 8, (s, s))
            v0, _ = max_weight_matching(graph(w.tolist()))
            w2 = w.copy()
            w2[rng.integers(0, s), rng.integers(0, s)] += int(rng.integers(1, 4))
            v1, _ = max_weight_matching(graph(w2.tolist()))
            assert v1 >= v0


class TestMinMismatches:
    def test_worked_example(self):
        alpha = Alphabet.infer(["abcaaeebbcd", "adbeeaaddac"])
        x = PString.from_text("abcaaeebbcd", alpha)
        y = PString.from_text("adbeeaaddac", alpha)
        assert min_mismatches(x, y) == 2

    def test_identical_strings(self):
        alpha = Alphabet.infer(["abcab"])
        x = PString.from_text("abcab", alpha)
        assert min_mismatches(x, x) == 0

    def test_statics_match_themselves(self):
        alpha = Alphabet(static_symbols=("X",), param_symbols=("a", "b", "c", "d"))
        x = PString.from_text("aXb", alpha)
        y = PString.from_text("cXd", alpha)
        assert min_mismatches(x, y) == 0

    def test_static_facing_other_symbol_is_forced_mismatch(self):
        alpha = Alphabet(static_symbols=("X", "Y"), param_symbols=("a",))
        x = PString.from_text("XY", alpha)
        y = PString.from_text("YX", alpha)
        assert min_mismatches(x, y) == 2

    def test_length_mismatch_rejected(self):
        alpha = Alphabet.infer(["ab"])
        with pytest.raises(InputError):
            min_mismatches(PString.from_text("a", alpha), PString.from_text("ab", alpha))

    def test_against_bijection_brute_force(self):
        from pmatch import oracle_min_mismatch
        rng = np.random.default_rng(22)
        for _ in range(200):
            sp = int(rng.integers(1, 6))
            ss = int(rng.integers(0, 3))
            alpha = Alphabet(static_symbols=tuple("XYZ"[:ss]),
                             param_symbols=tuple("abcde"[:sp]))
            pool = list("abcde"[:sp] + "XYZ"[:ss])
            n = int(rng.integers(1, 11))
            x = PString.from_text("".join(rng.choice(pool, n)), alpha)
            y = PString.from_text("".join(rng.choice(pool, n)), alpha)
            assert min_mismatches(x, y) == oracle_min_mismatch(x, y)
