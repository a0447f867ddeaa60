"""Maximum-weight bipartite matching on per-window symbol graphs.

A window's graph has the parameterized alphabet on both sides and edge
weight (a, b) equal to the number of positions where text symbol a
faces pattern symbol b.  The value of a maximum matching is the number
of positions a best renaming bijection preserves, so
``window length - matched`` is the window's minimum mismatch count.

The matcher is the classical potentials-based Hungarian algorithm
(O(s^3) per graph), JIT-compiled because the general matcher runs it
once per window.  Unmatched symbols are allowed: zero-weight pairs are
never reported in the assignment, and padding rows/columns used to
square the matrix cannot change the optimal value because all real
weights are non-negative.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .encoding import InputError, PString

_INF = np.int64(1) << np.int64(60)


@njit(cache=True)
def hungarian_max(w):
    """Max-weight assignment on a square int64 matrix.

    Returns (value, col_of_row) where col_of_row[i] is the column
    matched to row i.  Standard Hungarian with potentials, run on
    negated weights so the usual minimizing recurrences apply.
    """
    n = w.shape[0]
    u = np.zeros(n + 1, np.int64)
    v = np.zeros(n + 1, np.int64)
    p = np.zeros(n + 1, np.int64)
    way = np.zeros(n + 1, np.int64)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = np.full(n + 1, _INF, np.int64)
        used = np.zeros(n + 1, np.bool_)
        while True:
            used[j0] = True
            i0 = p[j0]
            delta = _INF
            j1 = 0
            for j in range(1, n + 1):
                if not used[j]:
                    cur = -w[i0 - 1, j - 1] - u[i0] - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                    if minv[j] < delta:
                        delta = minv[j]
                        j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while j0 != 0:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
    col_of_row = np.full(n, -1, np.int64)
    total = np.int64(0)
    for j in range(1, n + 1):
        if p[j] != 0:
            col_of_row[p[j] - 1] = j - 1
            total += w[p[j] - 1, j - 1]
    return total, col_of_row


@dataclass(frozen=True)
class SymbolGraph:
    """Weighted bipartite graph over the parameterized alphabet."""

    left: tuple
    right: tuple
    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.int64)
        if w.shape != (len(self.left), len(self.right)):
            raise InputError("weight matrix shape does not match symbol sets")
        if w.size and w.min() < 0:
            raise InputError("weights must be non-negative")
        object.__setattr__(self, "weights", w)

    @classmethod
    def from_strings(cls, x: PString, y: PString) -> "SymbolGraph":
        """Graph of aligned p-symbol co-occurrences of two equal-length strings."""
        if len(x) != len(y):
            raise InputError("strings must have equal length")
        alpha = x.alphabet
        syms = alpha.param_symbols
        idx = {s: i for i, s in enumerate(syms)}
        w = np.zeros((len(syms), len(syms)), dtype=np.int64)
        for a, b in zip(x.symbols, y.symbols):
            if alpha.is_param(a) and alpha.is_param(b):
                w[idx[a], idx[b]] += 1
        return cls(syms, syms, w)


def max_weight_matching(g: SymbolGraph):
    """Maximum total weight over all matchings, with one optimal assignment.

    The assignment is a partial injection: pairs carrying zero weight
    are dropped, so a symbol is only matched when it contributes.
    """
    nl, nr = g.weights.shape
    s = max(nl, nr)
    if s == 0:
        return 0, {}
    padded = np.zeros((s, s), dtype=np.int64)
    padded[:nl, :nr] = g.weights
    value, col_of_row = hungarian_max(padded)
    assignment = {}
    for i in range(nl):
        j = col_of_row[i]
        if 0 <= j < nr and g.weights[i, j] > 0:
            assignment[g.left[i]] = g.right[j]
    return int(value), assignment


def min_mismatches(x: PString, y: PString) -> int:
    """Minimum mismatches between two equal-length strings.

    Positions where the same static symbol aligns count as matched for
    free; a static facing anything else is a forced mismatch.  The
    p-symbol positions contribute through the matching graph.
    """
    if len(x) != len(y):
        raise InputError("strings must have equal length")
    alpha = x.alphabet
    static_eq = sum(
        1 for a, b in zip(x.symbols, y.symbols)
        if alpha.is_static(a) and a == b
    )
    value, _ = max_weight_matching(SymbolGraph.from_strings(x, y))
    return len(x) - (value + static_eq)
