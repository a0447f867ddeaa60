"""Deterministic matcher for any mismatch tolerance k.

For every placement of the pattern, the per-window symbol graph is
assembled from the convolution-derived alignment counts, a maximum
matching gives the number of positions a best renaming preserves, and
matched static self-alignments are added on top.  A window matches when
``matched >= |p| - k``.

Windows are independent; the per-window loop runs under numba's
parallel backend.  The thread count is a runtime setting
(`set_parallelism`), never an argument of the matching operations, and
the output is identical for any thread count.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import numba
from numba import njit, prange

from .convolution import alignment_counts
from .encoding import InputError, PString
from .matching import hungarian_max


def set_parallelism(n: int) -> int:
    """Set the worker-thread count for the window loop.

    Values beyond the hard limit numba was started with are capped; the
    effective count is returned.  Results do not depend on it.
    """
    eff = max(1, min(int(n), numba.config.NUMBA_NUM_THREADS))
    numba.set_num_threads(eff)
    return eff


@dataclass(frozen=True)
class MatchQuery:
    text: PString
    pattern: PString
    k: int

    def __post_init__(self):
        if len(self.pattern) > len(self.text):
            raise InputError("pattern longer than text")
        if not 0 <= self.k <= len(self.pattern):
            raise InputError(f"k must be in 0..{len(self.pattern)}")


@dataclass(frozen=True)
class MatchReport:
    positions: list
    mismatch_counts: np.ndarray = field(default=None)


@njit(cache=True, parallel=True)
def _profile_kernel(cnt, pa, pb, static_matched, m, n_left, n_right):
    """Per-window minimum mismatch counts.

    cnt[w, k] is the weight of stored pair k in window w; pa/pb give the
    pair's row and column ids.  Each window compresses to its nonzero
    support before running the Hungarian solver, which keeps the cubic
    step proportional to the window's distinct symbols rather than the
    whole alphabet.
    """
    W, P = cnt.shape
    out = np.empty(W, np.int64)
    for w in prange(W):
        rmap = np.full(n_left, -1, np.int64)
        cmap = np.full(n_right, -1, np.int64)
        nr = 0
        nc = 0
        for k in range(P):
            if cnt[w, k] > 0:
                a = pa[k]
                if rmap[a] < 0:
                    rmap[a] = nr
                    nr += 1
                b = pb[k]
                if cmap[b] < 0:
                    cmap[b] = nc
                    nc += 1
        s = nr if nr > nc else nc
        value = np.int64(0)
        if s > 0:
            local = np.zeros((s, s), np.int64)
            for k in range(P):
                c = cnt[w, k]
                if c > 0:
                    local[rmap[pa[k]], cmap[pb[k]]] = c
            value, _ = hungarian_max(local)
        out[w] = m - (value + static_matched[w])
    return out


def mismatch_profile(q: MatchQuery) -> np.ndarray:
    """Minimum mismatch count for every window, as an int64 array."""
    t, p = q.text, q.pattern
    n, m = len(t), len(p)
    windows = n - m + 1
    counts = alignment_counts(t, p)
    alpha = t.alphabet
    pid = {s: i for i, s in enumerate(alpha.param_symbols)}

    static_matched = np.zeros(windows, dtype=np.int64)
    pair_arrays = []
    pa = []
    pb = []
    for (a, b), arr in counts.pairs():
        if alpha.is_static(a):
            static_matched += arr
        else:
            pair_arrays.append(arr.astype(np.int32))
            pa.append(pid[a])
            pb.append(pid[b])

    if pair_arrays:
        cnt = np.ascontiguousarray(np.stack(pair_arrays, axis=1))
    else:
        cnt = np.zeros((windows, 0), dtype=np.int32)
    pa = np.asarray(pa, dtype=np.int64)
    pb = np.asarray(pb, dtype=np.int64)
    n_syms = max(1, len(alpha.param_symbols))
    return _profile_kernel(cnt, pa, pb, static_matched, m, n_syms, n_syms)


def match_k(q: MatchQuery) -> MatchReport:
    """All 1-based window starts matching with at most k mismatches."""
    profile = mismatch_profile(q)
    positions = [int(i) + 1 for i in np.nonzero(profile <= q.k)[0]]
    return MatchReport(positions=positions, mismatch_counts=profile)
