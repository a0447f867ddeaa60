"""Brute-force reference implementations.

Everything here is deliberately naive and shares no code with the
production matchers: mismatch counts come from enumerating every
renaming bijection, and the single-mismatch check deletes positions and
re-checks the p-match definition directly.  These functions exist to
derive expected values and to back property tests; they are not meant
to be fast.
"""

from __future__ import annotations

from itertools import permutations

from .encoding import PString


class SizeError(ValueError):
    """Instance too large for factorial enumeration."""

MAX_ORACLE_PARAMS = 8


def oracle_min_mismatch(x: PString, y: PString) -> int:
    """Minimum mismatches over all bijections of the parameterized alphabet.

    Statics are fixed points: a static matches only itself.  For each
    candidate bijection the mismatch count is the number of positions
    the bijection fails to map x onto y; the minimum over all |sigma_p|!
    bijections is returned.
    """
    if len(x) != len(y):
        raise ValueError("strings must have equal length")
    alpha = x.alphabet
    params = alpha.param_symbols
    if len(params) > MAX_ORACLE_PARAMS:
        raise SizeError(f"oracle limited to {MAX_ORACLE_PARAMS} parameterized symbols")

    idx = {s: i for i, s in enumerate(params)}
    sp = len(params)
    # pair_counts[a][b]: positions where p-symbol a aligns p-symbol b.
    pair_counts = [[0] * sp for _ in range(sp)]
    fixed_matched = 0
    for a, b in zip(x.symbols, y.symbols):
        a_static = alpha.is_static(a)
        b_static = alpha.is_static(b)
        if a_static or b_static:
            if a_static and b_static and a == b:
                fixed_matched += 1
        else:
            pair_counts[idx[a]][idx[b]] += 1

    best = 0
    for perm in permutations(range(sp)):
        matched = 0
        for a in range(sp):
            matched += pair_counts[a][perm[a]]
        if matched > best:
            best = matched
    return len(x) - (fixed_matched + best)


def oracle_profile(t: PString, p: PString) -> list[int]:
    """oracle_min_mismatch applied to every window of the text."""
    n, m = len(t), len(p)
    if m > n:
        raise ValueError("pattern longer than text")
    return [
        oracle_min_mismatch(t.window(w, m), p)
        for w in range(1, n - m + 2)
    ]


def _is_p_match(xs, ys, alpha) -> bool:
    """Definition check: does some bijection (identity on statics) map xs to ys?"""
    fwd: dict = {}
    bwd: dict = {}
    for a, b in zip(xs, ys):
        if alpha.is_static(a) or alpha.is_static(b):
            if a != b:
                return False
            continue
        if fwd.setdefault(a, b) != b:
            return False
        if bwd.setdefault(b, a) != a:
            return False
    return True


def oracle_single(t: PString, p: PString) -> list[bool]:
    """Per window: does a p-match exist after deleting at most one
    aligned position from both window and pattern?

    Works straight from the definition: try no deletion, then every
    single aligned deletion, re-checking the bijection property on the
    shortened strings.  No encodings, no hashing.
    """
    n, m = len(t), len(p)
    if m > n:
        raise ValueError("pattern longer than text")
    alpha = t.alphabet
    ps = p.symbols
    out = []
    for w in range(n - m + 1):
        win = t.symbols[w:w + m]
        ok = _is_p_match(win, ps, alpha)
        if not ok:
            for d in range(m):
                if _is_p_match(win[:d] + win[d + 1:], ps[:d] + ps[d + 1:], alpha):
                    ok = True
                    break
        out.append(ok)
    return out
