"""Single-mismatch matchers.

`equal_length_match` is the plain decision procedure on two equal-length
strings: compare the encodings; on the first differing position try
discarding it from both sides, and failing that try discarding the
previous occurrence of the mismatching symbol on whichever side has one
(working from the original encodings again -- stacking the two discards
would spend a tolerance of two).

`match_single` slides a pattern over a text.  A segment tree holds the
text encoding kept consistent with the current suffix, the pattern
carries prefix hashes, and every equality test of the equal-length
procedure becomes a hash comparison: whole window against whole pattern,
and the first mismatch located by descending the tree.  Discards inside
a window are transacted as O(1) adjustments to the rolling window hash
and the pattern hash and restored before the window advances; the tree
itself only ever receives the permanent suffix-consistency updates.
Correctness is therefore collision-conditional exactly as a rolling-hash
matcher should be; with the default 61-bit double hashing a disagreement
with the brute-force answer is astronomically unlikely.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .encoding import (EncodedString, InputError, PString, discard_position,
                       encode, occurrence_index, revert_discard)
from .hashing import (HashConfig, HashSegmentTree, PatternHasher, _U0, _U1,
                      _addmod, _mont_mul, _submod, default_config)


@dataclass(frozen=True)
class WindowVerdict:
    matched: bool
    discarded: int | None = None  # 1-based discarded position, if any


def equal_length_match(t: PString, p: PString) -> WindowVerdict:
    """Do two equal-length strings p-match with at most one mismatch?

    Runs entirely on encoded arrays, no hashing.  The common static base
    for both encodings is the shared length, so statics compare equal
    across the two strings.
    """
    n = len(t)
    if len(p) != n:
        raise InputError("strings must have equal length")
    if n == 0:
        return WindowVerdict(matched=True)
    base = n + 1
    t_enc = encode(t, static_base=base)
    p_enc = encode(p, static_base=base)
    if t_enc == p_enc:
        return WindowVerdict(matched=True)

    occ_t = occurrence_index(t)
    occ_p = occurrence_index(p)
    diffs = np.nonzero(t_enc.codes != p_enc.codes)[0]
    i = int(diffs[0]) + 1

    # Try discarding the mismatch position itself.
    res = discard_position(t_enc, p_enc, i, occ_t, occ_p)
    if res.text == res.pattern:
        return WindowVerdict(matched=True, discarded=i)

    # Otherwise a previous occurrence may be the culprit; this only makes
    # sense when both mismatching symbols are parameterized, and it works
    # on the original encodings, not on the output of the first attempt.
    alpha = t.alphabet
    if not (alpha.is_param(t.symbols[i - 1]) and alpha.is_param(p.symbols[i - 1])):
        return WindowVerdict(matched=False)
    j1 = occ_t.prev_of(i)
    j2 = occ_p.prev_of(i)
    if j1 != -1 and j2 != -1:
        return WindowVerdict(matched=False)
    if j1 == -1 and j2 == -1:
        # Both first occurrences would encode 0 on both sides, which
        # cannot be a mismatch position.
        return WindowVerdict(matched=False)
    d = j1 if j1 != -1 else j2
    res = discard_position(t_enc, p_enc, d, occ_t, occ_p)
    if res.text == res.pattern:
        return WindowVerdict(matched=True, discarded=d)
    return WindowVerdict(matched=False)


@njit(cache=True)
def _descend_window(tree1, tree2, size, L0, win_len,
                    pref1, pref2, pw1, pw2, m1, mp1, m2, mp2):
    """Inlined copy of the hashing module's descent, for the sweep."""
    lnodes = np.empty(64, np.int64)
    lstarts = np.empty(64, np.int64)
    lsegs = np.empty(64, np.int64)
    rnodes = np.empty(64, np.int64)
    rstarts = np.empty(64, np.int64)
    rsegs = np.empty(64, np.int64)
    ln = 0
    rn = 0
    l = L0 + size
    r = L0 + win_len + size
    cur_l = L0
    cur_r = L0 + win_len
    seglen = np.int64(1)
    while l < r:
        if l & 1:
            lnodes[ln] = l
            lstarts[ln] = cur_l
            lsegs[ln] = seglen
            cur_l += seglen
            ln += 1
            l += 1
        if r & 1:
            r -= 1
            cur_r -= seglen
            rnodes[rn] = r
            rstarts[rn] = cur_r
            rsegs[rn] = seglen
            rn += 1
        l >>= 1
        r >>= 1
        seglen <<= 1
    for idx in range(ln + rn):
        if idx < ln:
            v = lnodes[idx]
            s0 = lstarts[idx]
            slen = lsegs[idx]
        else:
            j = rn - 1 - (idx - ln)
            v = rnodes[j]
            s0 = rstarts[j]
            slen = rsegs[j]
        pl = s0 - L0
        diff = _mont_mul(tree1[v], pw1[pl], m1, mp1) != _submod(pref1[pl + slen], pref1[pl], m1)
        if not diff and m2 != _U0:
            diff = _mont_mul(tree2[v], pw2[pl], m2, mp2) != _submod(pref2[pl + slen], pref2[pl], m2)
        if diff:
            while slen > 1:
                half = slen >> 1
                plc = s0 - L0
                eq = _mont_mul(tree1[2 * v], pw1[plc], m1, mp1) == _submod(pref1[plc + half], pref1[plc], m1)
                if eq and m2 != _U0:
                    eq = _mont_mul(tree2[2 * v], pw2[plc], m2, mp2) == _submod(pref2[plc + half], pref2[plc], m2)
                if eq:
                    v = 2 * v + 1
                    s0 += half
                else:
                    v = 2 * v
                slen = half
            return s0
    return np.int64(-1)


@njit(cache=True)
def _tree_set2(tree, size, pos0, val_mont, pw, m, mp):
    v = size + pos0
    tree[v] = val_mont
    half = np.int64(1)
    v >>= 1
    while v >= 1:
        tree[v] = _addmod(tree[2 * v], _mont_mul(tree[2 * v + 1], pw[half], m, mp), m)
        half <<= 1
        v >>= 1


@njit(cache=True)
def _sweep(codes_t, tree1, tree2, size, pw1, pw2, r2_1, r2_2,
           codes_p, pref1, pref2, next_t, next_p, is_p_t, is_p_p,
           m1, mp1, m2, mp2, win_len):
    """One left-to-right pass of the sliding single-mismatch matcher.

    State per modulus: the tree over the suffix-consistent text codes,
    the window hash G (global exponents, adjusted incrementally), and
    the full-pattern hash P.  Within a window the discard case analysis
    runs as save/adjust/compare/restore on G and P alone.
    """
    n = len(codes_t)
    m = win_len
    W = n - m + 1
    out = np.zeros(W, np.bool_)
    double = m2 != _U0

    # Window hash over [0, m) and full-pattern hash, in global exponents.
    G1 = _U0
    G2 = _U0
    for q in range(m):
        c1 = _mont_mul(np.uint64(codes_t[q]), r2_1, m1, mp1)
        G1 = _addmod(G1, _mont_mul(c1, pw1[q], m1, mp1), m1)
        if double:
            c2 = _mont_mul(np.uint64(codes_t[q]), r2_2, m2, mp2)
            G2 = _addmod(G2, _mont_mul(c2, pw2[q], m2, mp2), m2)
    P1 = pref1[m]
    P2 = pref2[m] if double else _U0

    for i0 in range(W):
        # Case 1: whole window vs whole pattern.
        eq = G1 == _mont_mul(P1, pw1[i0], m1, mp1)
        if eq and double:
            eq = G2 == _mont_mul(P2, pw2[i0], m2, mp2)
        if eq:
            out[i0] = True
        else:
            j0 = _descend_window(tree1, tree2, size, np.int64(i0), np.int64(m),
                                 pref1, pref2, pw1, pw2, m1, mp1, m2, mp2)
            if j0 >= 0:
                jp0 = j0 - i0
                sG1 = G1
                sG2 = G2
                sP1 = P1
                sP2 = P2
                win_end = i0 + m - 1

                # --- Case 2.A: discard the mismatch position itself.
                old_t = codes_t[j0]
                G1 = _submod(G1, _mont_mul(_mont_mul(np.uint64(old_t), r2_1, m1, mp1), pw1[j0], m1, mp1), m1)
                if double:
                    G2 = _submod(G2, _mont_mul(_mont_mul(np.uint64(old_t), r2_2, m2, mp2), pw2[j0], m2, mp2), m2)
                if is_p_t[j0]:
                    nx = next_t[j0]
                    if nx >= 0 and nx <= win_end:
                        newv = np.int64(0) if old_t == 0 else nx - (j0 - old_t)
                        oldnx = codes_t[nx]
                        d1 = _submod(_mont_mul(np.uint64(newv), r2_1, m1, mp1),
                                     _mont_mul(np.uint64(oldnx), r2_1, m1, mp1), m1)
                        G1 = _addmod(G1, _mont_mul(d1, pw1[nx], m1, mp1), m1)
                        if double:
                            d2 = _submod(_mont_mul(np.uint64(newv), r2_2, m2, mp2),
                                         _mont_mul(np.uint64(oldnx), r2_2, m2, mp2), m2)
                            G2 = _addmod(G2, _mont_mul(d2, pw2[nx], m2, mp2), m2)
                old_p = codes_p[jp0]
                P1 = _submod(P1, _mont_mul(_mont_mul(np.uint64(old_p), r2_1, m1, mp1), pw1[jp0], m1, mp1), m1)
                if double:
                    P2 = _submod(P2, _mont_mul(_mont_mul(np.uint64(old_p), r2_2, m2, mp2), pw2[jp0], m2, mp2), m2)
                if is_p_p[jp0]:
                    npx = next_p[jp0]
                    if npx >= 0:
                        newv = np.int64(0) if old_p == 0 else npx - (jp0 - old_p)
                        oldnp = codes_p[npx]
                        d1 = _submod(_mont_mul(np.uint64(newv), r2_1, m1, mp1),
                                     _mont_mul(np.uint64(oldnp), r2_1, m1, mp1), m1)
                        P1 = _addmod(P1, _mont_mul(d1, pw1[npx], m1, mp1), m1)
                        if double:
                            d2 = _submod(_mont_mul(np.uint64(newv), r2_2, m2, mp2),
                                         _mont_mul(np.uint64(oldnp), r2_2, m2, mp2), m2)
                            P2 = _addmod(P2, _mont_mul(d2, pw2[npx], m2, mp2), m2)

                eq = G1 == _mont_mul(P1, pw1[i0], m1, mp1)
                if eq and double:
                    eq = G2 == _mont_mul(P2, pw2[i0], m2, mp2)
                G1 = sG1
                G2 = sG2
                P1 = sP1
                P2 = sP2
                if eq:
                    out[i0] = True
                elif is_p_t[j0] and is_p_p[jp0]:
                    # --- Case 2.B on the original encodings.
                    c_t = codes_t[j0]
                    c_p = codes_p[jp0]
                    j1 = j0 - c_t if c_t > 0 else np.int64(-1)
                    j2 = jp0 - c_p if c_p > 0 else np.int64(-1)
                    d_t = np.int64(-1)
                    if j1 >= 0 and j2 < 0:
                        d_t = j1
                    elif j2 >= 0 and j1 < 0:
                        d_t = i0 + j2
                    if d_t >= 0:
                        d_p = d_t - i0
                        # Discard the aligned pair (d_t, d_p) from both sides.
                        old_t = codes_t[d_t]
                        G1 = _submod(G1, _mont_mul(_mont_mul(np.uint64(old_t), r2_1, m1, mp1), pw1[d_t], m1, mp1), m1)
                        if double:
                            G2 = _submod(G2, _mont_mul(_mont_mul(np.uint64(old_t), r2_2, m2, mp2), pw2[d_t], m2, mp2), m2)
                        if is_p_t[d_t]:
                            nx = next_t[d_t]
                            if nx >= 0 and nx <= win_end:
                                newv = np.int64(0) if old_t == 0 else nx - (d_t - old_t)
                                oldnx = codes_t[nx]
                                d1 = _submod(_mont_mul(np.uint64(newv), r2_1, m1, mp1),
                                             _mont_mul(np.uint64(oldnx), r2_1, m1, mp1), m1)
                                G1 = _addmod(G1, _mont_mul(d1, pw1[nx], m1, mp1), m1)
                                if double:
                                    d2 = _submod(_mont_mul(np.uint64(newv), r2_2, m2, mp2),
                                                 _mont_mul(np.uint64(oldnx), r2_2, m2, mp2), m2)
                                    G2 = _addmod(G2, _mont_mul(d2, pw2[nx], m2, mp2), m2)
                        old_p = codes_p[d_p]
                        P1 = _submod(P1, _mont_mul(_mont_mul(np.uint64(old_p), r2_1, m1, mp1), pw1[d_p], m1, mp1), m1)
                        if double:
                            P2 = _submod(P2, _mont_mul(_mont_mul(np.uint64(old_p), r2_2, m2, mp2), pw2[d_p], m2, mp2), m2)
                        if is_p_p[d_p]:
                            npx = next_p[d_p]
                            if npx >= 0:
                                newv = np.int64(0) if old_p == 0 else npx - (d_p - old_p)
                                oldnp = codes_p[npx]
                                d1 = _submod(_mont_mul(np.uint64(newv), r2_1, m1, mp1),
                                             _mont_mul(np.uint64(oldnp), r2_1, m1, mp1), m1)
                                P1 = _addmod(P1, _mont_mul(d1, pw1[npx], m1, mp1), m1)
                                if double:
                                    d2 = _submod(_mont_mul(np.uint64(newv), r2_2, m2, mp2),
                                                 _mont_mul(np.uint64(oldnp), r2_2, m2, mp2), m2)
                                    P2 = _addmod(P2, _mont_mul(d2, pw2[npx], m2, mp2), m2)

                        eq = G1 == _mont_mul(P1, pw1[i0], m1, mp1)
                        if eq and double:
                            eq = G2 == _mont_mul(P2, pw2[i0], m2, mp2)
                        G1 = sG1
                        G2 = sG2
                        P1 = sP1
                        P2 = sP2
                        if eq:
                            out[i0] = True

        # Advance the suffix and the window.
        if i0 < W - 1:
            if is_p_t[i0]:
                jx = next_t[i0]
                if jx >= 0:
                    oldx = codes_t[jx]
                    codes_t[jx] = 0
                    _tree_set2(tree1, size, jx, _U0, pw1, m1, mp1)
                    if double:
                        _tree_set2(tree2, size, jx, _U0, pw2, m2, mp2)
                    if jx <= i0 + m - 1:
                        G1 = _submod(G1, _mont_mul(_mont_mul(np.uint64(oldx), r2_1, m1, mp1), pw1[jx], m1, mp1), m1)
                        if double:
                            G2 = _submod(G2, _mont_mul(_mont_mul(np.uint64(oldx), r2_2, m2, mp2), pw2[jx], m2, mp2), m2)
            c_out = codes_t[i0]
            G1 = _submod(G1, _mont_mul(_mont_mul(np.uint64(c_out), r2_1, m1, mp1), pw1[i0], m1, mp1), m1)
            c_in = codes_t[i0 + m]
            G1 = _addmod(G1, _mont_mul(_mont_mul(np.uint64(c_in), r2_1, m1, mp1), pw1[i0 + m], m1, mp1), m1)
            if double:
                G2 = _submod(G2, _mont_mul(_mont_mul(np.uint64(c_out), r2_2, m2, mp2), pw2[i0], m2, mp2), m2)
                G2 = _addmod(G2, _mont_mul(_mont_mul(np.uint64(c_in), r2_2, m2, mp2), pw2[i0 + m], m2, mp2), m2)
    return out


def match_single(t: PString, p: PString, cfg: HashConfig | None = None) -> np.ndarray:
    """Boolean verdict per window: p-match with at most one mismatch.

    Both strings are encoded over a common static base (the text length)
    so static codes agree across the two.  `cfg` defaults to 61-bit
    double hashing with a seeded random base.
    """
    n, m = len(t), len(p)
    if m > n:
        raise InputError("pattern longer than text")
    if m == 0:
        return np.ones(n + 1, dtype=bool)
    static_base = n + 1
    max_code = static_base + len(t.alphabet.static_symbols)
    if cfg is None:
        cfg = default_config(max_code)

    t_enc = encode(t, static_base=static_base)
    p_enc = encode(p, static_base=static_base)
    tree = HashSegmentTree(t_enc, cfg)
    pat = PatternHasher(p_enc, cfg)

    occ_t = occurrence_index(t)
    occ_p = occurrence_index(p)
    alpha = t.alphabet
    is_p_t = np.fromiter((alpha.is_param(s) for s in t.symbols), dtype=np.bool_, count=n)
    is_p_p = np.fromiter((alpha.is_param(s) for s in p.symbols), dtype=np.bool_, count=m)
    next_t0 = occ_t.next - 1   # 0-based positions, -1 stays "none" (-2 after shift)
    next_t0 = np.where(occ_t.next < 0, np.int64(-1), next_t0)
    next_p0 = np.where(occ_p.next < 0, np.int64(-1), occ_p.next - 1)

    m2 = np.uint64(tree.ctx2.m) if tree.ctx2 is not None else _U0
    mp2 = np.uint64(tree.ctx2.mp) if tree.ctx2 is not None else _U0
    r2_2 = np.uint64(tree.ctx2.r2) if tree.ctx2 is not None else _U1

    return _sweep(tree.codes, tree.tree1, tree.tree2, tree.size,
                  tree.pw1, tree.pw2,
                  np.uint64(tree.ctx1.r2), r2_2,
                  pat.codes, pat.pref1, pat.pref2,
                  next_t0.astype(np.int64), next_p0.astype(np.int64),
                  is_p_t, is_p_p,
                  np.uint64(tree.ctx1.m), np.uint64(tree.ctx1.mp), m2, mp2,
                  np.int64(m))
