"""Polynomial rolling hashes over encoded strings.

The hash of a code segment is ``sum(code[j] * b**(j-l)) mod m`` with the
lowest position at exponent zero, so a parent segment's hash is
``left + right * b**len(left)`` and a binary tree over the text supports
point updates and range hashes in O(log n).  Comparing a tree node
against a pattern substring at a different offset cross-multiplies both
sides by precomputed powers of the base, so no modular inverses appear
on any hot path.

Hash values live in Montgomery form inside the kernels: products of
61-bit residues do not fit in a machine word, and Montgomery reduction
needs only 64x64 multiplies, which numba compiles well.  The map is a
bijection, so equality tests inside kernels are unaffected; public
accessors convert back to plain residues.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .encoding import EncodedString, InputError

# Two fixed 61-bit primes for the default double-hashing configuration.
MOD61_A = (1 << 61) - 1
MOD61_B = 2305843009213693921

#: Distinguished "window hash equals pattern hash" return of first_mismatch.
NO_MISMATCH = None


class ConfigError(ValueError):
    """Hash configuration incompatible with the data it is applied to."""


def _is_prime(n: int) -> bool:
    # Deterministic Miller-Rabin for n < 2**64.
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# Montgomery arithmetic (R = 2**64).  All kernel-side values are uint64.
# ---------------------------------------------------------------------------

_U32 = np.uint64(32)
_U61 = np.uint64(61)
_MASK32 = np.uint64(0xFFFFFFFF)
_U0 = np.uint64(0)
_U1 = np.uint64(1)


@njit(cache=True, inline="always")
def _mul128(a, b):
    """Full 128-bit product of two uint64 values as (hi, lo)."""
    a0 = a & _MASK32
    a1 = a >> _U32
    b0 = b & _MASK32
    b1 = b >> _U32
    ll = a0 * b0
    lh = a0 * b1
    hl = a1 * b0
    hh = a1 * b1
    mid = (ll >> _U32) + (lh & _MASK32) + (hl & _MASK32)
    hi = hh + (lh >> _U32) + (hl >> _U32) + (mid >> _U32)
    lo = (mid << _U32) | (ll & _MASK32)
    return hi, lo


@njit(cache=True, inline="always")
def _mont_mul(a, b, m, mp):
    """a * b * R^-1 mod m for odd m < 2**62 (inputs in Montgomery form)."""
    t_hi, t_lo = _mul128(a, b)
    u = t_lo * mp
    um_hi, um_lo = _mul128(u, m)
    carry = _U1 if t_lo != _U0 else _U0  # t_lo + um_lo is 0 or exactly 2**64
    r = t_hi + um_hi + carry
    if r >= m:
        r -= m
    return r


@njit(cache=True, inline="always")
def _addmod(a, b, m):
    s = a + b
    if s >= m:
        s -= m
    return s


@njit(cache=True, inline="always")
def _submod(a, b, m):
    if a >= b:
        return a - b
    return a + m - b


@dataclass(frozen=True)
class _MontCtx:
    """Precomputed Montgomery constants for one modulus."""

    m: int
    mp: int      # -m^-1 mod 2**64
    r2: int      # (2**64)**2 mod m
    one: int     # 2**64 mod m (Montgomery form of 1)

    @classmethod
    def for_modulus(cls, m: int) -> "_MontCtx":
        r = 1 << 64
        mp = (-pow(m, -1, r)) % r
        return cls(m=m, mp=mp, r2=r * r % m, one=r % m)

    def into(self, x: int) -> int:
        return x * (1 << 64) % self.m

    def out_of(self, x: int) -> int:
        return x * pow(1 << 64, -1, self.m) % self.m


@njit(cache=True)
def _powers_mont(b_mont, count, one, m, mp):
    pw = np.empty(count, np.uint64)
    pw[0] = one
    for i in range(1, count):
        pw[i] = _mont_mul(pw[i - 1], b_mont, m, mp)
    return pw


@njit(cache=True)
def _codes_to_mont(codes, r2, m, mp):
    out = np.empty(len(codes), np.uint64)
    for i in range(len(codes)):
        out[i] = _mont_mul(np.uint64(codes[i]), r2, m, mp)
    return out


# ---------------------------------------------------------------------------
# Segment tree kernels.  Trees are flat arrays of length 2*size with the
# leaves at size..size+n-1; node v = left(2v) + right(2v+1) * b**len(left).
# ---------------------------------------------------------------------------

@njit(cache=True)
def _tree_build(leaves_mont, size, pw, m, mp):
    tree = np.zeros(2 * size, np.uint64)
    n = len(leaves_mont)
    for i in range(n):
        tree[size + i] = leaves_mont[i]
    seg = 2
    v = size >> 1
    while v >= 1:
        half = np.int64(seg >> 1)
        for node in range(v, 2 * v):
            tree[node] = _addmod(tree[2 * node],
                                 _mont_mul(tree[2 * node + 1], pw[half], m, mp), m)
        v >>= 1
        seg <<= 1
    return tree


@njit(cache=True)
def _tree_set(tree, size, pos0, val_mont, pw, m, mp):
    v = size + pos0
    tree[v] = val_mont
    half = np.int64(1)
    v >>= 1
    while v >= 1:
        tree[v] = _addmod(tree[2 * v],
                          _mont_mul(tree[2 * v + 1], pw[half], m, mp), m)
        half <<= 1
        v >>= 1


@njit(cache=True)
def _tree_range(tree, size, l0, r0, pw, m, mp):
    """Normalized (exponent-0-based) Montgomery hash of leaves [l0..r0]."""
    left_acc = _U0
    left_len = np.int64(0)
    right_acc = _U0
    right_len = np.int64(0)
    l = l0 + size
    r = r0 + 1 + size
    seglen = np.int64(1)
    while l < r:
        if l & 1:
            left_acc = _addmod(left_acc, _mont_mul(tree[l], pw[left_len], m, mp), m)
            left_len += seglen
            l += 1
        if r & 1:
            r -= 1
            right_acc = _addmod(_mont_mul(right_acc, pw[seglen], m, mp), tree[r], m)
            right_len += seglen
        l >>= 1
        r >>= 1
        seglen <<= 1
    return _addmod(left_acc, _mont_mul(right_acc, pw[left_len], m, mp), m)


@njit(cache=True)
def _descend(tree1, tree2, size, L0, win_len,
             pref1, pref2, pw1, pw2, m1, mp1, m2, mp2):
    """First position where the window [L0, L0+win_len) differs from the
    pattern, judged purely by hash comparisons.

    Walks the window's canonical nodes left to right, comparing each
    against the aligned pattern substring (prefix sums cross-multiplied
    by a base power).  The first node whose hashes disagree is descended:
    if the left child agrees the difference must sit in the right child.
    Returns the 0-based text position, or -1 when every canonical node
    compares equal (the window hash then equals the pattern hash).
    """
    ln = 0
    rn = 0
    lnodes = np.empty(64, np.int64)
    lstarts = np.empty(64, np.int64)
    lsegs = np.empty(64, np.int64)
    rnodes = np.empty(64, np.int64)
    rstarts = np.empty(64, np.int64)
    rsegs = np.empty(64, np.int64)
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


# ---------------------------------------------------------------------------
# Public types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HashConfig:
    """Base and moduli of the rolling hash.

    `strict` demands that every code value stays below the base, which
    keeps single-code hashes injective.  Reproductions of the collision
    experiments use moduli far smaller than the code range and must turn
    it off; code values then simply wrap modulo m, which is transparent
    to the polynomial hash.
    """

    base: int
    mod1: int
    mod2: int | None = None
    strict: bool = True

    def __post_init__(self):
        for m in (self.mod1, self.mod2):
            if m is not None and not _is_prime(m):
                raise ConfigError(f"modulus {m} is not prime")
        if self.mod2 is not None and self.mod2 == self.mod1:
            raise ConfigError("double hashing needs two distinct moduli")
        lim = self.mod1 if self.mod2 is None else min(self.mod1, self.mod2)
        if not 2 <= self.base < lim:
            raise ConfigError(f"base must be in 2..{lim - 1}")

    @property
    def double(self) -> bool:
        return self.mod2 is not None


def default_config(max_code: int, seed=None) -> HashConfig:
    """Double hashing with the two fixed 61-bit primes and a random odd base.

    The base is drawn above `max_code` from a PCG64 stream; pass a seed
    for reproducibility, otherwise the process-level default stream is
    used.
    """
    rng = np.random.default_rng(seed)
    lo = max(max_code + 1, 3)
    hi = min(MOD61_A, MOD61_B) - 1
    if lo >= hi:
        raise ConfigError("code range leaves no room for a base below the moduli")
    base = int(rng.integers(lo, hi)) | 1
    return HashConfig(base=base, mod1=MOD61_A, mod2=MOD61_B)


@dataclass(frozen=True)
class HashValue:
    """Residues of one hashed segment; equality needs every present residue."""

    h1: int
    h2: int | None
    len: int


class UndoLog:
    """Point-update journal: (1-based position, previous code) records."""

    def __init__(self):
        self.records: list[tuple[int, int]] = []

    def __len__(self):
        return len(self.records)


class _HashedCodes:
    """State shared by the text tree and the pattern hasher."""

    def __init__(self, enc: EncodedString, cfg: HashConfig):
        self.cfg = cfg
        self.codes = enc.codes.astype(np.int64).copy()
        if cfg.strict and len(self.codes) and int(self.codes.max()) >= cfg.base:
            raise ConfigError(
                f"code {int(self.codes.max())} >= base {cfg.base}; "
                "use a larger base or strict=False")
        self.ctx1 = _MontCtx.for_modulus(cfg.mod1)
        self.ctx2 = _MontCtx.for_modulus(cfg.mod2) if cfg.double else None

    def _mont_params(self, which: int):
        ctx = self.ctx1 if which == 1 else self.ctx2
        return np.uint64(ctx.m), np.uint64(ctx.mp)


class HashSegmentTree(_HashedCodes):
    """Segment tree over an encoded string supporting point update,
    range hash, and the first-mismatch descent."""

    def __init__(self, enc: EncodedString, cfg: HashConfig):
        super().__init__(enc, cfg)
        n = len(self.codes)
        if n == 0:
            raise InputError("cannot hash an empty string")
        self.n = n
        size = 1
        while size < n:
            size <<= 1
        self.size = size
        self.pw1, self.tree1 = self._build_side(self.ctx1)
        if self.ctx2 is not None:
            self.pw2, self.tree2 = self._build_side(self.ctx2)
        else:
            self.pw2 = np.zeros(1, np.uint64)
            self.tree2 = np.zeros(1, np.uint64)

    def _build_side(self, ctx: _MontCtx):
        m, mp = np.uint64(ctx.m), np.uint64(ctx.mp)
        b_mont = np.uint64(ctx.into(self.cfg.base % ctx.m))
        pw = _powers_mont(b_mont, self.size + 2, np.uint64(ctx.one), m, mp)
        leaves = _codes_to_mont(self.codes, np.uint64(ctx.r2), m, mp)
        tree = _tree_build(leaves, self.size, pw, m, mp)
        return pw, tree

    def point_update(self, i: int, new_code: int, log: UndoLog | None = None) -> None:
        """Set the code at 1-based position `i`, recombining ancestors."""
        if not 1 <= i <= self.n:
            raise InputError(f"position {i} out of range 1..{self.n}")
        if log is not None:
            log.records.append((i, int(self.codes[i - 1])))
        self.codes[i - 1] = new_code
        for ctx, pw, tree in self._sides():
            m, mp = np.uint64(ctx.m), np.uint64(ctx.mp)
            val = _mont_mul(np.uint64(new_code), np.uint64(ctx.r2), m, mp)
            _tree_set(tree, self.size, i - 1, val, pw, m, mp)

    def revert(self, log: UndoLog) -> None:
        """Undo every logged update, newest first."""
        for pos, old in reversed(log.records):
            self.point_update(pos, old)
        log.records.clear()

    def _sides(self):
        yield self.ctx1, self.pw1, self.tree1
        if self.ctx2 is not None:
            yield self.ctx2, self.pw2, self.tree2

    def range_hash(self, l: int, r: int) -> HashValue:
        """Hash of codes[l..r] (1-based, inclusive) normalized to exponent 0."""
        if not 1 <= l <= r <= self.n:
            raise InputError(f"invalid range [{l}, {r}] for length {self.n}")
        vals = []
        for ctx, pw, tree in self._sides():
            m, mp = np.uint64(ctx.m), np.uint64(ctx.mp)
            acc = _tree_range(tree, self.size, l - 1, r - 1, pw, m, mp)
            vals.append(ctx.out_of(int(acc)))
        return HashValue(h1=vals[0], h2=vals[1] if len(vals) > 1 else None,
                         len=r - l + 1)

    def root_hash(self) -> HashValue:
        return self.range_hash(1, self.n)


def build(enc: EncodedString, cfg: HashConfig) -> HashSegmentTree:
    """Build a hash segment tree over an encoded string."""
    return HashSegmentTree(enc, cfg)


class PatternHasher(_HashedCodes):
    """Prefix hashes of the pattern with a small transactional overlay.

    Substring hashes of the pristine pattern are O(1); point updates are
    O(1) appends to an overlay that substring queries fold back in, so a
    query costs O(1 + pending updates).  The sweep that drives this
    structure keeps at most a handful of pending updates per window and
    reverts them before moving on.
    """

    def __init__(self, enc: EncodedString, cfg: HashConfig):
        super().__init__(enc, cfg)
        self.n = len(self.codes)
        self.pref1, self.pw1, self.ipw1 = self._build_side(self.ctx1)
        if self.ctx2 is not None:
            self.pref2, self.pw2, self.ipw2 = self._build_side(self.ctx2)
        else:
            self.pref2 = np.zeros(1, np.uint64)
            self.pw2 = np.zeros(1, np.uint64)
            self.ipw2 = None
        self.overlay: dict[int, int] = {}  # pos0 -> pristine code

    def _build_side(self, ctx: _MontCtx):
        m, mp = np.uint64(ctx.m), np.uint64(ctx.mp)
        b = self.cfg.base % ctx.m
        b_mont = np.uint64(ctx.into(b))
        pw = _powers_mont(b_mont, self.n + 2, np.uint64(ctx.one), m, mp)
        leaves = _codes_to_mont(self.codes, np.uint64(ctx.r2), m, mp)
        pref = np.zeros(self.n + 1, np.uint64)
        for i in range(self.n):
            pref[i + 1] = _addmod(pref[i], _mont_mul(leaves[i], pw[i], m, mp), m)
        # Plain-residue inverse powers for normalizing public substring hashes.
        ib = pow(b, ctx.m - 2, ctx.m)
        ipw = [1] * (self.n + 1)
        for i in range(1, self.n + 1):
            ipw[i] = ipw[i - 1] * ib % ctx.m
        return pref, pw, ipw

    def point_update(self, i: int, new_code: int, log: UndoLog | None = None) -> None:
        if not 1 <= i <= self.n:
            raise InputError(f"position {i} out of range 1..{self.n}")
        pos0 = i - 1
        if log is not None:
            log.records.append((i, int(self.codes[pos0])))
        if pos0 not in self.overlay:
            self.overlay[pos0] = int(self.codes[pos0])
        self.codes[pos0] = new_code
        if self.overlay[pos0] == int(new_code):
            del self.overlay[pos0]  # back to pristine

    def revert(self, log: UndoLog) -> None:
        for pos, old in reversed(log.records):
            self.point_update(pos, old)
        log.records.clear()

    def substring_hash(self, l: int, r: int) -> HashValue:
        """Hash of codes[l..r] normalized to exponent 0 (1-based bounds)."""
        if not 1 <= l <= r <= self.n:
            raise InputError(f"invalid range [{l}, {r}] for length {self.n}")
        vals = []
        sides = [(self.ctx1, self.pref1, self.ipw1)]
        if self.ctx2 is not None:
            sides.append((self.ctx2, self.pref2, self.ipw2))
        for ctx, pref, ipw in sides:
            m = ctx.m
            s = (ctx.out_of(int(pref[r])) - ctx.out_of(int(pref[l - 1]))) % m
            for pos0, pristine in self.overlay.items():
                if l - 1 <= pos0 <= r - 1:
                    delta = int(self.codes[pos0]) - pristine
                    s = (s + delta * pow(self.cfg.base % m, pos0, m)) % m
            vals.append(s * ipw[l - 1] % m)
        return HashValue(h1=vals[0], h2=vals[1] if len(vals) > 1 else None,
                         len=r - l + 1)

    def full_hash(self) -> HashValue:
        return self.substring_hash(1, self.n)


def first_mismatch(tree: HashSegmentTree, start: int, pat: PatternHasher):
    """Smallest 1-based text position in [start, start+len(pat)) whose code
    differs from the aligned pattern code, judged by hash comparisons.

    Returns NO_MISMATCH when the window hash equals the pattern hash.
    """
    m_len = pat.n
    if not 1 <= start <= tree.n - m_len + 1:
        raise InputError("window out of tree bounds")
    if pat.overlay:
        raise InputError("first_mismatch requires a pristine pattern hasher")
    if tree.cfg != pat.cfg:
        raise ConfigError("tree and pattern hasher configurations differ")
    m2 = np.uint64(tree.ctx2.m) if tree.ctx2 is not None else _U0
    mp2 = np.uint64(tree.ctx2.mp) if tree.ctx2 is not None else _U0
    pos = _descend(tree.tree1, tree.tree2, tree.size, np.int64(start - 1),
                   np.int64(m_len), pat.pref1, pat.pref2, tree.pw1, tree.pw2,
                   np.uint64(tree.ctx1.m), np.uint64(tree.ctx1.mp), m2, mp2)
    if pos < 0:
        return NO_MISMATCH
    return int(pos) + 1
