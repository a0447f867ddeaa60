"""Alphabets, parameterized strings, and the previous-occurrence encoding.

A parameterized string draws its symbols from an alphabet split into
static symbols (must match literally) and parameterized symbols (may be
renamed by a bijection).  Encoding a string position by the distance to
the previous occurrence of the same symbol makes two strings p-match
exactly when their encodings are equal, which is what every matcher in
this package works on.

All positions in the public API are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np


class InputError(ValueError):
    """Raised when an argument violates an operation's preconditions."""


@dataclass(frozen=True)
class Alphabet:
    """Partition of the symbol set into static and parameterized symbols.

    Order matters: the rank of a static symbol in `static_symbols`
    determines its reserved encoding value.
    """

    static_symbols: tuple = ()
    param_symbols: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "static_symbols", tuple(self.static_symbols))
        object.__setattr__(self, "param_symbols", tuple(self.param_symbols))
        statics = set(self.static_symbols)
        params = set(self.param_symbols)
        if len(statics) != len(self.static_symbols) or len(params) != len(self.param_symbols):
            raise InputError("alphabet contains duplicate symbols")
        if statics & params:
            raise InputError(f"static and parameterized sets overlap: {statics & params!r}")
        object.__setattr__(self, "_static_rank", {s: r for r, s in enumerate(self.static_symbols)})
        object.__setattr__(self, "_params", params)

    @classmethod
    def infer(cls, texts: Iterable[Sequence], static: Iterable = ()) -> "Alphabet":
        """Build an alphabet from the symbols occurring in `texts`.

        Symbols listed in `static` are static; everything else seen in
        the inputs is parameterized, in sorted order so that ranks do
        not depend on occurrence order.
        """
        static = tuple(static)
        seen = set()
        for t in texts:
            seen.update(t)
        params = tuple(sorted(seen - set(static)))
        return cls(static_symbols=static, param_symbols=params)

    def is_static(self, sym) -> bool:
        return sym in self._static_rank

    def is_param(self, sym) -> bool:
        return sym in self._params

    def static_rank(self, sym) -> int:
        return self._static_rank[sym]

    def __contains__(self, sym) -> bool:
        return sym in self._params or sym in self._static_rank


@dataclass(frozen=True)
class PString:
    """A string over an `Alphabet`.  Positions are 1-based in all contracts."""

    symbols: tuple
    alphabet: Alphabet

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))
        for s in self.symbols:
            if s not in self.alphabet:
                raise InputError(f"symbol {s!r} not in alphabet")

    @classmethod
    def from_text(cls, text: Sequence, alphabet: Alphabet | None = None,
                  static: Iterable = ()) -> "PString":
        if alphabet is None:
            alphabet = Alphabet.infer([text], static=static)
        return cls(tuple(text), alphabet)

    def __len__(self) -> int:
        return len(self.symbols)

    def __getitem__(self, i):
        return self.symbols[i]

    def window(self, start: int, length: int) -> "PString":
        """1-based window `start .. start+length-1` as a fresh PString."""
        return PString(self.symbols[start - 1:start - 1 + length], self.alphabet)


@dataclass(frozen=True)
class EncodedString:
    """Per-position integer codes of a PString.

    Parameterized positions encode 0 (first occurrence) or the distance
    back to the previous occurrence.  Static positions carry the
    reserved value ``static_base + rank`` which is disjoint from every
    possible distance.
    """

    codes: np.ndarray
    static_base: int

    def __post_init__(self):
        object.__setattr__(self, "codes", np.asarray(self.codes, dtype=np.int64))

    def __len__(self) -> int:
        return len(self.codes)

    def __eq__(self, other) -> bool:
        if not isinstance(other, EncodedString):
            return NotImplemented
        return (len(self.codes) == len(other.codes)
                and bool(np.array_equal(self.codes, other.codes)))

    def tolist(self) -> list:
        return self.codes.tolist()


@dataclass(frozen=True)
class OccurrenceIndex:
    """prev[i] / next[i]: nearest earlier / later occurrence of the symbol
    at position i, or -1.  Arrays are 1-based internally padded at slot 0."""

    prev: np.ndarray
    next: np.ndarray

    def prev_of(self, i: int) -> int:
        return int(self.prev[i - 1])

    def next_of(self, i: int) -> int:
        return int(self.next[i - 1])


def _symbol_ids(s: PString) -> np.ndarray:
    table = {}
    ids = np.empty(len(s), dtype=np.int64)
    for i, sym in enumerate(s.symbols):
        ids[i] = table.setdefault(sym, len(table))
    return ids


def encode(s: PString, static_base: int | None = None) -> EncodedString:
    """Previous-occurrence encoding of `s`.

    `static_base` is the value assigned to the rank-0 static symbol;
    it defaults to ``len(s) + 1`` which keeps static codes disjoint
    from the distance range 0..len(s)-1.  Operations that compare
    encodings of two different strings must pass a common base.
    """
    n = len(s)
    if static_base is None:
        static_base = n + 1
    codes = np.zeros(n, dtype=np.int64)
    last: dict = {}
    alpha = s.alphabet
    for i, sym in enumerate(s.symbols):
        if alpha.is_static(sym):
            codes[i] = static_base + alpha.static_rank(sym)
        else:
            j = last.get(sym)
            codes[i] = 0 if j is None else i - j
            last[sym] = i
    return EncodedString(codes, static_base)


def occurrence_index(s: PString) -> OccurrenceIndex:
    """prev/next occurrence arrays for every position of `s` (1-based values)."""
    n = len(s)
    prev = np.full(n, -1, dtype=np.int64)
    nxt = np.full(n, -1, dtype=np.int64)
    last: dict = {}
    for i, sym in enumerate(s.symbols):
        j = last.get(sym)
        if j is not None:
            prev[i] = j + 1
            nxt[j] = i + 1
        last[sym] = i
    return OccurrenceIndex(prev, nxt)


@dataclass
class DiscardResult:
    """Updated encodings plus the undo information needed to revert them."""

    text: EncodedString
    pattern: EncodedString
    undo_text: list = field(default_factory=list)     # (position, old code)
    undo_pattern: list = field(default_factory=list)


def _discard_one(codes: np.ndarray, static_base: int, i: int,
                 occ: OccurrenceIndex, undo: list) -> None:
    # A code >= static_base marks a static position; those get zeroed but
    # trigger no next-occurrence rewrite (static codes never encode prev).
    old = int(codes[i - 1])
    undo.append((i, old))
    codes[i - 1] = 0
    if old < static_base:
        j = occ.next_of(i)
        if j != -1:
            prev = occ.prev_of(i)
            undo.append((j, int(codes[j - 1])))
            codes[j - 1] = 0 if prev == -1 else j - prev


def discard_position(t_enc: EncodedString, p_enc: EncodedString, i: int,
                     occ_t: OccurrenceIndex, occ_p: OccurrenceIndex) -> DiscardResult:
    """Discard aligned position `i` from both encodings.

    Sets both codes at `i` to 0 and rewrites the next occurrence on each
    side so the encodings describe the strings with position `i` treated
    as a fresh, never-seen symbol.  Returns new encodings; the inputs
    are not mutated.  The undo lists let a caller revert the change on
    the returned arrays ((position, previous code) pairs, newest last).
    """
    n = len(t_enc)
    if len(p_enc) != n:
        raise InputError("encodings must have equal length")
    if not 1 <= i <= n:
        raise InputError(f"position {i} out of range 1..{n}")
    t_codes = t_enc.codes.copy()
    p_codes = p_enc.codes.copy()
    res = DiscardResult(
        text=EncodedString(t_codes, t_enc.static_base),
        pattern=EncodedString(p_codes, p_enc.static_base),
    )
    _discard_one(t_codes, t_enc.static_base, i, occ_t, res.undo_text)
    _discard_one(p_codes, p_enc.static_base, i, occ_p, res.undo_pattern)
    return res


def revert_discard(enc: EncodedString, undo: list) -> None:
    """Replay an undo list (in reverse) onto `enc`, restoring old codes."""
    for pos, old in reversed(undo):
        enc.codes[pos - 1] = old
