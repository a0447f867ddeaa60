"""Indicator polynomials and exact alignment counts via FFT convolution.

For a symbol `a`, the text polynomial has coefficient 1 at exponent i
when t[i+1] == a, and the pattern polynomial is built over the reversed
pattern.  Multiplying the two makes each product coefficient count the
positions where `a` in the text faces `b` in the pattern for one
placement of the pattern, so one convolution per symbol pair yields the
edge weights of every window's matching graph at once.

Products are computed with numpy's real FFT and rounded back to
integers.  Coefficients are bounded by the pattern length, far inside
the range where double precision is exact; a residue check guards the
rounding anyway.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .encoding import InputError, PString

# Beyond this transform length the rounding guarantee is not worth
# trusting blindly; callers should split their inputs.
MAX_TRANSFORM = 1 << 26


class TransformBudgetError(ValueError):
    """Requested convolution exceeds the supported transform length."""


@dataclass(frozen=True)
class IndicatorPoly:
    coefficients: np.ndarray
    source: str          # "text" | "pattern"
    symbol: object

    def exponents(self) -> list[int]:
        """Exponents with coefficient 1 (handy in tests and inspection)."""
        return np.nonzero(self.coefficients)[0].tolist()


def build_indicator(s: PString, a, side: str) -> IndicatorPoly:
    """0/1 indicator polynomial of symbol `a` in `s` for the given side.

    Text side: coefficient i is [s[i+1] == a].  Pattern side is built
    over the reversed string: coefficient i is [s[len-i] == a].
    """
    if side not in ("text", "pattern"):
        raise InputError(f"side must be 'text' or 'pattern', got {side!r}")
    n = len(s)
    coeffs = np.zeros(n, dtype=np.int64)
    syms = s.symbols
    if side == "text":
        for i in range(n):
            if syms[i] == a:
                coeffs[i] = 1
    else:
        for i in range(n):
            if syms[n - 1 - i] == a:
                coeffs[i] = 1
    return IndicatorPoly(coeffs, side, a)


def _pad_length(n: int) -> int:
    length = 1
    while length < n:
        length <<= 1
    return length


def convolve_exact(p: IndicatorPoly | np.ndarray, q: IndicatorPoly | np.ndarray) -> np.ndarray:
    """Exact integer product of two small-coefficient polynomials.

    Uses a real FFT of the next power-of-two length and rounds the
    result; the rounding residue must stay below 0.25 or the call
    aborts rather than return a possibly-inexact product.
    """
    a = p.coefficients if isinstance(p, IndicatorPoly) else np.asarray(p, dtype=np.int64)
    b = q.coefficients if isinstance(q, IndicatorPoly) else np.asarray(q, dtype=np.int64)
    if len(a) == 0 or len(b) == 0 or not a.any() or not b.any():
        return np.zeros(max(len(a) + len(b) - 1, 0), dtype=np.int64)
    out_len = len(a) + len(b) - 1
    size = _pad_length(out_len)
    if size > MAX_TRANSFORM:
        raise TransformBudgetError(f"transform length {size} exceeds budget {MAX_TRANSFORM}")
    fa = np.fft.rfft(a, size)
    fb = np.fft.rfft(b, size)
    raw = np.fft.irfft(fa * fb, size)[:out_len]
    coeffs = np.rint(raw)
    if np.max(np.abs(raw - coeffs)) >= 0.25:
        raise TransformBudgetError("FFT rounding residue too large; inputs out of supported range")
    return coeffs.astype(np.int64)


@dataclass(frozen=True)
class AlignmentCounts:
    """Per-window co-occurrence weights for every relevant symbol pair.

    `pair(a, b)` returns an int array of length `window_count` whose
    w-th entry (0-based) is the number of positions in window w+1 where
    text symbol `a` faces pattern symbol `b`.  Pairs never stored are
    identically zero (symbol absent from one of the strings).
    """

    window_count: int
    pattern_length: int
    counts: dict

    def pair(self, a, b) -> np.ndarray:
        arr = self.counts.get((a, b))
        if arr is None:
            return np.zeros(self.window_count, dtype=np.int64)
        return arr

    def pairs(self):
        return self.counts.items()


def alignment_counts(t: PString, p: PString) -> AlignmentCounts:
    """Alignment counts for all p-symbol pairs and static self-pairs.

    Window w (1-based) reads the coefficient at exponent |p| + w - 2 of
    the product polynomial: the pattern polynomial is reversed, so the
    constant-term alignment of window 1 lands at exponent |p| - 1.

    Forward transforms are shared: each text and pattern indicator is
    transformed once and reused across every pair it participates in.
    """
    n, m = len(t), len(p)
    if m > n:
        raise InputError(f"pattern length {m} exceeds text length {n}")
    alpha = t.alphabet
    windows = n - m + 1
    out_len = n + m - 1
    size = _pad_length(out_len)
    if size > MAX_TRANSFORM:
        raise TransformBudgetError(f"transform length {size} exceeds budget {MAX_TRANSFORM}")

    t_present = set(t.symbols)
    p_present = set(p.symbols)

    def spectra(s: PString, side: str, wanted) -> dict:
        if not wanted:
            return {}
        mat = np.zeros((len(wanted), n if side == "text" else m))
        pos = {a: i for i, a in enumerate(wanted)}
        if side == "text":
            for i, sym in enumerate(s.symbols):
                j = pos.get(sym)
                if j is not None:
                    mat[j, i] = 1.0
        else:
            for i, sym in enumerate(s.symbols):
                j = pos.get(sym)
                if j is not None:
                    mat[j, m - 1 - i] = 1.0
        freq = np.fft.rfft(mat, size, axis=1)
        return {a: freq[pos[a]] for a in wanted}

    params_t = [a for a in alpha.param_symbols if a in t_present]
    params_p = [a for a in alpha.param_symbols if a in p_present]
    statics = [a for a in alpha.static_symbols if a in t_present and a in p_present]

    ft = spectra(t, "text", params_t + statics)
    fp = spectra(p, "pattern", params_p + statics)

    # Inverse transforms run pair by pair: the per-pair slices stay inside
    # the cache, which beats one huge batched pass, and memory stays at
    # O(|t|) on top of the (pairs x windows) result itself.
    pair_keys = [(a, b) for a in params_t for b in params_p] + [(a, a) for a in statics]
    if not pair_keys:
        return AlignmentCounts(window_count=windows, pattern_length=m, counts={})
    coeffs = np.empty((len(pair_keys), windows), dtype=np.int32)
    prod = np.empty(size // 2 + 1, dtype=np.complex128)
    for idx, (a, b) in enumerate(pair_keys):
        np.multiply(ft[a], fp[b], out=prod)
        raw = np.fft.irfft(prod, size)[m - 1:m - 1 + windows]
        vals = np.rint(raw)
        if np.max(np.abs(raw - vals)) >= 0.25:
            raise TransformBudgetError("FFT rounding residue too large")
        coeffs[idx] = vals

    counts = {key: coeffs[idx] for idx, key in enumerate(pair_keys)}
    return AlignmentCounts(window_count=windows, pattern_length=m, counts=counts)
