"""Parameterized string matching with mismatches.

Two matchers over strings whose alphabet splits into static symbols
(match literally) and parameterized symbols (match up to a renaming
bijection):

* a deterministic matcher for any mismatch tolerance k, built from
  FFT-derived alignment counts and per-window maximum-weight bipartite
  matching, and
* a probabilistic single-mismatch matcher that slides rolling hashes
  held in a segment tree over the encoded text.

Brute-force oracles live in `pmatch.oracle`; the `pmatch` CLI exposes
encoding, matching, instance generation, benchmarks, and the hash
collision experiments.
"""

from .convolution import (AlignmentCounts, IndicatorPoly, alignment_counts,
                          build_indicator, convolve_exact)
from .encoding import (Alphabet, DiscardResult, EncodedString, InputError,
                       OccurrenceIndex, PString, discard_position, encode,
                       occurrence_index, revert_discard)
from .general import (MatchQuery, MatchReport, match_k, mismatch_profile,
                      set_parallelism)
from .hashing import (MOD61_A, MOD61_B, NO_MISMATCH, ConfigError, HashConfig,
                      HashSegmentTree, HashValue, PatternHasher, UndoLog,
                      build, default_config, first_mismatch)
from .matching import SymbolGraph, max_weight_matching, min_mismatches
from .oracle import oracle_min_mismatch, oracle_profile, oracle_single
from .single import WindowVerdict, equal_length_match, match_single

__all__ = [
    "AlignmentCounts", "Alphabet", "ConfigError", "DiscardResult",
    "EncodedString", "HashConfig", "HashSegmentTree", "HashValue",
    "IndicatorPoly", "InputError", "MOD61_A", "MOD61_B", "MatchQuery",
    "MatchReport", "NO_MISMATCH", "OccurrenceIndex", "PString",
    "PatternHasher", "SymbolGraph", "UndoLog", "WindowVerdict",
    "alignment_counts", "build", "build_indicator", "convolve_exact",
    "default_config", "discard_position", "encode", "equal_length_match",
    "first_mismatch", "match_k", "match_single", "max_weight_matching",
    "min_mismatches", "mismatch_profile", "occurrence_index",
    "oracle_min_mismatch", "oracle_profile", "oracle_single",
    "revert_discard", "set_parallelism",
]

__version__ = "0.1.0"
