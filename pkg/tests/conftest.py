import warnings

import pytest

warnings.filterwarnings("ignore", message=".*TBB.*")


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    """Compile the numba kernels once so individual tests time honestly."""
    from pmatch import (Alphabet, HashConfig, MatchQuery, PString,
                        match_single, mismatch_profile)
    alpha = Alphabet.infer(["ab"])
    t = PString.from_text("abab", alpha)
    p = PString.from_text("ab", alpha)
    mismatch_profile(MatchQuery(t, p, 1))
    match_single(t, p)
    match_single(t, p, HashConfig(base=5, mod1=1019, strict=False))
