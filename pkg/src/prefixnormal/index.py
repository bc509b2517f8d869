"""Parikh-set index, prefix normal forms and jumbled pattern queries.

The index is built by sweeping every suffix of the word from a common origin and
keeping, per length, the highest and lowest ones-count any suffix walk reaches.
The upper envelope read as increments is PNF1, the lower one is PNF0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .words import BinaryWord, parse_word

__all__ = [
    "ParikhIndex",
    "build_index_suffix_sweep",
    "is_prefix_normal_pnf",
    "pn_equivalent",
    "pnf_one",
    "pnf_zero",
    "query_jumbled",
]


@dataclass(frozen=True, eq=False)
class ParikhIndex:
    n: int
    max_ones: np.ndarray
    min_ones: np.ndarray

    def __post_init__(self):
        for arr in (self.max_ones, self.min_ones):
            arr.setflags(write=False)

    @property
    def density(self) -> int:
        return int(self.max_ones[-1])

    def range_at(self, k: int) -> tuple[int, int]:
        """(min, max) ones-count over the length-``k`` substrings."""
        return int(self.min_ones[k]), int(self.max_ones[k])

    def check(self) -> None:
        """Assert the structural invariants of a Parikh index."""
        for arr in (self.max_ones, self.min_ones):
            assert len(arr) == self.n + 1 and arr[0] == 0
            steps = np.diff(arr)
            assert np.all((steps == 0) | (steps == 1))
        assert self.max_ones[-1] == self.min_ones[-1]
        assert np.all(self.min_ones <= self.max_ones)


def build_index_suffix_sweep(w: BinaryWord) -> ParikhIndex:
    n = len(w)
    sums = w.prefix_sums
    upper = np.zeros(n + 1, dtype=np.int64)
    lower = np.zeros(n + 1, dtype=np.int64)
    # longest suffix first: its walk fixes lengths 0..n, later walks only reach shorter lengths
    upper[:] = sums
    lower[:] = sums
    for start in range(1, n):
        walk = sums[start:] - sums[start]
        span = len(walk)
        np.maximum(upper[:span], walk, out=upper[:span])
        np.minimum(lower[:span], walk, out=lower[:span])
    return ParikhIndex(n, upper, lower)


def _increments(counts: np.ndarray) -> BinaryWord:
    return BinaryWord._wrap(np.diff(counts).astype(np.uint8))


def pnf_one(w: BinaryWord | ParikhIndex) -> BinaryWord:
    index = w if isinstance(w, ParikhIndex) else build_index_suffix_sweep(parse_word(w))
    return _increments(index.max_ones)


def pnf_zero(w: BinaryWord | ParikhIndex) -> BinaryWord:
    """Prefix normal form with respect to 0, as the lower contour of the Parikh set.

    Symbol k is 1 where the minimum ones-count grows, so the result is the word
    whose zeros are front-loaded as far as the Parikh set allows.
    """
    index = w if isinstance(w, ParikhIndex) else build_index_suffix_sweep(parse_word(w))
    return _increments(index.min_ones)


def pn_equivalent(u: BinaryWord, v: BinaryWord) -> bool:
    u, v = parse_word(u), parse_word(v)
    if len(u) != len(v):
        return False
    return np.array_equal(build_index_suffix_sweep(u).max_ones, build_index_suffix_sweep(v).max_ones)


def is_prefix_normal_pnf(w: BinaryWord) -> bool:
    """Membership via the normal form: w is prefix normal iff it equals PNF1(w)."""
    return pnf_one(w) == w


def query_jumbled(index: ParikhIndex, ones: int, zeros: int) -> bool:
    """Does some substring contain exactly ``ones`` ones and ``zeros`` zeros?"""
    if ones < 0 or zeros < 0:
        raise ValueError("counts must be non-negative")
    k = ones + zeros
    if k > index.n:
        raise ValueError(f"substring length {k} exceeds word length {index.n}")
    return bool(index.min_ones[k] <= ones <= index.max_ones[k])
