"""Binary words, the prefix/substring ones-count functions and the word decompositions.

Positions are 0-based throughout the code; lengths are what the functions P and F
take as argument, so ``prefix_ones(w, i)`` counts the ones in ``w[:i]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

__all__ = [
    "BinaryWord",
    "CriticalPrefix",
    "GapForm",
    "NoCriticalPrefixError",
    "RunLengthForm",
    "Witness",
    "WordFormatError",
    "decompose_critical",
    "density",
    "f_table",
    "from_gap_form",
    "is_prefix_normal_gaps",
    "is_prefix_normal_naive",
    "parse_word",
    "prefix_ones",
    "to_gap_form",
    "to_run_length",
]

_ZERO = ord("0")


class WordFormatError(ValueError):
    """Raised when a text is not a word over ``{0, 1}``.

    ``position`` is the 1-based position of the first offending character.
    """

    def __init__(self, text: str, position: int):
        self.text = text
        self.position = position
        super().__init__(f"invalid symbol {text[position - 1]!r} at position {position}")


class NoCriticalPrefixError(ValueError):
    pass


class BinaryWord:
    """An immutable binary word.

    The symbols live in a read-only ``uint8`` array; the canonical external form is
    the ASCII string of ``'0'``/``'1'`` characters returned by ``str()``.
    """

    def __init__(self, symbols: Iterable[int] | np.ndarray | str = ()):
        if isinstance(symbols, str):
            bits = _bits_from_text(symbols)
        else:
            bits = np.array(symbols if isinstance(symbols, np.ndarray) else list(symbols), dtype=np.uint8)
            if bits.ndim != 1:
                raise ValueError("a word is a one-dimensional sequence of bits")
            if bits.size and bits.max() > 1:
                bad = int(np.flatnonzero(bits > 1)[0])
                raise ValueError(f"symbol {int(bits[bad])} at position {bad + 1} is not a bit")
        bits.setflags(write=False)
        self._bits = bits

    @classmethod
    def _wrap(cls, bits: np.ndarray) -> BinaryWord:
        # trusted constructor: bits already validated uint8
        word = cls.__new__(cls)
        bits = bits.view()
        bits.setflags(write=False)
        word._bits = bits
        return word

    @classmethod
    def ones(cls, n: int) -> BinaryWord:
        return cls._wrap(np.ones(n, dtype=np.uint8))

    @classmethod
    def zeros(cls, n: int) -> BinaryWord:
        return cls._wrap(np.zeros(n, dtype=np.uint8))

    @property
    def bits(self) -> np.ndarray:
        return self._bits

    @cached_property
    def prefix_sums(self) -> np.ndarray:
        """``prefix_sums[i]`` is the number of ones in the first ``i`` symbols."""
        sums = np.zeros(len(self._bits) + 1, dtype=np.int64)
        np.cumsum(self._bits, out=sums[1:])
        sums.setflags(write=False)
        return sums

    @property
    def density(self) -> int:
        return int(self.prefix_sums[-1])

    def __len__(self) -> int:
        return len(self._bits)

    def __iter__(self):
        return (int(b) for b in self._bits)

    def __getitem__(self, key):
        if isinstance(key, slice):
            return BinaryWord._wrap(self._bits[key].copy())
        return int(self._bits[key])

    def __add__(self, other) -> BinaryWord:
        if isinstance(other, str):
            other = parse_word(other)
        if not isinstance(other, BinaryWord):
            return NotImplemented
        return BinaryWord._wrap(np.concatenate([self._bits, other._bits]))

    def __radd__(self, other) -> BinaryWord:
        if isinstance(other, str):
            return parse_word(other) + self
        return NotImplemented

    def __mul__(self, k: int) -> BinaryWord:
        return BinaryWord._wrap(np.tile(self._bits, k))

    def __eq__(self, other) -> bool:
        if isinstance(other, str):
            return str(self) == other
        if not isinstance(other, BinaryWord):
            return NotImplemented
        return np.array_equal(self._bits, other._bits)

    def __hash__(self) -> int:
        return hash(self._bits.tobytes())

    def __lt__(self, other: BinaryWord) -> bool:
        return str(self) < str(other)

    def __str__(self) -> str:
        return (self._bits + _ZERO).tobytes().decode("ascii")

    def __repr__(self) -> str:
        return f"BinaryWord('{self}')"


def _bits_from_text(text: str) -> np.ndarray:
    raw = np.frombuffer(text.encode("ascii", errors="replace"), dtype=np.uint8)
    bits = raw - _ZERO
    bad = np.flatnonzero(bits > 1)
    if bad.size or len(raw) != len(text):
        pos = int(bad[0]) if bad.size else next(i for i, ch in enumerate(text) if ch not in "01")
        raise WordFormatError(text, pos + 1)
    return bits


def parse_word(text: str | BinaryWord) -> BinaryWord:
    """Parse the canonical ``'0'``/``'1'`` text form."""
    if isinstance(text, BinaryWord):
        return text
    return BinaryWord(text)


def density(w: BinaryWord) -> int:
    return w.density


def prefix_ones(w: BinaryWord, i: int) -> int:
    """P(w, i): number of ones among the first ``i`` symbols."""
    if not 0 <= i <= len(w):
        raise IndexError(f"prefix length {i} outside 0..{len(w)}")
    return int(w.prefix_sums[i])


def _window_ones(sums: np.ndarray, length: int) -> np.ndarray:
    """Ones-count of every length-``length`` window, indexed by start."""
    return sums[length:] - sums[: len(sums) - length]


def f_table(w: BinaryWord) -> np.ndarray:
    """F(w, 0..n): maximum ones-count over the substrings of each length.

    One sliding-window pass per length, O(n^2) overall.
    """
    n = len(w)
    sums = w.prefix_sums
    table = np.zeros(n + 1, dtype=np.int64)
    for length in range(1, n + 1):
        table[length] = _window_ones(sums, length).max()
    return table


class Witness(NamedTuple):
    """A substring with more ones than the prefix of the same length."""

    start: int
    length: int
    ones: int
    prefix_ones: int

    def holds_for(self, w: BinaryWord) -> bool:
        """Recount the violation against the raw word."""
        if self.start < 0 or self.start + self.length > len(w):
            return False
        sub = int(w.bits[self.start : self.start + self.length].sum())
        pre = int(w.bits[: self.length].sum())
        return sub == self.ones and pre == self.prefix_ones and sub > pre


def is_prefix_normal_naive(w: BinaryWord) -> tuple[bool, Witness | None]:
    """Reference test: compare F(w, i) with P(w, i) for every length.

    Lengths are scanned in increasing order, so the witness is the leftmost
    violating window of the smallest violating length.
    """
    n = len(w)
    sums = w.prefix_sums
    d = int(sums[-1])
    if d == 0 or d == n:
        return True, None
    for length in range(1, n + 1):
        windows = _window_ones(sums, length)
        over = np.flatnonzero(windows > sums[length])
        if over.size:
            start = int(over[0])
            return False, Witness(start, length, int(windows[start]), int(sums[length]))
    return True, None


@dataclass(frozen=True)
class CriticalPrefix:
    """The decomposition ``1^s 0^t gamma`` with ``t > 0`` and gamma empty or starting with 1."""

    s: int
    t: int
    gamma: BinaryWord

    def word(self) -> BinaryWord:
        return BinaryWord.ones(self.s) + BinaryWord.zeros(self.t) + self.gamma

    @property
    def length(self) -> int:
        return self.s + self.t


def decompose_critical(w: BinaryWord) -> CriticalPrefix:
    bits = w.bits
    zeros = np.flatnonzero(bits == 0)
    if zeros.size == 0:
        raise NoCriticalPrefixError(f"{w} has no critical prefix")
    s = int(zeros[0])
    ones_after = np.flatnonzero(bits[s:] == 1)
    t = int(ones_after[0]) if ones_after.size else len(w) - s
    return CriticalPrefix(s, t, w[s + t :])


@dataclass(frozen=True)
class RunLengthForm:
    """Maximal ``1*0*`` blocks as ``(ones, zeros)`` pairs."""

    blocks: tuple[tuple[int, int], ...]

    def __post_init__(self):
        c = len(self.blocks)
        for i, (s, t) in enumerate(self.blocks):
            if s < 0 or t < 0 or (i > 0 and s < 1) or (i < c - 1 and t < 1):
                raise ValueError(f"invalid block {i + 1}: ({s}, {t})")

    def __len__(self) -> int:
        return len(self.blocks)

    @property
    def n(self) -> int:
        return sum(s + t for s, t in self.blocks)

    def word(self) -> BinaryWord:
        parts = []
        for s, t in self.blocks:
            parts.append(np.ones(s, dtype=np.uint8))
            parts.append(np.zeros(t, dtype=np.uint8))
        return BinaryWord._wrap(np.concatenate(parts) if parts else np.zeros(0, dtype=np.uint8))


def to_run_length(w: BinaryWord) -> RunLengthForm:
    bits = w.bits
    n = len(bits)
    if n == 0:
        return RunLengthForm(())
    # a block starts at 0 and at every 0 -> 1 transition
    starts = np.flatnonzero((bits[1:] == 1) & (bits[:-1] == 0)) + 1
    bounds = np.concatenate([[0], starts, [n]])
    sums = w.prefix_sums
    blocks = []
    for a, b in zip(bounds[:-1], bounds[1:]):
        ones = int(sums[b] - sums[a])
        blocks.append((ones, int(b - a) - ones))
    return RunLengthForm(tuple(blocks))


@dataclass(frozen=True)
class GapForm:
    """``w = 1 0^(r1-1) 1 0^(r2-1) ... 1 0^(rd-1)`` with ``sum(r) = n``."""

    gaps: tuple[int, ...]

    def __post_init__(self):
        if not self.gaps or min(self.gaps) < 1:
            raise ValueError("gap form needs at least one gap, all positive")

    @property
    def d(self) -> int:
        return len(self.gaps)

    @property
    def n(self) -> int:
        return sum(self.gaps)


def to_gap_form(w: BinaryWord) -> GapForm:
    if len(w) == 0 or w.bits[0] != 1:
        raise ValueError(f"gap form needs a word starting with 1, got {str(w)!r}")
    ones = np.flatnonzero(w.bits)
    gaps = np.diff(np.append(ones, len(w)))
    return GapForm(tuple(int(r) for r in gaps))


def from_gap_form(g: GapForm) -> BinaryWord:
    bits = np.zeros(g.n, dtype=np.uint8)
    bits[np.cumsum((0,) + g.gaps[:-1])] = 1
    return BinaryWord._wrap(bits)


def is_prefix_normal_gaps(g: GapForm | Sequence[int]) -> bool:
    """Prefix normality from the gaps alone.

    For every m, the first m gaps must not sum to more than any m consecutive gaps
    among r2..r(d-1); the trailing gap rd is the run of zeros after the last one and
    takes no part.
    """
    gaps = g.gaps if isinstance(g, GapForm) else tuple(g)
    d = len(gaps)
    if d < 3:
        return True
    sums = np.zeros(d + 1, dtype=np.int64)
    np.cumsum(gaps, out=sums[1:])
    for m in range(1, d - 1):
        windows = sums[m + 1 : d] - sums[1 : d - m]
        if windows.min() < sums[m]:
            return False
    return True
