"""Counting prefix normal words and their extensions.

The counts come from a depth-first walk of the tree of prefix normal words: every
prefix of a prefix normal word is prefix normal, so the tree is prefix closed, a
0-child is always prefix normal, and a 1-child needs only the windows ending at the
new symbol checked. One walk to depth N yields pnw(m), pnw(m, d) and crit(m) for
every m <= N.
"""

from __future__ import annotations

import math
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

import numpy as np

from . import budget
from .words import BinaryWord, is_prefix_normal_naive, parse_word

__all__ = [
    "BoundValues",
    "DensityTable",
    "EnumRecord",
    "FAMILIES",
    "bound_values",
    "closed_form_ext",
    "count_tables",
    "crit_count",
    "density_table",
    "enumerate_pn",
    "ext10_bijection",
    "ext_count",
    "ext_count_density",
    "ext_lang_distinct",
    "ext_table",
    "family_word",
    "fibonacci",
    "gf_coefficient",
    "gf_series",
    "pnw_count",
    "pnw_density",
    "product_formula",
    "ratio_series",
    "verify_ext10_bijection",
]


# -- pure-Python enumeration -----------------------------------------------------


def _one_child_ok(sums: list[int], m: int) -> bool:
    total = sums[m] + 1
    return all(total - sums[m + 1 - length] <= sums[length] for length in range(1, m + 1))


def _walk(n: int, prefix: list[int]) -> Iterator[str]:
    """Prefix normal words of length n extending ``prefix``, in lexicographic order."""
    if len(prefix) > n:
        return
    sums = [0]
    for b in prefix:
        sums.append(sums[-1] + b)
    word = list(prefix)

    def rec(m: int) -> Iterator[str]:
        if m == n:
            yield "".join("1" if b else "0" for b in word)
            return
        word.append(0)
        sums.append(sums[m])
        yield from rec(m + 1)
        sums.pop()
        word.pop()
        if _one_child_ok(sums, m):
            word.append(1)
            sums.append(sums[m] + 1)
            yield from rec(m + 1)
            sums.pop()
            word.pop()

    yield from rec(len(prefix))


def enumerate_pn(
    n: int, visitor: Callable[[BinaryWord], None] | None = None, prefix: str | BinaryWord = ""
) -> Iterator[BinaryWord] | int:
    """All prefix normal words of length n (starting with ``prefix``), lexicographically.

    Without a visitor this is a generator; with one, each word is passed to it and the
    number of words visited is returned.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    start = parse_word(prefix)
    if not is_prefix_normal_naive(start)[0]:
        words: Iterator[BinaryWord] = iter(())
    else:
        words = (BinaryWord(text) for text in _walk(n, [int(b) for b in start]))
    if visitor is None:
        return words
    count = 0
    for w in words:
        visitor(w)
        count += 1
    return count


# -- compiled counting -------------------------------------------------------------


def _subtree(root: np.ndarray, max_len: int) -> tuple[np.ndarray, np.ndarray]:
    from ._kernels import count_subtree

    counts = np.zeros((max_len + 1, max_len + 1), dtype=np.int64)
    crit = np.zeros(max_len + 1, dtype=np.int64)
    count_subtree(root.astype(np.uint8), max_len, counts, crit)
    return counts, crit


def count_tables(max_n: int, workers: int = 1, split_depth: int = 12) -> tuple[np.ndarray, np.ndarray]:
    """``(counts, crit)`` with ``counts[m, d] = pnw(m, d)`` and ``crit[m]`` for m <= max_n.

    With ``workers > 1`` the tree is cut at ``split_depth`` and the subtrees are
    counted concurrently; totals do not depend on the worker count.
    """
    if max_n < 0:
        raise ValueError("max_n must be non-negative")
    budget.check(budget.ENUM_MAX_N, max_n, "enumeration")
    with _cache_lock:
        cached = _cache.get("tables")
        if cached is None or len(cached[1]) <= max_n:
            cached = _cache["tables"] = _count_tables(max_n, max(1, workers), split_depth)
    counts, crit = cached
    return counts[: max_n + 1, : max_n + 1], crit[: max_n + 1]


# the deepest tables computed so far; shallower requests are slices of them
_cache: dict[str, tuple[np.ndarray, np.ndarray]] = {}
_cache_lock = threading.Lock()


def _count_tables(max_n: int, workers: int, split_depth: int) -> tuple[np.ndarray, np.ndarray]:
    if workers == 1 or max_n <= split_depth:
        counts, crit = _subtree(np.zeros(0, dtype=np.uint8), max_n)
    else:
        counts, crit = _subtree(np.zeros(0, dtype=np.uint8), split_depth - 1)
        counts = np.pad(counts, ((0, max_n - split_depth + 1), (0, max_n - split_depth + 1)))
        crit = np.pad(crit, (0, max_n - split_depth + 1))
        roots = [w.bits for w in enumerate_pn(split_depth)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for part_counts, part_crit in pool.map(lambda r: _subtree(r, max_n), roots):
                counts += part_counts
                crit += part_crit
    counts.setflags(write=False)
    crit.setflags(write=False)
    return counts, crit


def pnw_count(n: int) -> int:
    counts, _ = count_tables(n)
    return int(counts[n].sum())


def pnw_density(n: int, d: int) -> int:
    if not 0 <= d <= n:
        return 0
    counts, _ = count_tables(n)
    return int(counts[n, d])


def crit_count(n: int) -> int:
    """Number of prefix normal words w of length n for which w1 is not prefix normal."""
    _, crit = count_tables(n)
    return int(crit[n])


@dataclass(frozen=True)
class DensityTable:
    n: int
    counts: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.counts)


def density_table(n: int) -> DensityTable:
    counts, _ = count_tables(n)
    return DensityTable(n, tuple(int(c) for c in counts[n, : n + 1]))


# -- generating functions ------------------------------------------------------------

# f_d(x) = x^d * numerator / prod(1 - x^a for a in denominator)
_GF = {
    0: ((1,), (1,)),
    1: ((1,), (1,)),
    2: ((1,), (1, 1)),
    3: ((1,), (2, 1, 1)),
    4: ((1,), (3, 1, 1, 1)),
    5: ((1, 1, 1), (4, 2, 2, 1, 1)),
    6: ((1, 1, 1, 1), (5, 3, 2, 1, 1, 1)),
}


def gf_series(d: int, terms: int) -> list[int]:
    """Coefficients of x^0 .. x^(terms-1) in the density-d generating function, d <= 6."""
    if d not in _GF:
        raise ValueError(f"no generating function for density {d} (only 0..6)")
    numerator, denominator = _GF[d]
    coeffs = [0] * terms
    for i, c in enumerate(numerator):
        if d + i < terms:
            coeffs[d + i] = c
    for a in denominator:
        # multiply by 1/(1 - x^a): running sum with stride a
        for i in range(a, terms):
            coeffs[i] += coeffs[i - a]
    return coeffs


def gf_coefficient(d: int, n: int) -> int:
    if n < 0:
        raise ValueError("n must be non-negative")
    return gf_series(d, n + 1)[n]


# -- extensions ------------------------------------------------------------------------


def ext_table(w: BinaryWord | str, m: int) -> np.ndarray:
    """``table[d]`` = number of w' of length m with ww' prefix normal of density d."""
    w = parse_word(w)
    total = len(w) + m
    if m < 0:
        raise ValueError("m must be non-negative")
    budget.check(budget.ENUM_MAX_N, total, "extension count")
    if not is_prefix_normal_naive(w)[0]:
        return np.zeros(total + 1, dtype=np.int64)
    counts, _ = _subtree(w.bits, total)
    return counts[total]


def ext_count(w: BinaryWord | str, m: int) -> int:
    return int(ext_table(w, m).sum())


def ext_count_density(w: BinaryWord | str, m: int, d: int) -> int:
    table = ext_table(w, m)
    return int(table[d]) if 0 <= d < len(table) else 0


def fibonacci(k: int) -> int:
    a, b = 0, 1
    for _ in range(k):
        a, b = b, a + b
    return a


@dataclass(frozen=True)
class _Family:
    word: Callable[[int], str]
    formula: Callable[[int], int]
    min_n: int
    parity: int | None = None


# min_n is the smallest n where the formula holds; below it the word degenerates
FAMILIES: dict[str, _Family] = {
    "0^n": _Family(lambda n: "0" * n, lambda n: 1, 0),
    "1^n": _Family(lambda n: "1" * n, lambda n: 2**n, 0),
    "1^{n-1}0": _Family(lambda n: "1" * (n - 1) + "0", lambda n: 2**n - 1, 1),
    "1^{n-2}01": _Family(lambda n: "1" * (n - 2) + "01", lambda n: 2**n - 5, 3),
    "1^{n-2}00": _Family(lambda n: "1" * (n - 2) + "00", lambda n: 2**n - (n + 1), 2),
    "(10)^{n/2}": _Family(lambda n: "10" * (n // 2), lambda n: fibonacci(n + 2), 0, parity=0),
    "(10)^{(n-1)/2}1": _Family(lambda n: "10" * (n // 2) + "1", lambda n: fibonacci(n + 1), 3, parity=1),
    "10^{n-2}1": _Family(lambda n: "1" + "0" * (n - 2) + "1", lambda n: 3, 3),
    "10^{n-1}": _Family(lambda n: "1" + "0" * (n - 1), lambda n: n + 1, 1),
}


def _family(family: str, n: int) -> _Family:
    try:
        fam = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; known: {', '.join(FAMILIES)}") from None
    if fam.parity is not None and n % 2 != fam.parity:
        raise ValueError(f"family {family} needs {'even' if fam.parity == 0 else 'odd'} n, got {n}")
    if n < fam.min_n:
        raise ValueError(f"family {family} formula holds for n >= {fam.min_n}, got {n}")
    return fam


def family_word(family: str, n: int) -> BinaryWord:
    return BinaryWord(_family(family, n).word(n))


def closed_form_ext(family: str, n: int) -> int:
    """ext(w, n) for the length-n member w of a named family, by its closed formula."""
    return _family(family, n).formula(n)


def ext10_bijection(w: BinaryWord) -> BinaryWord:
    """Insert a 0 before every 1 of ``w`` except the first."""
    w = parse_word(w)
    if len(w) == 0 or w.bits[0] != 1:
        raise ValueError("the bijection maps words starting with 1")
    text = str(w)
    return BinaryWord("1" + text[1:].replace("1", "01"))


def verify_ext10_bijection(n: int, d: int, materialize: bool = False) -> bool:
    """Check ext(10, n+d-3, d) == pnw(n, d); optionally also check the explicit bijection."""
    if not 1 <= d <= n:
        raise ValueError("need 1 <= d <= n")
    m = n + d - 3
    if m < 0:
        # n = d = 1: the single target word is the length-1 prefix of 10
        right = 1 if d == 1 else 0
    else:
        right = ext_count_density("10", m, d)
    left = pnw_density(n, d)
    if left != right:
        return False
    return _bijection_ok(n, d) if materialize else True


def _bijection_ok(n: int, d: int) -> bool:
    sources = [w for w in enumerate_pn(n) if w.density == d and (d == 0 or w.bits[0] == 1)]
    images = {str(ext10_bijection(w)) for w in sources}
    if len(images) != len(sources):
        return False
    if n + d - 1 < 2:
        return images == {"1"}
    targets = {str(w) for w in enumerate_pn(n + d - 1, prefix="10") if w.density == d}
    return images == targets


def ext_lang_distinct(v: BinaryWord | str, w: BinaryWord | str, max_m: int = 20) -> str | None:
    """Shortest x (length 1..max_m) with exactly one of vx, wx prefix normal, or None.

    Only extensions keeping at least one of vx, wx prefix normal are explored, which
    is enough because both languages are prefix closed.
    """
    v, w = parse_word(v), parse_word(w)
    for u in (v, w):
        if len(u) == 0 or u.bits[0] != 1 or not is_prefix_normal_naive(u)[0]:
            raise ValueError(f"{u} must be prefix normal and start with 1")
    if v == w:
        raise ValueError("the two words must differ")

    def sums_of(u: BinaryWord) -> list[int]:
        return [int(x) for x in u.prefix_sums]

    # frontier entries: (x, sums of vx or None, sums of wx or None)
    frontier = [("", sums_of(v), sums_of(w))]
    for _ in range(max_m):
        nxt = []
        for x, sv, sw in frontier:
            for bit in (0, 1):
                cv = _extend(sv, bit)
                cw = _extend(sw, bit)
                if cv is None and cw is None:
                    continue
                y = x + str(bit)
                if (cv is None) != (cw is None):
                    return y
                nxt.append((y, cv, cw))
        frontier = nxt
    return None


def _extend(sums: list[int] | None, bit: int) -> list[int] | None:
    if sums is None:
        return None
    m = len(sums) - 1
    if bit and not _one_child_ok(sums, m):
        return None
    return sums + [sums[m] + bit]


# -- extension-critical ratios ------------------------------------------------------------


@dataclass(frozen=True)
class EnumRecord:
    n: int
    pnw: int
    crit: int

    @property
    def ratio(self) -> float:
        return self.crit / self.pnw

    @property
    def exact_ratio(self) -> Fraction:
        return Fraction(self.crit, self.pnw)

    @property
    def scaled_ratio(self) -> float:
        return self.ratio * self.n / math.log(self.n)


def ratio_series(max_n: int, workers: int = 1, min_n: int = 2) -> list[EnumRecord]:
    counts, crit = count_tables(max_n, workers=workers)
    totals = counts.sum(axis=1)
    return [EnumRecord(n, int(totals[n]), int(crit[n])) for n in range(min_n, max_n + 1)]


def product_formula(records: list[EnumRecord], n: int) -> Fraction:
    """pnw(n) = 2 * prod_{i=1}^{n-1} (2 - crit(i)/pnw(i)), in exact arithmetic.

    ``records`` must cover every i in 1..n-1.
    """
    by_n = {r.n: r for r in records}
    value = Fraction(2)
    for i in range(1, n):
        value *= 2 - by_n[i].exact_ratio
    return value


# -- asymptotic bound expressions --------------------------------------------------------


@dataclass(frozen=True)
class BoundValues:
    n: int
    upper_k: int
    upper_ratio_bound: Fraction
    lower_k: int
    lower_count_estimate: float


def bound_values(n: int) -> BoundValues:
    """Evaluate the two bound expressions at n.

    Upper: ``(1 - 2^-k)^ceil(n/k) + 2^-k`` with k the largest integer such that
    ``2^k k^2 ln 2 <= n`` (at least 1), kept exact; it bounds pnw(n)/2^n.
    Lower: ``binom(2k, k)^((n - 4k)/(2k))`` with ``k = floor(sqrt(n ln n))``; the
    number of block-game outcomes it counts, real-valued when 2k does not divide n-4k.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    k = 1
    while 2 ** (k + 1) * (k + 1) ** 2 * math.log(2) <= n:
        k += 1
    half = Fraction(1, 2**k)
    upper = (1 - half) ** -(-n // k) + half
    lk = max(1, math.floor(math.sqrt(n * math.log(n))))
    try:
        lower = math.comb(2 * lk, lk) ** ((n - 4 * lk) / (2 * lk))
    except OverflowError:
        lower = math.inf
    return BoundValues(n, k, upper, lk, lower)
