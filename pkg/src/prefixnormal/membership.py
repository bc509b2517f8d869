"""Membership testers for prefix normal words.

* two linear-time rejection filters (longest 1-run, and the ``1^i 0^j 1^k`` block test),
* the v-sequence tester, which walks from ``1^d 0^(n-d)`` to ``w`` one swap at a time
  and decides each step with a single critical-length check,
* the doubling variant, running the v-sequence tester on prefixes of length 2, 4, 8, ...,
* ``member_pn``, filters followed by an exact phase,
* Phase-I survivor ratios over all words of a length.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator

import numpy as np

from . import budget
from .index import is_prefix_normal_pnf
from .words import (
    BinaryWord,
    RunLengthForm,
    Witness,
    is_prefix_normal_gaps,
    is_prefix_normal_naive,
    parse_word,
    to_gap_form,
    to_run_length,
)

__all__ = [
    "FilterStats",
    "InconsistentStateError",
    "METHODS",
    "TestOutcome",
    "VSeqStep",
    "childpnf_check",
    "filter_blocks",
    "filter_run_of_ones",
    "member_pn",
    "survivor_count_reference",
    "survivor_ratio",
    "test_doubling",
    "test_vseq",
    "tester",
    "vseq_words",
]

TRIVIAL = "trivial-case"
RUN_FILTER = "run-filter"
BLOCK_FILTER = "block-filter"
VSEQ = "vseq"
NAIVE = "naive"


class InconsistentStateError(AssertionError):
    pass


@dataclass(frozen=True)
class VSeqStep:
    """One row of the v-sequence run: the current word and the data used to test its successor."""

    word: str
    gamma: str
    k: int
    f_k: int
    z: int
    f_gamma: tuple[int, ...]
    passed: bool


@dataclass(frozen=True)
class TestOutcome:
    accepted: bool
    decided_by: str
    witness: Witness | None = None
    steps: tuple[VSeqStep, ...] = field(default=(), repr=False)
    stage_length: int | None = None

    __test__ = False  # not a pytest class

    def __post_init__(self):
        if not self.accepted and self.witness is None:
            raise ValueError("a rejection needs a witness")

    def __bool__(self) -> bool:
        return self.accepted


def _trivial(w: BinaryWord) -> TestOutcome | None:
    d = w.density
    if d == 0 or d == len(w):
        return TestOutcome(True, TRIVIAL)
    return None


# -- Phase I filters ---------------------------------------------------------


def _block_starts(rl: RunLengthForm) -> list[int]:
    starts, pos = [], 0
    for s, t in rl.blocks:
        starts.append(pos)
        pos += s + t
    return starts


def filter_run_of_ones(w: BinaryWord, rl: RunLengthForm | None = None) -> Witness | None:
    """Reject (return a witness) if some run of ones is longer than the leading one.

    Returns ``None`` when the word passes.
    """
    rl = to_run_length(w) if rl is None else rl
    if not rl.blocks:
        return None
    lead = rl.blocks[0][0]
    pos = 0
    for s, t in rl.blocks:
        if s > lead:
            return Witness(pos, s, s, int(w.prefix_sums[s]))
        pos += s + t
    return None


def filter_blocks(rl: RunLengthForm, w: BinaryWord | None = None) -> Witness | None:
    """Reject if two neighbouring blocks give a short substring ``1^a 0^b 1^c`` with more
    ones than the critical prefix ``1^s1 0^t1``.

    Returns ``None`` when the word passes. The witness prefix count needs the word;
    it is rebuilt from ``rl`` when ``w`` is not given.
    """
    blocks = rl.blocks
    if len(blocks) < 2:
        return None
    s1, t1 = blocks[0]
    starts = _block_starts(rl)
    for i in range(1, len(blocks)):
        a, b = blocks[i - 1]
        c = blocks[i][0]
        if a + b + c <= s1 + t1 and a + c > s1:
            w = rl.word() if w is None else w
            length = a + b + c
            return Witness(starts[i - 1], length, a + c, int(w.prefix_sums[length]))
    return None


# -- v-sequence tester -------------------------------------------------------


def vseq_words(w: BinaryWord) -> Iterator[BinaryWord]:
    """The chain v0 = 1^d 0^(n-d), v1, ..., w, built literally by the swap rule.

    Step i exchanges the last symbol of the leading block of d-i ones with the
    rightmost position where the current word and ``w`` differ. This is independent
    of the position bookkeeping in :func:`test_vseq` and serves to check it.
    """
    w = parse_word(w)
    n, d = len(w), w.density
    target = w.bits
    v = np.zeros(n, dtype=np.uint8)
    v[:d] = 1
    i = 0
    while True:
        yield BinaryWord(v.copy())
        mismatch = np.flatnonzero(v != target)
        if not mismatch.size:
            return
        j = int(mismatch[-1])
        lead = d - i - 1
        v[lead], v[j] = v[j], v[lead]
        i += 1


def childpnf_check(
    s: int,
    t: int,
    i: int,
    gamma: BinaryWord,
    f_gamma: np.ndarray,
    z: int | None = None,
    debug: bool = False,
) -> bool:
    """Is ``1^(s-1) 0^i 1 0^(t-i) gamma`` prefix normal, given that ``1^s 0^t gamma`` is?

    Only the critical length ``k = s - 1 + i`` of the new word is examined. A window
    of length k with more than s-1 ones either lies inside gamma, which ``f_gamma``
    (F of gamma, indexed by length, saturating past ``len(gamma)``) answers, or starts
    at the moved 1, whose count is ``z`` plus one; ``z`` is the number of ones in the
    first ``k - 1 - (t - i)`` symbols of gamma and is recomputed when not supplied.
    With ``debug`` the supplied ``f_gamma[k]`` and ``z`` are recounted from gamma.
    """
    if not (s >= 1 and 1 <= i <= t):
        raise ValueError(f"need s >= 1 and 1 <= i <= t, got s={s}, t={t}, i={i}")
    k = s - 1 + i
    sums = gamma.prefix_sums
    g = len(gamma)
    reach = min(max(k - 1 - (t - i), 0), g)
    if z is None:
        z = int(sums[reach])
    f_k = int(f_gamma[min(k, len(f_gamma) - 1)])
    if debug:
        expected_f = 0
        span = min(k, g)
        if span:
            expected_f = int((sums[span:] - sums[: g + 1 - span]).max())
        if f_k != expected_f or z != int(sums[reach]):
            raise InconsistentStateError(
                f"auxiliary data out of sync: F={f_k} (want {expected_f}), z={z} (want {int(sums[reach])})"
            )
    return f_k <= s - 1 and z + 1 <= s - 1


def test_vseq(w: BinaryWord, trace: bool = False, debug: bool = False) -> TestOutcome:
    """Decide prefix normality along the v-sequence.

    The current word is ``1^S 0^T gamma`` where gamma is the suffix of ``w`` starting
    at its (S+1)-th one. Each step moves the last one of the leading block to the
    position ``q`` of the S-th one of ``w``; the successor's critical length is then
    ``q``. F of gamma is kept for lengths up to the next critical length only, and is
    extended by the single new prefix window each time gamma grows to the left.
    """
    w = parse_word(w)
    trivial = _trivial(w)
    if trivial is not None:
        return trivial
    n, d = len(w), w.density
    sums = w.prefix_sums
    ones = np.flatnonzero(w.bits)
    lead = int(np.argmin(w.bits)) if w.bits[0] else 0  # leading run s of w
    f_gamma = np.zeros(n + 1, dtype=np.int64)
    g = n  # start of gamma in w
    steps = []
    for S in range(d, lead, -1):
        q = int(ones[S - 1])
        k = q  # critical length of the successor
        reach = min(max(q + k - g, 0), n - g)
        z = int(sums[g + reach] - sums[g])
        f_k = int(f_gamma[k])
        if debug:
            gamma = w[g:]
            childpnf_check(S, g - S, q - S + 1, gamma, f_gamma, z, debug=True)
        ok = f_k <= S - 1 and z + 1 <= S - 1
        if trace:
            current = np.zeros(n, dtype=np.uint8)
            current[:S] = 1
            current[g:] = w.bits[g:]
            steps.append(
                VSeqStep(
                    str(BinaryWord._wrap(current)),
                    str(w[g:]),
                    k,
                    f_k,
                    z,
                    tuple(int(x) for x in f_gamma[1 : k + 1]),
                    ok,
                )
            )
        if not ok:
            if f_k > S - 1:
                witness = _densest_window(sums, g, k, S - 1)
            else:
                span = min(k, n - q)
                witness = Witness(q, span, int(sums[q + span] - sums[q]), int(sums[span]))
            if debug and not witness.holds_for(w):
                raise InconsistentStateError(f"witness {witness} does not hold for {w}")
            return TestOutcome(False, VSEQ, witness, tuple(steps))
        # gamma grows to start at q; only the window starting at q is new
        g = q
        nxt = int(ones[S - 2]) if S >= 2 else 0
        if nxt:
            idx = np.minimum(np.arange(q + 1, q + nxt + 1), n)
            np.maximum(f_gamma[1 : nxt + 1], sums[idx] - sums[q], out=f_gamma[1 : nxt + 1])
    return TestOutcome(True, VSEQ, None, tuple(steps))


def _densest_window(sums: np.ndarray, g: int, k: int, bound: int) -> Witness:
    """A window of length <= k inside w[g:] with more than ``bound`` ones."""
    n = len(sums) - 1
    span = min(k, n - g)
    windows = sums[g + span :] - sums[g : n + 1 - span]
    start = g + int(np.argmax(windows))
    ones = int(sums[start + span] - sums[start])
    assert ones > bound
    return Witness(start, span, ones, int(sums[span]))


def test_doubling(w: BinaryWord, debug: bool = False) -> TestOutcome:
    """Run :func:`test_vseq` on the prefixes of length 2, 4, 8, ... and finally n."""
    w = parse_word(w)
    n = len(w)
    length = 2
    while length < n:
        outcome = test_vseq(w[:length], debug=debug)
        if not outcome.accepted:
            return TestOutcome(False, outcome.decided_by, outcome.witness, stage_length=length)
        length *= 2
    outcome = test_vseq(w, debug=debug)
    return TestOutcome(outcome.accepted, outcome.decided_by, outcome.witness, stage_length=n)


# -- combined tester ---------------------------------------------------------


def member_pn(w: BinaryWord, phase2: str = VSEQ) -> TestOutcome:
    """Two-phase membership: the two filters, then an exact test (v-sequence or naive)."""
    w = parse_word(w)
    trivial = _trivial(w)
    if trivial is not None:
        return trivial
    rl = to_run_length(w)
    witness = filter_run_of_ones(w, rl)
    if witness is not None:
        return TestOutcome(False, RUN_FILTER, witness)
    witness = filter_blocks(rl, w)
    if witness is not None:
        return TestOutcome(False, BLOCK_FILTER, witness)
    if phase2 == VSEQ:
        return test_vseq(w)
    if phase2 == NAIVE:
        return _naive(w)
    raise ValueError(f"unknown phase-II method {phase2!r}")


def _naive(w: BinaryWord) -> TestOutcome:
    trivial = _trivial(w)
    if trivial is not None:
        return trivial
    ok, witness = is_prefix_normal_naive(w)
    return TestOutcome(ok, NAIVE, witness)


def _gaps(w: BinaryWord) -> TestOutcome:
    trivial = _trivial(w)
    if trivial is not None:
        return trivial
    if w.bits[0] == 0:
        return TestOutcome(False, "gaps", _first_one(w))
    if is_prefix_normal_gaps(to_gap_form(w)):
        return TestOutcome(True, "gaps")
    return TestOutcome(False, "gaps", is_prefix_normal_naive(w)[1])


def _pnf_eq(w: BinaryWord) -> TestOutcome:
    if is_prefix_normal_pnf(w):
        return TestOutcome(True, "pnf-eq")
    return TestOutcome(False, "pnf-eq", is_prefix_normal_naive(w)[1])


def _first_one(w: BinaryWord) -> Witness:
    return Witness(int(np.argmax(w.bits)), 1, 1, 0)


METHODS: dict[str, Callable[[BinaryWord], TestOutcome]] = {
    "naive": _naive,
    "vseq": test_vseq,
    "doubling": test_doubling,
    "member": member_pn,
    "gaps": _gaps,
    "pnf-eq": _pnf_eq,
}


def tester(method: str) -> Callable[[BinaryWord], TestOutcome]:
    try:
        return METHODS[method]
    except KeyError:
        raise ValueError(f"unknown method {method!r}; choose from {', '.join(METHODS)}") from None


# -- Phase-I survivor ratios ---------------------------------------------------


@dataclass(frozen=True)
class FilterStats:
    n: int
    phase: str
    survivors: int

    @property
    def total(self) -> int:
        return 1 << self.n

    @property
    def ratio(self) -> float:
        return self.n * self.survivors / self.total

    def rounded(self) -> str:
        return f"{self.ratio:.3f}"


PHASES = ("trivial-only", "both-filters")


def survivor_ratio(n: int, phase: str = "both-filters") -> FilterStats:
    """Count the words of length n that pass Phase I and report n*M/2^n."""
    if phase not in PHASES:
        raise ValueError(f"phase must be one of {PHASES}")
    if n < 0:
        raise ValueError("n must be non-negative")
    budget.check(budget.SWEEP_MAX_N, n, "survivor sweep")
    from ._kernels import survivor_counts

    trivial, both = survivor_counts(n)
    return FilterStats(n, phase, int(trivial if phase == "trivial-only" else both))


def survivor_count_reference(n: int, phase: str = "both-filters") -> int:
    """Same count as :func:`survivor_ratio`, through the word-level filters (small n only)."""
    count = 0
    for x in range(1 << n):
        w = BinaryWord(format(x, f"0{n}b") if n else "")
        rl = to_run_length(w)
        if filter_run_of_ones(w, rl) is not None:
            continue
        if phase == "both-filters" and filter_blocks(rl, w) is not None:
            continue
        count += 1
    return count
