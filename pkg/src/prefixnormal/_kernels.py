"""Compiled inner loops for the exhaustive sweeps.

These mirror pure-Python routes elsewhere in the package, which the tests use
to cross-check them on small lengths.
"""

from __future__ import annotations

import numpy as np
from numba import config, njit, prange

# the bundled TBB is too old for numba; skip it rather than warn
config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]


@njit(cache=True, nogil=True)
def append_one_ok(sums, m):
    """Is w1 prefix normal, given prefix normal w of length m with prefix sums ``sums``?

    Only windows ending at the new last symbol can break the property.
    """
    total = sums[m] + 1
    for length in range(1, m + 1):
        if total - sums[m + 1 - length] > sums[length]:
            return False
    return True


@njit(cache=True, nogil=True)
def count_subtree(root, max_len, counts, crit):
    """Walk the tree of prefix normal words below ``root`` down to ``max_len``.

    ``counts[m, d]`` is incremented for every prefix normal word of length m and
    density d in the subtree (root included); ``crit[m]`` for every such word whose
    extension by 1 is not prefix normal. ``root`` must itself be prefix normal.
    """
    r = root.shape[0]
    sums = np.zeros(max_len + 2, dtype=np.int64)
    for i in range(r):
        sums[i + 1] = sums[i] + root[i]
    state = np.zeros(max_len + 2, dtype=np.int8)
    counts[r, sums[r]] += 1
    m = r
    while m >= r:
        st = state[m]
        if st == 0:
            state[m] = 1
            if m < max_len:
                sums[m + 1] = sums[m]
                m += 1
                counts[m, sums[m]] += 1
                state[m] = 0
        elif st == 1:
            state[m] = 2
            if not append_one_ok(sums, m):
                crit[m] += 1
            elif m < max_len:
                sums[m + 1] = sums[m] + 1
                m += 1
                counts[m, sums[m]] += 1
                state[m] = 0
        else:
            m -= 1


@njit(cache=True, nogil=True)
def _filters(x, n):
    """Phase-I filters on the word whose i-th symbol is bit n-1-i of ``x``.

    Returns 0 if rejected by the run filter, 1 if rejected by the block filter,
    2 if it survives both.
    """
    # leading block
    i = n - 1
    s1 = 0
    while i >= 0 and (x >> i) & 1:
        s1 += 1
        i -= 1
    t1 = 0
    while i >= 0 and not (x >> i) & 1:
        t1 += 1
        i -= 1
    prev_s = s1
    prev_t = t1
    block_reject = False
    while i >= 0:
        s = 0
        while i >= 0 and (x >> i) & 1:
            s += 1
            i -= 1
        t = 0
        while i >= 0 and not (x >> i) & 1:
            t += 1
            i -= 1
        if s > s1:
            return 0
        if prev_s + prev_t + s <= s1 + t1 and prev_s + s > s1:
            block_reject = True
        prev_s = s
        prev_t = t
    return 1 if block_reject else 2


@njit(cache=True, parallel=True)
def survivor_counts(n):
    """(survivors of the run filter, survivors of both filters) over all 2^n words."""
    total = 1 << n
    chunk = 1 << max(0, n - 8)
    parts = total // chunk
    trivial = 0
    both = 0
    for p in prange(parts):
        a = 0
        b = 0
        for x in range(p * chunk, (p + 1) * chunk):
            verdict = _filters(x, n)
            if verdict >= 1:
                a += 1
            if verdict == 2:
                b += 1
        trivial += a
        both += b
    return trivial, both
