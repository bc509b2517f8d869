import itertools
import random
import sys

import pytest


def all_words(n):
    """Every binary string of length n, in lexicographic order."""
    return ["".join(t) for t in itertools.product("01", repeat=n)]


def brute_f(s):
    """F by listing every substring; independent of the library's window scans."""
    n = len(s)
    return [0] + [max(s[i : i + k].count("1") for i in range(n - k + 1)) for k in range(1, n + 1)]


def brute_min(s):
    n = len(s)
    return [0] + [min(s[i : i + k].count("1") for i in range(n - k + 1)) for k in range(1, n + 1)]


def brute_pn(s):
    return all(f == s[:k].count("1") for k, f in enumerate(brute_f(s)))


def brute_parikh(s):
    """All (ones, zeros) pairs realised by some substring, the empty one included."""
    pairs = {(0, 0)}
    for i in range(len(s)):
        for j in range(i + 1, len(s) + 1):
            ones = s[i:j].count("1")
            pairs.add((ones, j - i - ones))
    return pairs


def random_word(rng, n, p=0.5):
    return "".join("1" if rng.random() < p else "0" for _ in range(n))


@pytest.fixture
def rng():
    return random.Random(20141018)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(module.RESULTS):
        terminalreporter.write_line(line)
