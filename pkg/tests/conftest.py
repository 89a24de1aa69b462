from __future__ import annotations

from bisect import bisect_right
from collections import defaultdict
from itertools import accumulate

import pytest

from nuforge.language import TypeTag
from nuforge.normalize import normalize
from nuforge.words import GeneralMorphism, fixed_point_letters, fixed_point_prefix, word_from_str

TM = "a->ab;b->ba"
FIB = "a->ab;b->a"
SHIFT1 = "a->aab;b->abb"
PSI1 = "a->baa;b->bab"
INSEP = "a->aabab;b->bba"
NONPRIM = "a->aaba;b->b"
SHIFT5 = "a->ab;b->babab"

CORPUS = [TM, FIB, SHIFT1, INSEP, NONPRIM, SHIFT5]


def W(s: str):
    return word_from_str(s)


def S(word) -> str:
    return "".join("ab"[x] for x in word)


def morph(a: str, b: str) -> GeneralMorphism:
    return GeneralMorphism.binary(a, b)


def brute_factors(m: GeneralMorphism, length: int, n: int = 50_000) -> set:
    x = min(fixed_point_letters(m))
    w = fixed_point_prefix(m, x, n)
    return {w[i:i + length] for i in range(n - length)}


def brute_types(original: GeneralMorphism, length: int, n: int = 30_000) -> dict:
    """Types of every length-``length`` factor read off cut positions in a long prefix.

    Uses w = σ^p(ψ(w)) for the prepared ψ: position i of w sits at offset
    i + p − |ψ(w[:k])| inside the image of w[k].
    """
    tr = normalize(original)
    psi, p = tr.prepared, tr.shift
    x = min(fixed_point_letters(original))
    w = fixed_point_prefix(original, x, n)
    cum = [0, *accumulate(len(psi.images[c]) for c in w)]
    out = defaultdict(set)
    for i in range(n // 4, n // 2):
        k = bisect_right(cum, i + p) - 1
        out[w[i:i + length]].add(TypeTag(w[k], i + p - cum[k]))
    return out


@pytest.fixture
def tm():
    return morph("ab", "ba")


def pytest_terminal_summary(terminalreporter):
    rows = []
    for outcome in ("passed", "failed", "error", "skipped"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" in nodeid and rep.when in ("call", "setup"):
                rows.append((nodeid.split("::")[-1], "PASS" if outcome == "passed" else "FAIL"))
    if rows:
        terminalreporter.section("acceptance criteria")
        for name, status in sorted(set(rows)):
            terminalreporter.write_line(f"{name}: {status}")
