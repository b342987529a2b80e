import itertools

import pytest
from hypothesis import settings

from schubpatch.permcore import Permutation, all_permutations, product_of_word, reduced_word

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def P(s: str) -> Permutation:
    return Permutation.parse(s)


def subword_leq(v: Permutation, w: Permutation) -> bool:
    """v <= w iff v is the product of a reduced subword of a reduced word for w."""
    word = reduced_word(w)
    for k in range(len(word) + 1):
        for idx in itertools.combinations(range(len(word)), k):
            sub = [word[i] for i in idx]
            p = product_of_word(sub, w.n)
            if p.length() == len(sub) and p == v:
                return True
    return False


@pytest.fixture(scope="session")
def s4():
    return list(all_permutations(4))


# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict = {}


def acceptance_line(k: int) -> str:
    ok, detail = ACCEPTANCE[k]
    return f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(acceptance_line(k))
