from __future__ import annotations

import random

import pytest
from hypothesis import HealthCheck, assume, settings
from hypothesis import strategies as st

from cechpattern.cech import Cochain0, Cochain1, LimitClass0, LimitClass1
from cechpattern.group import ball, letters, reduce
from cechpattern.pattern import PatternError, validate_pattern
from cechpattern.whitehead import components, wh_subtree

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much]
)
settings.load_profile("default")


def word_st(rank: int, max_len: int = 8, min_len: int = 0):
    return st.lists(st.sampled_from(letters(rank)), min_size=min_len, max_size=max_len).map(reduce)


@st.composite
def pattern_st(draw, ranks=(2, 3), max_len: int = 8, max_words: int = 2):
    n = draw(st.sampled_from(ranks))
    ws = draw(st.lists(st.lists(st.sampled_from(letters(n)), min_size=1, max_size=max_len), min_size=1, max_size=max_words))
    try:
        return validate_pattern(n, [tuple(w) for w in ws])
    except PatternError:
        assume(False)


@st.composite
def subtree_st(draw, rank: int, max_size: int = 8):
    """A random connected subtree grown from e."""
    from cechpattern.group import Subtree, step

    verts = {()}
    for _ in range(draw(st.integers(0, max_size - 1))):
        v = draw(st.sampled_from(sorted(verts)))
        x = draw(st.sampled_from(letters(rank)))
        verts.add(step(v, x))
    return Subtree(frozenset(verts))


def random_class0(P, X, rng: random.Random) -> LimitClass0:
    comps = components(wh_subtree(P, X))
    labels = {c: rng.randint(-3, 3) for c in comps}
    return LimitClass0(P, Cochain0(X, {a: n for c, n in labels.items() for a in c if n}))


def random_cochain1(P, X, rng: random.Random, density: float = 0.5, bound: int = 3) -> LimitClass1:
    edges = wh_subtree(P, X).nerve.sorted_edges()
    vals = {}
    for e in edges:
        if rng.random() < density:
            n = rng.randint(-bound, bound)
            if n:
                vals[e] = n
    return LimitClass1(P, Cochain1(X, vals))


@pytest.fixture
def figure1():
    return validate_pattern(2, ["aabab"])


@pytest.fixture
def axis():
    return validate_pattern(2, ["a"])


@pytest.fixture
def ball2():
    return ball(2, 2)


ACCEPTANCE: dict = {}


def record(n: int, name: str, ok: bool, detail: str) -> None:
    line = f"ACCEPTANCE {n:02d} {name}: {'PASS' if ok else 'FAIL'} ({detail})"
    ACCEPTANCE[n] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
