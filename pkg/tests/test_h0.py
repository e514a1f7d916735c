from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cechpattern.cech import LimitClass0
from cechpattern.group import E, EMPTY, ball, hull, multiply, parse_word, subtree, word_key
from cechpattern.h0 import (
    CONNECTED,
    DISCONNECTED,
    INCONCLUSIVE,
    ConnectivityPolicy,
    NotSplittable,
    Symbolic,
    ZFElement,
    apply_p,
    bounds,
    evaluation_matrix0,
    generators0,
    indicator0,
    is_connected,
    is_trivial_module_z,
    minimize0,
    presentation0,
    relators0,
    split0,
    support0,
    translates_in_ball,
)
from cechpattern.pattern import validate_pattern
from cechpattern.whitehead import components, wh_subtree
from cechpattern.zlinalg import invariant_factors, solve_linear
from conftest import pattern_st, random_class0, word_st

w = parse_word
SINGLE = subtree([E])


def axis_segment(P, length):
    word = P.words[0]
    pts, g = [E], E
    for i in range(length):
        g = multiply(g, (word[i % len(word)],))
        pts.append(g)
    return hull(pts)


def test_support_examples(axis):
    assert support0(LimitClass0.constant(axis, 4)) == EMPTY
    b = LimitClass0.from_components(axis, SINGLE, {w("b"): 1})
    assert support0(b) == SINGLE
    assert support0(b.refine(ball(2, 2))) == SINGLE
    assert minimize0(b.refine(ball(2, 2))).cochain == b.cochain


@given(pattern_st(ranks=(2,), max_len=6), st.integers(0, 10**6))
def test_support_is_order_independent(P, seed):
    rng = random.Random(seed)
    c = random_class0(P, ball(2, 2), rng)
    s = support0(c, random.Random(0))
    for k in range(1, 4):
        assert support0(c, random.Random(k)) == s
    assert minimize0(c) == c


def test_split_needs_arc(axis):
    with pytest.raises(NotSplittable):
        split0(LimitClass0.from_components(axis, SINGLE, {w("b"): 1}))


@pytest.mark.parametrize("word", ["a", "ab", "aab"])
def test_split_soundness(word):
    P = validate_pattern(2, [word])
    rng = random.Random(len(word))
    found = 0
    for L in range(3, 9):
        X = axis_segment(P, L)
        for _ in range(4):
            c = minimize0(random_class0(P, X, rng))
            try:
                s = split0(c)
            except NotSplittable:
                continue
            found += 1
            assert s.tau + s.remainder == c
            assert len(s.tau.base) < len(c.base) and len(s.remainder.base) < len(c.base)
    assert found


def test_generators_examples(figure1, axis):
    assert len(generators0(figure1, 0)) == 1
    assert len(generators0(axis, 0)) == 3
    with pytest.raises(ValueError):
        generators0(axis, -1)


@pytest.mark.parametrize("word", ["a", "aabab"])
def test_generators_span_components(word):
    # every component indicator of Wh(ball(1)) is a ZF-combination of translates
    P = validate_pattern(2, [word])
    gens = generators0(P, 1)
    R = 3
    M, cols = evaluation_matrix0(P, gens, R)
    big = ball(2, R)
    reps = [min(c, key=word_key) for c in components(wh_subtree(P, big))]
    for comp in components(wh_subtree(P, ball(2, 1))):
        vals = indicator0(P, ball(2, 1), comp).refine(big).cochain.values
        assert solve_linear(M, [vals.get(a, 0) for a in reps]) is not None


def test_zf_element_algebra():
    x = ZFElement.basis(0)
    assert not (x - x)
    y = ZFElement.basis(1, w("a"), 2)
    assert (x + y) * w("b") == ZFElement([(0, w("b"), 1), (1, w("ab"), 2)])
    assert y.scale(-1) == -y


def test_apply_p_examples(axis):
    gens = generators0(axis, 0)
    assert apply_p(ZFElement.basis(0), gens) == gens[0]
    assert apply_p(ZFElement.basis(1) - ZFElement.basis(1), gens).is_zero()
    with pytest.raises(IndexError):
        apply_p(ZFElement.basis(7), gens)


@given(word_st(2, 3), word_st(2, 3), st.integers(-2, 2))
def test_apply_p_linear(g, h, n):
    P = validate_pattern(2, ["a"])
    gens = generators0(P, 0)
    x = ZFElement([(1, g, n), (0, E, 1)])
    y = ZFElement([(2, h, 1)])
    assert apply_p(x + y, gens) == apply_p(x, gens) + apply_p(y, gens)
    assert apply_p(x * h, gens) == apply_p(x, gens).act(h)


@pytest.mark.parametrize("R", [1, 2])
def test_relators_evaluate_to_zero(axis, figure1, R):
    for P in (axis, figure1):
        gens = generators0(P, 0)
        rels = relators0(P, gens, R)
        for x in rels:
            assert apply_p(x, gens).is_zero()
        M, cols = evaluation_matrix0(P, gens, R)
        assert len(rels) + len(invariant_factors(M, len(cols))) == len(cols)


def test_constant_is_invariant(figure1):
    pres = presentation0(figure1, 0, 1)
    assert is_trivial_module_z(pres)
    for x in ZFElement.basis(0, w("a")) - ZFElement.basis(0), ZFElement.basis(0, w("B")) - ZFElement.basis(0):
        assert apply_p(x, pres.generators).is_zero()
    assert not pres.certified
    assert not is_trivial_module_z(presentation0(validate_pattern(2, ["a"]), 0, 1))


def test_translates_window():
    assert translates_in_ball(EMPTY, 2, 3) == []
    assert len(translates_in_ball(SINGLE, 2, 1)) == 5
    assert translates_in_ball(subtree([E, w("a")]), 2, 0) == []


def test_bounds():
    assert bounds(validate_pattern(1, ["a"])).N_generators == 24577
    assert bounds(validate_pattern(2, ["aabab"])).N_generators == 4**529 * 5 + 1
    led = bounds(validate_pattern(2, ["aabab"]), generators0(validate_pattern(2, ["aabab"]), 0))
    assert isinstance(led.N_relators, (int, Symbolic))
    assert "N_generators" in led.as_dict()


def test_connectedness(axis, figure1):
    r = is_connected(axis)
    assert r.verdict == DISCONNECTED and r.certified and r.agreement
    r = is_connected(figure1)
    assert r.verdict == r.oracle_verdict
    r = is_connected(validate_pattern(2, ["abAB"]), ConnectivityPolicy(max_radius=3))
    assert r.verdict == CONNECTED and not r.certified and r.agreement
    r = is_connected(validate_pattern(2, ["abAB"]), ConnectivityPolicy(max_radius=1, run_oracle=False))
    assert r.verdict == INCONCLUSIVE and r.agreement is None
