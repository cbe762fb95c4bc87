import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ktschubert.rootsystem import build_root_system
from ktschubert.weyl import ResourceCapError, WeylGroup

ORDERS = {("A", 1): 2, ("A", 2): 6, ("B", 2): 8, ("G", 2): 12, ("A", 3): 24, ("B", 3): 48, ("D", 4): 192, ("F", 4): 1152}


@pytest.fixture(scope="module")
def groups():
    return {tn: WeylGroup(build_root_system(*tn)) for tn in ORDERS}


@pytest.mark.parametrize("tn", list(ORDERS))
def test_group_order(groups, tn):
    assert len(groups[tn]) == ORDERS[tn]


@pytest.mark.parametrize("tn", list(ORDERS))
def test_longest_element_length(groups, tn):
    W = groups[tn]
    assert W.longest.length == len(W.root_system.positive_roots)
    assert all(W.is_right_descent(W.longest, i) for i in range(W.rank))


def test_a2_elements_and_words(groups):
    W = groups[("A", 2)]
    assert [w.label for w in W] == ["e", "s1", "s2", "s1s2", "s2s1", "s1s2s1"]


def test_demazure_product(groups):
    W = groups[("A", 2)]
    assert W.demazure_product([0, 1, 0, 1]) == W.longest
    assert W.demazure_product([0, 0]) == W.from_word([0])


def test_minimal_coset_reps_a2(groups):
    W = groups[("A", 2)]
    assert [w.label for w in W.minimal_coset_reps([1])] == ["e", "s1", "s2s1"]


def test_resource_cap():
    with pytest.raises(ResourceCapError):
        WeylGroup(build_root_system("E", 6), max_order=1000)


@pytest.mark.parametrize("tn", [("A", 2), ("B", 2), ("G", 2)])
def test_bruhat_subword_matches_reflection_order(groups, tn):
    W = groups[tn]
    for v, w in itertools.product(W, W):
        assert W.bruhat_leq(v, w) == W.bruhat_leq_reflections(v, w)


def test_bruhat_sampled_a3_b3(groups):
    rng = random.Random(7)
    for tn in [("A", 3), ("B", 3)]:
        W = groups[tn]
        for _ in range(300):
            v, w = rng.choice(W.elements), rng.choice(W.elements)
            assert W.bruhat_leq(v, w) == W.bruhat_leq_reflections(v, w)


@pytest.mark.parametrize("tn", [("A", 3), ("B", 3), ("G", 2)])
def test_coset_decomposition(groups, tn):
    W = groups[tn]
    n = W.rank
    for k in range(n + 1):
        for P in itertools.combinations(range(n), k):
            reps = W.minimal_coset_reps(P)
            sub = W.parabolic_subgroup(P)
            assert len(reps) * len(sub) == len(W)
            products = {W.mul(u, x) for u in reps for x in sub}
            assert len(products) == len(W)
            assert all(W.mul(u, x).length == u.length + x.length for u in reps for x in sub)


@pytest.mark.parametrize("tn", [("A", 3), ("G", 2), ("B", 3)])
def test_braid_relations(groups, tn):
    W = groups[tn]
    rs = W.root_system
    for i in range(W.rank):
        for j in range(W.rank):
            m = rs.braid_order(i, j)
            word = [i, j] * m
            assert W.from_word(word) == W.identity


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([("A", 3), ("B", 3), ("G", 2)]), st.data())
def test_word_products_and_lengths(groups, tn, data):
    W = groups[tn]
    word = data.draw(st.lists(st.integers(0, W.rank - 1), max_size=12))
    w = W.from_word(word)
    assert w.length <= len(word)
    assert w.length % 2 == len(word) % 2
    assert W.mul(w, W.inverse(w)) == W.identity
    assert W.from_word(w.word) == w
    assert W.inverse(w).length == w.length
    assert W.bruhat_leq(W.identity, w) and W.bruhat_leq(w, W.longest)
