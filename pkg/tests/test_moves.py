import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flipforest import oracle
from flipforest.core import (
    Flip,
    FlipSeq,
    NcTree,
    border_edges,
    half_delta,
    is_border,
    prefix_path,
    validate_sequence,
)
from flipforest.errors import AllBorderTree, HypothesisViolated, NoRemovableOutsideAvoid, NotBorderTree
from flipforest.harness import random_tree
from flipforest.moves import (
    add_border_prefix,
    check_lemma2_hypothesis,
    claim1_flip,
    connect_border_trees,
    good_flip,
    lemma2_transform,
    to_border_tree,
    via_border_trees,
)

from helpers import lemma2_instance, tree


def hull_minus(n, missing):
    return NcTree.border_path(n, missing)


# --- claim 1 ----------------------------------------------------------------

def test_claim1_examples():
    star = tree(4, 12, 13, 14)
    cycle = {(3, 4), (1, 3), (1, 4)}  # independent: the triangle closed by 3-4
    f = claim1_flip(star, (3, 4))
    assert f.removed == min(e for e in cycle - {(3, 4)} if not is_border(e, 4))
    assert f == Flip((1, 3), (3, 4))
    assert claim1_flip(tree(4, 12, 24, 34), (2, 3)) == Flip((2, 4), (2, 3))


def test_claim1_all_border_tree():
    with pytest.raises(AllBorderTree):
        claim1_flip(tree(4, 12, 23, 34), (1, 4))


def test_claim1_avoid():
    star = NcTree.star(5)
    assert claim1_flip(star, (3, 4), avoid={(1, 3)}) == Flip((1, 4), (3, 4))
    with pytest.raises(NoRemovableOutsideAvoid):
        claim1_flip(star, (3, 4), avoid={(1, 3), (1, 4)})


def test_claim1_closing_edge_counts_as_border():
    # (1, 4) is a hull edge at n=4, so only (1, 3) may go
    star = tree(4, 12, 13, 14)
    with pytest.raises(NoRemovableOutsideAvoid) as exc:
        claim1_flip(star, (3, 4), avoid={(1, 3)})
    assert exc.value.candidates == [(1, 3)]


@settings(max_examples=300, deadline=None)
@given(st.integers(4, 12), st.integers(0, 10**6), st.data())
def test_claim1_never_removes_border(n, seed, data):
    t = random_tree(n, seed)
    absent = [e for e in border_edges(n) if e not in t.edges]
    if not absent or t.is_all_border():
        return
    e = data.draw(st.sampled_from(absent))
    f = claim1_flip(t, e)
    assert not is_border(f.removed, n)
    validate_sequence(FlipSeq(t, (f,)))


# --- border prefix ------------------------------------------------------------

def test_add_border_prefix_examples():
    path = tree(5, 12, 23, 34, 45)
    assert len(add_border_prefix(path, 5)) == 0
    star = tree(4, 12, 13, 14)
    seq = add_border_prefix(star, 4)
    assert validate_sequence(seq) == 2
    assert set(prefix_path(4)) <= seq.end.edges
    star3 = NcTree.star(5, 3)
    seq = add_border_prefix(star3, 3)
    assert len(seq) == 1 and seq.flips[0].added == (1, 2)


@settings(max_examples=200, deadline=None)
@given(st.integers(3, 14), st.integers(0, 10**6), st.data())
def test_add_border_prefix_property(n, seed, data):
    t = random_tree(n, seed)
    i = data.draw(st.integers(1, n))
    seq = add_border_prefix(t, i)
    validate_sequence(seq)
    assert set(prefix_path(i)) <= seq.end.edges
    assert len(seq) <= i - 1


# --- lemma 2 ------------------------------------------------------------------

def test_lemma2_identity():
    t = tree(4, 12, 23, 34)
    assert len(lemma2_transform(t, t, 4)) == 0


def test_lemma2_path_to_star_matches_oracle():
    a, b = tree(4, 12, 23, 34), tree(4, 12, 13, 14)
    seq = lemma2_transform(a, b, 4)
    validate_sequence(seq, b)
    assert len(seq) == oracle.exact_distance(a, b) == half_delta(a, b)


def test_lemma2_n5_border_path_to_star():
    a, b = NcTree.border_path(5), NcTree.star(5)
    seq = lemma2_transform(a, b, 5)
    validate_sequence(seq, b)
    assert len(seq) == oracle.exact_distance(a, b)


def test_lemma2_rejects_bad_instances():
    with pytest.raises(HypothesisViolated):
        check_lemma2_hypothesis(tree(4, 12, 13, 14), tree(4, 12, 13, 14), 3)
    with pytest.raises(HypothesisViolated) as exc:
        check_lemma2_hypothesis(tree(4, 12, 23, 34), tree(4, 12, 23, 34), 2)
    assert exc.value.edge == (3, 4)


@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_good_flip_contract(n):
    rng = random.Random(n)
    for _ in range(200):
        a, b, i = lemma2_instance(n, rng)
        b1 = add_border_prefix(b, i, avoid=a.edges).end
        cur = a
        while cur != b1:
            f, trace = good_flip(cur, b1, i)
            validate_sequence(FlipSeq(cur, (f,)))
            nxt = cur.replace(*f)
            assert half_delta(nxt, b1) == half_delta(cur, b1) - 1
            assert set(prefix_path(i)) <= nxt.edges
            assert len(trace.chain) <= n - i
            assert not trace.fallback
            cur = nxt


@pytest.mark.parametrize("n", range(5, 13))
def test_lemma2_random_instances_are_optimal(n):
    rng = random.Random(100 + n)
    for _ in range(150):
        a, b, i = lemma2_instance(n, rng)
        traces = []
        seq = lemma2_transform(a, b, i, traces)
        validate_sequence(seq, b)
        assert len(seq) == half_delta(a, b)
        for t in traces:
            leaves = [e[1] for e in t.chain]
            assert all(x > y for x, y in zip(leaves, leaves[1:]))


def test_trace_serialises():
    a, b = tree(5, 12, 23, 34, 45), NcTree.star(5)
    traces = []
    lemma2_transform(a, b, 1, traces)
    doc = json.loads(traces[0].to_json())
    assert set(doc) == {"chain", "flip", "fallback"}


# --- border trees -------------------------------------------------------------

def test_to_border_tree_examples():
    path = tree(4, 12, 23, 34)
    assert len(to_border_tree(path)) == 0
    star = tree(4, 12, 13, 14)
    seq = to_border_tree(star)
    validate_sequence(seq)
    # (1, 2) and the closing edge (1, 4) are both hull edges, so one flip is enough
    assert star.border_count() == 2
    assert len(seq) == 1 and seq.end.is_all_border()
    fan = NcTree.star(6, 2)
    assert len(to_border_tree(fan)) == 5 - fan.border_count() == 3


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 20), st.integers(0, 10**6))
def test_to_border_tree_length(n, seed):
    t = random_tree(n, seed)
    seq = to_border_tree(t)
    validate_sequence(seq)
    assert seq.end.is_all_border()
    assert len(seq) == (n - 1) - t.border_count()
    assert all(not is_border(f.removed, n) for f in seq.flips)


def test_connect_border_trees_examples():
    t = hull_minus(4, (1, 4))
    assert len(connect_border_trees(t, t)) == 0
    seq = connect_border_trees(hull_minus(4, (1, 4)), hull_minus(4, (2, 3)))
    assert seq.flips == (Flip((2, 3), (1, 4)),)
    seq = connect_border_trees(hull_minus(6, (3, 4)), hull_minus(6, (1, 6)))
    assert seq.flips == (Flip((1, 6), (3, 4)),)
    validate_sequence(seq, hull_minus(6, (1, 6)))
    with pytest.raises(NotBorderTree):
        connect_border_trees(tree(4, 12, 13, 14), t)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 25), st.integers(0, 10**6))
def test_via_border_trees_bound(n, seed):
    t1, t2 = random_tree(n, seed), random_tree(n, seed + 7)
    seq = via_border_trees(t1, t2)
    validate_sequence(seq, t2)
    assert len(seq) <= 2 * (n - 1) + 1
