import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flipforest import oracle
from flipforest.core import NcTree, half_delta, validate_sequence
from flipforest.errors import NotAHamiltonianPath, NotNiceCaterpillar
from flipforest.harness import random_tree
from flipforest.strategies import (
    STRATEGIES,
    bound_long_path,
    bound_parallel,
    bound_sqrt,
    bound_three_halves,
    empty_sections,
    long_path_candidates,
    transform_best,
    transform_caterpillar,
    transform_ham_path,
    transform_long_path,
    transform_parallel,
    transform_sqrt,
)

from helpers import figure_caterpillars, is_nc_spanning_tree, replay, tree

PATH4, STAR4 = tree(4, 12, 23, 34), tree(4, 12, 13, 14)


def check(seq, t2, bound):
    validate_sequence(seq, t2)
    # every intermediate tree also passes the independent checker
    assert all(is_nc_spanning_tree(t.n, t.edges) for t in replay(seq))
    assert half_delta(seq.start, t2) <= len(seq) <= bound
    return len(seq)


def test_bounds():
    assert bound_sqrt(9) == 16 and bound_sqrt(400) == 781
    assert bound_three_halves(7) == 11 and bound_three_halves(8) == 12
    strict = tree(6, 16, 25, 34, 12, 23)
    assert bound_parallel(strict) == 10
    assert bound_long_path(NcTree.border_path(7)) == 12


@pytest.mark.parametrize("name", list(STRATEGIES))
def test_identity_is_empty(name):
    # the border path is not a nice caterpillar; the star is
    t = NcTree.star(6) if name == "caterpillar" else NcTree.border_path(6)
    assert len(STRATEGIES[name].run(t, t)) == 0


def test_parallel_strict_chain_all_targets():
    t1 = tree(6, 16, 25, 34, 12, 23)
    for t2 in oracle.enumerate_trees(6):
        check(transform_parallel(t1, t2), t2, 10)


def test_caterpillar_figure_tree():
    (left, _), (right, _) = figure_caterpillars()
    t1, t2 = NcTree.checked(8, right), NcTree.star(8, 2)
    check(transform_caterpillar(t1, t2), t2, 12)
    assert len(transform_caterpillar(t1, t1)) == 0
    with pytest.raises(NotNiceCaterpillar):
        transform_caterpillar(NcTree.checked(8, left), t2)


def test_ham_path_examples():
    assert len(transform_ham_path(PATH4, PATH4)) == 0
    seq = transform_ham_path(PATH4, STAR4)
    assert check(seq, STAR4, 6) == oracle.exact_distance(PATH4, STAR4) == 2
    with pytest.raises(NotAHamiltonianPath):
        transform_ham_path(STAR4, PATH4)


def test_sqrt_sections():
    star, path = NcTree.star(9), NcTree.border_path(9)
    assert [4, 5, 6] in empty_sections(star)
    assert empty_sections(path) == []
    t2 = random_tree(9, 5)
    check(transform_sqrt(star, t2), t2, 15)
    check(transform_sqrt(path, t2), t2, 16)
    for t2 in oracle.enumerate_trees(7)[::37]:
        check(transform_sqrt(NcTree.star(7), t2), t2, bound_sqrt(7))


def test_long_path_candidates():
    t2 = NcTree.star(8, 4)
    path = NcTree.border_path(8)
    c = long_path_candidates(path, t2)
    assert c["classification"].t == 7
    assert c["classification"].tags[1:-1] == ["series"] * 5
    assert len(transform_long_path(path, t2)) == min(len(c["parallel"]), len(c["border"]))
    check(transform_long_path(path, t2), t2, bound_long_path(path))
    # a zig-zag path has every middle edge separating, so the chain route wins
    zz = tree(8, 18, 28, 27, 37, 36, 46, 45)
    c = long_path_candidates(zz, t2)
    assert set(c["classification"].tags[1:-1]) == {"separating"}
    assert len(c["parallel"]) <= len(c["border"])


def test_best_path_vs_star():
    seq, report = transform_best(PATH4, STAR4)
    assert len(seq) == 2
    names = {r["name"] for r in report if r["applicable"]}
    assert {"hampath", "longpath", "sqrt"} <= names
    for r in report:
        if r["applicable"]:
            assert r["valid"] and r["length"] <= r["bound"]
    seq, _ = transform_best(PATH4, PATH4)
    assert len(seq) == 0


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 16), st.integers(0, 10**6))
def test_best_is_valid_and_bounded(n, seed):
    t1, t2 = random_tree(n, seed), random_tree(n, seed + 1)
    seq, report = transform_best(t1, t2)
    validate_sequence(seq, t2)
    lengths = [r["length"] for r in report if r["valid"]]
    assert len(seq) == min(lengths)
    assert all(r["length"] <= r["bound"] for r in report if r["valid"])


@pytest.mark.parametrize("name", ["sqrt", "parallel", "longpath"])
def test_general_strategies_exhaustive_n5(name):
    strat = STRATEGIES[name]
    trees = oracle.enumerate_trees(5)
    for t1, t2 in itertools.product(trees, repeat=2):
        seq = strat.run(t1, t2)
        validate_sequence(seq, t2)
        assert len(seq) <= strat.bound(t1, t2)
