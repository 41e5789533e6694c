import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import T1_BP, caterpillar, path_tree, random_tree
from nct.bp import BPTree, bits_from_depths
from nct.errors import MalformedTree, OutOfBounds
from nct.oracle import PointerTree

T1_DEPTHS = [0, 1, 2, 3, 2, 3, 1, 2, 2]


def test_single_node():
    t = BPTree("()")
    assert t.n == 1
    assert t.depth(1) == 0
    assert t.parent(1) is None
    assert t.rleaf(1) == 1


def test_t1_shape(t1):
    assert t1.n == 9
    assert [t1.depth(x) for x in range(1, 10)] == T1_DEPTHS
    assert [t1.parent(x) for x in range(1, 10)] == [None, 1, 2, 3, 2, 5, 1, 7, 7]
    assert t1.children(1) == [2, 7]
    assert t1.children(2) == [3, 5]


def test_t1_navigation(t1):
    assert t1.lca(4, 6) == 2
    assert t1.lca(8, 9) == 7
    assert all(t1.lca(x, x) == x for x in range(1, 10))
    assert t1.distance(4, 6) == 4
    assert t1.distance(1, 8) == 2
    assert all(t1.distance(x, x) == 0 for x in range(1, 10))
    assert t1.rleaf(2) == 6
    assert t1.rleaf(4) == 4
    assert t1.subtree_size(2) == 5
    assert t1.is_ancestor(2, 6)
    assert not t1.is_ancestor(6, 2)
    assert t1.subtree_range(7) == (7, 9)


@pytest.mark.parametrize("bad", ["(()", "", ")(", "()()", "(()))("])
def test_malformed(bad):
    with pytest.raises(MalformedTree):
        BPTree(bad)


def test_out_of_range(t1):
    with pytest.raises(OutOfBounds):
        t1.depth(10)
    with pytest.raises(OutOfBounds):
        t1.lca(0, 3)


def test_parens_roundtrip(t1):
    assert t1.parens() == T1_BP
    assert BPTree(bits_from_depths(T1_DEPTHS)).parens() == T1_BP


def _check_against_pointer_tree(t):
    pt = PointerTree(t.parens())
    n = t.n
    for x in range(1, n + 1):
        assert t.depth(x) == pt.depth[x]
        assert (t.parent(x) or 0) == pt.parent[x]
        assert t.rleaf(x) == pt.end[x]
        assert t.is_leaf(x) == (not pt.children[x])
    depth, parent, end = t.tree_arrays()
    assert depth[1:].tolist() == pt.depth[1:]
    assert parent[1:].tolist() == pt.parent[1:]
    assert end[1:].tolist() == pt.end[1:]
    return pt


@pytest.mark.parametrize("make", [lambda: random_tree(3000, 5), lambda: path_tree(700),
                                  lambda: caterpillar(1001)])
def test_against_pointer_tree(make):
    t = make()
    pt = _check_against_pointer_tree(t)
    rnd = random.Random(1)
    for _ in range(500):
        x, y = rnd.randint(1, t.n), rnd.randint(1, t.n)
        a = pt.lca(x, y)
        assert t.lca(x, y) == a
        assert t.distance(x, y) == pt.depth[x] + pt.depth[y] - 2 * pt.depth[a]


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 300), st.integers(0, 10**6))
def test_distance_matches_bfs(n, seed):
    t = random_tree(n, seed)
    pt = _check_against_pointer_tree(t)
    src = 1 + seed % n
    bfs = pt.bfs_distances(src)
    for y in range(1, n + 1):
        assert t.distance(src, y) == bfs[y]


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 200), st.integers(0, 10**6))
def test_subtree_ranges_nest(n, seed):
    t = random_tree(n, seed)
    pt = PointerTree(t.parens())
    for x in range(1, n + 1):
        lo, hi = t.subtree_range(x)
        leaves = [v for v in range(lo, hi + 1) if not pt.children[v]]
        assert t.rleaf(x) == max(leaves)
        for y in range(x + 1, n + 1):
            lo2, hi2 = t.subtree_range(y)
            assert (lo <= lo2 and hi2 <= hi) or hi < lo2
