"""The brute-force references checked on hand-worked cases."""

import pytest

from conftest import T1_BP, T1_COLORS, random_colors, random_tree
from nct.oracle import (PointerTree, all_nearest, alpha_counts, bfs_nearest, enumerate_shapes,
                        naive_rmq, naive_weighted_distance, naive_Y, naive_y, naive_z,
                        validate_decomposition)


@pytest.fixture
def pt():
    return PointerTree(T1_BP, T1_COLORS)


def test_pointer_tree(pt):
    assert pt.n == 9
    assert pt.parent[1:] == [0, 1, 2, 3, 2, 5, 1, 7, 7]
    assert pt.children[7] == [8, 9]
    assert pt.distance(6, 4) == 4
    assert pt.lca(4, 6) == 2
    assert list(pt.subtree(2)) == [2, 3, 4, 5, 6]


def test_from_parents_roundtrip(pt):
    back = PointerTree.from_parents([p - 1 for p in pt.parent[1:]])
    assert back.parent == pt.parent


def test_bfs_nearest(pt):
    assert bfs_nearest(pt, 6, 1) == (1, 3)
    assert bfs_nearest(pt, 5, 3) == (6, 1)
    assert bfs_nearest(pt, 8, 1) == (8, 0)
    assert bfs_nearest(pt, 1, 7) is None


def test_bfs_ties_go_to_smaller_rank(pt):
    # node 7 sees color 3 at 9 (distance 1) only; node 1 sees 3 and 9 at distance 2
    assert bfs_nearest(pt, 1, 3) == (3, 2)


def test_all_nearest_matches_single_source():
    t = random_tree(200, 8)
    cols = random_colors(200, 4, 8)
    p = PointerTree(t.parens(), cols)
    for a in range(1, 5):
        ref = all_nearest(p, a)
        for x in range(1, 201):
            assert ref[x] == bfs_nearest(p, x, a)


def test_all_nearest_uniqueness(pt):
    got = all_nearest(pt, 3, ties=True)
    assert got[1] == (3, 2, False)
    assert got[7] == (9, 1, True)
    assert got[4] == (3, 1, True)


def test_naive_z_and_y(pt):
    cnt = alpha_counts(pt, 1)
    assert cnt[1:] == [3, 1, 1, 1, 0, 0, 1, 1, 0]
    assert naive_z(pt, 5, 1, cnt) == 2
    assert naive_z(pt, 9, 1) == 7
    assert naive_z(pt, 1, 1) is None
    assert naive_Y(pt, 1) == {1, 4, 8}
    assert naive_Y(pt, 3) == {1, 2, 3, 6, 9}
    assert naive_y(pt, 2, 1) == 4
    assert naive_y(pt, 9, 1) is None


def test_enumerate_shapes():
    assert [len(enumerate_shapes(k)) for k in range(1, 8)] == [1, 1, 2, 5, 14, 42, 132]
    assert enumerate_shapes(3) == ["((()))", "(()())"]


def test_naive_rmq():
    A = [5, 2, 7, 2, 1, 9]
    assert naive_rmq(A, 1, 4) == 2
    assert naive_rmq(A, 3, 6) == 5
    assert naive_rmq(A, 6, 6) == 6


def test_validator_rejects_bad_pieces():
    class P:
        def __init__(self, root, leaf, intervals):
            self.root, self.boundary_leaf, self.intervals = root, leaf, intervals

    parent = [-1, 0, 1, 1]
    good = [P(0, None, [(1, 3)])]
    assert validate_decomposition(parent, good, 4)["ok"]
    assert not validate_decomposition(parent, good, 3)["piece_sizes"]
    overlap = [P(0, None, [(1, 2)]), P(1, None, [(2, 3)])]
    assert not validate_decomposition(parent, overlap, 4)["edge_partition"]


def test_naive_weighted_distance():
    class W:
        # macro path 1 - 2 - 3 plus leaf 4 under 1
        parent = [0, 0, 1, 2, 1]
        w1 = [0, 0, 5, 7, 11]
        w2 = [0, 1, 2, 3, 4]
        w3 = [0, 10, 20, 30, 40]

    assert naive_weighted_distance(W, 3, 1) == 5 + 10
    assert naive_weighted_distance(W, 1, 3) == 5 + 3
    assert naive_weighted_distance(W, 3, 4) == 5 + 4
    assert naive_weighted_distance(W, 2, 1) == 10
