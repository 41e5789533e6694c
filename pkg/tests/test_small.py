import random
import threading

import numpy as np
import pytest

from conftest import T1_BP, T1_COLORS, caterpillar, path_tree, random_colors, random_tree
from nct.bp import BPTree
from nct.colors import ColorSeq
from nct.errors import ColorAbsent, ParameterInfeasible
from nct.oracle import PointerTree, all_nearest
from nct.small import SmallSigmaIndex, default_params, nearest_in_forest, shape_table


def check_all(t, colors, **kw):
    idx = SmallSigmaIndex(t, colors, **kw)
    pt = PointerTree(t.parens(), colors)
    for a in sorted(set(colors)):
        ref = all_nearest(pt, a)
        for x in range(1, t.n + 1):
            node, dist = idx.query(x, a)
            assert dist == ref[x][1], (x, a)
            assert pt.color[node] == a
            assert pt.distance(x, node) == dist
    return idx


def test_t1_examples(t1):
    idx = check_all(t1, T1_COLORS, L=3, L_prime=5)
    assert idx.query(6, 1) == (1, 3)
    assert idx.query(5, 3) == (6, 1)
    assert idx.query(4, 1) == (4, 0)


def test_t1_default_params(t1):
    check_all(t1, T1_COLORS)


def test_two_nodes():
    idx = check_all(BPTree("(())"), [1, 2])
    assert idx.micro_root.size == 1


def test_single_node():
    idx = SmallSigmaIndex(BPTree("()"), [2], L=2, L_prime=2)
    assert idx.query(1, 2) == (1, 0)
    with pytest.raises(ColorAbsent):
        idx.query(1, 1)


def test_infeasible():
    t = random_tree(50, 1)
    with pytest.raises(ParameterInfeasible):
        SmallSigmaIndex(t, random_colors(50, 10, 1), L=10, L_prime=10)
    with pytest.raises(ParameterInfeasible):
        SmallSigmaIndex(t, random_colors(50, 2, 1), L=4, L_prime=3)


def test_default_params():
    assert default_params(2 ** 16, 2) == (8, 256)
    assert default_params(2 ** 16, 16) == (2, 256)
    assert default_params(1, 1) == (2, 2)


def test_color_absent(t1):
    idx = SmallSigmaIndex(t1, ColorSeq([1] * 9, 2), L=2, L_prime=4)
    with pytest.raises(ColorAbsent):
        idx.query(3, 2)


def test_micro_shape_forced():
    idx = SmallSigmaIndex(BPTree("(())"), [1, 2], L=2, L_prime=2)
    assert idx.micro_shape(2) == ("(())", "12", 2)


def test_micro_shape_path():
    idx = SmallSigmaIndex(path_tree(5), [1, 2, 1, 2, 1], L=3, L_prime=3)
    assert idx.micro_shape(2) == ("((()))", "121", 2)
    assert idx.micro_shape(5) == ("((()))", "121", 3)


def test_micro_shape_wide_alphabet():
    cols = [1, 12, 3]
    idx = SmallSigmaIndex(BPTree("(()())"), cols, L=3, L_prime=3)
    assert idx.micro_shape(3) == ("(()())", "1,12,3", 3)


@pytest.mark.parametrize("seed", range(4))
def test_micro_shape_roundtrip(seed):
    t = random_tree(300, seed)
    cols = random_colors(300, 3, seed)
    idx = SmallSigmaIndex(t, cols, L=4, L_prime=20)
    depth = t.tree_arrays()[0]
    for x in range(2, 301):
        bp, cs, rank = idx.micro_shape(x)
        nodes = idx.micro_piece_nodes(x)
        # decode the shape into depths and compare with the piece itself
        dec, d = [], -1
        for ch in bp:
            if ch == "(":
                d += 1
                dec.append(d)
            else:
                d -= 1
        assert dec == [int(depth[u] - depth[nodes[0]]) for u in nodes]
        assert cs == "".join(str(cols[u - 1]) for u in nodes)
        assert nodes[rank - 1] == x


def test_lookup_table_brute_force():
    table = shape_table("(()(()))", (1, 2, 2, 1))
    # nodes: 0 root, 1 leaf, 2 inner, 3 leaf under 2; ties go to the lower rank
    assert table[1] == ((0, 0), (0, 1), (0, 1), (3, 0))
    assert table[2] == ((1, 1), (1, 0), (2, 0), (2, 1))


def test_nearest_in_forest():
    # two trees: 0-(1,2) and 3-4
    node, dist = nearest_in_forest([-1, 0, 0, -1, 3], [0, 1, 1, 0, 1], [1, 2, 2, 2, 1], 2)
    assert node[:, 0].tolist() == [0, 0, 0, 4, 4]
    assert dist[:, 1].tolist() == [1, 0, 0, 0, 1]
    assert node[1, 1] == 1 and node[0, 1] == 1


@pytest.mark.parametrize("make", [lambda: path_tree(120), lambda: caterpillar(151),
                                  lambda: BPTree("(" + "()" * 80 + ")")])
def test_special_shapes(make):
    t = make()
    for sigma in (2, 3):
        check_all(t, random_colors(t.n, sigma, t.n), L=3, L_prime=9)


@pytest.mark.parametrize("seed", range(6))
def test_random_trees(seed):
    rnd = random.Random(seed)
    n = rnd.randint(2, 400)
    sigma = rnd.choice([2, 3, 5, 8])
    t = random_tree(n, seed)
    check_all(t, random_colors(n, sigma, seed))
    L = rnd.randint(2, 4)
    check_all(t, random_colors(n, sigma, seed + 1), L=L, L_prime=rnd.randint(L, 30))


def test_five_candidates_suffice():
    t = random_tree(1000, 77)
    cols = random_colors(1000, 4, 77)
    idx = SmallSigmaIndex(t, cols)
    pt = PointerTree(t.parens(), cols)
    ref = {a: all_nearest(pt, a) for a in range(1, 5)}
    rng = np.random.default_rng(5)
    for x, a in zip(rng.integers(1, 1001, 1000).tolist(), rng.integers(1, 5, 1000).tolist()):
        assert idx.query(x, a)[1] == ref[a][x][1]


def test_path_leaves_mini_through_boundary():
    t = random_tree(800, 12)
    cols = random_colors(800, 5, 12)
    idx = SmallSigmaIndex(t, cols, L=3, L_prime=12)
    pt = PointerTree(t.parens(), cols)
    crossed = 0
    for a in range(1, 6):
        ref = all_nearest(pt, a)
        for x in range(2, 801):
            y = ref[x][0]
            pc = idx.mini.pieces[idx.mini.piece_of(x)]
            inside = y == pc.root or y in pc.members()
            if inside:
                continue
            top = pt.lca(x, y)
            path = set(pt.ancestors(x)) ^ set(pt.ancestors(y)) | {top}
            assert pc.root in path or pc.boundary_leaf in path
            crossed += 1
    assert crossed > 0


def test_concurrent_queries():
    t = random_tree(600, 4)
    cols = random_colors(600, 3, 4)
    idx = SmallSigmaIndex(t, cols)
    pt = PointerTree(t.parens(), cols)
    ref = {a: all_nearest(pt, a) for a in range(1, 4)}
    errors = []

    def work(seed):
        rng = np.random.default_rng(seed)
        for x, a in zip(rng.integers(1, 601, 400).tolist(), rng.integers(1, 4, 400).tolist()):
            if idx.query(x, a)[1] != ref[a][x][1]:
                errors.append((x, a))

    threads = [threading.Thread(target=work, args=(s,)) for s in range(8)]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    assert not errors


def test_concurrent_shape_table_fill():
    key = ("((()()))", (3, 1, 2, 1))
    from nct import small
    small._shape_cache.pop(key, None)
    got = []
    threads = [threading.Thread(target=lambda: got.append(shape_table(*key))) for _ in range(8)]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    assert all(g is got[0] for g in got)


def test_space_components(t1):
    idx = SmallSigmaIndex(random_tree(500, 2), random_colors(500, 3, 2))
    bits = idx.space_bits()
    assert bits["topology"] == 1000
    assert all(v >= 0 for v in bits.values())
