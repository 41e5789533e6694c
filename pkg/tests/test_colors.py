import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import T1_COLORS
from nct.colors import ColorSeq, entropy_h0, entropy_hk
from nct.errors import NoSuchOccurrence, OutOfBounds


@pytest.fixture
def cs():
    return ColorSeq(T1_COLORS, 3)


def test_access(cs):
    assert cs.access(1) == 1
    assert cs.access(5) == 2
    assert cs.access(9) == 3
    with pytest.raises(OutOfBounds):
        cs.access(10)


def test_rank_select(cs):
    assert cs.rank(1, 9) == 3
    assert cs.rank(1, 0) == 0
    assert cs.select(1, 2) == 4
    assert cs.count(1) == 3
    assert sum(cs.count(a) for a in (1, 2, 3)) == 9
    with pytest.raises(NoSuchOccurrence):
        cs.select(1, 4)


def test_pred_succ_inclusive(cs):
    assert cs.pred(1, 5) == 4
    assert cs.succ(1, 5) == 8
    assert cs.succ(1, 1) == 1
    assert cs.pred(1, 4) == 4
    assert cs.pred(2, 1) is None
    assert cs.succ(1, 9) is None


def test_bad_colors():
    with pytest.raises(ValueError):
        ColorSeq([1, 4], 3)
    with pytest.raises(ValueError):
        ColorSeq([0, 1])


def test_pred_succ_against_scan():
    rng = np.random.default_rng(9)
    seq = rng.integers(1, 6, size=3000).tolist()
    cs = ColorSeq(seq, 5)
    for _ in range(10_000):
        a = int(rng.integers(1, 6))
        i = int(rng.integers(1, 3001))
        before = [p for p in range(1, i + 1) if seq[p - 1] == a]
        after = [p for p in range(i, 3001) if seq[p - 1] == a]
        assert cs.pred(a, i) == (before[-1] if before else None)
        assert cs.succ(a, i) == (after[0] if after else None)
        assert cs.rank(a, i) == len(before)


def test_entropy_examples():
    assert entropy_h0([1, 1, 1, 1]) == 0.0
    assert entropy_h0("1111") == 0.0
    assert entropy_h0("01" * 50) == pytest.approx(1.0, abs=1e-9)
    assert entropy_hk("abab", 1) == 0.0
    assert entropy_h0([1, 2, 1, 2, 1, 2]) == pytest.approx(1.0, abs=1e-12)
    assert entropy_hk([1, 2, 1, 2, 1, 2], 1) == pytest.approx(0.0, abs=1e-12)
    # context "1" is followed by 2,3,2,3 (4 bits); "2" and "3" by 1 only
    assert entropy_hk([1, 2, 1, 3, 1, 2, 1, 3], 1) == pytest.approx(4 / 8)


def test_entropy_hk_naive():
    rng = np.random.default_rng(2)
    seq = rng.integers(1, 4, size=400).tolist()
    for k in (1, 2, 3):
        groups = {}
        for i in range(k, len(seq)):
            groups.setdefault(tuple(seq[i - k:i]), []).append(seq[i])
        want = sum(len(g) * entropy_h0(g) for g in groups.values()) / len(seq)
        assert entropy_hk(seq, k) == pytest.approx(want, abs=1e-9)


@given(st.lists(st.integers(1, 6), min_size=1, max_size=300))
def test_entropy_order(seq):
    sigma = max(seq)
    h = [entropy_hk(seq, k) for k in range(4)]
    assert h[0] <= math.log2(sigma) + 1e-9 if sigma > 1 else h[0] == 0
    for a, b in zip(h, h[1:]):
        assert b <= a + 1e-9
    assert min(h) >= 0


@given(st.lists(st.integers(1, 4), min_size=1, max_size=200))
def test_rank_select_roundtrip(seq):
    cs = ColorSeq(seq, 4)
    for a in range(1, 5):
        for k in range(1, cs.count(a) + 1):
            assert cs.rank(a, cs.select(a, k)) == k
        for i in range(len(seq) + 1):
            r = cs.rank(a, i)
            if r:
                assert cs.select(a, r) <= i
