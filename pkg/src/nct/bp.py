"""Ordinal trees stored as balanced-parenthesis bit sequences.

Nodes are identified by their preorder rank ``1..n``; node ``x`` opens at the
x-th 1-bit.  Write ``E(i)`` for the excess (#opens - #closes) of the prefix
ending at bit ``i`` (0-based).  All navigation reduces to three primitives on
``E``:

* range minimum of ``E`` over a bit interval,
* forward search for the first ``q > p`` with ``E(q) <= t``,
* backward search for the last ``q < p`` with ``E(q) <= t``.

Each primitive scans at most two 64-bit words byte by byte (with lookup
tables) and jumps over whole words with a sparse table of per-word excess
minima.
"""

from bisect import bisect_left

import numpy as np

from .bits import BitVec, as_bit_array, select_in_word
from .errors import MalformedTree, OutOfBounds
from .space import int_bits


def _byte_tables():
    # index: (byte << 6) | (start << 3) | (end - 1), bits start..end-1 of the byte
    bmin = [0] * (256 << 6)
    bexc = [0] * (256 << 6)
    for v in range(256):
        for s in range(8):
            cur = 0
            low = 9
            for e in range(s, 8):
                cur += 1 if (v >> e) & 1 else -1
                low = min(low, cur)
                k = (v << 6) | (s << 3) | e
                bmin[k] = low
                bexc[k] = cur
    return bmin, bexc


_BMIN, _BEXC = _byte_tables()


def parens_to_bits(text):
    """Convert a string of '(' and ')' into a 0/1 array."""
    raw = np.frombuffer(text.encode("ascii"), dtype=np.uint8)
    opens = raw == ord("(")
    if not np.all(opens | (raw == ord(")"))):
        raise MalformedTree("parenthesis string may only contain '(' and ')'")
    return opens.astype(np.uint8)


def bits_to_parens(bits):
    arr = np.asarray(bits, dtype=np.uint8)
    return np.where(arr == 1, ord("("), ord(")")).astype(np.uint8).tobytes().decode("ascii")


def bits_from_depths(depth):
    """BP bits of the tree whose preorder depth sequence is ``depth``.

    ``depth[0]`` must be 0 and every later depth at most one more than its
    predecessor.
    """
    depth = np.asarray(depth, dtype=np.int64)
    n = depth.size
    closes_before = np.zeros(n, dtype=np.int64)
    closes_before[1:] = depth[:-1] + 1 - depth[1:]
    if n and (depth[0] != 0 or closes_before.min() < 0):
        raise MalformedTree("not a preorder depth sequence")
    open_pos = np.arange(n) + np.cumsum(closes_before)
    bits = np.zeros(2 * n, dtype=np.uint8)
    bits[open_pos] = 1
    return bits


def bits_from_parents(parent):
    """BP bits from a preorder parent array (1-based ids, ``parent[1] == 0``).

    ``parent`` has length ``n + 1``; entry 0 is ignored.
    """
    parent = np.asarray(parent, dtype=np.int64)
    n = parent.size - 1
    depth = np.zeros(n + 1, dtype=np.int64)
    par = parent.tolist()
    dl = depth.tolist()
    for x in range(2, n + 1):
        p = par[x]
        if not 1 <= p < x:
            raise MalformedTree("parent array is not in preorder")
        dl[x] = dl[p] + 1
    if n and par[1] != 0:
        raise MalformedTree("node 1 must be the root")
    return bits_from_depths(dl[1:])


class BPTree:
    """Navigation over the BP encoding of an ordinal tree.

    >>> t = BPTree("(()(()))")
    >>> t.n, t.depth(4), t.lca(2, 4), t.distance(2, 4)
    (4, 2, 1, 3)
    """

    def __init__(self, bp):
        bits = parens_to_bits(bp) if isinstance(bp, str) else as_bit_array(bp)
        m = int(bits.size)
        if m == 0 or m % 2:
            raise MalformedTree("balanced string must be nonempty with even length")
        exc = np.cumsum(bits.astype(np.int32) * 2 - 1)
        if exc[-1] != 0 or (m > 2 and exc[:-1].min() <= 0) or bits[0] != 1:
            raise MalformedTree("parentheses are unbalanced or encode a forest")
        self.n = m // 2
        self._m = m
        self.bv = BitVec(bits)
        self._w = self.bv._words
        self._rd = self.bv._rank_dir
        self._nw = (m + 63) >> 6
        wmin = np.minimum.reduceat(exc, np.arange(0, m, 64))
        self._wmin_np = wmin
        levels = [wmin]
        k = 1
        while (1 << k) <= wmin.size:
            prev = levels[-1]
            half = 1 << (k - 1)
            levels.append(np.minimum(prev[:-half], prev[half:]))
            k += 1
        self._st = [lv.tolist() for lv in levels]

    @classmethod
    def from_parents(cls, parent):
        return cls(bits_from_parents(parent))

    def __len__(self):
        return self.n

    def bits(self):
        return self.bv.to_numpy()

    def parens(self):
        return bits_to_parens(self.bits())

    # -- primitives on the excess sequence ---------------------------------

    def _check(self, x):
        if not 1 <= x <= self.n:
            raise OutOfBounds(f"node {x} outside 1..{self.n}")

    def _open(self, x):
        rd = self._rd
        w = bisect_left(rd, x) - 1
        return (w << 6) + select_in_word(self._w[w], x - rd[w])

    def _rank(self, i):
        w = i >> 6
        return self._rd[w] + (self._w[w] & ((1 << (i & 63)) - 1)).bit_count()

    @staticmethod
    def _word_min(x, s, e):
        """Minimum excess over bits s..e-1 of word x, relative to before s."""
        cur = 0
        best = 65
        while s < e:
            b = s >> 3
            be = (b + 1) << 3
            if be > e:
                be = e
            k = (((x >> (b << 3)) & 255) << 6) | ((s & 7) << 3) | ((be - 1) & 7)
            low = cur + _BMIN[k]
            if low < best:
                best = low
            cur += _BEXC[k]
            s = be
        return best

    def _min_excess(self, i, j):
        """min E(q) for i <= q <= j."""
        words = self._w
        wi = i >> 6
        wj = j >> 6
        base = 2 * self._rank(i) - i
        if wi == wj:
            return base + self._word_min(words[wi], i & 63, (j & 63) + 1)
        best = base + self._word_min(words[wi], i & 63, 64)
        if wj > wi + 1:
            a, b = wi + 1, wj - 1
            k = (b - a + 1).bit_length() - 1
            row = self._st[k]
            m = row[a]
            m2 = row[b - (1 << k) + 1]
            if m2 < m:
                m = m2
            if m < best:
                best = m
        m = 2 * self._rd[wj] - (wj << 6) + self._word_min(words[wj], 0, (j & 63) + 1)
        return m if m < best else best

    @staticmethod
    def _scan_fwd(x, s, e, cur, t):
        # cur = E just before bit s; first bit in s..e-1 with E <= t
        while s < e:
            b = s >> 3
            be = (b + 1) << 3
            if be > e:
                be = e
            k = (((x >> (b << 3)) & 255) << 6) | ((s & 7) << 3) | ((be - 1) & 7)
            if cur + _BMIN[k] <= t:
                for pos in range(s, be):
                    cur += 1 if (x >> pos) & 1 else -1
                    if cur <= t:
                        return pos
            cur += _BEXC[k]
            s = be
        return -1

    @staticmethod
    def _scan_bwd(x, s, e, cur, t):
        # cur = E at bit e-1; last bit in s..e-1 with E <= t
        while e > s:
            b = (e - 1) >> 3
            bs = b << 3
            if bs < s:
                bs = s
            k = (((x >> (b << 3)) & 255) << 6) | ((bs & 7) << 3) | ((e - 1) & 7)
            base = cur - _BEXC[k]
            if base + _BMIN[k] <= t:
                for pos in range(e - 1, bs - 1, -1):
                    if cur <= t:
                        return pos
                    cur -= 1 if (x >> pos) & 1 else -1
            cur = base
            e = bs
        return -1

    def _next_word_leq(self, w, t):
        st = self._st
        nw = self._nw
        top = len(st) - 1
        k = 0
        while True:
            if w >= nw:
                return -1
            while w + (1 << k) > nw:
                k -= 1
            if st[k][w] <= t:
                break
            w += 1 << k
            if k < top:
                k += 1
        while k:
            k -= 1
            if st[k][w] > t:
                w += 1 << k
        return w

    def _prev_word_leq(self, w, t):
        st = self._st
        top = len(st) - 1
        k = 0
        while True:
            if w < 0:
                return -1
            while (1 << k) > w + 1:
                k -= 1
            if st[k][w - (1 << k) + 1] <= t:
                break
            w -= 1 << k
            if k < top:
                k += 1
        while k:
            k -= 1
            if st[k][w - (1 << k) + 1] > t:
                w -= 1 << k
        return w

    def _fwd(self, p, t):
        """First q > p with E(q) <= t; requires E(p) > t."""
        words = self._w
        w = p >> 6
        cur = 2 * self._rank(p + 1) - p - 1
        e = min(64, self._m - (w << 6))
        q = self._scan_fwd(words[w], (p & 63) + 1, e, cur, t)
        if q >= 0:
            return (w << 6) + q
        w = self._next_word_leq(w + 1, t)
        if w < 0:
            return -1
        cur = 2 * self._rd[w] - (w << 6)
        e = min(64, self._m - (w << 6))
        return (w << 6) + self._scan_fwd(words[w], 0, e, cur, t)

    def _bwd(self, p, t):
        """Last q < p with E(q) <= t, or -1 (the virtual prefix with E = 0)."""
        if p == 0:
            return -1
        words = self._w
        w = (p - 1) >> 6
        cur = 2 * self._rank(p) - p
        q = self._scan_bwd(words[w], 0, ((p - 1) & 63) + 1, cur, t)
        if q >= 0:
            return (w << 6) + q
        w = self._prev_word_leq(w - 1, t)
        if w < 0:
            return -1
        cur = 2 * self._rd[w + 1] - ((w + 1) << 6)
        return (w << 6) + self._scan_bwd(words[w], 0, 64, cur, t)

    # -- tree operations ----------------------------------------------------

    def depth(self, x):
        self._check(x)
        return 2 * x - self._open(x) - 2

    def subtree_size(self, x):
        self._check(x)
        p = self._open(x)
        c = self._fwd(p, 2 * x - p - 2)
        return (c - p + 1) >> 1

    def subtree_range(self, x):
        """Preorder range ``(x, last)`` of the subtree of ``x``."""
        return x, x + self.subtree_size(x) - 1

    def rleaf(self, x):
        """Rightmost leaf below ``x``: the last node of its subtree in preorder."""
        return x + self.subtree_size(x) - 1

    def is_ancestor(self, x, y):
        """True when ``x`` is an ancestor of ``y`` (or ``x == y``)."""
        self._check(y)
        return x <= y < x + self.subtree_size(x)

    def is_leaf(self, x):
        self._check(x)
        return x == self.n or self.depth(x + 1) <= self.depth(x)

    def parent(self, x):
        self._check(x)
        if x == 1:
            return None
        p = self._open(x)
        q = self._bwd(p, 2 * x - p - 3)
        return self._rank(q + 2)

    def lca(self, x, y):
        self._check(x)
        self._check(y)
        if x == y:
            return x
        if x > y:
            x, y = y, x
        px = self._open(x)
        m = self._min_excess(px, self._open(y))
        if m >= 2 * x - px - 1:
            return x
        return self._rank(self._bwd(px, m - 1) + 2)

    def distance(self, x, y):
        self._check(x)
        self._check(y)
        if x == y:
            return 0
        if x > y:
            x, y = y, x
        px = self._open(x)
        py = self._open(y)
        m = self._min_excess(px, py)
        return 2 * (x + y) - px - py - 2 - 2 * m

    def children(self, x):
        """Children of ``x`` in order (linear in their number)."""
        last = self.rleaf(x)
        out = []
        c = x + 1
        while c <= last:
            out.append(c)
            c += self.subtree_size(c)
        return out

    # -- bulk arrays for construction -------------------------------------

    def tree_arrays(self):
        """Per-node ``depth``, ``parent`` and subtree ``end`` as int64 arrays.

        Arrays have length ``n + 1`` and are indexed by preorder rank (entry 0
        unused, ``parent[1] == 0``).  Intended as scratch space for builders;
        none of the query structures keep them.
        """
        bits = self.bits().astype(np.int64)
        n, m = self.n, self._m
        exc = np.cumsum(bits * 2 - 1)
        pos = np.arange(m, dtype=np.int64)
        open_pos = pos[bits == 1]
        close_pos = pos[bits == 0]
        lvl_open = exc[open_pos]  # depth + 1
        depth = np.zeros(n + 1, dtype=np.int64)
        depth[1:] = lvl_open - 1
        # parent: last open before p at level lvl - 1
        okey = lvl_open * m + open_pos
        order = np.argsort(okey, kind="stable")
        sorted_keys = okey[order]
        idx = np.searchsorted(sorted_keys, (lvl_open - 1) * m + open_pos) - 1
        parent = np.zeros(n + 1, dtype=np.int64)
        parent[2:] = order[idx[1:]] + 1
        # matching close: first close after p whose level (E + 1) equals lvl
        ckey = (exc[close_pos] + 1) * m + close_pos
        corder = np.argsort(ckey, kind="stable")
        csorted = ckey[corder]
        cidx = np.searchsorted(csorted, lvl_open * m + open_pos)
        close = close_pos[corder[cidx]]
        end = np.zeros(n + 1, dtype=np.int64)
        end[1:] = np.arange(1, n + 1) + (close - open_pos + 1) // 2 - 1
        return depth, parent, end

    def space_bits(self):
        return {
            "topology": self._m,
            "rank_directory": int_bits(self._rd),
            "excess_directory": sum(int_bits(np.asarray(lv) + 1) for lv in self._st),
        }
