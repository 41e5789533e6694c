"""Nearest colored node for large alphabets.

Colors with fewer than ``L`` occurrences are answered by scanning their
occurrences.  For every other color ``alpha`` the index keeps

* ``T_alpha``: the tree induced on the alpha-nodes closed under lowest
  common ancestors, with its parent pointers;
* a decomposition of ``T_alpha`` into pieces of at most ``L`` nodes, whose
  macro tree carries three weights per piece and, per macro node, the
  descendant and non-descendant macro node at minimum weighted distance;
* a block-sampled RMQ over the depths of the alpha-nodes in preorder.

A query for ``x`` finds ``z``, the lowest ancestor of ``x`` whose subtree
holds alpha-nodes outside x's subtree, then ``y``, the topmost node of
``T_alpha`` below ``z``.  The answer is the best of the nearest
alpha-descendant of ``x``, the nearest alpha-descendant of ``y`` and the
nearest alpha-node outside y's subtree.
"""

import math
from bisect import bisect_left

import numpy as np

from .colors import ColorSeq
from .decomp import MacroTree, decompose, piece_arrays, pieces_from_arrays
from .errors import ColorAbsent, NoAlphaDescendant, OutOfBounds
from .rmq import SampledRMQ
from .space import int_bits

INF = math.inf


def default_threshold(n):
    lg = math.log2(n) if n > 1 else 0.0
    return max(2, math.ceil(math.sqrt(lg)))


def _range_min_keys(key, lo, hi):
    """``min(key[lo[i]:hi[i]])`` for nonempty ranges, vectorized."""
    idx = np.empty(2 * lo.size, dtype=np.int64)
    idx[0::2] = lo
    idx[1::2] = hi
    return np.minimum.reduceat(key, idx)[0::2]


def _adjacent_lcas(a, b, dkey, parent, end, step):
    """LCA of each pair ``a[i] < b[i]`` from scratch tree arrays."""
    low = _range_min_keys(dkey, a + 1, b + 1) % step
    return np.where(b <= end[a], a, parent[low])


class AlphaTree:
    """The nodes ``Y`` of ``T_alpha`` (sorted preorder ranks) and parents.

    ``parent[k]`` is the index in ``Y`` of the parent of ``Y[k]``; the
    topmost node is ``Y[0]`` with parent ``-1``.
    """

    def __init__(self, alpha, Y, parent, is_alpha):
        self.alpha = alpha
        self.Y = np.asarray(Y, dtype=np.int64)
        self.parent = np.asarray(parent, dtype=np.int64)
        self.is_alpha = np.asarray(is_alpha, dtype=bool)
        self._Y = self.Y.tolist()

    @classmethod
    def build(cls, alpha, occ, arrays):
        depth, parent, end, dkey, step = arrays
        occ = np.asarray(occ, dtype=np.int64)
        if occ.size == 0:
            raise ColorAbsent(f"no node has color {alpha}")
        lcas = _adjacent_lcas(occ[:-1], occ[1:], dkey, parent, end, step)
        Y = np.union1d(occ, lcas)
        par = np.full(Y.size, -1, dtype=np.int64)
        if Y.size > 1:
            up = _adjacent_lcas(Y[:-1], Y[1:], dkey, parent, end, step)
            par[1:] = np.searchsorted(Y, up)
        is_alpha = np.isin(Y, occ, assume_unique=True)
        return cls(alpha, Y, par, is_alpha)

    def __len__(self):
        return self.Y.size

    def index(self, v):
        """Position of node ``v`` in ``Y``, or None."""
        k = bisect_left(self._Y, v)
        return k if k < len(self._Y) and self._Y[k] == v else None


class WeightedMacro:
    """Macro tree of ``T_alpha`` with weights and nearest weighted nodes.

    Macro node lists (``w1``, ``w2``, ``w3``, ``nd``, ``nnd``, ``parent``)
    are indexed ``1..M``; entry 0 is padding.  ``nd``/``nnd`` hold 0 when no
    candidate has a finite weighted distance.
    """

    def __init__(self, at, macro, w1, w2, w3, nd=None, nnd=None):
        self.at = at
        self.macro = macro
        self.parent = macro.parent
        self.size = macro.size
        self.w1, self.w2, self.w3 = list(w1), list(w2), list(w3)
        if nd is None:
            nd, nnd = self._precompute()
        self.nd, self.nnd = list(nd), list(nnd)
        Y = at.Y
        self.alpha_members = [[]] + [
            [int(Y[u]) for u in macro.members(v) if at.is_alpha[u]]
            for v in range(1, self.size + 1)
        ]
        cum = [0.0] * (self.size + 1)
        for v in range(2, self.size + 1):  # parents precede children
            cum[v] = cum[self.parent[v]] + self.w1[v]
        self._cum = cum

    @classmethod
    def build(cls, at, L, depth):
        d = decompose(at.parent.tolist(), L)
        macro = MacroTree(d)
        M = macro.size
        dep = depth[at.Y].tolist()
        par = at.parent.tolist()
        isa = at.is_alpha.tolist()
        w1, w2, w3 = [0] * (M + 1), [INF] * (M + 1), [INF] * (M + 1)
        for v in range(1, M + 1):
            pc = macro.piece(v)
            mem = pc.members()
            r = pc.root
            hits = [u for u in mem if isa[u]]
            if hits:
                w2[v] = min(dep[u] for u in hits) - dep[r]
            b = pc.boundary_leaf
            if b is None:
                continue
            w1[v] = dep[b] - dep[r]
            if hits:
                anc = set()
                a = b
                while a != r:
                    anc.add(a)
                    a = par[a]
                anc.add(r)
                best = INF
                for u in hits:
                    a = u
                    while a not in anc:
                        a = par[a]
                    best = min(best, dep[b] + dep[u] - 2 * dep[a])
                w3[v] = best
        return cls(at, macro, w1, w2, w3)

    def _precompute(self):
        M, par = self.size, self.parent
        w1, w2, w3 = self.w1, self.w2, self.w3
        kids = [[] for _ in range(M + 1)]
        for v in range(2, M + 1):
            kids[par[v]].append(v)
        none = (INF, 0)
        # best descendant reached by entering v's subtree at its root
        enter = [none] * (M + 1)
        below = [none] * (M + 1)
        for v in range(M, 0, -1):
            b = min((enter[c] for c in kids[v]), default=none)
            below[v] = b
            enter[v] = min((w2[v], v), (w1[v] + b[0], b[1]))
        above = [none] * (M + 1)
        for p in range(1, M + 1):
            ch = kids[p]
            if not ch:
                continue
            base = min((w3[p], p), (w1[p] + above[p][0], above[p][1]))
            ranked = sorted((enter[c], c) for c in ch)
            for c in ch:
                sib = ranked[0][0] if ranked[0][1] != c else (ranked[1][0] if len(ranked) > 1 else none)
                above[c] = min(base, sib)
        nd = [b[1] if b[0] < INF else 0 for b in below]
        nnd = [a[1] if a[0] < INF else 0 for a in above]
        return nd, nnd

    def weighted_distance(self, v, w):
        """Weighted distance from macro node ``v`` to macro node ``w != v``."""
        if v == w:
            raise ValueError("weighted distance needs two distinct macro nodes")
        a = self.macro.lca(v, w)
        cum, w1 = self._cum, self.w1
        total = cum[v] + cum[w] - 2 * cum[a]
        if v != a:
            total -= w1[v]
        if w != a:
            total -= w1[w]
        return total + (self.w3[w] if w == a else self.w2[w])

    def map_node(self, y_index):
        return self.macro.map_node(y_index)


class LargeSigmaIndex:
    """Nearest-colored-node index for arbitrary alphabets."""

    def __init__(self, tree, colors, L=None, _parts=None):
        if not isinstance(colors, ColorSeq):
            colors = ColorSeq(colors)
        if colors.n != tree.n:
            raise ValueError("need exactly one color per node")
        self.tree = tree
        self.colors = colors
        self.n, self.sigma = tree.n, colors.sigma
        self.L = default_threshold(self.n) if L is None else int(L)
        if self.L < 2:
            raise ValueError("frequency threshold must be at least 2")
        self.alpha_trees = {}
        self.macros = {}
        self.rmqs = {}
        if _parts is not None:
            for alpha, (at, wm, rmq) in _parts.items():
                self.alpha_trees[alpha], self.macros[alpha], self.rmqs[alpha] = at, wm, rmq
            return
        freq = [a for a in range(1, self.sigma + 1) if colors.count(a) >= self.L]
        if not freq:
            return
        depth, parent, end = tree.tree_arrays()
        step = self.n + 1
        dkey = np.append(depth * step + np.arange(step), 0)
        arrays = (depth, parent, end, dkey, step)
        for alpha in freq:
            occ = np.asarray(colors.occurrences(alpha), dtype=np.int64)
            at = AlphaTree.build(alpha, occ, arrays)
            self.alpha_trees[alpha] = at
            self.macros[alpha] = WeightedMacro.build(at, self.L, depth)
            self.rmqs[alpha] = SampledRMQ(depth[occ], self.L)

    def to_arrays(self):
        """Stored components as named integer arrays (see :mod:`nct.serialize`)."""
        out = {"params": np.array([self.L], dtype=np.int64),
               "alphas": np.array(sorted(self.alpha_trees), dtype=np.int64)}
        for alpha in sorted(self.alpha_trees):
            at, wm, rmq = self.alpha_trees[alpha], self.macros[alpha], self.rmqs[alpha]
            pre = f"a{alpha}."
            out[pre + "Y"] = at.Y
            out[pre + "parent"] = at.parent
            for k, v in piece_arrays(wm.macro.decomposition).items():
                out[pre + "piece." + k] = v
            out[pre + "w"] = np.stack([_finite(w[1:]) for w in (wm.w1, wm.w2, wm.w3)])
            out[pre + "nd"] = np.array([wm.nd[1:], wm.nnd[1:]], dtype=np.int64)
            out[pre + "A_prime"] = rmq.A_prime
            out[pre + "B"] = rmq.B
        return out

    @classmethod
    def from_arrays(cls, tree, colors, arrays):
        L = int(arrays["params"][0])
        parts = {}
        for alpha in np.asarray(arrays["alphas"]).tolist():
            pre = f"a{alpha}."
            Y = np.asarray(arrays[pre + "Y"], dtype=np.int64)
            is_alpha = colors.to_numpy()[Y - 1] == alpha
            at = AlphaTree(alpha, Y, arrays[pre + "parent"], is_alpha)
            cols = {k[len(pre) + 6:]: v for k, v in arrays.items() if k.startswith(pre + "piece.")}
            macro = MacroTree(pieces_from_arrays(cols, Y.size, L))
            w = [[0] + [INF if v < 0 else v for v in row] for row in np.asarray(arrays[pre + "w"]).tolist()]
            nd, nnd = ([0] + row for row in np.asarray(arrays[pre + "nd"]).tolist())
            wm = WeightedMacro(at, macro, *w, nd=nd, nnd=nnd)
            rmq = SampledRMQ.from_blocks(arrays[pre + "A_prime"], arrays[pre + "B"],
                                         colors.count(alpha), L)
            parts[alpha] = (at, wm, rmq)
        return cls(tree, colors, L, _parts=parts)

    def is_frequent(self, alpha):
        return alpha in self.alpha_trees

    def _check(self, x, alpha):
        if not 1 <= x <= self.n:
            raise OutOfBounds(f"node {x} outside 1..{self.n}")
        if self.colors.count(alpha) == 0:
            raise ColorAbsent(f"no node has color {alpha}")

    # -- the pieces of a query ---------------------------------------------

    def z_node(self, x, alpha):
        """Lowest ancestor of ``x`` with an alpha-node outside x's subtree.

        Compares the last alpha-node strictly before ``x`` in preorder with the first
        one after x's subtree and keeps the deeper of their LCAs with ``x``.
        When every alpha-node lies below ``x`` this returns ``x``.
        """
        self._check(x, alpha)
        return self._z(x, alpha, x + self.tree.subtree_size(x) - 1)

    def _z(self, x, alpha, end_x):
        t, c = self.tree, self.colors
        after = end_x + 1
        best = None
        before = c.pred(alpha, x - 1) if x > 1 else None
        for p in (before, c.succ(alpha, after) if after <= self.n else None):
            if p is None:
                continue
            a = t.lca(p, x)
            if best is None or t.depth(a) > t.depth(best):
                best = a
        return x if best is None else best

    def y_node(self, z, alpha):
        """Topmost node of ``T_alpha`` in the subtree of ``z``."""
        self._check(z, alpha)
        return self._y(z, alpha, z + self.tree.subtree_size(z) - 1)

    def _y(self, z, alpha, r):
        t, c = self.tree, self.colors
        s = c.succ(alpha, z)
        if s is None or s > r:
            raise NoAlphaDescendant(f"node {z} has no descendant of color {alpha}")
        return t.lca(s, c.pred(alpha, r))

    def nearest_desc(self, v, alpha):
        """Nearest alpha-descendant of ``v`` (inclusive) as ``(node, distance)``."""
        self._check(v, alpha)
        return self._desc(v, alpha, v + self.tree.subtree_size(v) - 1)

    def _desc(self, v, alpha, end_v):
        t, c, L = self.tree, self.colors, self.L
        rmq = self.rmqs[alpha]
        i = c.rank(alpha, v - 1) + 1
        j = c.rank(alpha, end_v)
        if i > j:
            return None
        i2 = ((i - 1 + L - 1) // L) * L + 1
        j2 = (j // L) * L
        if i2 <= j2:
            ranks = list(range(i, i2)) + [rmq.rmq_aligned(i2, j2)] + list(range(j2 + 1, j + 1))
        else:
            ranks = range(i, j + 1)
        best = min((t.depth(u), u) for u in (c.select(alpha, k) for k in ranks))
        return best[1], best[0] - t.depth(v)

    def nondesc_candidates(self, y, z, alpha, end_z=None):
        """Alpha-nodes enumerated when looking outside the subtree of ``y``.

        ``z`` is the ancestor of ``y`` that ``y`` was derived from; the
        alpha-nodes first and last in z's subtree locate ``y`` in the macro
        tree.  The list may include descendants of ``y``.
        """
        at, wm = self.alpha_trees[alpha], self.macros[alpha]
        t, c = self.tree, self.colors
        out = [at._Y[0]] if at.is_alpha[0] else []  # the root of T_alpha is in no member set
        if y == at._Y[0]:
            return out
        s = c.succ(alpha, z)
        p = c.pred(alpha, t.rleaf(z) if end_z is None else end_z)
        y1 = wm.macro.lca(wm.map_node(at.index(s)), wm.map_node(at.index(p)))
        y2 = wm.parent[y1]
        group = {y1, wm.nnd[y1], wm.nd[y1]}
        if y2:
            group |= {y2, wm.nnd[y2]}
        for v in sorted(group):
            if v:
                out.extend(wm.alpha_members[v])
        return out

    def nearest_nondesc(self, y, z, alpha):
        """Nearest alpha-node outside the subtree of ``y``, measured from ``y``.

        Returns None when every alpha-node descends from ``y``.
        """
        t = self.tree
        return self._nondesc(y, z, alpha, y + t.subtree_size(y) - 1, None)

    def _nondesc(self, y, z, alpha, end, end_z):
        t = self.tree
        best = None
        for u in self.nondesc_candidates(y, z, alpha, end_z):
            if y <= u <= end:
                continue
            cand = (t.distance(y, u), u)
            if best is None or cand < best:
                best = cand
        return None if best is None else (best[1], best[0])

    def query(self, x, alpha):
        """Nearest ``alpha``-node to ``x`` as ``(node, distance)``."""
        self._check(x, alpha)
        c, t = self.colors, self.tree
        if c.access(x) == alpha:
            return x, 0
        if alpha not in self.alpha_trees:
            return min((t.distance(x, u), u) for u in c.occurrences(alpha))[::-1]
        size = t.subtree_size
        end_x = x + size(x) - 1
        z = self._z(x, alpha, end_x)
        end_z = end_x if z == x else z + size(z) - 1
        y = self._y(z, alpha, end_z)
        end_y = end_z if y == z else y + size(y) - 1
        cands = []
        hit = self._desc(x, alpha, end_x)
        if hit is not None:
            cands.append((hit[1], hit[0]))
        for hit in (self._desc(y, alpha, end_y), self._nondesc(y, z, alpha, end_y, end_z)):
            if hit is not None:
                cands.append((t.distance(x, hit[0]), hit[0]))
        d, u = min(cands)
        return u, d

    # -- accounting ---------------------------------------------------------

    def space_bits(self):
        out = {"topology": self.tree.space_bits()["topology"]}
        tdir = self.tree.space_bits()
        out["tree_directories"] = tdir["rank_directory"] + tdir["excess_directory"]
        cs = self.colors.space_bits()
        out["colors.raw"] = cs["raw"]
        out["colors.directory"] = cs["occurrence_directory"]
        ybits = wbits = rbits = 0
        for alpha, at in self.alpha_trees.items():
            ybits += int_bits(at.Y) + int_bits(at.parent)
            wm = self.macros[alpha]
            ints = [_finite(w) for w in (wm.w1[1:], wm.w2[1:], wm.w3[1:])]
            wbits += sum(int_bits(a) for a in ints) + int_bits(wm.nd) + int_bits(wm.nnd)
            wbits += sum(int_bits(a) for a in piece_arrays(wm.macro.decomposition).values())
            rbits += sum(self.rmqs[alpha].space_bits().values())
        out["alpha_trees"] = ybits
        out["weighted_macro"] = wbits
        out["sampled_rmq"] = rbits
        return out


def _finite(ws):
    """Weights with infinity stored as -1."""
    return np.asarray([-1 if w == INF else w for w in ws], dtype=np.int64)


def build_large(tree, colors, L=None):
    return LargeSigmaIndex(tree, colors, L)


def query_large(idx, x, alpha):
    return idx.query(x, alpha)
