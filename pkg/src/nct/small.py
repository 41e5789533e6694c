"""Nearest colored node for small alphabets.

The tree is cut into mini-trees of size ``L'`` and every mini-tree into
micro-trees of size ``L``.  A query for ``x`` looks at five candidates:

1. the nearest ``alpha``-node inside x's micro-tree, read from a table
   keyed by the micro-tree's shape and coloring;
2. and 3. the nearest ``alpha``-node in the enclosing mini-tree to the root
   and to the boundary leaf of x's micro-tree;
4. and 5. the nearest ``alpha``-node anywhere in the tree to the root and to
   the boundary leaf of x's mini-tree.

A shortest path that leaves a piece must cross one of its boundary nodes, so
the best of the five is a nearest node.
"""

import math
import threading
from bisect import bisect_right
from collections import deque

import numpy as np

from .colors import ColorSeq
from .decomp import decompose, piece_arrays, pieces_from_arrays
from .errors import ColorAbsent, OutOfBounds, ParameterInfeasible
from .space import int_bits

TABLE_LIMIT = 1 << 20

_shape_cache = {}
_shape_lock = threading.Lock()


def default_params(n, sigma):
    """Micro size ``L`` and mini size ``L'`` for an ``n``-node tree."""
    lg = math.log2(n) if n > 1 else 0.0
    lsig = max(1.0, math.log2(sigma)) if sigma > 1 else 1.0
    L = max(2, math.floor(lg / (2 * lsig)))
    L_prime = max(L, math.ceil(lg * lg))
    return L, L_prime


def _shape_answers(bp, colors):
    """For each color, the nearest same-colored node to every node of a shape.

    Returns ``{alpha: ((local, dist), ...)}`` with one pair per node in
    preorder; ties go to the smaller local index.
    """
    k = len(colors)
    parent = [-1] * k
    stack = []
    v = 0
    for ch in bp:
        if ch == "(":
            parent[v] = stack[-1] if stack else -1
            stack.append(v)
            v += 1
        else:
            stack.pop()
    adj = [[] for _ in range(k)]
    for u in range(1, k):
        adj[u].append(parent[u])
        adj[parent[u]].append(u)
    dist = []
    for s in range(k):
        d = [-1] * k
        d[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            for w in adj[u]:
                if d[w] < 0:
                    d[w] = d[u] + 1
                    q.append(w)
        dist.append(d)
    out = {}
    for alpha in set(colors):
        src = [u for u in range(k) if colors[u] == alpha]
        out[alpha] = tuple(min((dist[u][s], s) for s in src)[::-1] for u in range(k))
    return out


def _parens_from_depths(depths):
    out = []
    prev = -1
    for d in depths:
        out.append(")" * (prev - d + 1) + "(")
        prev = d
    out.append(")" * (prev + 1))
    return "".join(out)


def shape_table(bp, colors):
    """Universal lookup table entry for a colored shape, built on first use."""
    key = (bp, tuple(colors))
    hit = _shape_cache.get(key)
    if hit is not None:
        return hit
    with _shape_lock:
        hit = _shape_cache.get(key)
        if hit is None:
            hit = _shape_answers(bp, key[1])
            _shape_cache[key] = hit
    return hit


def nearest_in_forest(parent, depth, colors, sigma):
    """Nearest node of every color to every node of a forest.

    ``parent`` is a preorder parent array (``-1`` at roots), ``depth`` the
    depth within each tree and ``colors`` values in ``1..sigma``.  Returns
    ``(node, dist)`` arrays of shape ``(m, sigma)``; ``node`` is ``-1`` where
    a color is absent from that tree.  Ties go to the smaller index.
    """
    parent = np.asarray(parent, dtype=np.int64)
    depth = np.asarray(depth, dtype=np.int64)
    m = parent.size
    step = m + 1
    inf = np.iinfo(np.int64).max // 2
    key = np.full((m, sigma), inf, dtype=np.int64)
    idx = np.arange(m, dtype=np.int64)
    key[idx, np.asarray(colors, dtype=np.int64) - 1] = idx
    order = np.argsort(depth, kind="stable")
    bounds = np.searchsorted(depth[order], np.arange(int(depth.max()) + 2))
    levels = [order[bounds[d]:bounds[d + 1]] for d in range(1, bounds.size - 1)]
    for nodes in reversed(levels):
        par = parent[nodes]
        # siblings at one level are contiguous and ordered by parent
        starts = np.flatnonzero(np.concatenate(([True], par[1:] != par[:-1])))
        best = np.minimum.reduceat(key[nodes], starts, axis=0) + step
        tgt = par[starts]
        key[tgt] = np.minimum(key[tgt], best)
    for nodes in levels:
        key[nodes] = np.minimum(key[nodes], key[parent[nodes]] + step)
    absent = key >= inf // 2
    node = np.where(absent, -1, key % step)
    dist = np.where(absent, -1, key // step)
    return node, dist


class SmallSigmaIndex:
    """Nearest-colored-node index built on a two-level tree decomposition."""

    def __init__(self, tree, colors, L=None, L_prime=None):
        if not isinstance(colors, ColorSeq):
            colors = ColorSeq(colors)
        if colors.n != tree.n:
            raise ValueError("need exactly one color per node")
        n, sigma = tree.n, colors.sigma
        dL, dLp = default_params(n, sigma)
        L = dL if L is None else int(L)
        L_prime = max(dLp, L) if L_prime is None else int(L_prime)
        if L < 2 or L_prime < L:
            raise ParameterInfeasible(f"need 2 <= L <= L' (got L={L}, L'={L_prime})")
        if sigma ** L > TABLE_LIMIT:
            raise ParameterInfeasible(f"sigma^L = {sigma}^{L} exceeds {TABLE_LIMIT}")
        self.tree = tree
        self.colors = colors
        self.n, self.sigma = n, sigma
        self.L, self.L_prime = L, L_prime
        if n == 1:
            self.mini = None
            self._empty_tables()
            return
        self._build()

    def _empty_tables(self):
        z = np.zeros(0, dtype=np.int64)
        self.mini_root = self.mini_bleaf = z
        self.mini_node = self.mini_dist = np.zeros((0, 2, self.sigma), dtype=np.int64)
        self.micro_root = self.micro_bleaf = self.micro_mini = self.micro_shape_id = z
        self.run_a = self.run_b = z
        self.run_off = np.zeros(1, dtype=np.int64)
        self.micro_node = self.micro_dist = np.zeros((0, 2, self.sigma), dtype=np.int64)
        self.shapes = []
        self._finish()

    def _build(self):
        tree, n, sigma = self.tree, self.n, self.sigma
        depth, parent, end = tree.tree_arrays()
        col = np.zeros(n + 1, dtype=np.int64)
        col[1:] = self.colors.to_numpy()
        self.mini = decompose(tree, self.L_prime)
        minis = self.mini.pieces
        M = len(minis)

        # nearest in all of T, kept only for mini boundary nodes
        gnode, gdist = nearest_in_forest(
            np.concatenate(([-1], parent[2:] - 1)), depth[1:], col[1:], sigma)
        self.mini_root = np.array([pc.root for pc in minis], dtype=np.int64)
        self.mini_bleaf = np.array([pc.boundary_leaf or 0 for pc in minis], dtype=np.int64)
        self.mini_node, self.mini_dist = self._boundary_rows(
            gnode + 1, gdist, self.mini_root - 1, self.mini_bleaf - 1)

        # concatenate the mini-trees into one forest; local order is global preorder
        glob = []
        fpar = []
        for pc in minis:
            nodes = [pc.root] + pc.members()
            base = len(glob)
            pos = {u: base + i for i, u in enumerate(nodes)}
            fpar.append(-1)
            fpar.extend(pos[int(p)] for p in parent[nodes[1:]])
            glob.extend(nodes)
        glob = np.asarray(glob, dtype=np.int64)
        fpar = np.asarray(fpar, dtype=np.int64)
        mini_off = np.cumsum([0] + [pc.size for pc in minis])
        fdepth = depth[glob] - np.repeat(depth[self.mini_root], np.diff(mini_off))
        fnode, fdist = nearest_in_forest(fpar, fdepth, col[glob], sigma)
        fnode = np.where(fnode >= 0, glob[np.maximum(fnode, 0)], 0)

        roots, bleaves, owner, shape_ids = [], [], [], []
        run_a, run_b, run_off = [], [], [0]
        shapes, shape_pos = [], {}
        glob_l = glob.tolist()
        fpar_l = fpar.tolist()
        dep_l = depth.tolist()
        col_l = col.tolist()
        offs = mini_off.tolist()
        for q in range(M):
            lo, hi = offs[q], offs[q + 1]
            local_par = [p - lo for p in fpar_l[lo:hi]]
            local_par[0] = -1
            for mp in decompose(local_par, self.L).pieces:
                nodes = [glob_l[lo + u] for u in [mp.root] + mp.members()]
                roots.append(nodes[0])
                bleaves.append(0 if mp.boundary_leaf is None else glob_l[lo + mp.boundary_leaf])
                owner.append(q)
                # maximal runs of consecutive global ids
                a = prev = nodes[1]
                for u in nodes[2:]:
                    if u != prev + 1:
                        run_a.append(a)
                        run_b.append(prev)
                        a = u
                    prev = u
                run_a.append(a)
                run_b.append(prev)
                run_off.append(len(run_a))
                d0 = dep_l[nodes[0]]
                key = (_parens_from_depths([dep_l[u] - d0 for u in nodes]),
                       tuple(col_l[u] for u in nodes))
                sid = shape_pos.get(key)
                if sid is None:
                    sid = shape_pos[key] = len(shapes)
                    shapes.append(key)
                shape_ids.append(sid)
        self.micro_root = np.asarray(roots, dtype=np.int64)
        self.micro_bleaf = np.asarray(bleaves, dtype=np.int64)
        self.micro_mini = np.asarray(owner, dtype=np.int64)
        self.micro_shape_id = np.asarray(shape_ids, dtype=np.int64)
        self.run_a = np.asarray(run_a, dtype=np.int64)
        self.run_b = np.asarray(run_b, dtype=np.int64)
        self.run_off = np.asarray(run_off, dtype=np.int64)
        self.shapes = shapes

        # micro boundary rows of the forest table (forest index of each boundary)
        fpos = np.zeros(n + 1, dtype=np.int64)
        mroot_f = np.empty(len(roots), dtype=np.int64)
        mleaf_f = np.empty(len(roots), dtype=np.int64)
        for q in range(M):
            lo, hi = int(mini_off[q]), int(mini_off[q + 1])
            fpos[glob[lo + 1:hi]] = np.arange(lo + 1, hi)
            sel = self.micro_mini == q
            r = self.micro_root[sel]
            mroot_f[sel] = np.where(r == glob[lo], lo, fpos[r])
        has = self.micro_bleaf > 0
        mleaf_f[:] = -1
        mleaf_f[has] = fpos[self.micro_bleaf[has]]
        self.micro_node, self.micro_dist = self._boundary_rows(fnode, fdist, mroot_f, mleaf_f)
        self._finish()

    _ARRAYS = ("mini_root", "mini_bleaf", "mini_node", "mini_dist",
               "micro_root", "micro_bleaf", "micro_mini", "micro_shape_id",
               "run_a", "run_b", "run_off", "micro_node", "micro_dist")

    def to_arrays(self):
        """Stored components as named integer arrays (see :mod:`nct.serialize`)."""
        out = {k: getattr(self, k) for k in self._ARRAYS}
        out["params"] = np.array([self.L, self.L_prime], dtype=np.int64)
        if self.mini is not None:
            out.update({"mini." + k: v for k, v in piece_arrays(self.mini).items()})
        bps = "".join(bp for bp, _ in self.shapes)
        out["shape_bits"] = np.frombuffer(bps.encode("ascii"), dtype=np.uint8) == ord("(")
        out["shape_colors"] = np.array([c for _, cs in self.shapes for c in cs], dtype=np.int64)
        out["shape_off"] = np.cumsum([0] + [len(cs) for _, cs in self.shapes]).astype(np.int64)
        return out

    @classmethod
    def from_arrays(cls, tree, colors, arrays):
        self = cls.__new__(cls)
        self.tree, self.colors = tree, colors
        self.n, self.sigma = tree.n, colors.sigma
        self.L, self.L_prime = (int(v) for v in arrays["params"])
        for k in cls._ARRAYS:
            setattr(self, k, np.asarray(arrays[k], dtype=np.int64))
        if "mini.root" in arrays:
            cols = {k[5:]: v for k, v in arrays.items() if k.startswith("mini.")}
            self.mini = pieces_from_arrays(cols, self.n, self.L_prime, base=1)
        else:
            self.mini = None
        off = np.asarray(arrays["shape_off"]).tolist()
        bits = np.asarray(arrays["shape_bits"], dtype=bool)
        cs = np.asarray(arrays["shape_colors"]).tolist()
        self.shapes = []
        for a, b in zip(off, off[1:]):
            bp = "".join("(" if v else ")" for v in bits[2 * a:2 * b].tolist())
            self.shapes.append((bp, tuple(cs[a:b])))
        self._finish()
        return self

    @staticmethod
    def _boundary_rows(node, dist, at_root, at_leaf):
        """Stack table rows for piece roots and boundary leaves (``-1`` = none)."""
        P, sigma = at_root.size, node.shape[1]
        out_n = np.zeros((P, 2, sigma), dtype=np.int64)
        out_d = np.full((P, 2, sigma), -1, dtype=np.int64)
        out_n[:, 0] = node[at_root]
        out_d[:, 0] = dist[at_root]
        has = at_leaf >= 0
        out_n[has, 1] = node[at_leaf[has]]
        out_d[has, 1] = dist[at_leaf[has]]
        out_n[out_d < 0] = 0
        return out_n, out_d

    def _finish(self):
        """Derive query-time directories from the stored arrays."""
        self._tables = [shape_table(bp, cs) for bp, cs in self.shapes]
        order = np.argsort(self.run_a, kind="stable")
        self._run_starts = self.run_a[order].tolist()
        self._run_ends = self.run_b[order].tolist()
        piece_of_run = np.repeat(np.arange(self.micro_root.size), np.diff(self.run_off))
        self._run_piece = piece_of_run[order].tolist()
        self._ra = self.run_a.tolist()
        self._rb = self.run_b.tolist()
        self._roff = self.run_off.tolist()
        self._mroot = self.micro_root.tolist()
        self._mleaf = self.micro_bleaf.tolist()
        self._mmini = self.micro_mini.tolist()
        self._mshape = self.micro_shape_id.tolist()
        self._micro_node = self.micro_node.tolist()
        self._micro_dist = self.micro_dist.tolist()
        self._mini_node = self.mini_node.tolist()
        self._mini_dist = self.mini_dist.tolist()
        self._qroot = self.mini_root.tolist()
        self._qleaf = self.mini_bleaf.tolist()

    # -- piece lookup -------------------------------------------------------

    def _locate(self, x):
        """Micro piece holding ``x`` and x's 0-based local index in it."""
        if x == 1:
            return 0, 0  # the first micro piece is rooted at the tree root
        k = bisect_right(self._run_starts, x) - 1
        p = self._run_piece[k]
        local = 1
        for r in range(self._roff[p], self._roff[p + 1]):
            a, b = self._ra[r], self._rb[r]
            if x <= b and x >= a:
                return p, local + x - a
            local += b - a + 1
        raise AssertionError("run directory is inconsistent")

    def _global(self, p, local):
        if local == 0:
            return self._mroot[p]
        local -= 1
        for r in range(self._roff[p], self._roff[p + 1]):
            a, b = self._ra[r], self._rb[r]
            if local <= b - a:
                return a + local
            local -= b - a + 1
        raise AssertionError("local index outside piece")

    def micro_shape(self, x):
        """``(bp, color string, local rank)`` of the micro piece holding ``x``.

        Colors are concatenated digits when ``sigma <= 9`` and comma separated
        otherwise; the local rank is 1-based with the piece root at 1.
        """
        self._check_node(x)
        if self.n == 1 or x == 1:
            raise OutOfBounds("the tree root is not a non-root member of any micro piece")
        p, local = self._locate(x)
        bp, cs = self.shapes[self._mshape[p]]
        sep = "" if self.sigma <= 9 else ","
        return bp, sep.join(map(str, cs)), local + 1

    def micro_piece_nodes(self, x):
        """Nodes of the micro piece holding ``x`` (root first, then preorder)."""
        self._check_node(x)
        if self.n == 1:
            return [1]
        p, _ = self._locate(x)
        size = 1 + sum(b - a + 1 for a, b in zip(self._ra[self._roff[p]:self._roff[p + 1]],
                                                  self._rb[self._roff[p]:self._roff[p + 1]]))
        return [self._global(p, i) for i in range(size)]

    def _check_node(self, x):
        if not 1 <= x <= self.n:
            raise OutOfBounds(f"node {x} outside 1..{self.n}")

    # -- queries ------------------------------------------------------------

    def query(self, x, alpha):
        """Nearest ``alpha``-node to ``x`` as ``(node, distance)``."""
        self._check_node(x)
        colors = self.colors
        if colors.count(alpha) == 0:
            raise ColorAbsent(f"no node has color {alpha}")
        if colors.access(x) == alpha:
            return x, 0
        tree = self.tree
        a = alpha - 1
        p, local = self._locate(x)
        best = None
        hit = self._tables[self._mshape[p]].get(alpha)
        if hit is not None:
            li, d = hit[local]
            best = (d, self._global(p, li))
        dx = tree.depth(x)
        q = self._mmini[p]
        # Each entry gives an upper bound through a boundary node; the
        # candidate on a shortest path meets it exactly.
        for node_row, dist_row, via, above in (
            (self._micro_node[p][0], self._micro_dist[p][0], self._mroot[p], True),
            (self._micro_node[p][1], self._micro_dist[p][1], self._mleaf[p], False),
            (self._mini_node[q][0], self._mini_dist[q][0], self._qroot[q], True),
            (self._mini_node[q][1], self._mini_dist[q][1], self._qleaf[q], False),
        ):
            d = dist_row[a]
            if d < 0:
                continue
            d += dx - tree.depth(via) if above else tree.distance(x, via)
            cand = (d, node_row[a])
            if best is None or cand < best:
                best = cand
        return best[1], best[0]

    # -- accounting ---------------------------------------------------------

    def space_bits(self):
        """Measured bits per component."""
        out = {"topology": self.tree.space_bits()["topology"]}
        tdir = self.tree.space_bits()
        out["tree_directories"] = tdir["rank_directory"] + tdir["excess_directory"]
        cs = self.colors.space_bits()
        out["colors.raw"] = cs["raw"]
        out["colors.directory"] = cs["occurrence_directory"]
        out["mini_pieces"] = sum(
            int_bits(a) for a in (self.mini_root, self.mini_bleaf))
        out["mini_table"] = int_bits(self.mini_node) + int_bits(self.mini_dist)
        out["micro_pieces"] = sum(
            int_bits(a) for a in (self.micro_root, self.micro_bleaf, self.micro_mini,
                                  self.micro_shape_id, self.run_a, self.run_b, self.run_off))
        out["micro_table"] = int_bits(self.micro_node) + int_bits(self.micro_dist)
        out["lookup_table"] = sum(
            _table_bits(t, len(cs), self.colors.raw_bits() // self.n)
            for t, (_, cs) in zip(self._tables, self.shapes))
        return out


def _table_bits(table, k, color_width):
    """Key (shape and coloring) plus a (node, distance) pair per node and color."""
    w = max(1, (k - 1).bit_length())
    return 2 * k + k * color_width + sum(len(v) * 2 * w for v in table.values())


def build_small(tree, colors, L=None, L_prime=None):
    return SmallSigmaIndex(tree, colors, L, L_prime)


def query_small(idx, x, alpha):
    return idx.query(x, alpha)
