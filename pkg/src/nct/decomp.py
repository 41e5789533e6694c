"""Edge-disjoint decomposition of a tree into small connected pieces.

A piece is a connected subtree with between 2 and ``L`` nodes.  Pieces share
nodes only at their boundary: a piece's root and at most one of its leaves
(the boundary leaf), which is the root of further pieces.  Each edge lies in
exactly one piece, so every node except the tree root is a non-root member of
exactly one piece.  The non-root members of a piece occupy at most two
preorder intervals.

Trees are given either as a :class:`~nct.bp.BPTree` (node ids ``1..n``) or
as 0-based preorder parent lists (``parent[0] == -1``, node ids ``0..m-1``),
so the same code decomposes the input tree, a mini-tree, or a compressed
per-color tree.  Piece node ids follow the input's numbering.

The greedy works bottom-up.  Each node either passes a small residual
component to its parent, or, when its children's residuals no longer fit,
cuts them into pieces rooted at itself and passes up only itself (as the
boundary leaf of the piece above).
"""

from bisect import bisect_right
from dataclasses import dataclass

import numpy as np

from .bp import BPTree
from .errors import DegenerateTree, NoOwningPiece


@dataclass(frozen=True)
class Piece:
    root: int
    boundary_leaf: int | None
    intervals: tuple

    @property
    def size(self):
        return 1 + sum(b - a + 1 for a, b in self.intervals)

    def members(self):
        """Non-root nodes in preorder."""
        return [u for a, b in self.intervals for u in range(a, b + 1)]


def _shift(d, k):
    pieces = [
        Piece(pc.root + k, None if pc.boundary_leaf is None else pc.boundary_leaf + k,
              tuple((a + k, b + k) for a, b in pc.intervals))
        for pc in d.pieces
    ]
    return Decomposition(d.m, d.L, pieces, d.base + k)


def _subtree_ends(parent):
    end = list(range(len(parent)))
    for u in range(len(parent) - 1, 0, -1):
        p = parent[u]
        if end[u] > end[p]:
            end[p] = end[u]
    return end


class Decomposition:
    """Pieces of a tree, ordered as a preorder walk of the macro forest."""

    def __init__(self, m, L, pieces, base=0):
        self.m = m
        self.L = L
        self.base = base  # id of the tree root
        self.pieces = list(pieces)
        spans = sorted(
            (a, b, i) for i, pc in enumerate(self.pieces) for a, b in pc.intervals
        )
        self._starts = [s[0] for s in spans]
        self._ends = [s[1] for s in spans]
        self._owner = [s[2] for s in spans]

    def __len__(self):
        return len(self.pieces)

    def piece_of(self, u):
        """Index of the piece holding ``u`` as a non-root member."""
        k = bisect_right(self._starts, u) - 1
        if k < 0 or self._ends[k] < u:
            raise NoOwningPiece(f"node {u} is not a non-root member of any piece")
        return self._owner[k]


def decompose(tree, L):
    """Decompose ``tree`` into pieces of between 2 and ``L`` nodes."""
    if isinstance(tree, BPTree):
        par = tree.tree_arrays()[1][1:] - 1
        return _shift(decompose(par.tolist(), L), 1)
    parent = tree
    m = len(parent)
    if m < 2:
        raise DegenerateTree("decomposition needs at least two nodes")
    if L < 2:
        raise ValueError("piece size bound L must be at least 2")
    children = [[] for _ in range(m)]
    for u in range(1, m):
        children[parent[u]].append(u)
    end = _subtree_ends(parent)
    cap = L - 1  # non-root nodes allowed per piece
    resid = [0] * m
    bnode = [-1] * m
    raw = []  # (root, first member, boundary leaf, intervals)

    def emit(v, group, b):
        first, last = group[0], end[group[-1]]
        if b < 0:
            ivs = ((first, last),)
        elif end[b] < last:
            ivs = ((first, b), (end[b] + 1, last))
        else:
            ivs = ((first, b),)
        raw.append((v, first, None if b < 0 else b, ivs))

    for v in range(m - 1, -1, -1):
        ch = children[v]
        total = 0
        nb = 0
        carried = -1
        for c in ch:
            total += resid[c]
            if bnode[c] >= 0:
                nb += 1
                carried = bnode[c]
        if v and total + 1 <= cap and nb <= 1:
            resid[v] = total + 1
            bnode[v] = carried
            continue
        group = []
        gsize = 0
        gb = -1
        for c in ch:
            if group and (gsize + resid[c] > cap or (gb >= 0 and bnode[c] >= 0)):
                emit(v, group, gb)
                group, gsize, gb = [], 0, -1
            group.append(c)
            gsize += resid[c]
            if bnode[c] >= 0:
                gb = bnode[c]
        emit(v, group, gb)
        resid[v] = 1
        bnode[v] = v

    # order pieces by a preorder walk of the macro forest
    by_root = {}
    for rec in raw:
        by_root.setdefault(rec[0], []).append(rec)
    for lst in by_root.values():
        lst.sort(key=lambda r: r[1])
    ordered = []
    stack = list(reversed(by_root.get(0, [])))
    while stack:
        root, _, b, ivs = stack.pop()
        ordered.append(Piece(root, b, ivs))
        if b is not None:
            stack.extend(reversed(by_root.get(b, [])))
    assert len(ordered) == len(raw)
    return Decomposition(m, L, ordered)


class MacroTree:
    """The tree whose nodes are the pieces of a decomposition.

    Macro nodes are numbered ``1..M`` in preorder.  When the tree root lies in
    several pieces, node 1 is an added singleton piece holding just the root,
    and those pieces become its children.  ``v_S1`` is the parent of ``v_S2``
    exactly when the root of ``S2`` is the boundary leaf of ``S1``.
    """

    def __init__(self, decomposition):
        d = decomposition
        self.decomposition = d
        r = d.base
        top = sum(1 for pc in d.pieces if pc.root == r)
        self.has_singleton = top > 1
        self._offset = 2 if self.has_singleton else 1
        self.pieces = ([Piece(r, None, ())] if self.has_singleton else []) + d.pieces
        self.size = len(self.pieces)
        by_leaf = {}
        for i, pc in enumerate(self.pieces):
            if pc.boundary_leaf is not None:
                by_leaf[pc.boundary_leaf] = i + 1
        parent = [0] * (self.size + 1)
        for i, pc in enumerate(self.pieces):
            v = i + 1
            if v == 1:
                continue
            parent[v] = 1 if pc.root == r else by_leaf[pc.root]
        self.parent = parent
        self.tree = BPTree.from_parents(parent)

    def __len__(self):
        return self.size

    def piece(self, v):
        return self.pieces[v - 1]

    def map_node(self, u):
        """Macro node ``v_S`` with ``u`` among the non-root members of ``S``."""
        return self.decomposition.piece_of(u) + self._offset

    def members(self, v):
        return self.pieces[v - 1].members()

    def lca(self, a, b):
        return self.tree.lca(a, b)

    def parent_of(self, v):
        return self.parent[v] or None

    def is_ancestor(self, a, b):
        return self.tree.is_ancestor(a, b)


_FIELDS = ("root", "bleaf", "s1", "e1", "s2", "e2")


def piece_arrays(d):
    """Pieces as six int64 columns; ``bleaf`` is -1 and ``(s2, e2)`` is
    ``(0, -1)`` when absent."""
    cols = {k: [] for k in _FIELDS}
    for pc in d.pieces:
        ivs = list(pc.intervals) + [(0, -1)] * (2 - len(pc.intervals))
        row = (pc.root, -1 if pc.boundary_leaf is None else pc.boundary_leaf,
               ivs[0][0], ivs[0][1], ivs[1][0], ivs[1][1])
        for k, val in zip(_FIELDS, row):
            cols[k].append(val)
    return {k: np.asarray(v, dtype=np.int64) for k, v in cols.items()}


def pieces_from_arrays(cols, m, L, base=0):
    pieces = []
    for r, b, s1, e1, s2, e2 in zip(*(np.asarray(cols[k]).tolist() for k in _FIELDS)):
        ivs = tuple(iv for iv in ((s1, e1), (s2, e2)) if iv[0] <= iv[1])
        pieces.append(Piece(r, None if b < 0 else b, ivs))
    return Decomposition(m, L, pieces, base)


def macro_tree(decomposition):
    return MacroTree(decomposition)
