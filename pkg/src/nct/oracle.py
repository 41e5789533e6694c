"""Brute-force reference implementations.

Everything here works on a plain pointer tree parsed directly from the
parenthesis string and never touches the succinct structures, so it can
arbitrate them.  Costs are linear (or worse) per query; keep inputs small.
"""

from collections import deque


class PointerTree:
    """Children/parent lists for a tree given by its parenthesis string.

    Node ids are preorder ranks ``1..n``, matching :class:`nct.bp.BPTree`.
    ``colors`` is an optional sequence of length ``n`` (preorder).
    """

    def __init__(self, parens, colors=None):
        if not isinstance(parens, str):
            parens = "".join("(" if b else ")" for b in parens)
        parent = [0]
        children = [[]]
        depth = [0]
        stack = []
        for ch in parens:
            if ch == "(":
                v = len(parent)
                parent.append(stack[-1] if stack else 0)
                depth.append(len(stack))
                children.append([])
                if stack:
                    children[stack[-1]].append(v)
                stack.append(v)
            elif ch == ")":
                if not stack:
                    raise ValueError("unbalanced parentheses")
                stack.pop()
            else:
                raise ValueError(f"unexpected character {ch!r}")
        if stack or len(parent) < 2:
            raise ValueError("unbalanced parentheses")
        self.n = len(parent) - 1
        self.parent = parent
        self.children = children
        self.depth = depth
        if colors is not None:
            colors = list(colors)
            if len(colors) != self.n:
                raise ValueError("need one color per node")
            self.color = [0] + [int(c) for c in colors]
        else:
            self.color = None
        self.end = list(range(self.n + 1))
        for v in range(self.n, 1, -1):
            p = parent[v]
            if self.end[v] > self.end[p]:
                self.end[p] = self.end[v]

    @classmethod
    def from_parents(cls, parent, colors=None):
        """Build from a 0-based preorder parent list (``parent[0] == -1``)."""
        n = len(parent)
        kids = [[] for _ in range(n)]
        for u in range(1, n):
            kids[parent[u]].append(u)
        out = []
        stack = [(0, 0)]
        while stack:
            v, i = stack.pop()
            if i == 0:
                out.append("(")
            if i < len(kids[v]):
                stack.append((v, i + 1))
                stack.append((kids[v][i], 0))
            else:
                out.append(")")
        return cls("".join(out), colors)

    def neighbors(self, v):
        if self.parent[v]:
            yield self.parent[v]
        yield from self.children[v]

    def ancestors(self, v):
        """``v`` and its ancestors, bottom-up."""
        while v:
            yield v
            v = self.parent[v]

    def is_ancestor(self, a, v):
        return a <= v <= self.end[a]

    def subtree(self, v):
        return range(v, self.end[v] + 1)

    def bfs_distances(self, src):
        dist = [-1] * (self.n + 1)
        dist[src] = 0
        queue = deque([src])
        while queue:
            v = queue.popleft()
            for u in self.neighbors(v):
                if dist[u] < 0:
                    dist[u] = dist[v] + 1
                    queue.append(u)
        return dist

    def distance(self, x, y):
        a = self.lca(x, y)
        return self.depth[x] + self.depth[y] - 2 * self.depth[a]

    def lca(self, x, y):
        par, dep = self.parent, self.depth
        while dep[x] > dep[y]:
            x = par[x]
        while dep[y] > dep[x]:
            y = par[y]
        while x != y:
            x, y = par[x], par[y]
        return x


def enumerate_shapes(n):
    """Every ordinal tree with ``n`` nodes as a parenthesis string."""
    out = []

    def grow(prefix, opens, depth):
        if opens == n and depth == 0:
            out.append(prefix)
            return
        if opens < n and (depth > 0 or opens == 0):
            grow(prefix + "(", opens + 1, depth + 1)
        # the root may only close once every node is open
        if depth > 1 or (depth == 1 and opens == n):
            grow(prefix + ")", opens, depth - 1)

    grow("", 0, 0)
    return out


def bfs_nearest(pt, x, alpha):
    """Nearest ``alpha``-node to ``x`` as ``(node, distance)``, or None.

    Searches level by level; among nodes at the minimum distance the smallest
    preorder rank wins.
    """
    seen = {x}
    level = [x]
    d = 0
    while level:
        hits = [v for v in level if pt.color[v] == alpha]
        if hits:
            return min(hits), d
        nxt = []
        for v in level:
            for u in pt.neighbors(v):
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        level = nxt
        d += 1
    return None


def all_nearest(pt, alpha, ties=False):
    """Multi-source BFS: ``(node, distance)`` nearest to every node, or None.

    Ties go to the smallest preorder rank, matching :func:`bfs_nearest`.
    With ``ties=True`` each entry gains a third field telling whether the
    nearest node is unique.
    """
    n = pt.n
    label = [0] * (n + 1)
    dist = [-1] * (n + 1)
    shared = [False] * (n + 1)
    level = [v for v in range(1, n + 1) if pt.color[v] == alpha]
    if not level:
        return [None] * (n + 1)
    for v in level:
        label[v] = v
        dist[v] = 0
    d = 0
    while level:
        proposals = {}
        for v in level:
            lv = label[v]
            for u in pt.neighbors(v):
                if dist[u] < 0:
                    cur = proposals.get(u)
                    if cur is None:
                        proposals[u] = lv
                        shared[u] = shared[v]
                    else:
                        # distinct neighbors of a tree node reach disjoint sources
                        shared[u] = True
                        if lv < cur:
                            proposals[u] = lv
        d += 1
        for u, lv in proposals.items():
            dist[u] = d
            label[u] = lv
        level = list(proposals)
    if ties:
        return [None] + [(label[v], dist[v], not shared[v]) for v in range(1, n + 1)]
    return [None] + [(label[v], dist[v]) for v in range(1, n + 1)]


def alpha_counts(pt, alpha):
    """Number of ``alpha``-nodes in every subtree."""
    cnt = [0] * (pt.n + 1)
    for v in range(pt.n, 0, -1):
        if pt.color[v] == alpha:
            cnt[v] += 1
        if pt.parent[v]:
            cnt[pt.parent[v]] += cnt[v]
    return cnt


def naive_rmq(A, i, j):
    """1-based index of the first minimum of ``A[i..j]``."""
    best = i
    for k in range(i + 1, j + 1):
        if A[k - 1] < A[best - 1]:
            best = k
    return best


def naive_z(pt, x, alpha, counts=None):
    """Lowest proper ancestor of ``x`` with an ``alpha``-descendant outside x's subtree.

    An ancestor qualifies exactly when its subtree holds more alpha-nodes
    than x's subtree.  ``counts`` may pass a precomputed :func:`alpha_counts`.
    """
    cnt = alpha_counts(pt, alpha) if counts is None else counts
    a = pt.parent[x]
    while a:
        if cnt[a] > cnt[x]:
            return a
        a = pt.parent[a]
    return None


def naive_Z(pt, alpha):
    z = set()
    for v in range(1, pt.n + 1):
        if pt.color[v] == alpha:
            z.update(pt.ancestors(v))
    return z


def naive_Y(pt, alpha):
    z = naive_Z(pt, alpha)
    return {
        v for v in z
        if pt.color[v] == alpha or sum(1 for c in pt.children[v] if c in z) >= 2
    }


def naive_y(pt, z, alpha, Y=None):
    """Topmost member of ``Y_alpha`` in the subtree of ``z`` (None if none)."""
    if Y is None:
        Y = naive_Y(pt, alpha)
    inside = [v for v in pt.subtree(z) if v in Y]
    if not inside:
        return None
    top = min(pt.depth[v] for v in inside)
    tops = [v for v in inside if pt.depth[v] == top]
    if len(tops) != 1:
        raise AssertionError("Y is not closed under lowest common ancestors")
    return tops[0]


def validate_decomposition(parent, pieces, L):
    """Check the five structural properties of a tree decomposition.

    ``parent`` is a 0-based preorder parent list (``parent[0] == -1``) and
    ``pieces`` an iterable of objects with ``root``, ``boundary_leaf`` and
    ``intervals`` (inclusive ranges of non-root members).  Returns a dict of
    property name to bool plus diagnostic counts.
    """
    m = len(parent)
    pieces = list(pieces)
    owner = [[] for _ in range(m)]
    nodesets = []
    edge_ok = True
    for idx, pc in enumerate(pieces):
        members = [u for a, b in pc.intervals for u in range(a, b + 1)]
        nodes = {pc.root, *members}
        nodesets.append(nodes)
        for u in members:
            owner[u].append(idx)
            if parent[u] not in nodes or u == pc.root:
                edge_ok = False
    # each non-root node's parent edge must be covered exactly once
    edge_ok = edge_ok and all(len(owner[u]) == 1 for u in range(1, m)) and not owner[0]
    size_ok = all(2 <= len(ns) <= L for ns in nodesets)
    appearances = [0] * m
    for ns in nodesets:
        for u in ns:
            appearances[u] += 1
    boundary_ok = True
    leaf_ok = True
    for pc, ns in zip(pieces, nodesets):
        shared = [u for u in ns if appearances[u] > 1]
        if len(shared) > 2:
            boundary_ok = False
        for u in shared:
            if u == pc.root:
                continue
            if any(parent[v] == u for v in ns):
                leaf_ok = False
            if pc.boundary_leaf != u:
                leaf_ok = False
        if pc.boundary_leaf is not None and pc.boundary_leaf not in shared:
            leaf_ok = False
    return {
        "edge_partition": edge_ok,
        "piece_sizes": size_ok,
        "piece_count": len(pieces),
        "boundary_count": boundary_ok,
        "boundary_is_root_or_leaf": leaf_ok,
        "ok": edge_ok and size_ok and boundary_ok and leaf_ok,
    }


def naive_weighted_distance(wm, v, w):
    """Weighted distance between macro nodes by walking the path literally.

    ``wm`` needs ``parent`` (list, 0 for the root), and ``w1``/``w2``/``w3``
    lists indexed by macro node.
    """
    up_v = []
    a = v
    while a:
        up_v.append(a)
        a = wm.parent[a]
    up_w = []
    a = w
    while a:
        up_w.append(a)
        a = wm.parent[a]
    common = set(up_v) & set(up_w)
    top = next(a for a in up_v if a in common)
    path = up_v[: up_v.index(top) + 1] + list(reversed(up_w[: up_w.index(top)]))
    on_path = set(path)
    total = 0
    for u in path:
        if u in (v, w):
            continue
        if wm.parent[u] in on_path:
            total += wm.w1[u]
    w_is_ancestor = w in up_v
    total += wm.w3[w] if w_is_ancestor else wm.w2[w]
    return total
