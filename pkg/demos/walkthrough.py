"""A nine-node tree, start to finish.

Builds both indexes over the same colored tree, asks a few questions, and
peeks at the pieces the small-alphabet index cuts the tree into.

    python3 demos/walkthrough.py
"""

from nct import BPTree, LargeSigmaIndex, SmallSigmaIndex
from nct.oracle import PointerTree, bfs_nearest

BP = "(((())(()))(()()))"
COLORS = [1, 2, 3, 1, 2, 3, 2, 1, 3]

tree = BPTree(BP)
print(f"tree with {tree.n} nodes: {BP}")
print("colors in preorder:", " ".join(map(str, COLORS)))
for v in range(1, tree.n + 1):
    print(f"  node {v}: depth {tree.depth(v)}, parent {tree.parent(v)}, color {COLORS[v - 1]}")

# tiny piece sizes so the tree actually gets cut up
small = SmallSigmaIndex(tree, COLORS, L=3, L_prime=5)
large = LargeSigmaIndex(tree, COLORS, L=2)
pt = PointerTree(BP, COLORS)

print("\nnearest node of a color, as (node, distance):")
for x, a in [(6, 1), (5, 3), (9, 2), (4, 1)]:
    print(f"  from {x} to color {a}: small {small.query(x, a)}, large {large.query(x, a)}, "
          f"brute force {bfs_nearest(pt, x, a)}")

print("\nmini pieces (root, boundary leaf, members):")
for pc in small.mini.pieces:
    print(f"  {pc.root:>2} {str(pc.boundary_leaf):>4}  {pc.members()}")

print("\nmicro shape holding each node (parentheses, colors, local rank):")
for x in range(2, tree.n + 1):
    print(f"  node {x}: {small.micro_shape(x)}")

# the large index keeps a tree over the color-1 nodes and their branching ancestors
at = large.alpha_trees[1]
print("\ncolor 1: nodes kept", at.Y.tolist(),
      "with parents", [int(at.Y[p]) if p >= 0 else None for p in at.parent])
print("z for node 5:", large.z_node(5, 1), " y below it:", large.y_node(large.z_node(5, 1), 1))
