"""Query latency as the tree grows.

Times the large-alphabet index on frequent colors for a few tree sizes.
The largest size takes a while to build (tens of seconds); pass a smaller
maximum as the first argument to skip it.

    python3 demos/latency.py [max_n]
"""

import sys
import time

import numpy as np

from nct import LargeSigmaIndex
from nct.treefile import generate

max_n = int(sys.argv[1]) if len(sys.argv) > 1 else 10 ** 6
sizes = [n for n in (10 ** 4, 10 ** 5, 10 ** 6) if n <= max_n]

base = None
for n in sizes:
    tf = generate(n, 16, seed=3)
    t0 = time.perf_counter()
    idx = LargeSigmaIndex(tf.tree(), tf.colors)
    build = time.perf_counter() - t0
    rng = np.random.default_rng(0)
    colors = sorted(idx.alpha_trees)
    lat = []
    for x, a in zip(rng.integers(1, n + 1, 2000).tolist(), rng.choice(colors, 2000).tolist()):
        s = time.perf_counter_ns()
        idx.query(x, a)
        lat.append(time.perf_counter_ns() - s)
    med = float(np.median(lat)) / 1000
    base = base or med
    print(f"n={n:>8}  build {build:6.1f}s  median query {med:7.1f}us  (x{med / base:.2f})")
