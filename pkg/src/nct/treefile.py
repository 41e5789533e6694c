"""Plain-text colored tree files and random instance generation.

A tree file has three LF-terminated lines::

    n sigma
    <2n parentheses written by a preorder walk>
    <n colors in 1..sigma, preorder, space separated>
"""

from dataclasses import dataclass

import numpy as np

from .bp import BPTree, bits_from_parents, bits_to_parens
from .errors import InputError, MalformedTree


@dataclass
class TreeFile:
    n: int
    sigma: int
    bp: str
    colors: list

    def tree(self):
        return BPTree(self.bp)

    def format(self):
        return f"{self.n} {self.sigma}\n{self.bp}\n{' '.join(map(str, self.colors))}\n"

    def write(self, path):
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.format())

    @classmethod
    def parse(cls, text):
        lines = text.split("\n")
        if lines and lines[-1] == "":
            lines.pop()
        if len(lines) != 3:
            raise InputError(f"expected 3 lines, found {len(lines)}")
        head = lines[0].split()
        if len(head) != 2:
            raise InputError("first line must be 'n sigma'")
        try:
            n, sigma = int(head[0]), int(head[1])
            colors = [int(c) for c in lines[2].split()]
        except ValueError as exc:
            raise InputError(f"non-integer field: {exc}") from None
        if n < 1 or sigma < 1:
            raise InputError("n and sigma must be positive")
        bp = lines[1].strip()
        if len(bp) != 2 * n or set(bp) - set("()"):
            raise InputError(f"line 2 must hold {2 * n} parentheses")
        try:
            BPTree(bp)
        except MalformedTree as exc:
            raise InputError(str(exc)) from None
        if len(colors) != n:
            raise InputError(f"expected {n} colors, found {len(colors)}")
        if min(colors) < 1 or max(colors) > sigma:
            raise InputError(f"colors must lie in 1..{sigma}")
        return cls(n, sigma, bp, colors)

    @classmethod
    def read(cls, path):
        try:
            with open(path, encoding="utf-8") as fh:
                return cls.parse(fh.read())
        except OSError as exc:
            raise InputError(str(exc)) from None


def random_parents(n, rng):
    """Uniform attachment relabelled to preorder (1-based, ``parent[1] == 0``).

    Node ``i`` attaches to a uniform choice among ``1..i-1``; children are
    visited in increasing label order.
    """
    if n == 1:
        return np.zeros(2, dtype=np.int64)
    par = np.zeros(n + 1, dtype=np.int64)
    par[2:] = rng.integers(1, np.arange(2, n + 1))
    # children lists in label order via a stable sort on parent
    kids = np.argsort(par[2:], kind="stable") + 2
    first = np.searchsorted(par[kids], np.arange(n + 2))
    kids = kids.tolist()
    first = first.tolist()
    new = [0] * (n + 1)
    out = [0] * (n + 1)
    stack = [1]
    label = 0
    while stack:
        v = stack.pop()
        label += 1
        new[v] = label
        out[label] = new[par[v]] if v != 1 else 0
        stack.extend(reversed(kids[first[v]:first[v + 1]]))
    return np.asarray(out, dtype=np.int64)


def random_colors(n, sigma, rng, model="uniform", zipf_s=1.0):
    if model == "uniform":
        return rng.integers(1, sigma + 1, size=n)
    if model == "zipf":
        w = 1.0 / np.arange(1, sigma + 1, dtype=float) ** zipf_s
        return rng.choice(sigma, size=n, p=w / w.sum()) + 1
    raise InputError(f"unknown color model {model!r}")


def generate(n, sigma, seed, model="uniform", zipf_s=1.0):
    """Deterministic random colored tree for a given seed."""
    if n < 1 or sigma < 1:
        raise InputError("n and sigma must be positive")
    rng = np.random.default_rng(seed)
    parent = random_parents(n, rng)
    bp = bits_to_parens(bits_from_parents(parent))
    colors = random_colors(n, sigma, rng, model, zipf_s).tolist()
    return TreeFile(n, sigma, bp, colors)
