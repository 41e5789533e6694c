"""The preorder color string with per-color rank/select and entropy.

Colors are integers ``1..sigma``; positions are preorder ranks ``1..n``.
Storage is the raw symbol array plus, for each color, the sorted list of its
positions.  ``pred``/``succ`` are inclusive: ``succ(a, i)`` is ``i`` itself
when position ``i`` has color ``a``.
"""

import math
from bisect import bisect_left, bisect_right

import numpy as np

from .errors import NoSuchOccurrence, OutOfBounds
from .space import int_bits, width_for


def _symbol_dtype(sigma):
    for dt in (np.uint8, np.uint16, np.uint32):
        if sigma <= np.iinfo(dt).max:
            return dt
    return np.uint64


def _codes(seq):
    """Symbols of ``seq`` (a str counts as its characters) as small ints."""
    if isinstance(seq, str):
        seq = list(seq)
    arr = np.asarray(seq).reshape(-1)
    if arr.size == 0:
        return arr.astype(np.int64)
    return np.unique(arr, return_inverse=True)[1].reshape(-1).astype(np.int64)


def entropy_h0(seq):
    """Empirical zeroth-order entropy in bits per symbol."""
    arr = _codes(seq)
    if arr.size == 0:
        return 0.0
    _, counts = np.unique(arr, return_counts=True)
    p = counts / arr.size
    return float(max(0.0, -(p * np.log2(p)).sum()))


def entropy_hk(seq, k):
    """Empirical k-th order entropy in bits per symbol.

    The context of a symbol is the ``k`` symbols before it; the first ``k``
    symbols have no context and contribute nothing.  The sum over contexts
    of ``|s_w| * H0(s_w)`` is divided by the full length ``n``.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    arr = _codes(seq)
    n = arr.size
    if k == 0:
        return entropy_h0(arr)
    if n <= k:
        return 0.0
    windows = np.lib.stride_tricks.sliding_window_view(arr, k + 1)
    _, ctx_inv = np.unique(windows[:, :k], axis=0, return_inverse=True)
    ctx_inv = ctx_inv.reshape(-1)
    pairs = ctx_inv.astype(np.int64) * (int(arr.max()) + 1) + windows[:, k].astype(np.int64)
    _, pair_inv, pair_counts = np.unique(pairs, return_inverse=True, return_counts=True)
    ctx_counts = np.bincount(ctx_inv)
    # ctx of each distinct pair
    pair_ctx = np.empty(pair_counts.size, dtype=np.int64)
    pair_ctx[pair_inv.reshape(-1)] = ctx_inv
    total = (pair_counts * np.log2(ctx_counts[pair_ctx] / pair_counts)).sum()
    return float(max(0.0, total / n))


class ColorSeq:
    """Preorder color string ``P_T``."""

    def __init__(self, colors, sigma=None):
        arr = np.asarray(colors, dtype=np.int64)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("color sequence must be a nonempty 1-d sequence")
        if sigma is None:
            sigma = int(arr.max())
        if arr.min() < 1 or arr.max() > sigma:
            raise ValueError(f"colors must lie in 1..{sigma}")
        self.n = int(arr.size)
        self.sigma = int(sigma)
        self._arr = arr.astype(_symbol_dtype(self.sigma))
        self._list = [0] + arr.tolist()
        order = np.argsort(arr, kind="stable")
        bounds = np.searchsorted(arr[order], np.arange(1, self.sigma + 2))
        pos = (order + 1).tolist()
        self._occ = [None] + [pos[bounds[a - 1]: bounds[a]] for a in range(1, self.sigma + 1)]

    def __len__(self):
        return self.n

    def to_numpy(self):
        return self._arr

    def _check_color(self, alpha):
        if not 1 <= alpha <= self.sigma:
            raise OutOfBounds(f"color {alpha} outside 1..{self.sigma}")

    def access(self, i):
        if not 1 <= i <= self.n:
            raise OutOfBounds(f"position {i} outside 1..{self.n}")
        return self._list[i]

    def count(self, alpha):
        self._check_color(alpha)
        return len(self._occ[alpha])

    def occurrences(self, alpha):
        """Sorted positions of ``alpha`` (shared list; do not mutate)."""
        self._check_color(alpha)
        return self._occ[alpha]

    def rank(self, alpha, i):
        """Occurrences of ``alpha`` among positions ``1..i``."""
        self._check_color(alpha)
        if not 0 <= i <= self.n:
            raise OutOfBounds(f"prefix length {i} outside 0..{self.n}")
        return bisect_right(self._occ[alpha], i)

    def select(self, alpha, k):
        """Position of the k-th occurrence of ``alpha``."""
        self._check_color(alpha)
        occ = self._occ[alpha]
        if not 1 <= k <= len(occ):
            raise NoSuchOccurrence(f"color {alpha} has {len(occ)} occurrences, asked for {k}")
        return occ[k - 1]

    def pred(self, alpha, i):
        """Largest position ``<= i`` holding ``alpha``, or None."""
        self._check_color(alpha)
        if not 1 <= i <= self.n:
            raise OutOfBounds(f"position {i} outside 1..{self.n}")
        occ = self._occ[alpha]
        k = bisect_right(occ, i)
        return occ[k - 1] if k else None

    def succ(self, alpha, i):
        """Smallest position ``>= i`` holding ``alpha``, or None."""
        self._check_color(alpha)
        if not 1 <= i <= self.n:
            raise OutOfBounds(f"position {i} outside 1..{self.n}")
        occ = self._occ[alpha]
        k = bisect_left(occ, i)
        return occ[k] if k < len(occ) else None

    def entropy_h0(self):
        return entropy_h0(self._arr)

    def entropy_hk(self, k):
        return entropy_hk(self._arr, k)

    def raw_bits(self):
        """Bits of the uncompressed symbol array at ``ceil(log2 sigma)`` bits each."""
        return self.n * max(1, math.ceil(math.log2(self.sigma))) if self.sigma > 1 else self.n

    def space_bits(self):
        return {
            "raw": self.raw_bits(),
            "occurrence_directory": self.n * width_for(self.n) + int_bits([len(o) for o in self._occ[1:]]),
        }
