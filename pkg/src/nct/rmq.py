"""Range-minimum structures.

:class:`SparseTable` answers arbitrary range-argmin queries; it is the core
used over block minima.  :class:`SampledRMQ` keeps only one minimum and one
in-block offset per block of ``L`` entries, so it answers queries whose left
end starts a block and whose right end closes one.
"""

import numpy as np

from .errors import AlignmentViolation, OutOfBounds
from .space import int_bits


class SparseTable:
    """Leftmost argmin over ``values[i..j]`` (0-based, inclusive) in O(1).

    Keeps one row of argmin indices per power of two plus the values, which
    are needed to compare the two overlapping windows of a query.
    """

    def __init__(self, values):
        vals = np.asarray(values)
        n = vals.size
        self.n = n
        self._vals = vals.tolist()
        if n == 0:
            self._rows = []
            return
        idx = np.arange(n, dtype=np.int64)
        rows = [idx]
        k = 1
        while (1 << k) <= n:
            prev = rows[-1]
            half = 1 << (k - 1)
            left = prev[:-half]
            right = prev[half:]
            rows.append(np.where(vals[right] < vals[left], right, left))
            k += 1
        self._rows = [r.tolist() for r in rows]

    def argmin(self, i, j):
        if not 0 <= i <= j < self.n:
            raise OutOfBounds(f"range [{i}, {j}] outside 0..{self.n - 1}")
        k = (j - i + 1).bit_length() - 1
        row = self._rows[k]
        a = row[i]
        b = row[j - (1 << k) + 1]
        return b if self._vals[b] < self._vals[a] else a

    def argmin_many(self, i, j):
        """Vectorized :meth:`argmin` over index arrays (bounds unchecked)."""
        if getattr(self, "_np", None) is None:
            self._np = [np.asarray(r, dtype=np.int64) for r in self._rows]
            self._np_vals = np.asarray(self._vals)
        i = np.asarray(i, dtype=np.int64)
        j = np.asarray(j, dtype=np.int64)
        span = j - i + 1
        k = np.zeros(span.shape, dtype=np.int64)
        while True:
            grow = (span >> (k + 1)) > 0
            if not grow.any():
                break
            k += grow
        out = np.empty(span.shape, dtype=np.int64)
        for level in np.unique(k).tolist():
            sel = k == level
            row = self._np[level]
            a = row[i[sel]]
            b = row[j[sel] - (1 << level) + 1]
            out[sel] = np.where(self._np_vals[b] < self._np_vals[a], b, a)
        return out

    def space_bits(self):
        # row 0 is the identity and is never stored
        return sum(int_bits(r) for r in self._rows[1:])


class SampledRMQ:
    """Block-sampled RMQ over ``A`` with block length ``L``.

    Stores the block minima ``A_prime``, the 1-based in-block argmin offsets
    ``B`` and a sparse table over ``A_prime``; the full array is dropped.
    """

    def __init__(self, A, L):
        if L < 1:
            raise ValueError("block length must be at least 1")
        arr = np.asarray(A)
        if arr.size == 0:
            raise ValueError("array must be nonempty")
        self.n = int(arr.size)
        self.L = int(L)
        pad = (-self.n) % self.L
        big = np.iinfo(np.int64).max
        grid = np.concatenate([arr.astype(np.int64), np.full(pad, big, dtype=np.int64)])
        grid = grid.reshape(-1, self.L)
        off = grid.argmin(axis=1)
        self.A_prime = grid[np.arange(grid.shape[0]), off]
        self.B = off + 1
        self._B = self.B.tolist()
        self._core = SparseTable(self.A_prime)

    @classmethod
    def from_blocks(cls, A_prime, B, n, L):
        self = cls.__new__(cls)
        self.n, self.L = int(n), int(L)
        self.A_prime = np.asarray(A_prime, dtype=np.int64)
        self.B = np.asarray(B, dtype=np.int64)
        self._B = self.B.tolist()
        self._core = SparseTable(self.A_prime)
        return self

    def rmq_aligned(self, i, j):
        """1-based index of a minimum of ``A[i..j]``; needs ``L | i-1`` and ``L | j``."""
        L = self.L
        if (i - 1) % L or j % L:
            raise AlignmentViolation(f"query ({i}, {j}) not aligned to blocks of {L}")
        if not 1 <= i <= j <= self.n:
            raise OutOfBounds(f"range [{i}, {j}] outside 1..{self.n}")
        blk = self._core.argmin((i - 1) // L, j // L - 1)
        return blk * L + self._B[blk]

    def rmq_aligned_many(self, i, j):
        """Vectorized :meth:`rmq_aligned`; every pair must be aligned and in range."""
        i = np.asarray(i, dtype=np.int64)
        j = np.asarray(j, dtype=np.int64)
        L = self.L
        if ((i - 1) % L).any() or (j % L).any():
            raise AlignmentViolation(f"some queries are not aligned to blocks of {L}")
        if ((i < 1) | (i > j) | (j > self.n)).any():
            raise OutOfBounds(f"some ranges fall outside 1..{self.n}")
        blk = self._core.argmin_many((i - 1) // L, j // L - 1)
        return blk * L + self.B[blk]

    def space_bits(self):
        return {
            "block_minima": int_bits(self.A_prime),
            "block_offsets": int_bits(self.B),
            "core": self._core.space_bits(),
        }
