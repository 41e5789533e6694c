"""Plain bit vectors with rank and select.

Bits are packed little-endian into 64-bit words.  A directory of cumulative
popcounts (one entry per word) gives rank in O(1); select binary-searches the
directory and finishes inside a single word.

Positions and ranks are 1-based: ``rank1(i)`` counts ones among the first
``i`` bits and ``select1(k)`` returns the position of the k-th one.
"""

from bisect import bisect_left

import numpy as np

from .errors import NoSuchOccurrence, OutOfBounds
from .space import int_bits


def _byte_select_table():
    table = [0] * 2048
    for b in range(256):
        r = 0
        for i in range(8):
            if b >> i & 1:
                table[(b << 3) | r] = i
                r += 1
    return table


_SEL8 = _byte_select_table()


def select_in_word(x, r):
    """Offset (0-based) of the r-th set bit of the 64-bit word ``x``."""
    pos = 0
    c = (x & 0xFFFFFFFF).bit_count()
    if c < r:
        r -= c
        x >>= 32
        pos = 32
    c = (x & 0xFFFF).bit_count()
    if c < r:
        r -= c
        x >>= 16
        pos += 16
    c = (x & 0xFF).bit_count()
    if c < r:
        r -= c
        x >>= 8
        pos += 8
    return pos + _SEL8[((x & 0xFF) << 3) | (r - 1)]


def as_bit_array(bits):
    """Coerce a 0/1 sequence (or a string of '0'/'1') into a uint8 array."""
    if isinstance(bits, str):
        arr = np.frombuffer(bits.encode("ascii"), dtype=np.uint8) - ord("0")
    else:
        arr = np.asarray(bits)
        if arr.dtype == bool:
            arr = arr.astype(np.uint8)
    if arr.ndim != 1:
        raise ValueError("bit sequence must be one-dimensional")
    if arr.size and (arr.min() < 0 or arr.max() > 1):
        raise ValueError("bit sequence may only contain 0 and 1")
    return arr.astype(np.uint8, copy=False)


class BitVec:
    """Immutable bit sequence answering rank/select queries."""

    def __init__(self, bits):
        arr = as_bit_array(bits)
        self._m = int(arr.size)
        packed = np.packbits(arr, bitorder="little")
        pad = (-packed.size) % 8 + 8  # one spare zero word keeps rank(m) in range
        raw = np.concatenate([packed, np.zeros(pad, dtype=np.uint8)])
        self._np_words = raw.view("<u8")
        self._words = self._np_words.tolist()
        ones = np.bitwise_count(self._np_words).astype(np.int64)
        cum = np.concatenate([[0], np.cumsum(ones)])
        self._rank_dir = cum.tolist()
        self._ones = int(cum[-1])
        # zeros before each word, for select0
        self._zero_dir = (np.arange(cum.size, dtype=np.int64) * 64 - cum).tolist()

    def __len__(self):
        return self._m

    @property
    def ones(self):
        return self._ones

    def access(self, i):
        """Bit at 1-based position ``i``."""
        if not 1 <= i <= self._m:
            raise OutOfBounds(f"position {i} outside 1..{self._m}")
        i -= 1
        return (self._words[i >> 6] >> (i & 63)) & 1

    def rank1(self, i):
        if not 0 <= i <= self._m:
            raise OutOfBounds(f"prefix length {i} outside 0..{self._m}")
        w = i >> 6
        return self._rank_dir[w] + (self._words[w] & ((1 << (i & 63)) - 1)).bit_count()

    def rank0(self, i):
        return i - self.rank1(i)

    def select1(self, k):
        if not 1 <= k <= self._ones:
            raise NoSuchOccurrence(f"no {k}-th one (total {self._ones})")
        rd = self._rank_dir
        w = bisect_left(rd, k) - 1
        return (w << 6) + select_in_word(self._words[w], k - rd[w]) + 1

    def select0(self, k):
        zeros = self._m - self._ones
        if not 1 <= k <= zeros:
            raise NoSuchOccurrence(f"no {k}-th zero (total {zeros})")
        zd = self._zero_dir
        w = bisect_left(zd, k) - 1
        inv = ~self._words[w] & 0xFFFFFFFFFFFFFFFF
        return (w << 6) + select_in_word(inv, k - zd[w]) + 1

    def to_numpy(self):
        """The bits as a uint8 array of length ``len(self)``."""
        raw = self._np_words.view(np.uint8)
        return np.unpackbits(raw, bitorder="little")[: self._m]

    def packed(self):
        """Packed little-endian bytes (no padding words)."""
        return np.packbits(self.to_numpy(), bitorder="little")

    def space_bits(self):
        return {"bits": self._m, "rank_directory": int_bits(self._rank_dir)}
