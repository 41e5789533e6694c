"""Bit accounting helpers.

Every structure reports its size as the number of bits a packed integer
vector would need: ``len(a) * width`` where ``width`` is the bit length of the
largest entry (at least 1).  This is the measured size used by space reports;
it does not depend on Python object overhead.
"""

import numpy as np


def int_bits(values, width=None):
    """Bits needed to store ``values`` as a fixed-width packed vector."""
    arr = np.asarray(values)
    if arr.size == 0:
        return 0
    if width is None:
        lo = int(arr.min())
        hi = int(arr.max())
        # negative sentinels are stored shifted by one
        top = max(hi, -lo if lo < 0 else 0)
        width = max(1, int(top).bit_length() + (1 if lo < 0 else 0))
    return int(arr.size) * width


def width_for(maxval):
    return max(1, int(maxval).bit_length())
