"""Binary persistence for built indexes.

Layout (all integers little-endian)::

    magic     4 bytes   b"NCTX"
    version   u16       currently 1
    kind      u8        1 = small-alphabet index, 2 = large-alphabet index
    count     u32       number of blobs that follow
    blob*     name_len u16, name (UTF-8),
              dtype_len u8, dtype (numpy string such as "<i8" or "|b1"),
              ndim u8, shape (ndim x u64),
              nbytes u64, raw array bytes in C order

Every index stores the blobs ``tree.bits`` (BP bits, bool), ``tree.n``,
``colors`` and ``colors.sigma``, plus the named arrays returned by the
index's ``to_arrays``.  Directories that are pure functions of stored data
(rank directories, sparse tables, shape lookup tables, occurrence lists) are
rebuilt on load.
"""

import struct

import numpy as np

from .bp import BPTree
from .colors import ColorSeq
from .errors import InputError
from .large import LargeSigmaIndex
from .small import SmallSigmaIndex

MAGIC = b"NCTX"
VERSION = 1
KINDS = {SmallSigmaIndex: 1, LargeSigmaIndex: 2}


def _pack_blob(name, arr):
    arr = np.ascontiguousarray(arr)
    if arr.dtype.byteorder == ">" or (arr.dtype.byteorder == "=" and not np.little_endian):
        arr = arr.astype(arr.dtype.newbyteorder("<"))
    nm = name.encode("utf-8")
    dt = arr.dtype.str.encode("ascii")
    head = struct.pack("<H", len(nm)) + nm + struct.pack("<B", len(dt)) + dt
    head += struct.pack("<B", arr.ndim) + struct.pack(f"<{arr.ndim}Q", *arr.shape)
    raw = arr.tobytes()
    return head + struct.pack("<Q", len(raw)) + raw


def dumps(idx):
    blobs = {
        "tree.bits": idx.tree.bits().astype(bool),
        "tree.n": np.array([idx.n], dtype=np.int64),
        "colors": np.asarray(idx.colors.to_numpy()),
        "colors.sigma": np.array([idx.sigma], dtype=np.int64),
    }
    blobs.update(idx.to_arrays())
    out = [MAGIC, struct.pack("<HBI", VERSION, KINDS[type(idx)], len(blobs))]
    out.extend(_pack_blob(k, v) for k, v in blobs.items())
    return b"".join(out)


class _Reader:
    def __init__(self, data):
        self.data = memoryview(data)
        self.pos = 0

    def take(self, fmt):
        vals = struct.unpack_from(fmt, self.data, self.pos)
        self.pos += struct.calcsize(fmt)
        return vals

    def raw(self, k):
        if self.pos + k > len(self.data):
            raise InputError("index file is truncated")
        out = self.data[self.pos:self.pos + k]
        self.pos += k
        return out


def loads(data):
    if bytes(data[:4]) != MAGIC:
        raise InputError("not an index file")
    rd = _Reader(data)
    rd.pos = 4
    try:
        version, kind, count = rd.take("<HBI")
        if version != VERSION:
            raise InputError(f"unsupported index version {version}")
        blobs = {}
        for _ in range(count):
            (nl,) = rd.take("<H")
            name = bytes(rd.raw(nl)).decode("utf-8")
            (dl,) = rd.take("<B")
            dtype = np.dtype(bytes(rd.raw(dl)).decode("ascii"))
            (ndim,) = rd.take("<B")
            shape = rd.take(f"<{ndim}Q")
            (nbytes,) = rd.take("<Q")
            blobs[name] = np.frombuffer(rd.raw(nbytes), dtype=dtype).reshape(shape)
    except struct.error:
        raise InputError("index file is truncated") from None
    tree = BPTree(blobs["tree.bits"].astype(np.uint8))
    colors = ColorSeq(blobs["colors"], int(blobs["colors.sigma"][0]))
    cls = {v: k for k, v in KINDS.items()}.get(kind)
    if cls is None:
        raise InputError(f"unknown index kind {kind}")
    return cls.from_arrays(tree, colors, blobs)


def save(idx, path):
    with open(path, "wb") as fh:
        fh.write(dumps(idx))


def load(path):
    try:
        with open(path, "rb") as fh:
            return loads(fh.read())
    except OSError as exc:
        raise InputError(str(exc)) from None
