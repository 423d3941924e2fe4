"""Free distributive lattices as sorted arrays of packed bit vectors.

An element of D_n is a 2**n bit word. D_{n+1} is built from pairs
``x <= y`` of D_n by placing ``x`` in the high half and ``y`` in the low
half, which reproduces the usual integer labels (D_2 = {0, 1, 3, 5, 7, 15}).
Join is bitwise OR, meet is bitwise AND and the order is bit containment.
"""
from __future__ import annotations

import struct
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

MAX_RANK = 6
MAGIC = b"FDL1"


class UnsupportedRankError(ValueError):
    """Raised for ranks whose elements do not fit a 64-bit word."""


class LatticeFileError(ValueError):
    pass


def join(x: int, y: int) -> int:
    return x | y


def meet(x: int, y: int) -> int:
    return x & y


def leq(x: int, y: int) -> bool:
    return x & y == x


@dataclass(frozen=True, eq=False)
class Lattice:
    """The free distributive lattice D_n.

    ``elements`` is a read-only ascending ``uint64`` array.
    """

    n: int
    elements: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.elements.setflags(write=False)

    @property
    def count(self) -> int:
        return int(self.elements.shape[0])

    def __len__(self) -> int:
        return self.count

    def __iter__(self):
        return iter(self.tolist())

    def __contains__(self, x) -> bool:
        i = self.index(x)
        return i is not None

    def tolist(self) -> list[int]:
        return [int(v) for v in self.elements]

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return (1 << (1 << self.n)) - 1

    def index(self, x: int) -> int | None:
        """Position of ``x`` in the sorted element array, or None."""
        if x < 0 or x > self.top:
            return None
        i = int(np.searchsorted(self.elements, np.uint64(x)))
        if i < self.count and int(self.elements[i]) == x:
            return i
        return None

    def indices(self, xs) -> np.ndarray:
        """Vectorised ``index`` for values known to be members."""
        return np.searchsorted(self.elements, np.asarray(xs, dtype=np.uint64))

    def save(self, path) -> None:
        with open(path, "wb") as fh:
            fh.write(MAGIC)
            fh.write(struct.pack("<BQ", self.n, self.count))
            fh.write(self.elements.astype("<u8").tobytes())

    @classmethod
    def load(cls, path) -> "Lattice":
        data = Path(path).read_bytes()
        if len(data) < 13 or data[:4] != MAGIC:
            raise LatticeFileError(f"{path}: not a lattice file")
        n, count = struct.unpack_from("<BQ", data, 4)
        if n > MAX_RANK:
            raise LatticeFileError(f"{path}: rank {n} out of range")
        body = data[13:]
        if len(body) != 8 * count:
            raise LatticeFileError(
                f"{path}: expected {count} elements, found {len(body) / 8:g}"
            )
        elements = np.frombuffer(body, dtype="<u8").astype(np.uint64)
        if count > 1 and not np.all(elements[1:] > elements[:-1]):
            raise LatticeFileError(f"{path}: elements not strictly ascending")
        return cls(n, elements)


def lift(base: np.ndarray, n: int) -> np.ndarray:
    """Elements of D_{n+1} from the sorted elements of D_n."""
    half = np.uint64(1 << n)
    base = np.asarray(base, dtype=np.uint64)
    chunks = []
    for x in base:
        ys = base[(base & x) == x]
        chunks.append(ys | (x << half))
    out = np.concatenate(chunks)
    out.sort()
    return out


_cache: dict[int, Lattice] = {}


def generate_lattice(n: int) -> Lattice:
    """Generate D_n for ``0 <= n <= 6`` by iterated pairing from D_0."""
    if not 0 <= n <= MAX_RANK:
        raise UnsupportedRankError(
            f"rank {n} unsupported: elements of D_n need 2**n bits and at most 64 fit"
        )
    if n in _cache:
        return _cache[n]
    elements = np.array([0, 1], dtype=np.uint64)
    for k in range(n):
        if k + 1 in _cache:
            elements = _cache[k + 1].elements
            continue
        elements = lift(elements, k)
    lat = Lattice(n, np.array(elements, dtype=np.uint64))
    _cache[n] = lat
    return lat
