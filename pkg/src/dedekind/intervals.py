"""Intervals [lo, hi] of a free distributive lattice and their counting tables."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, NamedTuple

import numpy as np

from .lattice import Lattice, leq


class InvalidIntervalError(ValueError):
    pass


class Interval(NamedTuple):
    lo: int
    hi: int

    def __str__(self):
        return f"{self.lo}:{self.hi}"

    @classmethod
    def parse(cls, text: str) -> "Interval":
        lo, _, hi = text.partition(":")
        return cls(int(lo), int(hi))


def interval_index_pairs(lat: Lattice) -> tuple[np.ndarray, np.ndarray]:
    """Index arrays ``(i, j)`` of all intervals, ascending by (lo, hi)."""
    e = lat.elements
    los, his = [], []
    for i, x in enumerate(e):
        js = np.nonzero((e & x) == x)[0]
        los.append(np.full(js.shape, i, dtype=np.int64))
        his.append(js)
    return np.concatenate(los), np.concatenate(his).astype(np.int64)


def enumerate_intervals(lat: Lattice) -> Iterator[Interval]:
    """Yield every interval of ``lat`` once, ordered by lo then hi."""
    e = lat.elements
    for x in e:
        for y in e[(e & x) == x]:
            yield Interval(int(x), int(y))


def count_intervals(lat: Lattice) -> int:
    e = lat.elements
    return int(sum(int(np.count_nonzero((e & x) == x)) for x in e))


@dataclass(eq=False)
class IntervalTable:
    """Materialised interval with its bottom/top counting vectors.

    ``bot[k]`` is the size of [lo, elems[k]] and ``top[k]`` the size of
    [elems[k], hi].
    """

    interval: Interval
    elems: np.ndarray
    bot: np.ndarray
    top: np.ndarray

    @property
    def size(self) -> int:
        return int(self.elems.shape[0])

    def __len__(self):
        return self.size

    def index(self, x: int) -> int:
        i = int(np.searchsorted(self.elems, np.uint64(x)))
        if i >= self.size or int(self.elems[i]) != x:
            raise KeyError(x)
        return i

    def __contains__(self, x) -> bool:
        try:
            self.index(int(x))
        except (KeyError, OverflowError):
            return False
        return True

    def bot_of(self, x: int) -> int:
        return int(self.bot[self.index(x)])

    def top_of(self, x: int) -> int:
        return int(self.top[self.index(x)])

    @cached_property
    def leq_matrix(self) -> np.ndarray:
        """``leq_matrix[i, j]`` is True iff elems[i] <= elems[j]."""
        e = self.elems
        return (e[:, None] & e[None, :]) == e[:, None]

    @cached_property
    def join_index(self) -> np.ndarray:
        e = self.elems
        return np.searchsorted(e, e[:, None] | e[None, :]).astype(np.intp)

    @cached_property
    def meet_index(self) -> np.ndarray:
        e = self.elems
        return np.searchsorted(e, e[:, None] & e[None, :]).astype(np.intp)

    def dual(self) -> "IntervalTable":
        """The order-reversed interval, realised on complemented words.

        Complementing every element reverses the order; the result is an
        interval of the Boolean algebra of words with the roles of
        ``bot`` and ``top`` exchanged.
        """
        lo, hi = self.interval
        mask = np.uint64(hi)
        e = np.sort(self.elems ^ mask)
        order = np.searchsorted(self.elems, e ^ mask)
        return IntervalTable(
            Interval(0, hi ^ lo), e, self.top[order].copy(), self.bot[order].copy()
        )


def _tables_from_elems(iv: Interval, elems: np.ndarray) -> IntervalTable:
    le = (elems[:, None] & elems[None, :]) == elems[:, None]
    bot = le.sum(axis=0, dtype=np.int64)
    top = le.sum(axis=1, dtype=np.int64)
    return IntervalTable(iv, elems, bot, top)


def build_interval_table(lat: Lattice, iv) -> IntervalTable:
    """Materialise ``iv`` within ``lat`` with its bot/top counts."""
    lo, hi = int(iv[0]), int(iv[1])
    if not leq(lo, hi):
        raise InvalidIntervalError(f"[{lo},{hi}] is not an interval: {lo} is not below {hi}")
    if lat.index(lo) is None or lat.index(hi) is None:
        raise InvalidIntervalError(f"[{lo},{hi}] has a bound outside D_{lat.n}")
    e = lat.elements
    ulo, uhi = np.uint64(lo), np.uint64(hi)
    elems = e[((e & ulo) == ulo) & ((e & uhi) == e)]
    return _tables_from_elems(Interval(lo, hi), elems)


def full_table(lat: Lattice) -> IntervalTable:
    """The whole lattice viewed as the interval [bottom, top]."""
    return build_interval_table(lat, (lat.bottom, lat.top))
