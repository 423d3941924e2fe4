"""Reduced formal contexts of lattice intervals."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .intervals import IntervalTable


@dataclass(frozen=True, eq=False)
class FormalContext:
    """Join irreducibles (rows) against meet irreducibles (cols), ``j <= m``."""

    rows: np.ndarray
    cols: np.ndarray
    incidence: np.ndarray

    @property
    def shape(self):
        return self.incidence.shape

    def transpose(self) -> "FormalContext":
        return FormalContext(self.cols, self.rows, self.incidence.T.copy())


def irreducibles(tbl: IntervalTable) -> tuple[np.ndarray, np.ndarray]:
    """Join and meet irreducibles of the interval, ascending.

    An element other than the bottom is join irreducible iff it differs
    from the join of everything strictly below it (then it has a single
    lower cover). Meet irreducibles are the dual.
    """
    e = tbl.elems
    le = tbl.leq_matrix
    js, ms = [], []
    for k in range(tbl.size):
        x = e[k]
        below = le[:, k].copy()
        below[k] = False
        if below.any() and np.bitwise_or.reduce(e[below]) != x:
            js.append(x)
        above = le[k, :].copy()
        above[k] = False
        if above.any() and np.bitwise_and.reduce(e[above]) != x:
            ms.append(x)
    return np.array(js, dtype=np.uint64), np.array(ms, dtype=np.uint64)


def build_context(tbl: IntervalTable) -> FormalContext:
    J, M = irreducibles(tbl)
    incidence = (J[:, None] & M[None, :]) == J[:, None]
    return FormalContext(J, M, incidence)


def concept_count(ctx: FormalContext) -> int:
    """Number of formal concepts, by closing every union-free row set.

    Extents are the intersections of column extents; the full row set
    (empty intersection) is included. Used to check that a context
    reconstructs its lattice.
    """
    n_rows = ctx.incidence.shape[0]
    full = (1 << n_rows) - 1
    col_extents = set()
    for m in range(ctx.incidence.shape[1]):
        ext = 0
        for j in np.nonzero(ctx.incidence[:, m])[0]:
            ext |= 1 << int(j)
        col_extents.add(ext)
    extents = {full}
    frontier = [full]
    while frontier:
        nxt = []
        for a in frontier:
            for c in col_extents:
                b = a & c
                if b not in extents:
                    extents.add(b)
                    nxt.append(b)
        frontier = nxt
    return len(extents)


def _position_masks(n: int) -> tuple[list[int], list[int]]:
    size = 1 << n
    down = [0] * size
    up = [0] * size
    for p in range(size):
        for q in range(size):
            if q & p == q:
                down[p] |= 1 << q
                up[q] |= 1 << p
    return down, up


_MASKS: dict[int, tuple[list[int], list[int]]] = {}


def position_context(n: int, lo: int, hi: int) -> FormalContext:
    """Reduced context of [lo, hi] in D_n without materialising the interval.

    Words of D_n are down-sets of bit positions. For each position ``p``
    set in ``hi`` but not in ``lo``, ``lo | down(p)`` is join irreducible
    and ``hi & ~up(p)`` meet irreducible, and the first lies below the
    second iff ``q`` is not below ``p``. Gives the same context as
    ``build_context`` on the materialised table.
    """
    if n not in _MASKS:
        _MASKS[n] = _position_masks(n)
    down, up = _MASKS[n]
    free = [p for p in range(1 << n) if (hi >> p) & 1 and not (lo >> p) & 1]
    js = sorted((lo | down[p], p) for p in free)
    ms = sorted((hi & ~up[p], p) for p in free)
    incidence = np.array(
        [[(q & p) != q for _, q in ms] for _, p in js], dtype=bool
    ).reshape(len(js), len(ms))
    return FormalContext(
        np.array([j for j, _ in js], dtype=np.uint64),
        np.array([m for m, _ in ms], dtype=np.uint64),
        incidence,
    )
