"""Dedekind numbers d(n+1), d(n+2), d(n+3) from the base lattice D_n.

Every formula comes in several variants that must agree: sums over the
whole lattice or over all intervals, class-factored sums over interval
classes, and matrix-trace forms. Counts of sub-intervals (``bot``/``top``)
are always taken relative to the interval the sum runs over.
"""
from __future__ import annotations

import numpy as np

from .canon import IntervalClass, classify_intervals
from .exact import dot_sum, matmul, trace_product
from .intervals import (
    IntervalTable,
    build_interval_table,
    enumerate_intervals,
    full_table,
    interval_index_pairs,
)
from .lattice import Lattice

PLUS1_VARIANTS = ("direct", "classes")
PLUS2_VARIANTS = ("direct", "intervals", "classes", "matrix")
PLUS3_VARIANTS = ("direct", "classes", "matrix", "squared")
MATRIX_DIM_LIMIT = 20000


def _classes(lat: Lattice, classes: list[IntervalClass] | None) -> list[IntervalClass]:
    return classify_intervals(lat) if classes is None else classes


def _interval_sizes(lat: Lattice) -> np.ndarray:
    """#I for every interval, in enumeration order."""
    i, j = interval_index_pairs(lat)
    le = full_table(lat).leq_matrix.astype(np.float64)
    # #[x, y] counts the z with x <= z <= y; the sums stay far below 2^53,
    # so the BLAS product in doubles is exact
    return np.rint(le @ le)[i, j].astype(np.int64)


def d_plus1(lat: Lattice, variant: str = "direct",
            classes: list[IntervalClass] | None = None) -> int:
    if variant == "direct":
        return int(full_table(lat).top.sum())
    if variant == "classes":
        return sum(c.cardinality for c in _classes(lat, classes))
    raise ValueError(f"unknown d_plus1 variant {variant!r}")


def d_plus2(lat: Lattice, variant: str = "direct",
            classes: list[IntervalClass] | None = None) -> int:
    if variant == "direct":
        tbl = full_table(lat)
        total = 0
        for a in range(tbl.size):
            total += int(np.dot(tbl.bot[tbl.meet_index[a]], tbl.top[tbl.join_index[a]]))
        return total
    if variant == "intervals":
        sizes = _interval_sizes(lat)
        return int(np.dot(sizes, sizes))
    if variant == "classes":
        return sum(c.size ** 2 * c.cardinality for c in _classes(lat, classes))
    if variant == "matrix":
        return _plus2_matrix(lat)
    raise ValueError(f"unknown d_plus2 variant {variant!r}")


def _plus2_matrix(lat: Lattice, block: int = 512) -> int:
    """Tr(alpha beta) with alpha(a,b) = bot(a & b), beta(a,b) = top(a | b).

    Built in row blocks so the base-5 case (dim 7581) stays in memory.
    """
    dim = lat.count
    if dim > MATRIX_DIM_LIMIT:
        raise MemoryError(f"matrix of dimension {dim} exceeds limit {MATRIX_DIM_LIMIT}")
    e = lat.elements
    tbl = full_table(lat) if dim <= 2000 else None
    if tbl is not None:
        bot, top = tbl.bot, tbl.top
    else:
        bot = np.array([np.count_nonzero((e & x) == e) for x in e], dtype=np.int64)
        top = np.array([np.count_nonzero((e & x) == x) for x in e], dtype=np.int64)
    total = 0
    for s in range(0, dim, block):
        rows = e[s : s + block]
        alpha = bot[np.searchsorted(e, rows[:, None] & e[None, :])]
        beta = top[np.searchsorted(e, rows[:, None] | e[None, :])]
        # alpha and beta are symmetric: Tr(alpha beta) = sum alpha * beta
        total += dot_sum(alpha, beta, dim, dim)
    return total


def triple_join_sum(tbl: IntervalTable) -> int:
    """sum over a, b, c in I of top(a|b) top(a|c) top(b|c)."""
    t = tbl.top[tbl.join_index]
    dim = tbl.size
    if dim ** 5 <= (1 << 62):
        total = 0
        for a in range(dim):
            row = t[a]
            total += int(row @ t @ row)
        return total
    total = 0
    for a in range(dim):
        row = t[a].astype(object)
        total += int(row @ t.astype(object) @ row)
    return total


def triple_meet_sum(tbl: IntervalTable) -> int:
    """sum over a, b, c in I of bot(a&b) bot(a&c) bot(b&c)."""
    return triple_join_sum(tbl.dual())


def alpha_cube_trace(tbl: IntervalTable) -> int:
    """Tr(alpha^3) for alpha(a, b) = top(a | b), as sum alpha(a,b) alpha^2(b,a)."""
    alpha = tbl.top[tbl.join_index]
    m = tbl.size
    sq = matmul(alpha, alpha, m, m)
    return trace_product(alpha, sq, m, m * m * m)


def squared_sum(tbl: IntervalTable) -> int:
    """sum over a, b of (sum over c >= a of bot(b & c))^2."""
    m = tbl.size
    leq = tbl.leq_matrix.astype(np.int64)
    bmeet = tbl.bot[tbl.meet_index]
    s = matmul(leq, bmeet, 1, m)
    return dot_sum(s, s, m * m, m * m)


def d_plus3(lat: Lattice, variant: str = "direct",
            classes: list[IntervalClass] | None = None) -> int:
    if variant == "direct":
        i, j = interval_index_pairs(lat)
        e = lat.elements
        return sum(
            triple_join_sum(build_interval_table(lat, (int(e[a]), int(e[b]))))
            for a, b in zip(i, j)
        )
    per_class = {
        "classes": triple_join_sum,
        "matrix": alpha_cube_trace,
        "squared": squared_sum,
    }.get(variant)
    if per_class is None:
        raise ValueError(f"unknown d_plus3 variant {variant!r}")
    total = 0
    for c in _classes(lat, classes):
        total += c.cardinality * per_class(build_interval_table(lat, c.representative))
    return total


def d_plus3_dual(lat: Lattice) -> int:
    """Direct d(n+3) with meets and bottoms in place of joins and tops."""
    return sum(
        triple_meet_sum(build_interval_table(lat, iv)) for iv in enumerate_intervals(lat)
    )


__all__ = [
    "d_plus1", "d_plus2", "d_plus3", "d_plus3_dual", "triple_join_sum",
    "triple_meet_sum", "alpha_cube_trace", "squared_sum", "PrecisionError",
    "PLUS1_VARIANTS", "PLUS2_VARIANTS", "PLUS3_VARIANTS",
]
