"""d(n+4) from the base lattice D_n via traces of gamma_ab^2.

For an interval I and a, b in I,

    alpha_ab(c, d) = bot(a & c & d) * top(b | c | d)
    beta_ab(c, d)  = bot(b & c & d) * top(a | c | d)
    gamma_ab       = alpha_ab @ beta_ab

and d(n+4) sums #[I] * Tr(gamma_ab^2) over interval classes and pairs.
Unordered pair classes carry weight 2 off the diagonal.

Arithmetic is exact throughout. Bounds decide between int64 and Python
integers: max alpha <= bot(a) top(b), max beta <= bot(b) top(a), and
max gamma <= max alpha * max beta * #I.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass

import numpy as np

from .canon import IntervalClass, PairClass, classify_intervals, classify_pairs
from .exact import INT64_MAX, PrecisionError, dot_sum, matmul
from .intervals import IntervalTable, build_interval_table
from .lattice import Lattice

log = logging.getLogger(__name__)

TRACE_LIMIT = 1 << 128
ORACLE_MAX_SIZE = 8


@dataclass(frozen=True)
class TraceResult:
    trace: int
    guard: int
    """A-priori bound on the entries of gamma."""
    max_gamma: int
    """Largest entry of gamma actually computed."""
    wide: bool = False
    """True when gamma needed more than 64 bits and was done in Python ints."""


def build_alpha_beta(tbl: IntervalTable, a: int, b: int) -> tuple[np.ndarray, np.ndarray]:
    ia, ib = tbl.index(a), tbl.index(b)
    bot, top = tbl.bot, tbl.top
    meet, join = tbl.meet_index, tbl.join_index
    if int(bot[ia]) * int(top[ib]) > INT64_MAX or int(bot[ib]) * int(top[ia]) > INT64_MAX:
        raise PrecisionError(f"alpha/beta entries for ({a},{b}) exceed 64 bits")
    alpha = bot[meet[ia][meet]] * top[join[ib][join]]
    beta = bot[meet[ib][meet]] * top[join[ia][join]]
    return alpha, beta


def trace_gamma_squared(alpha: np.ndarray, beta: np.ndarray, max_alpha: int | None = None,
                        max_beta: int | None = None) -> TraceResult:
    """Tr((alpha beta)^2) = sum over d, e of gamma(d, e) gamma(e, d)."""
    if alpha.shape != beta.shape:
        raise ValueError(f"shape mismatch {alpha.shape} vs {beta.shape}")
    dim = alpha.shape[0]
    if max_alpha is None:
        max_alpha = int(alpha.max()) if alpha.size else 0
    if max_beta is None:
        max_beta = int(beta.max()) if beta.size else 0
    guard = max_alpha * max_beta * dim
    gamma = matmul(alpha, beta, max_alpha, max_beta)
    wide = gamma.dtype == object
    max_gamma = int(gamma.max()) if gamma.size else 0
    if max_gamma > guard:
        raise PrecisionError(f"gamma entry {max_gamma} above its bound {guard}")
    if max_gamma * max_gamma * dim * dim >= TRACE_LIMIT:
        raise PrecisionError(
            f"trace bound {max_gamma}^2 * {dim}^2 exceeds 128 bits; refusing to continue"
        )
    if wide and max_gamma <= INT64_MAX:
        gamma = gamma.astype(np.int64)
    trace = dot_sum(gamma, gamma.T, max_gamma, max_gamma)
    log.debug("dim=%d max_gamma=%d guard=%d wide=%s", dim, max_gamma, guard, wide)
    return TraceResult(trace, guard, max_gamma, wide)


def pair_trace(tbl: IntervalTable, a: int, b: int) -> TraceResult:
    ia, ib = tbl.index(a), tbl.index(b)
    alpha, beta = build_alpha_beta(tbl, a, b)
    return trace_gamma_squared(
        alpha, beta,
        int(tbl.bot[ia]) * int(tbl.top[ib]),
        int(tbl.bot[ib]) * int(tbl.top[ia]),
    )


def d_plus4_direct(tbl: IntervalTable) -> int:
    """Six-fold literal sum for one interval; only for #I <= 8."""
    if tbl.size > ORACLE_MAX_SIZE:
        raise ValueError(f"interval of size {tbl.size} too large for the direct sum")
    elems = [int(x) for x in tbl.elems]
    bot = dict(zip(elems, (int(v) for v in tbl.bot)))
    top = dict(zip(elems, (int(v) for v in tbl.top)))
    total = 0
    for a, b, c, d, e, f in itertools.product(elems, repeat=6):
        total += (
            bot[a & c & d] * bot[b & c & e] * bot[b & d & f] * bot[a & e & f]
            * top[b | c | d] * top[a | c | e] * top[a | d | f] * top[b | e | f]
        )
    return total


def interval_trace_sum(tbl: IntervalTable) -> int:
    """Sum of Tr(gamma_ab^2) over all ordered pairs a, b of the interval."""
    elems = [int(x) for x in tbl.elems]
    return sum(pair_trace(tbl, a, b).trace for a in elems for b in elems)


def interval_weighted_sum(tbl: IntervalTable, pairs) -> int:
    """Sum of weight * cardinality * Tr(gamma_ab^2) over pair classes."""
    return sum(p.weight * p.cardinality * pair_trace(tbl, *p.representative).trace
               for p in pairs)


def d_plus4_matrix(lat: Lattice, classes: list[IntervalClass] | None = None) -> int:
    """d(n+4) as the sum of #[I] times all ordered-pair traces of each class."""
    if classes is None:
        classes = classify_intervals(lat)
    return sum(c.cardinality * interval_trace_sum(build_interval_table(lat, c.representative))
               for c in classes)


def d_plus4_sym(lat: Lattice, classes: list[IntervalClass] | None = None,
                pair_classes: dict[tuple[int, int], list[PairClass]] | None = None) -> int:
    """d(n+4) over pair classes, weighted by omega and the class sizes.

    ``pair_classes`` maps each interval representative to its pair
    classes; missing entries are computed.
    """
    if classes is None:
        classes = classify_intervals(lat)
    pair_classes = pair_classes or {}
    total = 0
    for c in classes:
        tbl = build_interval_table(lat, c.representative)
        pcs = pair_classes.get(tuple(c.representative))
        if pcs is None:
            pcs = classify_pairs(tbl)
        total += c.cardinality * interval_weighted_sum(tbl, pcs)
    return total


def bound_chain(max_gamma_bits: int = 51, dim_bits: int = 13) -> int:
    """Bit size of the trace bound (2^g * 2^g * 2^d) * 2^d."""
    return 2 * max_gamma_bits + 2 * dim_bits


def a_priori_bounds(dim: int) -> dict:
    """Worst-case bounds for an interval of ``dim`` elements.

    All of bot/top are at most ``dim``, so max alpha, max beta <= dim^2,
    max gamma <= dim^5 and the trace <= max gamma^2 * dim^2.
    """
    max_alpha = dim * dim
    max_gamma = max_alpha * max_alpha * dim
    trace = max_gamma * max_gamma * dim * dim
    return {
        "dim": dim,
        "max_alpha": max_alpha,
        "max_gamma": max_gamma,
        "gamma_fits_int64": max_gamma <= INT64_MAX,
        "gamma_below_2_51": max_gamma < (1 << 51),
        "trace_bits": trace.bit_length(),
    }
