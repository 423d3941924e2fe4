"""Exact integer matrix products and trace sums with overflow bounds.

Matrices are nonnegative count matrices. A product is done in int64 when
an a-priori bound shows that no intermediate sum can overflow, otherwise
in Python integers. Elementwise-product sums fall back to 16-bit limbs.
"""
from __future__ import annotations

import numpy as np

INT64_MAX = (1 << 63) - 1
LIMB_BITS = 16
_LIMB_MASK = np.int64((1 << LIMB_BITS) - 1)


class PrecisionError(ArithmeticError):
    """A bound shows that a result cannot be represented exactly."""


def as_object(a: np.ndarray) -> np.ndarray:
    return a.astype(object) if a.dtype != object else a


def matmul(a: np.ndarray, b: np.ndarray, max_a: int | None = None,
           max_b: int | None = None) -> np.ndarray:
    """Exact product of nonnegative integer matrices."""
    if max_a is None:
        max_a = int(a.max()) if a.size else 0
    if max_b is None:
        max_b = int(b.max()) if b.size else 0
    if a.dtype != object and b.dtype != object and max_a * max_b * a.shape[1] <= INT64_MAX:
        return a.astype(np.int64, copy=False) @ b.astype(np.int64, copy=False)
    return as_object(a) @ as_object(b)


def _limbs(a: np.ndarray, count: int) -> list[np.ndarray]:
    return [(a >> np.int64(LIMB_BITS * k)) & _LIMB_MASK for k in range(count)]


def dot_sum(a: np.ndarray, b: np.ndarray, max_a: int | None = None,
            max_b: int | None = None) -> int:
    """Exact ``sum(a * b)`` for nonnegative integer arrays of equal shape."""
    if a.dtype == object or b.dtype == object:
        return int((as_object(a) * as_object(b)).sum())
    if max_a is None:
        max_a = int(a.max()) if a.size else 0
    if max_b is None:
        max_b = int(b.max()) if b.size else 0
    if max_a * max_b * a.size <= INT64_MAX:
        return int(np.vdot(a.astype(np.int64), b.astype(np.int64)))
    # limb products are below 2**32, so up to 2**31 terms sum safely
    if a.size >= 1 << 31:
        return int((as_object(a) * as_object(b)).sum())
    na = max(1, -(-max_a.bit_length() // LIMB_BITS))
    nb = max(1, -(-max_b.bit_length() // LIMB_BITS))
    la, lb = _limbs(a.astype(np.int64), na), _limbs(b.astype(np.int64), nb)
    total = 0
    for i, x in enumerate(la):
        for k, y in enumerate(lb):
            total += int(np.vdot(x, y)) << (LIMB_BITS * (i + k))
    return total


def trace_product(a: np.ndarray, b: np.ndarray, max_a: int | None = None,
                  max_b: int | None = None) -> int:
    """Exact ``Tr(a @ b)`` without forming the product."""
    return dot_sum(a, b.T, max_a, max_b)
