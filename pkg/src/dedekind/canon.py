"""Graph gadgets for (anti)isomorphism of intervals and of pairs inside them.

An interval's reduced context becomes a bipartite graph whose two sides
hang off two equally colored marker vertices, so a color-preserving graph
isomorphism may swap the sides; that swap is exactly a lattice
anti-isomorphism. Pairs (a, b) get four more markers plus two linking
vertices. Classes are read off canonical keys.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .fca import FormalContext, build_context, position_context
from .intervals import Interval, IntervalTable, interval_index_pairs
from .labeling import ColoredGraph, canonical_key, canonical_labeling
from .lattice import Lattice
from .parallel import pool_map

IRREDUCIBLE, SIDE_MARKER, PAIR_MARKER, LINK = 0, 1, 2, 3


class InvalidPairError(ValueError):
    pass


@dataclass(frozen=True)
class IntervalClass:
    representative: Interval
    key: bytes | None
    cardinality: int
    size: int
    """Number of elements of every interval in the class."""


@dataclass(frozen=True)
class PairClass:
    representative: tuple[int, int]
    key: bytes | None
    cardinality: int

    @property
    def diagonal(self) -> bool:
        a, b = self.representative
        return a == b

    @property
    def weight(self) -> int:
        return 1 if self.diagonal else 2


def _context_edges(ctx: FormalContext) -> list[tuple[int, int]]:
    nj = ctx.incidence.shape[0]
    rows, cols = np.nonzero(ctx.incidence)
    return [(int(r), nj + int(c)) for r, c in zip(rows, cols)]


def interval_graph(ctx: FormalContext) -> ColoredGraph:
    """Bipartite context graph with one marker per side.

    Vertices: J (0..|J|-1), M (|J|..|J|+|M|-1), J-marker, M-marker.
    """
    nj, nm = ctx.incidence.shape
    mj, mm = nj + nm, nj + nm + 1
    edges = _context_edges(ctx)
    edges += [(j, mj) for j in range(nj)]
    edges += [(nj + m, mm) for m in range(nm)]
    colors = (IRREDUCIBLE,) * (nj + nm) + (SIDE_MARKER,) * 2
    if nj + nm == 0:
        colors = (0, 0)
    return ColoredGraph(nj + nm + 2, colors, tuple(edges))


def pair_graph(tbl: IntervalTable, ctx: FormalContext, a: int, b: int) -> ColoredGraph:
    """Context graph extended so that its automorphisms fix {a, b}.

    ``j(x)`` is joined to the join irreducibles below ``x`` and ``m(x)`` to
    the meet irreducibles above it; a link vertex ties ``j(x)`` to
    ``m(x)``. Pairs are unordered and stored with ``a <= b`` as integers.
    """
    a, b = int(a), int(b)
    if a not in tbl or b not in tbl:
        raise InvalidPairError(f"({a},{b}) not inside [{tbl.interval.lo},{tbl.interval.hi}]")
    if a > b:
        raise InvalidPairError(f"pair ({a},{b}) must be given with a <= b")
    base = interval_graph(ctx)
    nj, nm = ctx.incidence.shape
    n0 = base.n
    edges = list(base.edges)
    J, M = ctx.rows, ctx.cols
    for k, x in enumerate((a, b)):
        jx, mx, link = n0 + 2 * k, n0 + 2 * k + 1, n0 + 4 + k
        ux = np.uint64(x)
        edges += [(int(j), jx) for j in np.nonzero((J & ux) == J)[0]]
        edges += [(nj + int(m), mx) for m in np.nonzero((M & ux) == ux)[0]]
        edges += [(link, jx), (link, mx)]
    # an empty context leaves color 0 unused; keep colors contiguous
    colors = list(base.colors) + [PAIR_MARKER] * 4 + [LINK] * 2
    if nj + nm == 0:
        colors = [0, 0, 1, 1, 1, 1, 2, 2]
    return ColoredGraph(n0 + 6, tuple(colors), tuple(edges))


def _interval_key(args) -> bytes:
    n, lo, hi = args
    return canonical_key(interval_graph(position_context(n, lo, hi)))


def lattice_symmetries(lat: Lattice) -> tuple[np.ndarray, np.ndarray]:
    """Automorphisms and anti-automorphisms of D_n as index permutations.

    Returns ``(images, is_dual)``: row ``g`` of ``images`` maps element
    indices, and ``is_dual[g]`` marks the order-reversing ones. They come
    from permuting the n generators, optionally composed with the duality
    that complements a word and reverses its bit positions.
    """
    n = lat.n
    e = lat.elements
    width = 1 << n
    full = np.uint64((1 << width) - 1) if width < 64 else np.uint64(0xFFFFFFFFFFFFFFFF)
    bits = [((e >> np.uint64(p)) & np.uint64(1)) for p in range(width)]
    images, dual = [], []
    for sigma in itertools.permutations(range(n)):
        target = [sum(((p >> i) & 1) << sigma[i] for i in range(n)) for p in range(width)]
        word = np.zeros_like(e)
        for p in range(width):
            word |= bits[p] << np.uint64(target[p])
        images.append(lat.indices(word))
        dual.append(False)
        flipped = np.zeros_like(e)
        for p in range(width):
            flipped |= bits[p] << np.uint64(target[p] ^ (width - 1))
        images.append(lat.indices(~flipped & full))
        dual.append(True)
    return np.array(images, dtype=np.int64), np.array(dual)


def interval_orbits(lat: Lattice) -> tuple[np.ndarray, np.ndarray]:
    """Orbits of intervals under the symmetries of D_n.

    Returns ``(rep, count)``: the smallest interval (as ``lo * N + hi``
    index code) of each orbit and the orbit sizes, ascending by ``rep``.
    """
    N = lat.count
    i, j = interval_index_pairs(lat)
    images, dual = lattice_symmetries(lat)
    rep = i * N + j
    for img, d in zip(images, dual):
        if d:
            code = img[j] * N + img[i]
        else:
            code = img[i] * N + img[j]
        np.minimum(rep, code, out=rep)
    reps, counts = np.unique(rep, return_counts=True)
    return reps, counts


def classify_intervals(lat: Lattice, jobs: int | None = None,
                       use_symmetry: bool = True) -> list[IntervalClass]:
    """Equivalence classes of intervals of ``lat`` under (anti)isomorphism.

    One class per canonical key, ordered by representative; the
    representative is the first member in enumeration order. With
    ``use_symmetry`` only one interval per orbit of the generator
    permutations and duality of D_n is labeled, since those orbits lie
    inside classes.
    """
    N = lat.count
    e = lat.elements
    if use_symmetry:
        codes, counts = interval_orbits(lat)
    else:
        i, j = interval_index_pairs(lat)
        codes, counts = i * N + j, np.ones(i.shape, dtype=np.int64)
    work = [(lat.n, int(e[c // N]), int(e[c % N])) for c in codes]
    results = pool_map(_interval_key, work, jobs)
    classes: dict[bytes, list] = {}
    for key, code, count in zip(results, codes, counts):
        entry = classes.get(key)
        if entry is None:
            classes[key] = [int(code), int(count)]
        else:
            entry[1] += int(count)
            entry[0] = min(entry[0], int(code))
    out = []
    for key, (c, card) in classes.items():
        lo, hi = e[c // N], e[c % N]
        size = int(np.count_nonzero(((e & lo) == lo) & ((e & hi) == e)))
        out.append(IntervalClass(Interval(int(lo), int(hi)), key, card, size))
    out.sort(key=lambda c: (lat.index(c.representative.lo), lat.index(c.representative.hi)))
    return out


def interval_automorphisms(tbl: IntervalTable, ctx: FormalContext | None = None):
    """Generators of the (anti)automorphism group of the interval.

    Each generator is an index permutation of ``tbl.elems``, recovered
    from an automorphism of the interval graph.
    """
    if ctx is None:
        ctx = build_context(tbl)
    g = interval_graph(ctx)
    nj, nm = ctx.incidence.shape
    J, M = ctx.rows, ctx.cols
    e = tbl.elems
    below = (J[None, :] & e[:, None]) == J[None, :]  # below[x, j]: J[j] <= e[x]
    lo, hi = np.uint64(tbl.interval.lo), np.uint64(tbl.interval.hi)
    perms = []
    for h in canonical_labeling(g).generators:
        if nj == 0:
            continue
        img = [h[j] for j in range(nj)]
        if img[0] < nj:
            vals = J[np.array(img)]
            words = [np.bitwise_or.reduce(vals[row], initial=lo) for row in below]
        else:
            vals = M[np.array(img) - nj]
            words = [np.bitwise_and.reduce(vals[row], initial=hi) for row in below]
        perms.append(np.searchsorted(e, np.array(words, dtype=np.uint64)))
    return perms


def _pair_index(size: int):
    a, b = np.triu_indices(size)
    dtype = np.int32 if size * (size + 1) // 2 < (1 << 31) else np.int64
    return a.astype(dtype), b.astype(dtype)


def _pair_code(a: np.ndarray, b: np.ndarray, size: int) -> np.ndarray:
    """Position of the pair (min, max) in ``np.triu_indices(size)`` order."""
    lo, hi = np.minimum(a, b).astype(np.int64), np.maximum(a, b).astype(np.int64)
    return (lo * size - lo * (lo - 1) // 2 + (hi - lo)).astype(a.dtype)


def _orbit_minima(count: int, perms: list[np.ndarray], dtype=np.int64) -> np.ndarray:
    """Smallest point of the orbit of every point under the generated group.

    Labels flow along each generator and its inverse until stable; pointer
    jumping (``lab[lab]``) shortens long orbits. Memory stays linear in
    ``count`` times the number of generators.
    """
    lab = np.arange(count, dtype=dtype)
    moves = list(perms)
    for perm in perms:
        inv = np.empty_like(perm)
        inv[perm] = np.arange(count, dtype=dtype)
        moves.append(inv)
    changed = True
    while changed:
        changed = False
        for m in moves:
            new = np.minimum(lab, lab[m])
            if not changed and not np.array_equal(new, lab):
                changed = True
            lab = new
        lab = lab[lab]
    return lab


def classify_pairs(tbl: IntervalTable, ctx: FormalContext | None = None,
                   method: str = "orbits") -> list[PairClass]:
    """Classes of unordered pairs {a, b} of the interval under (anti)automorphisms.

    ``method="graph"`` labels the pair graph of every pair and groups by
    key. ``method="orbits"`` computes the interval's symmetry group once
    and takes orbits of pairs under it, which gives the same partition.
    Classes are ordered by their smallest pair.
    """
    if ctx is None:
        ctx = build_context(tbl)
    e = tbl.elems
    size = tbl.size
    a_idx, b_idx = _pair_index(size)
    if method == "graph":
        groups: dict[bytes, list[int]] = {}
        for k, (ia, ib) in enumerate(zip(a_idx, b_idx)):
            key = canonical_key(pair_graph(tbl, ctx, int(e[ia]), int(e[ib])))
            groups.setdefault(key, []).append(k)
        out = [
            PairClass((int(e[a_idx[m[0]]]), int(e[b_idx[m[0]]])), key, len(m))
            for key, m in groups.items()
        ]
    elif method == "orbits":
        moves = []
        for perm in interval_automorphisms(tbl, ctx):
            perm = perm.astype(a_idx.dtype)
            moves.append(_pair_code(perm[a_idx], perm[b_idx], size))
        first, counts = np.unique(_orbit_minima(a_idx.shape[0], moves, a_idx.dtype),
                                  return_counts=True)
        out = [
            PairClass((int(e[a_idx[f]]), int(e[b_idx[f]])), None, int(c))
            for f, c in zip(first, counts)
        ]
    else:
        raise ValueError(f"unknown method {method!r}")
    out.sort(key=lambda c: (c.representative[0], c.representative[1]))
    return out


def pair_total(size: int) -> int:
    return size * (size + 1) // 2


def interval_partition(lat: Lattice) -> list[list[Interval]]:
    """All intervals grouped by canonical key, every interval labeled.

    Groups are ordered by their first member in enumeration order.
    """
    groups: dict[bytes, list[Interval]] = {}
    e = lat.elements
    for a, b in zip(*interval_index_pairs(lat)):
        lo, hi = int(e[a]), int(e[b])
        groups.setdefault(_interval_key((lat.n, lo, hi)), []).append(Interval(lo, hi))
    return list(groups.values())


def pair_partition(tbl: IntervalTable, ctx: FormalContext | None = None) -> list[list[tuple[int, int]]]:
    """Unordered pairs of the interval grouped by pair-graph key."""
    if ctx is None:
        ctx = build_context(tbl)
    elems = [int(x) for x in tbl.elems]
    groups: dict[bytes, list[tuple[int, int]]] = {}
    for i, a in enumerate(elems):
        for b in elems[i:]:
            groups.setdefault(canonical_key(pair_graph(tbl, ctx, a, b)), []).append((a, b))
    return list(groups.values())


__all__ = [
    "ColoredGraph", "IntervalClass", "PairClass", "InvalidPairError", "canonical_key",
    "classify_intervals", "classify_pairs", "interval_graph", "pair_graph",
    "interval_orbits", "lattice_symmetries", "interval_automorphisms", "pair_total",
    "interval_partition", "pair_partition",
]
