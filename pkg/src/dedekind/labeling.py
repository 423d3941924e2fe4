"""Canonical labeling of small vertex-colored graphs.

Individualization-refinement search in the style of nauty: equitable
partition refinement, a search tree over individualized vertices, leaf
certificates compared together with the refinement traces on their path,
and pruning by automorphisms found along the way.

Graphs here are small (a few dozen vertices), so adjacency is kept as
Python int bitmasks.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence


@dataclass(frozen=True)
class ColoredGraph:
    """Undirected simple graph with a color class per vertex."""

    n: int
    colors: tuple[int, ...]
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if len(self.colors) != self.n:
            raise ValueError(f"{len(self.colors)} colors for {self.n} vertices")
        used = sorted(set(self.colors))
        if used != list(range(len(used))):
            raise ValueError(f"colors must be contiguous from 0, got {used}")
        seen = set()
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n) or u == v:
                raise ValueError(f"bad edge ({u}, {v})")
            e = (min(u, v), max(u, v))
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)

    @classmethod
    def from_adjacency(cls, colors: Sequence[int], adj: Sequence[int]) -> "ColoredGraph":
        edges = []
        for u, mask in enumerate(adj):
            m = mask >> (u + 1)
            v = u + 1
            while m:
                if m & 1:
                    edges.append((u, v))
                m >>= 1
                v += 1
        return cls(len(colors), tuple(colors), tuple(edges))

    @cached_property
    def adjacency(self) -> list[int]:
        adj = [0] * self.n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return adj

    @property
    def color_counts(self) -> tuple[int, ...]:
        k = max(self.colors, default=-1) + 1
        counts = [0] * k
        for c in self.colors:
            counts[c] += 1
        return tuple(counts)

    def relabel(self, perm: Sequence[int]) -> "ColoredGraph":
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        colors = [0] * self.n
        for v, c in enumerate(self.colors):
            colors[perm[v]] = c
        edges = tuple((perm[u], perm[v]) for u, v in self.edges)
        return ColoredGraph(self.n, tuple(colors), edges)


@dataclass
class Labeling:
    order: list[int]
    """``order[i]`` is the vertex placed at canonical position ``i``."""
    certificate: tuple[int, ...]
    generators: list[list[int]] = field(default_factory=list)
    leaves: int = 0


class _Partition:
    """Ordered partition stored as a vertex list plus cell starts."""

    __slots__ = ("lab", "start", "size", "mask")

    def __init__(self, lab, start, size, mask):
        self.lab = lab
        self.start = start  # vertex -> start position of its cell
        self.size = size  # start position -> cell size
        self.mask = mask  # start position -> bitmask of cell members

    def copy(self):
        return _Partition(self.lab[:], self.start[:], dict(self.size), dict(self.mask))

    def discrete(self) -> bool:
        return len(self.size) == len(self.lab)

    def target_cell(self) -> int:
        best, best_size = -1, 0
        for s in sorted(self.size):
            z = self.size[s]
            if z > 1 and (best < 0 or z < best_size):
                best, best_size = s, z
        return best

    def individualize(self, v: int) -> int:
        s = self.start[v]
        z = self.size[s]
        lab = self.lab
        i = lab.index(v, s, s + z)
        lab[s], lab[i] = lab[i], lab[s]
        self.size[s] = 1
        self.mask[s] = 1 << v
        self.size[s + 1] = z - 1
        rest = 0
        for w in lab[s + 1 : s + z]:
            self.start[w] = s + 1
            rest |= 1 << w
        self.mask[s + 1] = rest
        return s


def _refine(adj: list[int], p: _Partition, queue: list[int]) -> tuple:
    """Refine ``p`` to the coarsest equitable partition below it.

    Returns a trace of the splits, which is invariant under relabeling.
    """
    trace = []
    pending = set(queue)
    lab = p.lab
    size = p.size
    mask = p.mask
    start = p.start
    n_cells = len(size)
    n = len(lab)
    while pending and n_cells < n:
        s = min(pending)
        pending.discard(s)
        wmask = mask[s]
        nbr = 0
        m = wmask
        while m:
            low = m & -m
            nbr |= adj[low.bit_length() - 1]
            m ^= low
        for t in sorted(size):
            z = size[t]
            if z == 1 or not (mask[t] & nbr):
                continue
            groups: dict[int, list[int]] = {}
            for v in lab[t : t + z]:
                groups.setdefault((adj[v] & wmask).bit_count(), []).append(v)
            if len(groups) == 1:
                continue
            keys = sorted(groups)
            pos = t
            pieces = []
            for k in keys:
                members = groups[k]
                lab[pos : pos + len(members)] = members
                cm = 0
                for v in members:
                    start[v] = pos
                    cm |= 1 << v
                size[pos] = len(members)
                mask[pos] = cm
                pieces.append(pos)
                pos += len(members)
            n_cells += len(pieces) - 1
            trace.append((s, t) + tuple((k, len(groups[k])) for k in keys))
            if t in pending:
                pending.update(pieces)
            else:
                largest = max(pieces, key=lambda q: (size[q], -q))
                pending.update(q for q in pieces if q != largest)
    trace.append(n_cells)
    return tuple(trace)


def _certificate(adj: list[int], lab: list[int]) -> tuple[int, ...]:
    pos = [0] * len(lab)
    for i, v in enumerate(lab):
        pos[v] = i
    cert = []
    for v in lab:
        m = adj[v]
        row = 0
        while m:
            low = m & -m
            row |= 1 << pos[low.bit_length() - 1]
            m ^= low
        cert.append(row)
    return tuple(cert)


def _orbit_root(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def canonical_labeling(g: ColoredGraph) -> Labeling:
    """Canonical vertex order of ``g`` and generators of its automorphism group."""
    n = g.n
    adj = g.adjacency
    lab = sorted(range(n), key=lambda v: (g.colors[v], v))
    start = [0] * n
    size: dict[int, int] = {}
    cmask: dict[int, int] = {}
    pos = 0
    for c, count in enumerate(g.color_counts):
        m = 0
        for v in lab[pos : pos + count]:
            start[v] = pos
            m |= 1 << v
        if count:
            size[pos] = count
            cmask[pos] = m
        pos += count
    root = _Partition(lab, start, size, cmask)
    root_trace = _refine(adj, root, list(size))

    gens: list[list[int]] = []
    state = {"first": None, "best": None, "leaves": 0, "jump": None}
    first_path: list[int] = []
    best_path: list[int] = []

    def common_depth(a: list[int], b: list[int]) -> int:
        k = 0
        for x, y in zip(a, b):
            if x != y:
                break
            k += 1
        return k

    def found_leaf(p: _Partition, prefix: list[int], path_key: list):
        cert = _certificate(adj, p.lab)
        key = path_key + [(1, cert)]
        state["leaves"] += 1
        if state["first"] is None:
            state["first"] = (key, p.lab[:], cert)
            state["best"] = (key, p.lab[:], cert)
            first_path[:] = prefix
            best_path[:] = prefix
            return
        for ref, ref_path in (("first", first_path), ("best", best_path)):
            ref_key, ref_lab, ref_cert = state[ref]
            if cert == ref_cert:
                perm = [0] * n
                for a, b in zip(ref_lab, p.lab):
                    perm[a] = b
                gens.append(perm)
                # the rest of this subtree mirrors one already explored
                state["jump"] = common_depth(ref_path, prefix)
                return
        if key > state["best"][0]:
            state["best"] = (key, p.lab[:], cert)
            best_path[:] = prefix

    def prunable(path_key: list) -> bool:
        if state["first"] is None:
            return False
        depth = len(path_key)
        if path_key == state["first"][0][:depth]:
            return False
        return path_key < state["best"][0][:depth]

    def visit(p: _Partition, prefix: list[int], path_key: list):
        if p.discrete():
            found_leaf(p, prefix, path_key)
            return
        depth = len(prefix)
        t = p.target_cell()
        cell = sorted(p.lab[t : t + p.size[t]])
        done: list[int] = []
        parent = list(range(n))
        used = 0
        for v in cell:
            if done and len(gens) > used:
                for h in gens[used:]:
                    if all(h[x] == x for x in prefix):
                        for x in cell:
                            a, b = _orbit_root(parent, x), _orbit_root(parent, h[x])
                            if a != b:
                                parent[max(a, b)] = min(a, b)
                used = len(gens)
            if done:
                rv = _orbit_root(parent, v)
                if any(_orbit_root(parent, u) == rv for u in done):
                    continue
            done.append(v)
            child = p.copy()
            s = child.individualize(v)
            trace = _refine(adj, child, [s])
            key = path_key + [(0, s, trace)]
            if prunable(key):
                continue
            prefix.append(v)
            visit(child, prefix, key)
            prefix.pop()
            if state["jump"] is not None:
                if state["jump"] < depth:
                    return
                state["jump"] = None

    visit(root, [], [(0, -1, root_trace)])
    _, best_lab, best_cert = state["best"]
    return Labeling(best_lab, best_cert, gens, state["leaves"])


def canonical_key(g: ColoredGraph) -> bytes:
    """Byte string equal for two graphs iff they are color-isomorphic."""
    lab = canonical_labeling(g)
    width = (g.n + 7) // 8 or 1
    counts = g.color_counts
    head = g.n.to_bytes(2, "little") + len(counts).to_bytes(1, "little")
    head += b"".join(c.to_bytes(2, "little") for c in counts)
    return head + b"".join(row.to_bytes(width, "little") for row in lab.certificate)


def orbits(n: int, generators: Sequence[Sequence[int]]) -> list[int]:
    """Orbit representative (smallest member) of every vertex."""
    parent = list(range(n))
    for h in generators:
        for x in range(n):
            a, b = _orbit_root(parent, x), _orbit_root(parent, h[x])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [_orbit_root(parent, x) for x in range(n)]
