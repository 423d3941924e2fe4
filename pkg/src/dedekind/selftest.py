"""Fixed-seed invariant checks across all modules."""
from __future__ import annotations

import random
import time

import numpy as np

from .canon import classify_pairs, interval_graph, interval_partition, pair_partition
from .enumeration import alpha_cube_trace
from .fca import build_context
from .intervals import build_interval_table, enumerate_intervals
from .known import (
    D2_INTERVAL_CLASSES,
    D2_TOP_PAIR_CLASSES,
    DEDEKIND,
    as_partition,
)
from .labeling import canonical_key
from .lattice import generate_lattice, join, meet
from .rank4 import d_plus4_direct, interval_trace_sum, pair_trace

D3_ELEMENTS = [0, 1, 3, 5, 7, 15, 17, 19, 21, 23, 31, 51, 55, 63, 85, 87, 95, 119, 127, 255]


def _lattice_axioms(rng):
    for n in range(6):
        assert generate_lattice(n).count == DEDEKIND[n], n
    assert generate_lattice(3).tolist() == D3_ELEMENTS
    for n in range(1, 5):
        lat = generate_lattice(n)
        el = lat.tolist()
        members = set(el)
        for _ in range(300):
            x, y, z = (rng.choice(el) for _ in range(3))
            assert meet(x, join(y, z)) == join(meet(x, y), meet(x, z))
            assert join(x, y) in members and meet(x, y) in members
        half = 1 << (n - 1)
        prev = generate_lattice(n - 1).tolist()
        lifted = sorted(y | (x << half) for x in prev for y in prev if x & y == x)
        assert lifted == el


def _key_stability(rng):
    lat = generate_lattice(3)
    tbl = build_interval_table(lat, (0, lat.top))
    g = interval_graph(build_context(tbl))
    key = canonical_key(g)
    for _ in range(1000):
        perm = list(range(g.n))
        rng.shuffle(perm)
        assert canonical_key(g.relabel(perm)) == key


def _examples():
    lat = generate_lattice(2)
    assert as_partition(interval_partition(lat)) == as_partition(D2_INTERVAL_CLASSES)
    tbl = build_interval_table(lat, (0, 15))
    assert as_partition(pair_partition(tbl)) == as_partition(D2_TOP_PAIR_CLASSES)
    reps = {p.representative: p.cardinality for p in classify_pairs(tbl)}
    assert reps == {tuple(min(g)): len(g) for g in D2_TOP_PAIR_CLASSES}


def _oracles():
    lat = generate_lattice(2)
    for iv in enumerate_intervals(lat):
        tbl = build_interval_table(lat, iv)
        assert d_plus4_direct(tbl) == interval_trace_sum(tbl), iv


def _class_invariance():
    lat = generate_lattice(2)
    for group in interval_partition(lat):
        vals = {alpha_cube_trace(build_interval_table(lat, iv)) for iv in group}
        assert len(vals) == 1, group
    tbl = build_interval_table(lat, (0, 15))
    for group in pair_partition(tbl):
        vals = {pair_trace(tbl, a, b).trace for a, b in group}
        assert len(vals) == 1, group


CHECKS = {
    "lattice axioms and D_3 element labels": _lattice_axioms,
    "canonical key stable under 1000 relabelings": _key_stability,
    "D_2 interval classes and [0,15] pair classes": _examples,
    "direct rank+4 sum equals trace sum on D_2": _oracles,
    "traces constant within classes on D_2": _class_invariance,
}


def selftest(seed: int = 20231) -> dict:
    rng = random.Random(seed)
    np.random.seed(seed)
    results = {}
    ok = True
    for name, check in CHECKS.items():
        t = time.perf_counter()
        try:
            check(rng) if check in (_lattice_axioms, _key_stability) else check()
            status = "pass"
        except AssertionError as exc:
            status = f"FAIL {exc}"
            ok = False
        results[name] = {"status": status, "seconds": round(time.perf_counter() - t, 3)}
    return {"ok": ok, "seed": seed, "checks": results}
