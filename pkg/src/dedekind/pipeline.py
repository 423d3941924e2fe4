"""Staged computation of d(n+k): work units, checkpoints, verification."""
from __future__ import annotations

import json
import logging
import time
from dataclasses import dataclass
from pathlib import Path

from . import enumeration as en
from .canon import IntervalClass, classify_intervals, classify_pairs
from .files import read_interval_classes, read_pair_classes, write_json_atomic
from .intervals import build_interval_table, enumerate_intervals
from .known import DEDEKIND, INTERVAL_CLASSES, PAIR_REDUCTION
from .lattice import Lattice, generate_lattice
from .parallel import chunked, pool_map
from .rank4 import ORACLE_MAX_SIZE, a_priori_bounds, bound_chain, d_plus4_direct, pair_trace

log = logging.getLogger(__name__)

CHUNK_SIZE = 4096

# method name -> (rank shift, function of (lattice, classes))
SIMPLE_METHODS = {
    "plus1": (1, lambda lat, cls: en.d_plus1(lat, "direct")),
    "plus1-classes": (1, lambda lat, cls: en.d_plus1(lat, "classes", cls())),
    "plus2": (2, lambda lat, cls: en.d_plus2(lat, "direct")),
    "plus2-intervals": (2, lambda lat, cls: en.d_plus2(lat, "intervals")),
    "plus2-classes": (2, lambda lat, cls: en.d_plus2(lat, "classes", cls())),
    "plus2-matrix": (2, lambda lat, cls: en.d_plus2(lat, "matrix")),
    "plus3": (3, lambda lat, cls: en.d_plus3(lat, "direct")),
    "plus3-classes": (3, lambda lat, cls: en.d_plus3(lat, "classes", cls())),
    "plus3-matrix": (3, lambda lat, cls: en.d_plus3(lat, "matrix", cls())),
    "plus3-squared": (3, lambda lat, cls: en.d_plus3(lat, "squared", cls())),
}
PLUS4_METHODS = ("plus4-matrix", "plus4-sym", "plus4-oracle")
METHODS = tuple(SIMPLE_METHODS) + PLUS4_METHODS


class CheckpointMismatch(RuntimeError):
    pass


class VerificationFailure(AssertionError):
    pass


@dataclass
class RunManifest:
    base: int
    method: str
    lattice_path: str | None = None
    classes_path: str | None = None
    pairs_dir: str | None = None
    jobs: int | None = None
    checkpoint: str | None = None
    report: str | None = None
    chunk_size: int = CHUNK_SIZE
    stop_after: int | None = None
    """Process at most this many new work units, then stop (for resume tests)."""


def rank_shift(method: str) -> int:
    if method in SIMPLE_METHODS:
        return SIMPLE_METHODS[method][0]
    if method in PLUS4_METHODS:
        return 4
    raise ValueError(f"unknown method {method!r}")


def load_lattice(base: int, path: str | None = None) -> Lattice:
    if path is None:
        return generate_lattice(base)
    lat = Lattice.load(path)
    if lat.n != base:
        raise ValueError(f"{path} holds D_{lat.n}, expected D_{base}")
    return lat


# --- rank +4 work units -------------------------------------------------

@dataclass(frozen=True)
class WorkUnit:
    uid: str
    interval: tuple[int, int]
    card: int
    pairs: tuple
    """(a, b, multiplier) triples; multiplier is weight * pair-class size."""


def plus4_units(lat: Lattice, classes: list[IntervalClass], method: str,
                pairs_dir: str | None = None, chunk_size: int = CHUNK_SIZE) -> list[WorkUnit]:
    units = []
    for ci, c in enumerate(classes):
        iv = tuple(c.representative)
        if method == "plus4-sym":
            if pairs_dir is not None:
                pcs = read_pair_classes(pairs_dir, iv)
            else:
                pcs = classify_pairs(build_interval_table(lat, iv))
            triples = [(p.representative[0], p.representative[1], p.weight * p.cardinality)
                       for p in pcs]
        else:
            elems = [int(x) for x in build_interval_table(lat, iv).elems]
            triples = [(a, b, 1) for a in elems for b in elems]
        for k, part in enumerate(chunked(triples, chunk_size)):
            units.append(WorkUnit(f"{ci}:{k}", iv, c.cardinality, tuple(part)))
    return units


_worker_state: dict = {}


def _init_worker(base: int) -> None:
    _worker_state.clear()
    _worker_state["lattice"] = generate_lattice(base)


def _run_unit(unit: WorkUnit) -> tuple[str, int, dict]:
    lat = _worker_state["lattice"]
    cached = _worker_state.get("table")
    if cached is None or cached.interval != unit.interval:
        cached = build_interval_table(lat, unit.interval)
        _worker_state["table"] = cached
    partial = 0
    stats = {"max_gamma": 0, "wide": 0, "traces": 0}
    for a, b, mult in unit.pairs:
        res = pair_trace(cached, a, b)
        partial += mult * res.trace
        stats["max_gamma"] = max(stats["max_gamma"], res.max_gamma)
        stats["wide"] += res.wide
        stats["traces"] += 1
    return unit.uid, partial, stats


def run_plus4(lat: Lattice, classes: list[IntervalClass], manifest: RunManifest) -> dict:
    """Weighted trace accumulation with optional checkpoint/resume."""
    units = plus4_units(lat, classes, manifest.method, manifest.pairs_dir, manifest.chunk_size)
    state = {"base": manifest.base, "method": manifest.method,
             "chunk_size": manifest.chunk_size, "completed": [], "partial_sum": "0"}
    ckpt = Path(manifest.checkpoint) if manifest.checkpoint else None
    if ckpt is not None and ckpt.exists():
        saved = json.loads(ckpt.read_text())
        for k in ("base", "method", "chunk_size"):
            if saved.get(k) != state[k]:
                raise CheckpointMismatch(
                    f"checkpoint {ckpt} has {k}={saved.get(k)!r}, run has {state[k]!r}"
                )
        state = saved
    done = set(state["completed"])
    total = int(state["partial_sum"])
    todo = [u for u in units if u.uid not in done]
    if manifest.stop_after is not None:
        todo = todo[: manifest.stop_after]
    cards = {u.uid: u.card for u in units}
    results = pool_map(_run_unit, todo, manifest.jobs, _init_worker, (manifest.base,))
    stats = {"max_gamma": 0, "wide": 0, "traces": 0}
    for uid, partial, st in results:
        total += cards[uid] * partial
        state["completed"].append(uid)
        state["partial_sum"] = str(total)
        stats["max_gamma"] = max(stats["max_gamma"], st["max_gamma"])
        stats["wide"] += st["wide"]
        stats["traces"] += st["traces"]
        if ckpt is not None:
            write_json_atomic(ckpt, state)
    complete = len(state["completed"]) == len(units)
    return {
        "value": total if complete else None,
        "partial_sum": str(total),
        "work_units": len(units),
        "completed_units": len(state["completed"]),
        "complete": complete,
        "precision": stats,
    }


def plus4_oracle(lat: Lattice) -> int:
    total = 0
    for iv in enumerate_intervals(lat):
        tbl = build_interval_table(lat, iv)
        if tbl.size > ORACLE_MAX_SIZE:
            raise ValueError(
                f"D_{lat.n} has intervals with {tbl.size} > {ORACLE_MAX_SIZE} elements; "
                "the direct sum only runs on bases <= 2"
            )
        total += d_plus4_direct(tbl)
    return total


def run(manifest: RunManifest) -> dict:
    """Execute one ``compute`` request and return its report."""
    t0 = time.perf_counter()
    if manifest.method not in METHODS:
        raise ValueError(f"unknown method {manifest.method!r}; choose from {', '.join(METHODS)}")
    lat = load_lattice(manifest.base, manifest.lattice_path)
    cache: dict = {}

    def classes() -> list[IntervalClass]:
        if "classes" not in cache:
            if manifest.classes_path:
                cache["classes"] = read_interval_classes(manifest.classes_path, lat)
            else:
                cache["classes"] = classify_intervals(lat, manifest.jobs)
        return cache["classes"]

    report = {"method": manifest.method, "base": manifest.base}
    if manifest.method in SIMPLE_METHODS:
        value = SIMPLE_METHODS[manifest.method][1](lat, classes)
        report.update(value=value, work_units=1, checkpoint=None)
    elif manifest.method == "plus4-oracle":
        report.update(value=plus4_oracle(lat), work_units=1, checkpoint=None)
    else:
        res = run_plus4(lat, classes(), manifest)
        report.update(res)
        report["checkpoint"] = manifest.checkpoint
    report["value"] = None if report["value"] is None else str(report["value"])
    report["elapsed"] = round(time.perf_counter() - t0, 3)
    if manifest.report:
        write_json_atomic(manifest.report, report)
    return report


# --- verification ---------------------------------------------------------

QUICK_METHODS = {
    # method -> largest base it runs on in quick mode
    "plus1": 4, "plus1-classes": 4,
    "plus2": 4, "plus2-intervals": 4, "plus2-classes": 4, "plus2-matrix": 4,
    "plus3": 4, "plus3-classes": 4, "plus3-matrix": 4, "plus3-squared": 4,
    "plus4-matrix": 3, "plus4-sym": 4, "plus4-oracle": 2,
}
FULL_METHODS = dict(QUICK_METHODS, **{
    "plus1": 5, "plus1-classes": 5, "plus2": 5, "plus2-intervals": 5, "plus2-classes": 5,
    "plus2-matrix": 5,
    "plus4-matrix": 4,
})


def bound_report(base: int) -> dict:
    """Worst-case precision bounds for rank +4 on D_base.

    The largest interval is the whole lattice, so dim <= d(base); bot and
    top never exceed dim. The chain needs dim <= 2^13 and
    entries of gamma below 2^51 to keep Tr(gamma^2) below 2^128.
    """
    dim = DEDEKIND[base]
    rep = a_priori_bounds(dim)
    rep["dim_below_2_13"] = dim <= (1 << 13)
    rep["chain_bits"] = bound_chain(51, 13)
    if rep["chain_bits"] != 128:
        raise VerificationFailure("(2^51 * 2^51 * 2^13) * 2^13 != 2^128")
    if not rep["dim_below_2_13"]:
        raise VerificationFailure(f"D_{base}: dimension {dim} exceeds 2^13")
    # small bases satisfy the whole chain a priori; base 5 relies on the
    # measured max gamma checked in every trace computation
    if base <= 4 and not rep["gamma_below_2_51"]:
        raise VerificationFailure(f"D_{base}: a-priori max gamma {rep['max_gamma']} >= 2^51")
    return rep


def verify(base: int, level: str = "quick", jobs: int | None = None,
           methods: list[str] | None = None) -> dict:
    limits = QUICK_METHODS if level == "quick" else FULL_METHODS
    max_base = 4 if level == "quick" else 5
    if not 0 <= base <= max_base:
        raise ValueError(f"{level} verification supports bases 0..{max_base}")
    lat = generate_lattice(base)
    t = time.perf_counter()
    classes = classify_intervals(lat, jobs)
    report: dict = {"base": base, "level": level, "methods": {},
                    "interval_classes": len(classes),
                    "classify_seconds": round(time.perf_counter() - t, 3)}
    if base in INTERVAL_CLASSES and len(classes) != INTERVAL_CLASSES[base]:
        raise VerificationFailure(
            f"interval classes of D_{base}: {len(classes)} != {INTERVAL_CLASSES[base]}"
        )
    if base in PAIR_REDUCTION and base <= 4:
        t = time.perf_counter()
        pairs = classes_pairs = 0
        for c in classes:
            pcs = classify_pairs(build_interval_table(lat, c.representative))
            pairs += sum(p.cardinality for p in pcs)
            classes_pairs += len(pcs)
        if (pairs, classes_pairs) != PAIR_REDUCTION[base]:
            raise VerificationFailure(
                f"pair reduction of D_{base}: {pairs} -> {classes_pairs} "
                f"!= {PAIR_REDUCTION[base]}"
            )
        report["pair_reduction"] = [pairs, classes_pairs]
        report["pair_seconds"] = round(time.perf_counter() - t, 3)
    report["bounds"] = bound_report(base)
    selected = methods or [m for m, top in limits.items() if base <= top]
    values: dict[str, int] = {}
    for m in selected:
        t = time.perf_counter()
        rep = run(RunManifest(base, m, jobs=jobs)) if m in PLUS4_METHODS else None
        if rep is None:
            value = SIMPLE_METHODS[m][1](lat, lambda: classes)
        else:
            value = int(rep["value"])
        expected = DEDEKIND[base + rank_shift(m)]
        report["methods"][m] = {"value": str(value),
                                "seconds": round(time.perf_counter() - t, 3)}
        if value != expected:
            raise VerificationFailure(f"{m} on D_{base}: {value} != d({base + rank_shift(m)}) = {expected}")
        for other, v in values.items():
            if rank_shift(other) == rank_shift(m) and v != value:
                raise VerificationFailure(f"{m}={value} disagrees with {other}={v}")
        values[m] = value
    report["ok"] = True
    return report
