"""Command-line entry point: ``dedekind <subcommand> ...``.

Exit codes: 0 success, 1 verification/selftest failure, 2 bad input,
3 run stopped before completion (resume with the same checkpoint).
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .canon import classify_intervals, classify_pairs
from .exact import PrecisionError
from .files import ClassFileError, read_interval_classes, write_interval_classes, write_pair_classes
from .intervals import Interval, build_interval_table
from .lattice import Lattice, generate_lattice
from .parallel import default_jobs, pool_map
from .pipeline import (
    CHUNK_SIZE,
    METHODS,
    CheckpointMismatch,
    RunManifest,
    VerificationFailure,
    run,
    verify,
)
from .selftest import selftest

EXIT_FAIL, EXIT_INPUT, EXIT_INCOMPLETE = 1, 2, 3


def _dump(obj) -> None:
    print(json.dumps(obj, indent=1, sort_keys=True))


def cmd_gen(args) -> int:
    lat = generate_lattice(args.n)
    lat.save(args.out)
    print(f"D_{args.n}: {lat.count} elements -> {args.out}")
    return 0


def cmd_interval_classes(args) -> int:
    lat = Lattice.load(args.lattice)
    classes = classify_intervals(lat, args.jobs)
    write_interval_classes(args.out, classes)
    total = sum(c.cardinality for c in classes)
    print(f"D_{lat.n}: {total} intervals in {len(classes)} classes -> {args.out}")
    return 0


_pair_state: dict = {}


def _init_pairs(lattice_path: str, out: str) -> None:
    _pair_state["lattice"] = Lattice.load(lattice_path)
    _pair_state["out"] = out


def _pairs_for(iv: tuple[int, int]) -> tuple[int, int]:
    tbl = build_interval_table(_pair_state["lattice"], iv)
    pcs = classify_pairs(tbl)
    write_pair_classes(_pair_state["out"], iv, pcs)
    return sum(p.cardinality for p in pcs), len(pcs)


def cmd_pair_classes(args) -> int:
    lat = Lattice.load(args.lattice)
    classes = read_interval_classes(args.classes, lat)
    reps = [tuple(c.representative) for c in classes]
    if args.interval is not None:
        iv = tuple(Interval.parse(args.interval))
        if iv not in reps:
            raise ClassFileError(f"{args.interval} is not a class representative in {args.classes}")
        reps = [iv]
    Path(args.out).mkdir(parents=True, exist_ok=True)
    counts = pool_map(_pairs_for, reps, args.jobs, _init_pairs, (args.lattice, args.out))
    weighted = sum(c.cardinality * n for c, (n, _) in zip(classes, counts)) \
        if args.interval is None else None
    print(json.dumps({
        "base": lat.n,
        "intervals": len(reps),
        "pairs": sum(n for n, _ in counts),
        "pair_classes": sum(k for _, k in counts),
        "pairs_over_all_intervals": weighted,
        "out": args.out,
    }, sort_keys=True))
    return 0


def cmd_compute(args) -> int:
    manifest = RunManifest(
        base=args.base, method=args.method, lattice_path=args.lattice,
        classes_path=args.classes, pairs_dir=args.pairs, jobs=args.jobs,
        checkpoint=args.checkpoint, report=args.report,
        chunk_size=args.chunk_size, stop_after=args.stop_after,
    )
    report = run(manifest)
    if report["value"] is None:
        print(f"incomplete: {report['completed_units']}/{report['work_units']} work units")
        _dump(report)
        return EXIT_INCOMPLETE
    print(report["value"])
    if args.verbose_report:
        _dump(report)
    return 0


def cmd_verify(args) -> int:
    try:
        report = verify(args.base, args.level, args.jobs, args.methods)
    except VerificationFailure as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    _dump(report)
    return 0


def cmd_selftest(args) -> int:
    report = selftest(args.seed)
    for name, res in report["checks"].items():
        print(f"{res['status'].upper():5s} {name} ({res['seconds']} s)")
    return 0 if report["ok"] else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dedekind", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="count", default=0,
                   help="log progress (-vv for per-trace precision logging)")
    sub = p.add_subparsers(dest="command", required=True)
    jobs = dict(type=int, default=None,
                help="worker processes (default: $DEDEKIND_JOBS or 1)")

    g = sub.add_parser("gen", help="generate D_n and write a lattice file")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_gen)

    ic = sub.add_parser("interval-classes", help="(anti)isomorphism classes of intervals")
    ic.add_argument("--lattice", required=True)
    ic.add_argument("--out", required=True)
    ic.add_argument("--jobs", **jobs)
    ic.set_defaults(func=cmd_interval_classes)

    pc = sub.add_parser("pair-classes", help="pair classes for each interval representative")
    pc.add_argument("--lattice", required=True)
    pc.add_argument("--classes", required=True)
    pc.add_argument("--out", required=True, help="output directory")
    pc.add_argument("--interval", metavar="LO:HI", help="only this representative")
    pc.add_argument("--jobs", **jobs)
    pc.set_defaults(func=cmd_pair_classes)

    c = sub.add_parser("compute", help="compute d(base + k) with one method")
    c.add_argument("--method", choices=METHODS, required=True)
    c.add_argument("--base", type=int, required=True)
    c.add_argument("--jobs", **jobs)
    c.add_argument("--lattice", help="lattice file (default: generate)")
    c.add_argument("--classes", help="interval class file (default: classify)")
    c.add_argument("--pairs", help="pair class directory (plus4-sym; default: classify)")
    c.add_argument("--checkpoint", help="JSON checkpoint for rank +4 runs")
    c.add_argument("--report", help="write the JSON report here")
    c.add_argument("--chunk-size", type=int, default=CHUNK_SIZE,
                   help="pairs per work unit (part of the checkpoint identity)")
    c.add_argument("--stop-after", type=int, default=None,
                   help="stop after this many new work units (exit code 3)")
    c.add_argument("--verbose-report", action="store_true", help="also print the report")
    c.set_defaults(func=cmd_compute)

    v = sub.add_parser("verify", help="cross-check all methods against known values")
    v.add_argument("--base", type=int, required=True)
    v.add_argument("--level", choices=("quick", "full"), default="quick")
    v.add_argument("--methods", nargs="+", choices=METHODS, default=None)
    v.add_argument("--jobs", **jobs)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("selftest", help="fixed-seed invariant checks")
    s.add_argument("--seed", type=int, default=20231)
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    level = [logging.WARNING, logging.INFO, logging.DEBUG][min(args.verbose, 2)]
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "jobs", None) is None and hasattr(args, "jobs"):
        args.jobs = default_jobs()
    try:
        return args.func(args)
    except (OSError, ValueError, CheckpointMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PrecisionError as exc:
        print(f"precision error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
