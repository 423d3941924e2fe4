"""JSON-lines class files and checkpoint files.

Element values and cardinalities are written as decimal strings.
"""
from __future__ import annotations

import json
import os
from pathlib import Path

import numpy as np

from .canon import IntervalClass, PairClass
from .intervals import Interval
from .lattice import Lattice


class ClassFileError(ValueError):
    pass


def write_interval_classes(path, classes: list[IntervalClass]) -> None:
    with open(path, "w") as fh:
        for c in classes:
            rec = {"lo": str(c.representative.lo), "hi": str(c.representative.hi),
                   "card": str(c.cardinality)}
            fh.write(json.dumps(rec) + "\n")


def read_interval_classes(path, lat: Lattice) -> list[IntervalClass]:
    """Load interval classes, checking every representative against ``lat``."""
    e = lat.elements
    out = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
                lo, hi, card = int(rec["lo"]), int(rec["hi"]), int(rec["card"])
            except (ValueError, KeyError, TypeError) as exc:
                raise ClassFileError(f"{path}:{lineno}: bad record ({exc})") from None
            if lat.index(lo) is None or lat.index(hi) is None or lo & hi != lo:
                raise ClassFileError(f"{path}:{lineno}: [{lo},{hi}] is not an interval of D_{lat.n}")
            ulo, uhi = np.uint64(lo), np.uint64(hi)
            size = int(np.count_nonzero(((e & ulo) == ulo) & ((e & uhi) == e)))
            out.append(IntervalClass(Interval(lo, hi), None, card, size))
    return out


def pair_file_name(iv) -> str:
    return f"pairs_{int(iv[0])}_{int(iv[1])}.jsonl"


def write_pair_classes(directory, iv, pairs: list[PairClass]) -> Path:
    path = Path(directory) / pair_file_name(iv)
    with open(path, "w") as fh:
        for p in pairs:
            a, b = p.representative
            rec = {"a": str(a), "b": str(b), "card": str(p.cardinality), "weight": p.weight}
            fh.write(json.dumps(rec) + "\n")
    return path


def read_pair_classes(directory, iv) -> list[PairClass]:
    path = Path(directory) / pair_file_name(iv)
    out = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
                a, b, card, w = int(rec["a"]), int(rec["b"]), int(rec["card"]), int(rec["weight"])
            except (ValueError, KeyError, TypeError) as exc:
                raise ClassFileError(f"{path}:{lineno}: bad record ({exc})") from None
            p = PairClass((a, b), None, card)
            if p.weight != w or a > b:
                raise ClassFileError(f"{path}:{lineno}: inconsistent pair ({a},{b}) weight {w}")
            out.append(p)
    return out


def write_json_atomic(path, data: dict) -> None:
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w") as fh:
        json.dump(data, fh, indent=1)
        fh.write("\n")
    os.replace(tmp, path)
