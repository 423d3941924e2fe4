"""Process-pool helpers shared by the classification and trace stages."""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Sequence


def default_jobs() -> int:
    value = os.environ.get("DEDEKIND_JOBS")
    if value:
        return max(1, int(value))
    return 1


def pool_map(func: Callable, items: Sequence, jobs: int | None = None,
             initializer: Callable | None = None, initargs: tuple = ()) -> list:
    """``list(map(func, items))``, optionally across worker processes.

    Results always come back in input order, so reductions over them are
    identical for every ``jobs`` value.
    """
    jobs = default_jobs() if jobs is None else jobs
    if jobs <= 1 or len(items) <= 1:
        if initializer is not None:
            initializer(*initargs)
        return [func(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs, initializer=initializer,
                             initargs=initargs) as ex:
        return list(ex.map(func, items, chunksize=max(1, len(items) // (4 * jobs))))


def chunked(seq: Sequence, size: int) -> Iterable[Sequence]:
    for i in range(0, len(seq), size):
        yield seq[i : i + size]
