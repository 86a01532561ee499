"""Optional thread workers for independent subcomputations.

POLYFUNCTOR_THREADS caps the worker count (default 1 = run inline).  Results
always come back in input order, so parallel runs are bit-identical to
sequential ones.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor


def worker_count() -> int:
    raw = os.environ.get("POLYFUNCTOR_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


def ordered_map(fn, items):
    """Apply fn to items, preserving order; threads only if configured."""
    items = list(items)
    workers = worker_count()
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(fn, items))
