"""Bounded worker pool for per-fiber jobs.

Eigen/inverse work releases the GIL inside LAPACK, so a thread pool
gives real parallelism; results are returned in submission order, which
keeps every caller deterministic.  The default of one worker is right
for typical BLAS builds that already multithread a single
factorization; set NP_SPECTRA_THREADS (or pass ``workers``) to change.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

__all__ = ["resolve_workers", "ordered_map"]

ENV_THREADS = "NP_SPECTRA_THREADS"


def resolve_workers(workers: int | None) -> int:
    env = os.environ.get(ENV_THREADS, "").strip()
    if env:  # the environment variable overrides any explicit setting
        workers = int(env)
    elif workers is None:
        workers = 1
    if workers < 1:
        raise ValueError(f"worker count must be >= 1, got {workers}")
    return workers


def ordered_map(fn, items, workers: int | None = None) -> list:
    """Apply fn to items, possibly concurrently, preserving input order."""
    n = resolve_workers(workers)
    if n == 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))
