"""Block scheduler: splits trials into fixed-size blocks and runs them
in-process or on a process pool, returning results in block order."""

from __future__ import annotations

import atexit
import os
from concurrent.futures import ProcessPoolExecutor

from ..errors import DomainError

BLOCK_SIZE = 500
WORKERS_ENV = "CLUSTERCAST_WORKERS"

_pools = {}


def default_workers():
    raw = os.environ.get(WORKERS_ENV, "").strip()
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise DomainError(f"{WORKERS_ENV} must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise DomainError(f"{WORKERS_ENV} must be a positive integer, got {raw!r}")
    return n


def _pool(workers):
    pool = _pools.get(workers)
    if pool is None:
        pool = ProcessPoolExecutor(max_workers=workers)
        _pools[workers] = pool
    return pool


@atexit.register
def shutdown_pools():
    for pool in _pools.values():
        pool.shutdown(wait=True, cancel_futures=True)
    _pools.clear()


def blocks(trials, block_size=BLOCK_SIZE):
    """``(block_index, size)`` pairs covering ``trials`` trials."""
    full, rest = divmod(int(trials), block_size)
    out = [(b, block_size) for b in range(full)]
    if rest:
        out.append((full, rest))
    return out


def run_blocks(fn, common, trials, workers=1, block_size=BLOCK_SIZE):
    """Evaluate ``fn((common, block, size))`` for every block, in block order."""
    if trials < 1:
        raise DomainError("trials must be at least 1")
    tasks = [(common, b, n) for b, n in blocks(trials, block_size)]
    if workers <= 1 or len(tasks) == 1:
        return [fn(t) for t in tasks]
    return list(_pool(workers).map(fn, tasks))
