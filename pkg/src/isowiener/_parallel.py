"""Order-preserving map over replicates, capped by ISOWIENER_THREADS."""

import os
from concurrent.futures import ThreadPoolExecutor


def worker_count() -> int:
    raw = os.environ.get("ISOWIENER_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"ISOWIENER_THREADS must be an integer, got {raw!r}") from None


def ordered_map(fn, items):
    """``list(map(fn, items))``, run on a thread pool when more than one worker is allowed."""
    workers = worker_count()
    if workers == 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
