"""Process-pool map whose output order never depends on the pool size."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Optional, TypeVar

T = TypeVar("T")
U = TypeVar("U")

JOBS_ENV = "ENC_LAB_JOBS"


def resolve_jobs(jobs: Optional[int] = None) -> int:
    """ENC_LAB_JOBS wins over the explicit value; the default is the core count."""
    env = os.environ.get(JOBS_ENV)
    if env:
        try:
            jobs = int(env)
        except ValueError as exc:
            raise ValueError(f"{JOBS_ENV} must be a positive integer, got {env!r}") from exc
    if jobs is None:
        jobs = os.cpu_count() or 1
    if jobs < 1:
        raise ValueError("the number of jobs must be positive")
    return jobs


def pmap(fn: Callable[[T], U], items: Iterable[T], jobs: Optional[int] = 1) -> list[U]:
    items = list(items)
    jobs = resolve_jobs(jobs) if jobs is None else jobs
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))
