"""Deterministic parallel map with an environment-variable thread cap."""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")

THREADS_ENV = "SHARP_CONSTANTS_THREADS"


def thread_count(n_items: int) -> int:
    """Worker count from SHARP_CONSTANTS_THREADS (0 or unset means auto)."""
    raw = os.environ.get(THREADS_ENV, "0")
    try:
        cap = int(raw)
    except ValueError:
        cap = 0
    if cap <= 0:
        cap = os.cpu_count() or 1
    return max(1, min(cap, n_items))


def parallel_map(fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
    """Map fn over items, preserving input order in the result.

    All mapped functions in this package are pure, so evaluation order
    cannot change the values; results are collected by input position.
    """
    seq: Sequence[T] = list(items)
    workers = thread_count(len(seq))
    if workers == 1 or len(seq) <= 1:
        return [fn(item) for item in seq]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, seq))
