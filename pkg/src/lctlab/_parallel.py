"""Deterministic chunked parallelism for the Monte-Carlo estimators."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence, TypeVar

import numpy as np

T = TypeVar("T")
R = TypeVar("R")


def max_threads() -> int:
    """Thread cap: ``LCTLAB_THREADS`` if set, else the CPU count (at most 8)."""
    env = os.environ.get("LCTLAB_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return max(1, min(8, os.cpu_count() or 1))


def thread_map(fn: Callable[[T], R], items: Sequence[T]) -> list[R]:
    """Order-preserving map; runs inline when only one thread is allowed."""
    workers = min(max_threads(), len(items))
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))


def chunked_seeds(seed: int, count: int) -> list[np.random.SeedSequence]:
    return np.random.SeedSequence(seed).spawn(count)
