"""
Chunked process-pool mapping with order-preserving results.
"""

import multiprocessing
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def chunked(items: Sequence[T], parts: int) -> List[List[T]]:
    """Split items into at most `parts` contiguous chunks, keeping order."""
    parts = max(1, min(parts, len(items) or 1))
    size, extra = divmod(len(items), parts)
    chunks, start = [], 0
    for i in range(parts):
        end = start + size + (1 if i < extra else 0)
        chunks.append(list(items[start:end]))
        start = end
    return chunks


def _executor(workers: int) -> ProcessPoolExecutor:
    # fork avoids re-importing the package in every worker on Linux
    try:
        ctx = multiprocessing.get_context("fork")
        return ProcessPoolExecutor(max_workers=workers, mp_context=ctx)
    except ValueError:
        return ProcessPoolExecutor(max_workers=workers)


def map_chunks(func: Callable[[List[T]], R], items: Sequence[T], workers: int = 1) -> List[R]:
    """
    Apply func to contiguous chunks of items.

    Results come back in chunk order whatever the worker count, so a caller
    that concatenates them sees exactly the sequential scan.

    Args:
        func: module-level callable taking one chunk
        items: the work list
        workers: process count; 1 runs inline
    """
    if workers <= 1 or len(items) < 2:
        return [func(list(items))]
    chunks = chunked(items, workers * 4)
    with _executor(workers) as pool:
        return list(pool.map(func, chunks))
