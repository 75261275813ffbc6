"""Deterministic data-parallel execution over cell lists.

The contract every parallel phase in this package relies on: the input list
is split into ceil(n/workers) contiguous chunks, chunks are computed
concurrently from an immutable snapshot, and results are reassembled in input
order. Because the per-cell computation is pure and the merge order is fixed,
the output is bit-identical for any worker count; speedup is a side effect,
determinism is the contract.

Worker counts: 0 means hardware parallelism, and the EIKONAL_WORKERS
environment variable supplies the default when a caller passes None.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence, TypeVar

import numpy as np

T = TypeVar("T")
R = TypeVar("R")

_POOLS: dict[int, ThreadPoolExecutor] = {}


def resolve_workers(workers: int | None = None) -> int:
    """Normalize a requested worker count.

    None defers to EIKONAL_WORKERS (falling back to 1); 0 asks for one worker
    per hardware thread.
    """
    if workers is None:
        env = os.environ.get("EIKONAL_WORKERS", "").strip()
        workers = int(env) if env else 1
    workers = int(workers)
    if workers == 0:
        return os.cpu_count() or 1
    if workers < 0:
        raise ValueError(f"worker count must be >= 0, got {workers}")
    return workers


def _pool(workers: int) -> ThreadPoolExecutor:
    pool = _POOLS.get(workers)
    if pool is None:
        pool = ThreadPoolExecutor(max_workers=workers)
        _POOLS[workers] = pool
    return pool


def chunk_bounds(n: int, workers: int) -> list[tuple[int, int]]:
    """Static contiguous chunking: ceil(n/workers) cells per chunk."""
    if n == 0:
        return []
    size = math.ceil(n / workers)
    return [(lo, min(n, lo + size)) for lo in range(0, n, size)]


def parallel_map_cells(cells: Sequence[T], fn: Callable[[T], R], workers: int = 1) -> list[R]:
    """Map fn over cells, preserving input order.

    If any cell raises, the phase fails with the error of the smallest input
    index that failed, regardless of worker interleaving.
    """
    workers = resolve_workers(workers)
    n = len(cells)
    if workers <= 1 or n <= 1:
        return [fn(c) for c in cells]

    def run_chunk(lo: int, hi: int):
        out = []
        for pos in range(lo, hi):
            try:
                out.append(fn(cells[pos]))
            except Exception as exc:  # noqa: BLE001 - propagated to the caller below
                return out, (pos, exc)
        return out, None

    futures = [_pool(workers).submit(run_chunk, lo, hi) for lo, hi in chunk_bounds(n, workers)]
    results: list[R] = []
    first_error: tuple[int, Exception] | None = None
    for fut in futures:
        chunk_out, err = fut.result()
        results.extend(chunk_out)
        if err is not None and (first_error is None or err[0] < first_error[0]):
            first_error = err
    if first_error is not None:
        raise first_error[1]
    return results


def parallel_map_blocks(
    cells: np.ndarray, block_fn: Callable[[np.ndarray], np.ndarray], workers: int = 1
) -> np.ndarray:
    """Chunked variant for vectorized per-cell kernels.

    block_fn must be element-wise (value at position k depends only on
    cells[k]), which makes the concatenated result identical to a single-chunk
    evaluation.
    """
    workers = resolve_workers(workers)
    n = len(cells)
    if workers <= 1 or n <= workers:
        return block_fn(cells)
    bounds = chunk_bounds(n, workers)
    futures = [_pool(workers).submit(block_fn, cells[lo:hi]) for lo, hi in bounds]
    return np.concatenate([fut.result() for fut in futures])
