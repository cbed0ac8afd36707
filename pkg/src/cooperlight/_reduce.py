"""Deterministic chunked reduction over k-point arrays.

Sums over the zone are split into fixed-size chunks that do not depend on
the worker count, evaluated (possibly concurrently) per chunk, and then
combined in a fixed pairwise order.  The result is therefore bit-identical
for any `threads` setting: threads buy speed, never different values.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

CHUNK = 8192


def chunk_bounds(n: int, chunk: int = CHUNK) -> list[tuple[int, int]]:
    """Half-open index ranges covering [0, n) in order."""
    return [(lo, min(lo + chunk, n)) for lo in range(0, n, chunk)]


def map_chunks(fn, n: int, threads: int = 1, chunk: int = CHUNK) -> list:
    """Evaluate fn(lo, hi) for every chunk, preserving chunk order."""
    bounds = chunk_bounds(n, chunk)
    if threads is None or threads <= 1 or len(bounds) <= 1:
        return [fn(lo, hi) for lo, hi in bounds]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda b: fn(*b), bounds))


def pairwise_sum(parts: list):
    """Combine partial results with a fixed binary reduction tree.

    Works for floats and for numpy arrays alike; the association order
    depends only on len(parts).
    """
    parts = list(parts)
    if not parts:
        return 0.0
    while len(parts) > 1:
        merged = [parts[i] + parts[i + 1] for i in range(0, len(parts) - 1, 2)]
        if len(parts) % 2:
            merged.append(parts[-1])
        parts = merged
    return parts[0]
