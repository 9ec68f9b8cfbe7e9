"""Counter-based random streams.

All Monte Carlo entry points derive their randomness from Philox streams keyed
by (seed, path-of-integers).  Substreams for distinct paths are independent,
and results assembled chunk-by-chunk are reduced in chunk order, so outputs do
not depend on thread scheduling or thread count.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15

# fixed stream-purpose tags; keeping them distinct keeps substreams disjoint
TAG_APPLY_MC = 11
TAG_POISSON = 12
TAG_DIFFUSE = 13
TAG_PATHS = 14
TAG_INVARIANCE = 15
TAG_GENERATOR = 16
TAG_INTEGRAL = 17
TAG_COLLISION = 18
TAG_OSCILLATION = 19
TAG_EXPERIMENT = 20


def _splitmix64(x: int) -> int:
    x = (x + _GOLDEN) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def substream(seed: int, *path: int) -> np.random.Generator:
    """Deterministic Philox generator keyed by the seed and an integer path."""
    state = _splitmix64(seed & _MASK64)
    for p in path:
        state = _splitmix64(state ^ _splitmix64(p & _MASK64))
    key = np.array([state, _splitmix64(state)], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def chunk_sizes(total: int, chunk: int) -> list[int]:
    """Split ``total`` items into fixed-size chunks (last one ragged)."""
    if total < 0:
        raise ValueError("total must be nonnegative")
    if chunk < 1:
        raise ValueError("chunk must be positive")
    full, rest = divmod(total, chunk)
    sizes = [chunk] * full
    if rest:
        sizes.append(rest)
    return sizes


def map_chunks(worker, n_chunks: int, threads: int = 1) -> list:
    """Run ``worker(chunk_index)`` for every chunk and return results in chunk order.

    The chunk decomposition is fixed up front, so the result list is identical
    for any thread count.
    """
    if n_chunks == 0:
        return []
    if threads <= 1 or n_chunks == 1:
        return [worker(i) for i in range(n_chunks)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(worker, range(n_chunks)))
