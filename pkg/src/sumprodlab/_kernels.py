"""Low-level numpy helpers shared by setops and counting.

Everything here works on integer lifts (see :meth:`NumSet.int_lift`).  Results
never depend on the thread count: chunks are merged by key-wise addition or
set union, both order independent.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np

from . import _config

# Below this many candidate pairs the pure-Python path is cheaper than numpy.
SMALL_WORK = 4096


def split_range(n: int, parts: int) -> list:
    parts = max(1, min(parts, n))
    bounds = np.linspace(0, n, parts + 1).astype(int)
    return [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]


def parallel_map(fn, items) -> list:
    """Apply ``fn`` to every item, in order, using the configured thread count."""
    items = list(items)
    threads = _config.get_threads()
    if threads == 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def values_from_ints(u: np.ndarray, D: int) -> list:
    """Turn sorted integer numerators over a common denominator into set values."""
    if D == 1:
        return u.tolist()
    g = np.gcd(u, D)
    p = (u // g).tolist()
    q = (D // g).tolist()
    return [a if b == 1 else Fraction(a, b) for a, b in zip(p, q)]


def reduce_pairs(p: np.ndarray, q: np.ndarray):
    """Reduce p/q to lowest terms with q > 0 (q must be nonzero)."""
    g = np.gcd(p, q)
    g[g == 0] = 1
    p = p // g
    q = q // g
    neg = q < 0
    p[neg] = -p[neg]
    q[neg] = -q[neg]
    return p, q


def pair_keys(p: np.ndarray, q: np.ndarray):
    """Injective int64 keys for reduced pairs, or ``None`` if they do not fit."""
    if p.size == 0:
        return np.zeros(0, dtype=np.int64), 1, 0
    qmax = int(q.max()) + 1
    pmin = int(p.min())
    pmax = int(p.max())
    if (pmax - pmin + 1) * qmax >= 2**62:
        return None
    return (p - pmin) * qmax + q, qmax, pmin


def unique_pairs(p: np.ndarray, q: np.ndarray):
    """Unique reduced pairs (p, q); returns two arrays."""
    enc = pair_keys(p, q)
    if enc is None:
        stacked = np.unique(np.stack([p, q], axis=1), axis=0)
        return stacked[:, 0], stacked[:, 1]
    keys, qmax, pmin = enc
    keys = np.unique(keys)
    return keys // qmax + pmin, keys % qmax


def values_from_pairs(p: np.ndarray, q: np.ndarray) -> list:
    """Sorted set values from unique reduced pairs."""
    order = np.argsort(p / q, kind="stable")
    p = p[order].tolist()
    q = q[order].tolist()
    vals = [a if b == 1 else Fraction(a, b) for a, b in zip(p, q)]
    # float order is almost exact; timsort finishes the job in ~linear time
    vals.sort()
    return vals


def merge_counts(parts):
    """Key-wise sum of several ``(keys, counts)`` arrays."""
    parts = [p for p in parts if p[0].size]
    if not parts:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    if len(parts) == 1:
        return parts[0]
    keys = np.concatenate([k for k, _ in parts])
    counts = np.concatenate([c for _, c in parts])
    uk, inv = np.unique(keys, return_inverse=True)
    summed = np.zeros(uk.size, dtype=np.int64)
    np.add.at(summed, inv, counts)
    return uk, summed


def count_values(values: np.ndarray):
    """``(distinct values, multiplicities)`` of an int64 array."""
    if values.size == 0:
        return values.astype(np.int64), np.zeros(0, dtype=np.int64)
    lo = int(values.min())
    span = int(values.max()) - lo + 1
    if span <= max(4 * values.size, 1 << 16):
        c = np.bincount(values - lo, minlength=span)
        nz = np.flatnonzero(c)
        return nz.astype(np.int64) + lo, c[nz].astype(np.int64)
    return np.unique(values, return_counts=True)
