"""Counting statistics: representation functions, energies, collinear triples,
the quadruple set and its slices, and heavy ratio sets.

All counts are exact integers.  The numpy kernels operate on integer lifts and
merge per-chunk tables by key-wise addition, so results do not depend on the
number of worker threads.
"""

from __future__ import annotations

import json
import math
import threading
from collections import Counter
from fractions import Fraction

import numpy as np

from . import _config
from ._kernels import (
    SMALL_WORK,
    count_values,
    merge_counts,
    parallel_map,
    reduce_pairs,
    split_range,
    values_from_ints,
)
from .errors import InputError
from .exact import I64_SAFE, NumSet, format_scalar, parse_scalar, require_nonempty
from .setops import _common_lift, _norm, sumset

# Dense accumulators are used when the key space has at most this many slots.
DENSE_SLOTS = 1 << 26


class MultiplicityTable:
    """Map from exact scalars to positive counts; absent keys read as 0."""

    __slots__ = ("_counts",)

    def __init__(self, counts=None):
        self._counts = {}
        for k, v in (counts or {}).items():
            v = int(v)
            if v < 0:
                raise InputError("multiplicities must be nonnegative")
            if v:
                self._counts[_norm(parse_scalar(k))] = v

    @classmethod
    def _trusted(cls, counts: dict) -> "MultiplicityTable":
        obj = cls.__new__(cls)
        obj._counts = counts
        return obj

    def __getitem__(self, x) -> int:
        return self._counts.get(_norm(parse_scalar(x)), 0)

    def __len__(self):
        return len(self._counts)

    def __eq__(self, other):
        if not isinstance(other, MultiplicityTable):
            return NotImplemented
        return self._counts == other._counts

    def __repr__(self):
        return f"MultiplicityTable({len(self)} keys, total={self.total})"

    def items(self):
        for k in sorted(self._counts):
            yield Fraction(k), self._counts[k]

    @property
    def support(self) -> NumSet:
        return NumSet._from_unsorted(self._counts)

    @property
    def total(self) -> int:
        return sum(self._counts.values())

    def moment(self, power: int) -> int:
        return sum(v**power for v in self._counts.values())

    def to_json(self) -> dict:
        return {format_scalar(k): self._counts[k] for k in sorted(self._counts)}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, doc) -> "MultiplicityTable":
        if isinstance(doc, str):
            doc = json.loads(doc)
        return cls(doc)


# -- representation counts -------------------------------------------------------


def _outer_sum_counts(ua: np.ndarray, ub: np.ndarray):
    """(distinct sums, multiplicities) of ``ua[i] + ub[j]`` over all pairs."""
    lo = int(ua.min()) + int(ub.min())
    span = int(ua.max()) + int(ub.max()) - lo + 1
    spans = split_range(ua.size, 4 * _config.get_threads())

    if span <= DENSE_SLOTS:
        acc = np.zeros(span, dtype=np.int64)
        lock = threading.Lock()

        def dense(s):
            i, j = s
            part = np.bincount((ua[i:j, None] + ub[None, :] - lo).ravel(), minlength=span)
            with lock:
                acc[:] += part

        parallel_map(dense, spans)
        nz = np.flatnonzero(acc)
        return nz.astype(np.int64) + lo, acc[nz].astype(np.int64)

    def sparse(s):
        i, j = s
        return count_values((ua[i:j, None] + ub[None, :]).ravel())

    return merge_counts(parallel_map(sparse, spans))


def _rep_arrays(B: NumSet, C: NumSet, mode: str):
    """Numpy path of :func:`rep_table`: ``(keys, counts, D)`` or ``None``."""
    if mode == "difference":
        C = -C
    lift = _common_lift(B, C)
    if lift is None:
        return None
    ub, uc, D = lift
    keys, counts = _outer_sum_counts(ub, uc)
    return keys, counts, D


def _check_mode(mode):
    if mode not in ("sum", "difference"):
        raise InputError(f"mode must be 'sum' or 'difference', got {mode!r}")


def rep_table(B: NumSet, C: NumSet, mode: str = "sum") -> MultiplicityTable:
    """``x -> r_{B+C}(x)`` (or ``r_{B-C}`` with ``mode="difference"``)."""
    require_nonempty(B, C)
    _check_mode(mode)
    arrays = None
    if len(B) * len(C) > SMALL_WORK:
        arrays = _rep_arrays(B, C, mode)
    if arrays is None:
        s = 1 if mode == "sum" else -1
        vc = C.values
        cnt = Counter(_norm(b + s * c) for b in B.values for c in vc)
        return MultiplicityTable._trusted(dict(cnt))
    keys, counts, D = arrays
    return MultiplicityTable._trusted(dict(zip(values_from_ints(keys, D), counts.tolist())))


def _rep_counts(A: NumSet, mode: str) -> list:
    """Multiplicities of ``r_{A+A}`` / ``r_{A-A}`` as Python ints."""
    if len(A) ** 2 > SMALL_WORK:
        arrays = _rep_arrays(A, A, mode)
        if arrays is not None:
            return arrays[1].tolist()
    return list(rep_table(A, A, mode)._counts.values())


def additive_energy(A: NumSet, via: str = "sum") -> int:
    """Number of solutions of ``a1 + a2 = a3 + a4`` in ``A``.

    ``via="difference"`` sums squares of ``r_{A-A}`` instead of ``r_{A+A}``;
    both give the same number.
    """
    require_nonempty(A)
    _check_mode(via)
    return sum(c * c for c in _rep_counts(A, via))


def sigma(X: NumSet, B: NumSet, C: NumSet) -> int:
    """Total representations of elements of ``X`` as ``b + c``."""
    require_nonempty(B, C)
    if len(X) == 0:
        return 0
    table = rep_table(B, C, "sum")
    counts = table._counts
    return sum(counts.get(x, 0) for x in X.values)


# -- collinear triples ------------------------------------------------------------


def _ratio_counts_python(up: list, ub: list) -> Counter:
    n = Counter()
    for b in ub:
        d = [p - b for p in up]
        dens = [x for x in d if x != 0]
        for num in d:
            for den in dens:
                n[_norm(Fraction(num, den))] += 1
    return n


def _ratio_counts_numpy(up: np.ndarray, ub: np.ndarray):
    """Per-ratio admissible triple counts as ``(keys, counts, decode)``."""
    M = int(max(abs(int(up.max()) - int(ub.min())), abs(int(ub.max()) - int(up.min()))))
    M = max(M, 1)
    # reduced p/q has |p| <= M and 1 <= q <= M
    qmax = M + 1
    slots = (2 * M + 1) * qmax
    dense = slots <= DENSE_SLOTS
    spans = split_range(ub.size, 4 * _config.get_threads())

    def keys_for(b):
        d = up - b
        den = d[d != 0]
        p = np.repeat(d, den.size)
        q = np.tile(den, d.size)
        p, q = reduce_pairs(p, q)
        return (p + M) * qmax + q

    def batches(s):
        i, j = s
        batch, size = [], 0
        for b in ub[i:j]:
            k = keys_for(b)
            batch.append(k)
            size += k.size
            if size >= 1 << 23:
                yield np.concatenate(batch)
                batch, size = [], 0
        if batch:
            yield np.concatenate(batch)

    if dense:
        dtype = np.int64 if up.size**2 * ub.size >= 2**31 else np.int32
        acc = np.zeros(slots, dtype=dtype)
        lock = threading.Lock()

        def work(s):
            for keys in batches(s):
                uk, cnt = np.unique(keys, return_counts=True)
                with lock:
                    acc[uk] += cnt.astype(dtype)

        parallel_map(work, spans)
        nz = np.flatnonzero(acc)
        return nz.astype(np.int64), acc[nz].astype(np.int64), (M, qmax)

    def work_sparse(s):
        return _merge_tree([np.unique(k, return_counts=True) for k in batches(s)])

    keys, counts = _merge_tree(parallel_map(work_sparse, spans))
    return keys, counts, (M, qmax)


def _merge_tree(parts):
    parts = [p for p in parts if p[0].size]
    while len(parts) > 1:
        parts = [merge_counts(parts[i:i + 2]) for i in range(0, len(parts), 2)]
    if not parts:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    return parts[0]


def _collinear_lift(P: NumSet, B: NumSet):
    lift = _common_lift(P, B)
    if lift is None:
        return None
    up, ub, _ = lift
    M = max(abs(int(up.max()) - int(ub.min())), abs(int(ub.max()) - int(up.min())))
    if (2 * M + 1) * (M + 1) >= 2**62:
        return None
    return up, ub


def collinear_ratio_table(P: NumSet, B: NumSet) -> MultiplicityTable:
    """``x -> n(x)``: admissible triples ``(p1, p2, b)`` with ``(p1-b)/(p2-b) = x``."""
    require_nonempty(P, B)
    lift = _collinear_lift(P, B) if len(P) ** 2 * len(B) > SMALL_WORK else None
    if lift is None:
        up, ub = _python_pair(P, B)
        return MultiplicityTable._trusted(dict(_ratio_counts_python(up, ub)))
    keys, counts, (M, qmax) = _ratio_counts_numpy(*lift)
    p = (keys // qmax - M).tolist()
    q = (keys % qmax).tolist()
    return MultiplicityTable._trusted(
        {(a if b == 1 else Fraction(a, b)): c for a, b, c in zip(p, q, counts.tolist())}
    )


def _python_pair(P: NumSet, B: NumSet):
    # ratios of differences ignore a common denominator
    D = 1
    for v in P.values + B.values:
        if type(v) is not int:
            D = D * v.denominator // math.gcd(D, v.denominator)
    up = [int(v * D) for v in P.values]
    ub = [int(v * D) for v in B.values]
    return up, ub


def collinear_energy(P: NumSet, B: NumSet = None) -> int:
    """``T(P, P, B)``: ordered 6-tuples with ``(p1-b)/(p2-b) = (p1'-b')/(p2'-b')``.

    Tuples with a zero denominator are excluded.  ``collinear_energy(A)`` is
    ``T(A)``.  Computed as the sum of squared ratio multiplicities.
    """
    if B is None:
        B = P
    require_nonempty(P, B)
    lift = _collinear_lift(P, B) if len(P) ** 2 * len(B) > SMALL_WORK else None
    if lift is None:
        up, ub = _python_pair(P, B)
        counts = list(_ratio_counts_python(up, ub).values())
    else:
        counts = _ratio_counts_numpy(*lift)[1].tolist()
    if not counts:
        raise InputError("collinear_energy: no admissible triple (every p2 equals b)")
    return sum(c * c for c in counts)


# -- the quadruple set ------------------------------------------------------------


def quad_count(A: NumSet) -> int:
    """``|{(b, b', c, c') in S x S x A x A : b-c, b-c', b'-c, b'-c' in A}|`` with ``S = A + A``.

    Evaluated as the third moment of ``r_{A-A}``.
    """
    require_nonempty(A)
    return sum(c**3 for c in _rep_counts(A, "difference"))


def quad_count_pairwise(A: NumSet) -> int:
    """Slow reference for :func:`quad_count`: ``sum over (c, c') of N(c, c')**2``.

    ``N(c, c')`` counts ``b in S`` with ``b - c`` and ``b - c'`` both in ``A``.
    """
    require_nonempty(A)
    vals = A.values
    members = A.member_set()
    S = sumset(A, A).values
    total = 0
    for c in vals:
        for c2 in vals:
            N = sum(1 for b in S if _norm(b - c) in members and _norm(b - c2) in members)
            total += N * N
    return total


def quad_slice(A: NumSet, b, b2, c) -> int:
    """``|A(b, b', c)|``: number of ``c'`` in ``A`` completing ``(b, b', c, c')``.

    Zero unless ``b - c`` and ``b' - c`` are both in ``A``.
    """
    require_nonempty(A)
    b, b2, c = (_norm(parse_scalar(x)) for x in (b, b2, c))
    S = sumset(A, A).member_set()
    members = A.member_set()
    if b not in S or b2 not in S:
        raise InputError("quad_slice: b and b' must lie in A + A")
    if c not in members:
        raise InputError("quad_slice: c must lie in A")
    if _norm(b - c) not in members or _norm(b2 - c) not in members:
        return 0
    return sum(1 for c2 in A.values if _norm(b - c2) in members and _norm(b2 - c2) in members)


def _slice_masks(A: NumSet) -> dict:
    """``b -> bitmask of indices i with b - A[i] in A``, for every b in A + A."""
    vals = A.values
    index = {v: i for i, v in enumerate(vals)}
    masks = {}
    for i, a1 in enumerate(vals):
        for a2 in vals:
            b = _norm(a1 + a2)
            # b - a2 = a1 is in A, so index of a2 joins the mask of b
            masks[b] = masks.get(b, 0) | (1 << index[a2])
    return masks


def heavy_ratio_set(A: NumSet, tau: int) -> NumSet:
    """Ratios ``(b-c)/(b'-c)`` over ``(b, b', c) in S x S x A`` with ``b' != c``
    whose slice ``|A(b, b', c)|`` is at least ``tau``."""
    require_nonempty(A)
    if isinstance(tau, bool) or not isinstance(tau, (int, np.integer)) or tau < 1:
        raise InputError(f"tau must be a positive integer, got {tau!r}")
    vals = A.values
    if tau > len(vals):
        return NumSet(())
    masks = _slice_masks(A)
    out = set()
    for c in vals:
        # b = c + a1 and b' = c + a2 with a1, a2 in A; otherwise the slice is empty
        row = [masks[_norm(c + a)] for a in vals]
        for j, a2 in enumerate(vals):
            if a2 == 0:
                continue
            m2 = row[j]
            for i, a1 in enumerate(vals):
                if bin(row[i] & m2).count("1") >= tau:
                    out.add(_norm(Fraction(a1) / a2))
    return NumSet._from_unsorted(out)


def paper_threshold(A: NumSet) -> Fraction:
    """The pigeonhole level ``X / (2 |A| |S|^2)`` with ``X = |A|^6 / |S|^2``,
    i.e. ``|A|^5 / (2 |S|^4)``."""
    require_nonempty(A)
    n = len(A)
    s = len(sumset(A, A))
    return Fraction(n**5, 2 * s**4)


def threshold_tau(A: NumSet) -> int:
    """Integer slice threshold used with :func:`heavy_ratio_set`: ``max(1, ceil(threshold))``."""
    return max(1, math.ceil(paper_threshold(A)))


def verify_basic_identity(b, c, b2, c2) -> bool:
    """Check ``1 - (b-c)/(b'-c) == (b'-c')/(b'-c) - (b-c')/(b'-c)`` exactly."""
    b, c, b2, c2 = (parse_scalar(x) for x in (b, c, b2, c2))
    if b2 == c:
        raise InputError("verify_basic_identity: b' = c makes the identity undefined")
    den = b2 - c
    return 1 - (b - c) / den == (b2 - c2) / den - (b - c2) / den
