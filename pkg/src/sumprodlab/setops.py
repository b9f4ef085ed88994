"""Set algebra: sumsets, difference/product/ratio sets, k-fold folds, shift ratios.

Each operation has a numpy path over integer lifts and a plain-Python path
used for tiny inputs or when magnitudes do not fit in ``int64``.  Both produce
identical canonical sets.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from . import _config
from ._kernels import (
    SMALL_WORK,
    parallel_map,
    reduce_pairs,
    split_range,
    unique_pairs,
    values_from_ints,
    values_from_pairs,
)
from .errors import InputError, ResourceCapError
from .exact import I64_SAFE, NumSet, require_nonempty

__all__ = [
    "sumset",
    "difference_set",
    "product_set",
    "ratio_set",
    "iterated_sumset",
    "iterated_product",
    "shift_ratio_set",
]


def _norm(x):
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    return x


def _check_cap(candidates: int, what: str):
    cap = _config.get_cap()
    if candidates > cap:
        raise ResourceCapError(
            f"{what}: {candidates} candidate elements exceed the cap of {cap}"
        )


def _chunked_unique(fn, n_rows: int) -> np.ndarray:
    parts = parallel_map(fn, split_range(n_rows, 4 * _config.get_threads()))
    if len(parts) == 1:
        return parts[0]
    return np.unique(np.concatenate(parts))


def _common_lift(A: NumSet, B: NumSet):
    ua, da = A.int_lift()
    ub, db = B.int_lift()
    if ua is None or ub is None:
        return None
    D = da * db // math.gcd(da, db)
    sa, sb = D // da, D // db
    if D >= I64_SAFE or A.lift_bound() * sa >= I64_SAFE // 2 or B.lift_bound() * sb >= I64_SAFE // 2:
        return None
    return ua * sa, ub * sb, D


def _add(A: NumSet, B: NumSet, what: str) -> NumSet:
    _check_cap(len(A) * len(B), what)
    lift = None
    if len(A) * len(B) > SMALL_WORK:
        lift = _common_lift(A, B)
    if lift is None:
        vb = B.values
        return NumSet._from_unsorted({_norm(a + b) for a in A.values for b in vb})
    ua, ub, D = lift

    def rows(span):
        i, j = span
        return np.unique((ua[i:j, None] + ub[None, :]).ravel())

    return NumSet._from_sorted(values_from_ints(_chunked_unique(rows, ua.size), D))


def sumset(A: NumSet, B: NumSet) -> NumSet:
    """``A + B = {a + b}``."""
    require_nonempty(A, B)
    return _add(A, B, "sumset")


def difference_set(A: NumSet, B: NumSet) -> NumSet:
    """``A - B = {a - b}``."""
    require_nonempty(A, B)
    return _add(A, -B, "difference_set")


def product_set(A: NumSet, B: NumSet) -> NumSet:
    """``A B = {a b}``."""
    require_nonempty(A, B)
    _check_cap(len(A) * len(B), "product_set")
    ua, da = A.int_lift()
    ub, db = B.int_lift()
    fast = (
        len(A) * len(B) > SMALL_WORK
        and ua is not None
        and ub is not None
        and A.lift_bound() * B.lift_bound() < I64_SAFE
    )
    if not fast:
        if len(A) * len(B) > SMALL_WORK:
            out = _pair_combine(A, B, invert=False)
            if out is not None:
                return out
        vb = B.values
        return NumSet._from_unsorted({_norm(Fraction(a) * b) for a in A.values for b in vb})

    def rows(span):
        i, j = span
        return np.unique((ua[i:j, None] * ub[None, :]).ravel())

    return NumSet._from_sorted(values_from_ints(_chunked_unique(rows, ua.size), da * db))


def _ratio_pairs(n_rows: int, row_fn):
    """Chunked unique reduced pairs; ``row_fn(span) -> (p, q)`` unreduced."""

    def work(span):
        p, q = row_fn(span)
        p, q = reduce_pairs(p, q)
        return unique_pairs(p, q)

    parts = parallel_map(work, split_range(n_rows, 4 * _config.get_threads()))
    p = np.concatenate([a for a, _ in parts])
    q = np.concatenate([b for _, b in parts])
    return unique_pairs(p, q)


def _pair_combine(A: NumSet, B: NumSet, invert: bool):
    """Products (or quotients) of reduced fraction pairs, for sets whose common
    denominator is too large for an integer lift."""
    pa = A.pair_arrays()
    pb = B.pair_arrays()
    if pa is None or pb is None:
        return None
    na, da = pa
    nb, db = pb
    if invert:
        nb, db = db, nb

    def rows(span):
        i, j = span
        p = np.repeat(na[i:j], nb.size) * np.tile(nb, j - i)
        q = np.repeat(da[i:j], db.size) * np.tile(db, j - i)
        return p, q

    p, q = _ratio_pairs(na.size, rows)
    return NumSet._from_sorted(values_from_pairs(p, q))


def ratio_set(A: NumSet, B: NumSet) -> NumSet:
    """``A / B = {a / b : b != 0}``; zero denominators are skipped."""
    require_nonempty(A, B)
    nonzero = [b for b in B.values if b != 0]
    if not nonzero:
        raise InputError("ratio_set: B contains no nonzero element")
    Bnz = NumSet._from_sorted(nonzero)
    _check_cap(len(A) * len(Bnz), "ratio_set")
    ua, da = A.int_lift()
    ub, db = Bnz.int_lift()
    fast = (
        len(A) * len(Bnz) > SMALL_WORK
        and ua is not None
        and ub is not None
        and A.lift_bound() * db < I64_SAFE
        and Bnz.lift_bound() * da < I64_SAFE
    )
    if not fast:
        if len(A) * len(Bnz) > SMALL_WORK:
            out = _pair_combine(A, Bnz, invert=True)
            if out is not None:
                return out
        return NumSet._from_unsorted(
            {_norm(Fraction(a) / b) for a in A.values for b in nonzero}
        )
    pa = ua * db
    qb = ub * da

    def rows(span):
        i, j = span
        p = np.repeat(pa[i:j], qb.size)
        q = np.tile(qb, j - i)
        return p, q

    p, q = _ratio_pairs(pa.size, rows)
    return NumSet._from_sorted(values_from_pairs(p, q))


def _check_k(k):
    if not isinstance(k, (int, np.integer)) or isinstance(k, bool) or k < 1:
        raise InputError(f"k must be a positive integer, got {k!r}")


def iterated_sumset(A: NumSet, k: int) -> NumSet:
    """k-fold sumset ``kA`` by repeated folding."""
    require_nonempty(A)
    _check_k(k)
    out = A
    for _ in range(k - 1):
        out = sumset(out, A)
    return out


def iterated_product(A: NumSet, k: int) -> NumSet:
    """k-fold product set ``A^(k)`` by repeated folding."""
    require_nonempty(A)
    _check_k(k)
    out = A
    for _ in range(k - 1):
        out = product_set(out, A)
    return out


def shift_ratio_set(A: NumSet, sign: str = "plus") -> NumSet:
    """``{(b + c)/(b' + c)}`` (``sign="plus"``) or ``{(b - c)/(b' - c)}`` (``"minus"``).

    Triples with a vanishing denominator are skipped.
    """
    require_nonempty(A)
    if sign not in ("plus", "minus"):
        raise InputError(f"sign must be 'plus' or 'minus', got {sign!r}")
    s = 1 if sign == "plus" else -1
    n = len(A)
    _check_cap(n**3, "shift_ratio_set")
    # ratios of (b + s c) are unchanged by a common denominator, so work with numerators
    ua, _ = A.int_lift()
    if n**3 <= SMALL_WORK or ua is None or 2 * A.lift_bound() >= I64_SAFE:
        vals = A.int_numerators()
        out = set()
        for c in vals:
            shifted = [b + s * c for b in vals]
            dens = [d for d in shifted if d != 0]
            for b in shifted:
                for d in dens:
                    out.add(_norm(Fraction(b, d)))
        if not out:
            raise InputError("shift_ratio_set: every denominator vanishes")
        return NumSet._from_unsorted(out)

    def rows(span):
        i, j = span
        ps, qs = [], []
        for c in ua[i:j]:
            v = ua + s * c
            d = v[v != 0]
            ps.append(np.repeat(v, d.size))
            qs.append(np.tile(d, v.size))
        return np.concatenate(ps), np.concatenate(qs)

    p, q = _ratio_pairs(n, rows)
    if p.size == 0:
        raise InputError("shift_ratio_set: every denominator vanishes")
    return NumSet._from_sorted(values_from_pairs(p, q))
