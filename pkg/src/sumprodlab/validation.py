"""Input coercion helpers, in the spirit of sklearn's ``check_array``."""

from __future__ import annotations

from collections.abc import Iterable

import numpy as np

from .errors import InputError
from .exact import NumSet


def check_numset(A, min_size: int = 1, allow_zero: bool = True) -> NumSet:
    """Coerce ``A`` to a :class:`NumSet` and check its size.

    Accepts a NumSet, a ``{"elements": [...]}`` mapping, or any iterable of
    ints / Fractions / ``"p/q"`` strings.  Float arrays are rejected unless
    every entry is integral.
    """
    if isinstance(A, NumSet):
        out = A
    elif isinstance(A, dict):
        out = NumSet.from_json(A)
    elif isinstance(A, np.ndarray):
        if A.dtype.kind == "f":
            if not np.all(np.isfinite(A)) or not np.all(A == np.round(A)):
                raise InputError("float arrays must hold integral values; use Fractions or 'p/q'")
            A = A.astype(np.int64)
        out = NumSet(A.ravel().tolist())
    elif isinstance(A, Iterable) and not isinstance(A, (str, bytes)):
        out = NumSet(A)
    else:
        raise InputError(f"cannot interpret {type(A).__name__} as a finite set of rationals")
    if len(out) < min_size:
        raise InputError(f"expected a set with at least {min_size} elements, got {len(out)}")
    if not allow_zero and 0 in out.member_set():
        raise InputError("this operation requires 0 not in A")
    return out


def check_collection(X, min_size: int = 1) -> list:
    """Coerce a collection of sets (the ``X`` of the estimators) to a list of NumSets."""
    if isinstance(X, NumSet):
        X = [X]
    try:
        items = list(X)
    except TypeError:
        raise InputError("expected a collection of sets") from None
    if not items:
        raise InputError("expected at least one set")
    return [check_numset(a, min_size=min_size) for a in items]
