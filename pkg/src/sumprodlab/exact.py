"""Exact rational scalars and the canonical finite-set container.

Scalars are :class:`fractions.Fraction` values (always reduced, positive
denominator).  Internally a :class:`NumSet` stores integral members as plain
``int`` so that the pure-Python kernels stay fast; everything handed back to
callers is a ``Fraction``.
"""

from __future__ import annotations

import json
import math
import re
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError

ExactScalar = Fraction

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+)\s*)?$")

# Integer lifts whose magnitudes stay below this bound are handed to numpy.
I64_SAFE = 2**62


def parse_scalar(value) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` string into a canonical Fraction.

    Floats are refused: they cannot represent most rationals exactly.
    """
    if isinstance(value, bool):
        raise InputError(f"booleans are not rational literals: {value!r}")
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        m = _RATIONAL_RE.match(value)
        if not m:
            raise InputError(f"malformed rational literal: {value!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise InputError(f"zero denominator in {value!r}")
        return Fraction(num, den)
    raise InputError(f"cannot interpret {value!r} as an exact rational")


def format_scalar(x) -> str:
    """Canonical text form: ``"p"`` for integers, ``"p/q"`` otherwise."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _py(x: Fraction):
    # internal storage form: int when integral
    return x.numerator if x.denominator == 1 else x


class NumSet:
    """Immutable finite set of rationals in strictly increasing order.

    >>> NumSet([3, 1, 2, 2])
    NumSet([1, 2, 3])
    """

    __slots__ = ("_vals", "_fracs", "_lift", "_members", "_pairs")

    def __init__(self, values: Iterable = ()):
        uniq = {_py(parse_scalar(v)) for v in values}
        self._vals = tuple(sorted(uniq))
        self._fracs = None
        self._lift = None
        self._members = None
        self._pairs = False

    @classmethod
    def _from_sorted(cls, vals) -> "NumSet":
        """Trusted constructor: ``vals`` already canonical, unique and sorted."""
        obj = cls.__new__(cls)
        obj._vals = tuple(vals)
        obj._fracs = None
        obj._lift = None
        obj._members = None
        obj._pairs = False
        return obj

    @classmethod
    def _from_unsorted(cls, vals) -> "NumSet":
        """Trusted constructor for canonical unique values in any order."""
        vals = list(vals)
        vals.sort()
        return cls._from_sorted(vals)

    @property
    def elements(self) -> tuple:
        if self._fracs is None:
            self._fracs = tuple(Fraction(v) for v in self._vals)
        return self._fracs

    @property
    def n(self) -> int:
        return len(self._vals)

    @property
    def values(self) -> tuple:
        """Members in internal form (``int`` where integral, else ``Fraction``)."""
        return self._vals

    def member_set(self) -> frozenset:
        if self._members is None:
            self._members = frozenset(self._vals)
        return self._members

    def is_integral(self) -> bool:
        return all(type(v) is int for v in self._vals)

    def __len__(self):
        return len(self._vals)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        try:
            x = _py(parse_scalar(x))
        except InputError:
            return False
        return x in self.member_set()

    def __eq__(self, other):
        if not isinstance(other, NumSet):
            return NotImplemented
        return self._vals == other._vals

    def __hash__(self):
        return hash(self._vals)

    def __repr__(self):
        body = ", ".join(format_scalar(v) for v in self._vals[:20])
        if len(self._vals) > 20:
            body += f", ... ({len(self._vals)} elements)"
        return f"NumSet([{body}])"

    def __neg__(self) -> "NumSet":
        return NumSet._from_sorted(-v for v in reversed(self._vals))

    def to_json(self) -> dict:
        return {"elements": [v if type(v) is int else format_scalar(v) for v in self._vals]}

    @classmethod
    def from_json(cls, doc) -> "NumSet":
        if isinstance(doc, (str, bytes)):
            try:
                doc = json.loads(doc)
            except json.JSONDecodeError as exc:
                raise InputError(f"set file is not valid JSON: {exc}") from exc
        if not isinstance(doc, dict) or not isinstance(doc.get("elements"), list):
            raise InputError('set file must be a JSON object with an "elements" list')
        return cls(doc["elements"])

    def int_lift(self):
        """Return ``(numerators, D)`` with ``x = numerator / D`` for every member.

        ``D`` is the lcm of the reduced denominators.  ``numerators`` is a
        sorted ``int64`` array, or ``None`` when some magnitude reaches
        :data:`I64_SAFE` (callers then fall back to Python integers).
        """
        if self._lift is None:
            D = 1
            for v in self._vals:
                if type(v) is not int:
                    D = D * v.denominator // math.gcd(D, v.denominator)
            nums = [v * D if type(v) is int else v.numerator * (D // v.denominator)
                    for v in self._vals]
            bound = max((abs(x) for x in nums), default=0)
            arr = np.array(nums, dtype=np.int64) if bound < I64_SAFE and D < I64_SAFE else None
            self._lift = (arr, D, nums, bound)
        arr, D, _, _ = self._lift
        return arr, D

    def lift_bound(self) -> int:
        self.int_lift()
        return max(self._lift[3], self._lift[1])

    def pair_arrays(self):
        """``(numerators, denominators)`` as int64 arrays of reduced fractions,
        or ``None`` if some entry reaches ``2**31`` (so pairwise products stay exact)."""
        if self._pairs is False:
            p = [v if type(v) is int else v.numerator for v in self._vals]
            q = [1 if type(v) is int else v.denominator for v in self._vals]
            if max((abs(x) for x in p), default=0) < 2**31 and max(q, default=1) < 2**31:
                self._pairs = (np.array(p, dtype=np.int64), np.array(q, dtype=np.int64))
            else:
                self._pairs = None
        return self._pairs

    def int_numerators(self) -> list:
        """Python-int numerators over the common denominator (never overflows)."""
        self.int_lift()
        return self._lift[2]


def build_set(values: Sequence = ()) -> NumSet:
    """Deduplicate and sort ``values`` into a :class:`NumSet`."""
    return NumSet(values)


def require_nonempty(*sets: NumSet):
    for s in sets:
        if not isinstance(s, NumSet):
            raise InputError(f"expected a NumSet, got {type(s).__name__}")
        if len(s) == 0:
            raise InputError("operation requires a nonempty set")


def affine_image(A: NumSet, u, v) -> NumSet:
    """Return ``{u*a + v : a in A}``."""
    u = parse_scalar(u)
    v = parse_scalar(v)
    if u == 0:
        raise InputError("affine_image requires u != 0 (u = 0 collapses the set)")
    u, v = _py(u), _py(v)
    out = [_py(Fraction(u * a + v)) for a in A.values]
    if u < 0:
        out.reverse()
    return NumSet._from_sorted(out)


def set_union(A: NumSet, B: NumSet) -> NumSet:
    return NumSet._from_unsorted(A.member_set() | B.member_set())


def load_set(path) -> NumSet:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read set file {path}: {exc}") from exc
    return NumSet.from_json(text)


def dump_set(A: NumSet, path):
    with open(path, "w") as fh:
        json.dump(A.to_json(), fh)
        fh.write("\n")
