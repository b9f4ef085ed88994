"""Deterministic generators for structured set families.

Random families draw from :class:`XorShift64Star`, a fully specified 64-bit
generator, so that a ``(spec, n, seed)`` triple names the same set in every
implementation:

* seeding: ``state = splitmix64(seed mod 2**64)``, replaced by
  ``0x9E3779B97F4A7C15`` if that is zero;
* step: ``x ^= x >> 12; x ^= x << 25; x ^= x >> 27`` (all mod ``2**64``),
  output ``x * 0x2545F4914F6CDD1D mod 2**64``;
* ``below(m)``: draw outputs until one is ``< 2**64 - (2**64 mod m)``, return it mod ``m``;
* ``random()``: ``(output >> 11) / 2**53``.

Distinct samples are drawn by repeated ``below`` calls, discarding repeats,
in draw order.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InputError
from .exact import NumSet, format_scalar, parse_scalar

MASK64 = (1 << 64) - 1

KINDS = ("ap", "gp", "squares", "random_interval", "random_gp_subset")
RANDOM_KINDS = ("random_interval", "random_gp_subset")
_KIND_ALIASES = {"random": "random_interval", "random_gp": "random_gp_subset"}

_DEFAULTS = {
    "ap": {"start": 1, "step": 1},
    "gp": {"base": 1, "ratio": 2},
    "squares": {},
    "random_interval": {"d": 10},
    "random_gp_subset": {"g": 2, "bound": None},
}


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class XorShift64Star:
    """xorshift64* generator (Vigna), seeded through splitmix64."""

    def __init__(self, seed: int = 0):
        state = splitmix64(int(seed) & MASK64)
        self.state = state or 0x9E3779B97F4A7C15

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self.state = x
        return (x * 0x2545F4914F6CDD1D) & MASK64

    def below(self, m: int) -> int:
        """Uniform integer in ``[0, m)``."""
        if m <= 0:
            raise ValueError("below() needs a positive bound")
        limit = (1 << 64) - ((1 << 64) % m)
        while True:
            r = self.next_u64()
            if r < limit:
                return r % m

    def random(self) -> float:
        return (self.next_u64() >> 11) / 9007199254740992.0

    def distinct(self, count: int, lo: int, hi: int) -> list:
        """``count`` distinct integers from ``[lo, hi]``, in draw order."""
        size = hi - lo + 1
        if count > size:
            raise InputError(f"cannot draw {count} distinct values from a universe of {size}")
        seen = set()
        out = []
        while len(out) < count:
            v = lo + self.below(size)
            if v not in seen:
                seen.add(v)
                out.append(v)
        return out


@dataclass(frozen=True)
class FamilySpec:
    """A parameterized set family.

    ``params`` per kind (missing entries take defaults):
    ap ``start, step != 0``; gp ``base != 0, ratio not in {0, 1, -1}``;
    squares (none); random_interval ``d >= 1``; random_gp_subset ``g`` (not
    0 or +-1) and ``bound`` (largest exponent, default ``4 n``).
    """

    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown family kind {self.kind!r}; expected one of {KINDS}")
        merged = dict(_DEFAULTS[self.kind])
        unknown = set(self.params) - set(merged)
        if unknown:
            raise InputError(f"unknown parameters for {self.kind}: {sorted(unknown)}")
        merged.update(self.params)
        clean = {}
        for k, v in merged.items():
            clean[k] = None if v is None else parse_scalar(v)
        object.__setattr__(self, "params", clean)
        self._validate()

    def _validate(self):
        p = self.params
        if self.kind == "ap" and p["step"] == 0:
            raise InputError("ap: step must be nonzero")
        if self.kind == "gp":
            if p["base"] == 0:
                raise InputError("gp: base must be nonzero")
            if p["ratio"] in (0, 1, -1):
                raise InputError("gp: ratio must not be 0, 1 or -1")
        if self.kind == "random_interval" and p["d"] < 1:
            raise InputError("random_interval: density factor d must be >= 1")
        if self.kind == "random_gp_subset":
            if p["g"] in (0, 1, -1):
                raise InputError("random_gp_subset: generator must not be 0, 1 or -1")
            b = p["bound"]
            if b is not None and (b.denominator != 1 or b < 0):
                raise InputError("random_gp_subset: bound must be a nonnegative integer")

    def to_json(self) -> dict:
        doc = {"kind": self.kind}
        for k, v in self.params.items():
            if v is not None:
                doc[k] = v.numerator if v.denominator == 1 else format_scalar(v)
        return doc

    @classmethod
    def from_json(cls, doc) -> "FamilySpec":
        if isinstance(doc, str):
            doc = json.loads(doc)
        if not isinstance(doc, dict) or "kind" not in doc:
            raise InputError('family spec must be a JSON object with a "kind" field')
        doc = dict(doc)
        kind = doc.pop("kind")
        return cls(kind, doc)

    @classmethod
    def parse(cls, text: str) -> "FamilySpec":
        """Parse ``"ap"``, ``"gp:ratio=3"``, ``"random_interval:d=4"`` or inline JSON."""
        text = text.strip()
        if text.startswith("{"):
            try:
                return cls.from_json(text)
            except json.JSONDecodeError as exc:
                raise InputError(f"bad family JSON: {exc}") from exc
        kind, _, rest = text.partition(":")
        params = {}
        for item in filter(None, (s.strip() for s in rest.split(","))):
            key, eq, val = item.partition("=")
            if not eq:
                raise InputError(f"bad family parameter {item!r}; expected key=value")
            params[key.strip()] = val.strip()
        kind = kind.strip()
        return cls(_KIND_ALIASES.get(kind, kind), params)

    @property
    def is_random(self) -> bool:
        return self.kind in RANDOM_KINDS


def generate(spec: FamilySpec, n: int, seed: int = 0) -> NumSet:
    """Member of ``spec`` with exactly ``n`` elements; deterministic in ``(spec, n, seed)``."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InputError(f"n must be a positive integer, got {n!r}")
    p = spec.params
    if spec.kind == "ap":
        vals = [p["start"] + i * p["step"] for i in range(n)]
    elif spec.kind == "gp":
        vals = [p["base"] * p["ratio"] ** i for i in range(n)]
    elif spec.kind == "squares":
        vals = [Fraction(i * i) for i in range(1, n + 1)]
    elif spec.kind == "random_interval":
        hi = math.floor(p["d"] * n)
        vals = XorShift64Star(seed).distinct(n, 1, hi)
    else:
        bound = 4 * n if p["bound"] is None else int(p["bound"])
        exps = XorShift64Star(seed).distinct(n, 0, bound)
        vals = [p["g"] ** e for e in exps]
    out = NumSet(vals)
    if len(out) != n:  # pragma: no cover - parameters validated above
        raise InputError(f"{spec.kind} produced {len(out)} distinct elements, expected {n}")
    return out
