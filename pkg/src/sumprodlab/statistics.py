"""Registry of named set statistics, with per-set caching of derived sets.

The harness, exponent scans, the search objective and the CLI all look
statistics up here, so every consumer runs the same audited kernels.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable

from . import counting, setops
from .errors import InputError
from .exact import NumSet


class Derived:
    """Lazily computed sets and counts attached to one input set ``A``."""

    def __init__(self, A: NumSet):
        self.A = A

    @cached_property
    def S(self):
        return setops.sumset(self.A, self.A)

    @cached_property
    def D(self):
        return setops.difference_set(self.A, self.A)

    @cached_property
    def AA(self):
        return setops.product_set(self.A, self.A)

    @cached_property
    def AAA(self):
        return setops.product_set(self.AA, self.A)

    @cached_property
    def AAAA(self):
        return setops.product_set(self.AAA, self.A)

    @cached_property
    def ratio(self):
        return setops.ratio_set(self.A, self.A)

    @cached_property
    def eight_ratio(self):
        # AAAA/AAAA equals the 4-fold product of A/A, which is far cheaper to fold
        return setops.iterated_product(self.ratio, 4)

    @cached_property
    def SS(self):
        return setops.product_set(self.S, self.S)

    @cached_property
    def SSS(self):
        return setops.product_set(self.SS, self.S)

    @cached_property
    def DD(self):
        return setops.product_set(self.D, self.D)

    @cached_property
    def DDD(self):
        return setops.product_set(self.DD, self.D)

    @cached_property
    def S_over_S(self):
        return setops.ratio_set(self.S, self.S)

    @cached_property
    def shift_plus(self):
        return setops.shift_ratio_set(self.A, "plus")

    @cached_property
    def shift_minus(self):
        return setops.shift_ratio_set(self.A, "minus")

    @cached_property
    def energy(self):
        return counting.additive_energy(self.A)

    @cached_property
    def collinear(self):
        return counting.collinear_energy(self.A, self.A)

    @cached_property
    def quad(self):
        return counting.quad_count(self.A)


@dataclass(frozen=True)
class Statistic:
    name: str
    label: str
    fn: Callable[[Derived], int]
    min_n: int = 1
    aliases: tuple = ()

    @property
    def set_attr(self):
        """Name of the :class:`Derived` attribute holding the underlying set, if any."""
        return _SET_ATTRS.get(self.name)


_STATS = [
    Statistic("size", "|A|", lambda d: len(d.A)),
    Statistic("sumset", "|A+A|", lambda d: len(d.S), aliases=("|A+A|", "A+A")),
    Statistic("difference", "|A-A|", lambda d: len(d.D), aliases=("|A-A|", "A-A")),
    Statistic("product", "|AA|", lambda d: len(d.AA), aliases=("|AA|", "AA")),
    Statistic("triple_product", "|AAA|", lambda d: len(d.AAA), aliases=("|AAA|", "AAA")),
    Statistic("quadruple_product", "|AAAA|", lambda d: len(d.AAAA), aliases=("|AAAA|", "AAAA")),
    Statistic("ratio", "|A/A|", lambda d: len(d.ratio), aliases=("|A/A|", "A/A")),
    Statistic("eight_ratio", "|AAAA/AAAA|", lambda d: len(d.eight_ratio), aliases=("|AAAA/AAAA|",)),
    Statistic("energy", "E+(A)", lambda d: d.energy, aliases=("E+", "E⁺", "additive_energy")),
    Statistic("collinear", "T(A)", lambda d: d.collinear, aliases=("T", "collinear_energy")),
    Statistic("quad", "quad_count(A)", lambda d: d.quad, aliases=("quad_count",)),
    Statistic("shift_ratio", "|R'[A]|", lambda d: len(d.shift_plus), aliases=("|R'[A]|", "R'")),
    Statistic("difference_ratio", "|R[A]|", lambda d: len(d.shift_minus), min_n=2, aliases=("|R[A]|",)),
    Statistic("ratio_of_sums", "|(A+A)/(A+A)|", lambda d: len(d.S_over_S), aliases=("|(A+A)/(A+A)|",)),
    Statistic("sum_product", "|SS|", lambda d: len(d.SS), aliases=("|SS|", "|(A+A)(A+A)|")),
    Statistic("sum_triple_product", "|SSS|", lambda d: len(d.SSS),
              aliases=("|SSS|", "|(A+A)(A+A)(A+A)|")),
    Statistic("difference_product", "|(A-A)(A-A)|", lambda d: len(d.DD), aliases=("|(A-A)(A-A)|",)),
    Statistic("difference_triple_product", "|(A-A)(A-A)(A-A)|", lambda d: len(d.DDD),
              aliases=("|(A-A)(A-A)(A-A)|",)),
]

_SET_ATTRS = {
    "size": "A", "sumset": "S", "difference": "D", "product": "AA", "triple_product": "AAA",
    "quadruple_product": "AAAA", "ratio": "ratio", "eight_ratio": "eight_ratio",
    "shift_ratio": "shift_plus", "difference_ratio": "shift_minus", "ratio_of_sums": "S_over_S",
    "sum_product": "SS", "sum_triple_product": "SSS", "difference_product": "DD",
    "difference_triple_product": "DDD",
}

REGISTRY = {s.name: s for s in _STATS}
_ALIASES = {a: s.name for s in _STATS for a in (s.name, *s.aliases)}


def names() -> list:
    return [s.name for s in _STATS]


def resolve(name: str) -> Statistic:
    try:
        return REGISTRY[_ALIASES[name]]
    except KeyError:
        raise InputError(f"unknown statistic {name!r}; registered: {', '.join(names())}") from None


def compute(name: str, A, cache: Derived = None) -> int:
    """Value of statistic ``name`` on ``A`` (a NumSet or a :class:`Derived`)."""
    stat = resolve(name)
    d = cache if cache is not None else (A if isinstance(A, Derived) else Derived(A))
    if len(d.A) < max(stat.min_n, 1):
        raise InputError(f"{stat.name} needs at least {max(stat.min_n, 1)} elements")
    return stat.fn(d)
