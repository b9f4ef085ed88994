"""Simulated annealing over integer sets, probing sum-product trade-offs.

A chain starts from ``n`` distinct uniform draws in ``[1, U]`` and proposes
single-element replacements.  A proposal worse by ``delta`` is accepted with
probability ``2 ** (-delta / T)``; the temperature is multiplied by the
cooling factor after every step.
"""

from __future__ import annotations

import itertools
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional

from . import _config, statistics
from .errors import InputError
from .exact import NumSet
from .families import XorShift64Star

SCHEMA_VERSION = 1


@dataclass
class SearchConfig:
    n: int
    universe_bound: int
    objective: str = "sumset"
    objective_scale: str = "exponent"
    constraint: Optional[tuple] = None
    penalty_weight: float = 10.0
    iterations: int = 10_000
    initial_temperature: float = 1.0
    cooling: float = 0.999
    seed: int = 0
    trace_every: int = 1000

    def __post_init__(self):
        self.objective = statistics.resolve(self.objective).name
        if self.constraint is not None:
            stat, cap = self.constraint
            self.constraint = (statistics.resolve(stat).name, float(cap))
        self.validate()

    def validate(self):
        if self.n < 1:
            raise InputError("n must be >= 1")
        if self.n > self.universe_bound:
            raise InputError("n must not exceed the universe bound U")
        if not 0 < self.cooling < 1:
            raise InputError("cooling factor must lie in (0, 1)")
        if self.penalty_weight < 0:
            raise InputError("penalty weight must be >= 0")
        if self.iterations < 0:
            raise InputError("iterations must be >= 0")
        if self.initial_temperature < 0:
            raise InputError("initial temperature must be >= 0")
        if self.objective_scale not in ("raw", "exponent"):
            raise InputError("objective_scale must be 'raw' or 'exponent'")
        if (self.objective_scale == "exponent" or self.constraint) and self.n < 2:
            raise InputError("exponent-scaled statistics need n >= 2")

    def to_json(self) -> dict:
        doc = asdict(self)
        doc["constraint"] = list(self.constraint) if self.constraint else None
        doc["schema_version"] = SCHEMA_VERSION
        return doc

    @classmethod
    def from_json(cls, doc) -> "SearchConfig":
        if isinstance(doc, str):
            try:
                doc = json.loads(doc)
            except json.JSONDecodeError as exc:
                raise InputError(f"config is not valid JSON: {exc}") from exc
        if not isinstance(doc, dict):
            raise InputError("search config must be a JSON object")
        doc = dict(doc)
        doc.pop("schema_version", None)
        if doc.get("constraint") is not None:
            doc["constraint"] = tuple(doc["constraint"])
        try:
            return cls(**doc)
        except TypeError as exc:
            raise InputError(f"bad search config: {exc}") from exc


@dataclass
class SearchResult:
    best_set: NumSet
    best_score: float
    trace: list = field(default_factory=list)
    evaluations: int = 0
    initial_set: Optional[NumSet] = None
    seed: int = 0

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "best_set": self.best_set.to_json()["elements"],
            "best_score": self.best_score,
            "trace": [list(t) for t in self.trace],
            "evaluations": self.evaluations,
            "initial_set": self.initial_set.to_json()["elements"] if self.initial_set else None,
            "seed": self.seed,
        }


def _exponent(value: int, n: int) -> float:
    return math.log2(value) / math.log2(n) if value > 0 else -math.inf


def score(A: NumSet, config: SearchConfig) -> float:
    """``objective(A) + penalty_weight * max(0, constraint_exponent(A) - cap)``."""
    if len(A) != config.n:
        raise InputError(f"set has {len(A)} elements, config expects {config.n}")
    vals = A.values
    if any(type(v) is not int or not 1 <= v <= config.universe_bound for v in vals):
        raise InputError(f"elements must be integers in [1, {config.universe_bound}]")
    d = statistics.Derived(A)
    obj = statistics.compute(config.objective, A, cache=d)
    total = float(obj) if config.objective_scale == "raw" else _exponent(obj, config.n)
    if config.constraint and config.penalty_weight:
        stat, cap = config.constraint
        excess = _exponent(statistics.compute(stat, A, cache=d), config.n) - cap
        total += config.penalty_weight * max(0.0, excess)
    return total


def search_extremal(config: SearchConfig) -> SearchResult:
    """Run one annealing chain; the result depends only on ``config``."""
    config.validate()
    rng = XorShift64Star(config.seed)
    n, U = config.n, config.universe_bound
    current = rng.distinct(n, 1, U)
    memo = {}

    def evaluate(vals):
        key = tuple(sorted(vals))
        s = memo.get(key)
        if s is None:
            s = memo[key] = score(NumSet._from_sorted(key), config)
        return s

    cur_score = evaluate(current)
    initial = NumSet._from_sorted(sorted(current))
    best, best_score = list(current), cur_score
    trace = [(0, best_score)]
    evaluations = 1
    temp = config.initial_temperature
    members = set(current)
    for it in range(1, config.iterations + 1):
        if n == U:
            break  # no element outside A to propose
        i = rng.below(n)
        while True:
            v = 1 + rng.below(U)
            if v not in members:
                break
        proposal = list(current)
        proposal[i] = v
        s = evaluate(proposal)
        evaluations += 1
        delta = s - cur_score
        accept = delta <= 0
        if not accept and temp > 0:
            accept = rng.random() < 2.0 ** (-delta / temp)
        if accept:
            members.discard(current[i])
            members.add(v)
            current, cur_score = proposal, s
            if s < best_score:
                best, best_score = list(current), s
                trace.append((it, best_score))
        if config.trace_every and it % config.trace_every == 0 and trace[-1][0] != it:
            trace.append((it, best_score))
        temp *= config.cooling
    return SearchResult(
        best_set=NumSet._from_sorted(sorted(best)),
        best_score=best_score,
        trace=trace,
        evaluations=evaluations,
        initial_set=initial,
        seed=config.seed,
    )


def search_restarts(config: SearchConfig, seeds) -> SearchResult:
    """Independent chains, one per seed; lowest score wins, lower seed breaks ties."""
    seeds = list(seeds)
    if not seeds:
        raise InputError("need at least one seed")
    configs = [SearchConfig(**{**asdict(config), "seed": s}) for s in seeds]
    threads = _config.get_threads()
    if threads == 1:
        results = [search_extremal(c) for c in configs]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(search_extremal, configs))
    return min(results, key=lambda r: (r.best_score, r.seed))


def exhaustive_search(config: SearchConfig):
    """Exact optimum over all ``C(U, n)`` candidate sets: ``(best_score, best_set)``.

    Ties go to the lexicographically first set.
    """
    best = None
    for combo in itertools.combinations(range(1, config.universe_bound + 1), config.n):
        s = score(NumSet._from_sorted(combo), config)
        if best is None or s < best[0]:
            best = (s, NumSet._from_sorted(combo))
    return best
