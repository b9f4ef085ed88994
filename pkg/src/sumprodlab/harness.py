"""Evaluate the sum-product inequalities on concrete sets.

Two tiers:

* ``certified`` inequalities hold with constant 1 for every finite set.  They
  are evaluated in exact arithmetic and a failure is treated as a bug.
* ``asymptotic`` inequalities hide absolute constants (and sometimes log
  factors).  They are evaluated with every hidden constant set to 1 and logs
  in base 2; the verdict is informational only.

Exponent scans (:func:`fit_exponent`) turn the asymptotic claims into
measurable growth rates over scaling families.
"""

from __future__ import annotations

import csv
import io
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from . import counting, setops, statistics
from .errors import CertificationError, InputError, ResourceCapError
from .exact import NumSet, format_scalar, require_nonempty, set_union
from .families import FamilySpec, generate
from .statistics import Derived

logger = logging.getLogger(__name__)

CERTIFIED = "certified"
ASYMPTOTIC = "asymptotic"

# Candidate pairs in the last fold of AAAA/AAAA above which a certified record
# settles for the |X|^2 bound when that bound suffices.
EXACT_RATIO_BUDGET = 1 << 22


@dataclass
class InequalityRecord:
    """One evaluated inequality: ``lhs >= rhs`` (relation ``ge``) or ``lhs <= rhs`` (``le``)."""

    id: str
    tier: str
    relation: str
    formula: str
    lhs: object = None
    rhs: object = None
    ratio: Optional[float] = None
    satisfied: Optional[bool] = None
    status: str = "ok"
    context: dict = field(default_factory=dict)
    note: str = ""

    @property
    def skipped(self) -> bool:
        return self.status == "skipped"

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "tier": self.tier,
            "relation": self.relation,
            "formula": self.formula,
            "lhs": _jsonable(self.lhs),
            "rhs": _jsonable(self.rhs),
            "ratio": self.ratio,
            "satisfied": self.satisfied,
            "status": self.status,
            "context": {k: _jsonable(v) for k, v in self.context.items()},
            "note": self.note,
        }


def _jsonable(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else format_scalar(x)
    if isinstance(x, float) and not math.isfinite(x):
        return None
    return x


@dataclass(frozen=True)
class RecordSpec:
    id: str
    tier: str
    relation: str
    formula: str
    multiplicative: bool
    evaluate: Callable


def _log2(x) -> float:
    # exact-ish log2 of a positive int/Fraction of any size
    if isinstance(x, Fraction):
        return _log2(x.numerator) - _log2(x.denominator)
    if isinstance(x, int) and x.bit_length() > 1000:
        shift = x.bit_length() - 64
        return math.log2(x >> shift) + shift
    return math.log2(x)


# -- certified evaluators: return (lhs, rhs, context) with exact values ----------


def _cs_energy(d: Derived):
    n, s = len(d.A), len(d.S)
    return d.energy, Fraction(n**4, s), {}


def _plunnecke(k, l):
    def ev(d: Derived):
        A = d.A
        lhs_set = setops.difference_set(setops.iterated_sumset(A, k), setops.iterated_sumset(A, l))
        n, s = len(A), len(d.S)
        return len(lhs_set), Fraction(s ** (k + l), n ** (k + l - 1)), {"k": k, "l": l}

    return ev


def _mult_plunnecke_ratio(d: Derived):
    a4, a2 = len(d.AAAA), len(d.AA)
    rhs = Fraction(a4**4, a2**3)
    ctx = {"|AAAA|": a4, "|AA|": a2}
    # |X/X| <= |X|^2 decides the record when the exact set is out of reach
    bound_decides = a4 * a4 <= rhs
    r, a3 = len(d.ratio), len(d.AAA)
    if bound_decides and min(r**3, a3 * a3) * r > EXACT_RATIO_BUDGET:
        ctx["lhs_upper_bound"] = True
        return a4 * a4, rhs, ctx
    try:
        return len(d.eight_ratio), rhs, ctx
    except ResourceCapError:
        if not bound_decides:
            raise
        ctx["lhs_upper_bound"] = True
        return a4 * a4, rhs, ctx


def _mult_plunnecke_two_set(d: Derived):
    a3, a2 = len(d.AAA), len(d.AA)
    return len(d.AAAA), Fraction(a3**4, a2**3), {"|AAA|": a3, "|AA|": a2}


def _cs_quad(d: Derived):
    n = len(d.A)
    return d.quad, Fraction(d.energy**2, n**2), {"E+": d.energy}


# -- asymptotic evaluators: return (lhs, rhs as float, context) -----------------


def _lg(d):
    return math.log2(len(d.A))


def _K(d):
    return len(d.S) / len(d.A)


def _er(d):
    n = len(d.A)
    return len(d.S) ** 4 * len(d.AA), n**6 / _lg(d), {}


def _soly(d):
    n = len(d.A)
    return len(d.S) ** 2 * len(d.AA), n**4 / _lg(d), {}


def _li_shen(d):
    n = len(d.A)
    return len(d.S) ** 2 * len(d.ratio), float(n**4), {"|A/A|": len(d.ratio)}


def _energy_few_products(d):
    n = len(d.A)
    M = len(d.AA) / n
    return d.energy, M**1.6 * n**2.45 * _lg(d) ** 0.2, {}


def _witness(d, big):
    n = len(d.A)
    lg = _lg(d)
    return {
        "product_exponent": _log2(len(big)) / lg,
        "sumset_exponent": _log2(len(d.S)) / lg,
    }


def _triple_growth(d):
    return len(d.AAA), float(len(d.A) ** 2), _witness(d, d.AAA)


def _quadruple_growth(d):
    return len(d.AAAA), float(len(d.A) ** 2), _witness(d, d.AAAA)


def _sigma_bound(d):
    A = d.A
    a = A.values[0]
    X = setops.product_set(d.AA, NumSet([Fraction(1) / a]))
    B = set_union(d.S, -A)
    lhs = counting.sigma(X, B, B)
    rhs = len(B) ** 1.7 * len(X) ** 0.15
    ctx = {
        "a": Fraction(a),
        "|X|": len(X),
        "|B|": len(B),
        "sigma_X(-A,S)": counting.sigma(X, -A, d.S),
        "|A|^2": len(A) ** 2,
        "c_prime": 0,
        "log_factor": "dropped",
    }
    return lhs, rhs, ctx


def _collinear(d):
    n = len(d.A)
    return d.collinear, n**4 * _lg(d), {}


def _heavy(d):
    tau = counting.threshold_tau(d.A)
    R = counting.heavy_ratio_set(d.A, tau)
    K = _K(d)
    ctx = {"tau": tau, "threshold": counting.paper_threshold(d.A)}
    return len(R), len(d.A) ** 2 / (K**8 * _lg(d)), ctx


def _eight(d):
    K = _K(d)
    return len(d.eight_ratio), len(d.A) ** (100 / 49) / K ** (40 / 7), {}


def _main_quant(d):
    K = _K(d)
    return len(d.AAA), len(d.A) ** (2 + 1 / 392) / K ** (125 / 56), _witness(d, d.AAA)


def _triple_sum_product(d):
    return len(d.SSS), len(d.A) ** (2 + 1 / 392), {"|SS|": len(d.SS)}


def _shift_plus(d):
    return len(d.shift_plus), len(d.A) ** 2 / _lg(d), {}


def _shift_minus(d):
    return len(d.shift_minus), len(d.A) ** 2 / _lg(d), {}


def _ratio_of_sums(d):
    return len(d.S_over_S), float(len(d.A) ** 2), {}


def _sum_product_pair(d):
    return len(d.SS), len(d.A) ** 2 / _lg(d), {}


def _diff_product_pair(d):
    return len(d.DD), len(d.A) ** 2 / _lg(d), {}


def _diff_triple(d):
    return len(d.DDD), len(d.A) ** (2 + 1 / 8), {}


def _sum_growth(d):
    return len(d.SS), len(d.S) ** (1 + 1 / 398), {"|S|": len(d.S)}


MANIFEST = (
    RecordSpec("energy_vs_sumset", CERTIFIED, "ge", "E+(A) >= |A|^4/|A+A|", False, _cs_energy),
    RecordSpec("plunnecke_1_1", CERTIFIED, "le", "|A-A| <= |A+A|^2/|A|", False, _plunnecke(1, 1)),
    RecordSpec("plunnecke_2_1", CERTIFIED, "le", "|2A-A| <= |A+A|^3/|A|^2", False, _plunnecke(2, 1)),
    RecordSpec("plunnecke_2_2", CERTIFIED, "le", "|2A-2A| <= |A+A|^4/|A|^3", False, _plunnecke(2, 2)),
    RecordSpec("plunnecke_mult_ratio", CERTIFIED, "le", "|AAAA/AAAA| <= |AAAA|^4/|AA|^3",
               True, _mult_plunnecke_ratio),
    RecordSpec("plunnecke_mult_two_set", CERTIFIED, "le", "|AAAA| <= |AAA|^4/|AA|^3",
               True, _mult_plunnecke_two_set),
    RecordSpec("quad_vs_energy", CERTIFIED, "ge", "quad_count(A) >= E+(A)^2/|A|^2", False, _cs_quad),
    RecordSpec("elekes_ruzsa", ASYMPTOTIC, "ge", "|A+A|^4 |AA| >> |A|^6/log|A|", True, _er),
    RecordSpec("solymosi", ASYMPTOTIC, "ge", "|A+A|^2 |AA| >> |A|^4/log|A|", True, _soly),
    RecordSpec("ratio_sum_product", ASYMPTOTIC, "ge", "|A+A|^2 |A/A| >> |A|^4", True, _li_shen),
    RecordSpec("energy_few_products", ASYMPTOTIC, "le",
               "E+(A) << M^(8/5) |A|^(49/20) log^(1/5)|A|, M = |AA|/|A|", True, _energy_few_products),
    RecordSpec("triple_product_growth", ASYMPTOTIC, "ge", "|AAA| >= |A|^(2+c2) (baseline c2 = 0)",
               True, _triple_growth),
    RecordSpec("quadruple_product_growth", ASYMPTOTIC, "ge", "|AAAA| >= |A|^(2+c2) (baseline c2 = 0)",
               True, _quadruple_growth),
    RecordSpec("sigma_bound", ASYMPTOTIC, "le",
               "sigma_X(B) <~ |B|^(17/10) |X|^(3/20), X = AA/a, B = (A+A) u (-A)", True, _sigma_bound),
    RecordSpec("collinear_triples", ASYMPTOTIC, "le", "T(A) << |A|^4 log|A|", False, _collinear),
    RecordSpec("heavy_ratio_bound", ASYMPTOTIC, "ge", "|R| >> |A|^2/(K^8 log|A|)", False, _heavy),
    RecordSpec("eight_products", ASYMPTOTIC, "ge", "|AAAA/AAAA| >~ |A|^(100/49)/K^(40/7)", True, _eight),
    RecordSpec("main_quantitative", ASYMPTOTIC, "ge", "|AAA| >~ |A|^(2+1/392)/K^(125/56)",
               True, _main_quant),
    RecordSpec("triple_sum_product", ASYMPTOTIC, "ge", "|(A+A)(A+A)(A+A)| >~ |A|^(2+1/392)",
               False, _triple_sum_product),
    RecordSpec("shift_ratio_plus", ASYMPTOTIC, "ge", "|R'[A]| >> |A|^2/log|A|", False, _shift_plus),
    RecordSpec("shift_ratio_minus", ASYMPTOTIC, "ge", "|R[A]| >> |A|^2/log|A|", False, _shift_minus),
    RecordSpec("ratio_of_sums", ASYMPTOTIC, "ge", "|(A+A)/(A+A)| >> |A|^2", False, _ratio_of_sums),
    RecordSpec("sum_product_pair", ASYMPTOTIC, "ge", "|(A+A)(A+A)| >> |A|^2/log|A|", False, _sum_product_pair),
    RecordSpec("difference_product_pair", ASYMPTOTIC, "ge", "|(A-A)(A-A)| >> |A|^2/log|A|",
               False, _diff_product_pair),
    RecordSpec("difference_triple_product", ASYMPTOTIC, "ge", "|(A-A)(A-A)(A-A)| >~ |A|^(2+1/8)",
               False, _diff_triple),
    RecordSpec("sum_set_growth", ASYMPTOTIC, "ge", "|(A+A)(A+A)| >~ |A+A|^(1+1/398)", False, _sum_growth),
)

MANIFEST_IDS = tuple(r.id for r in MANIFEST)


def _base_context(d: Derived) -> dict:
    n = len(d.A)
    ctx = {"n": n, "|A+A|": len(d.S), "K": Fraction(len(d.S), n)}
    if n >= 2:
        ctx["log2_n"] = math.log2(n)
    return ctx


def _add_product_context(ctx: dict, d: Derived):
    try:
        ctx["|AA|"] = len(d.AA)
        ctx["M"] = Fraction(len(d.AA), len(d.A))
    except ResourceCapError:
        pass


def _evaluate(spec: RecordSpec, d: Derived) -> InequalityRecord:
    rec = InequalityRecord(spec.id, spec.tier, spec.relation, spec.formula)
    rec.context = _base_context(d)
    if spec.multiplicative and 0 in d.A.member_set():
        rec.status = "skipped"
        rec.note = "0 in A: multiplicative inequality not applicable"
        logger.info("%s skipped: 0 in A", spec.id)
        return rec
    _add_product_context(rec.context, d)
    try:
        lhs, rhs, extra = spec.evaluate(d)
    except ResourceCapError as exc:
        rec.status = "skipped"
        rec.note = f"resource cap: {exc}"
        logger.info("%s skipped: %s", spec.id, exc)
        return rec
    rec.context.update(extra)
    if extra.get("lhs_upper_bound"):
        rec.status = "bounded"
        rec.note = "lhs set exceeds the resource cap; lhs is the upper bound |X|^2 on |X/X|"
    rec.lhs, rec.rhs = lhs, rhs
    if spec.tier == CERTIFIED:
        rec.satisfied = lhs >= rhs if spec.relation == "ge" else lhs <= rhs
        rec.ratio = float(Fraction(lhs) / rhs)
    else:
        rec.satisfied = bool(lhs >= rhs if spec.relation == "ge" else lhs <= rhs)
        if lhs == 0:
            rec.ratio = 0.0
        else:
            rec.ratio = float(2.0 ** (_log2(lhs) - math.log2(rhs))) if rhs > 0 else math.inf
    return rec


def check_certified(A: NumSet, strict: bool = True, cache: Derived = None) -> list:
    """Evaluate every constant-1 inequality on ``A``.

    Multiplicative records are skipped (``status="skipped"``) when 0 is in
    ``A``, and any record whose sets exceed the resource cap is skipped too,
    unless a cheap exact upper bound on the left side already decides it
    (``status="bounded"``).
    With ``strict`` a violated record raises :class:`CertificationError`.
    """
    require_nonempty(A)
    d = cache or Derived(A)
    records = [_evaluate(s, d) for s in MANIFEST if s.tier == CERTIFIED]
    bad = [r.id for r in records if r.satisfied is False]
    if bad and strict:
        raise CertificationError(f"certified inequalities violated: {', '.join(bad)}", records)
    return records


def measure_asymptotic(A: NumSet, cache: Derived = None) -> list:
    """Evaluate every asymptotic inequality with implicit constants set to 1.

    Needs ``|A| >= 2`` so that ``log2 |A| > 0``.  Verdicts are reported, never asserted.
    """
    require_nonempty(A)
    if len(A) < 2:
        raise InputError("measure_asymptotic needs |A| >= 2 (log2|A| must be positive)")
    d = cache or Derived(A)
    return [_evaluate(s, d) for s in MANIFEST if s.tier == ASYMPTOTIC]


def evaluate_all(A: NumSet, strict: bool = False) -> list:
    """Certified then asymptotic records, sharing one cache."""
    d = Derived(A)
    return check_certified(A, strict=strict, cache=d) + measure_asymptotic(A, cache=d)


CSV_COLUMNS = ("id", "tier", "lhs", "rhs", "ratio", "satisfied", "n", "K", "M")


def records_to_csv(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        c = r.context
        row = [r.id, r.tier, _jsonable(r.lhs), _jsonable(r.rhs), r.ratio, r.satisfied,
               c.get("n"), _jsonable(c.get("K")), _jsonable(c.get("M"))]
        w.writerow(["" if v is None else v for v in row])
    return buf.getvalue()


# -- exponent scans -------------------------------------------------------------


@dataclass
class ExponentFit:
    family: FamilySpec
    statistic: str
    sizes: list
    values: list
    slope: float
    intercept: float
    r_squared: float

    def to_json(self) -> dict:
        return {
            "family": self.family.to_json(),
            "statistic": self.statistic,
            "sizes": list(self.sizes),
            "values": list(self.values),
            "slope": self.slope,
            "intercept": self.intercept,
            "r_squared": self.r_squared,
        }

    def plot_rows(self) -> list:
        """``(log2 n, log2 value)`` pairs for plotting."""
        return [(math.log2(n), _log2(v)) for n, v in zip(self.sizes, self.values)]


def loglog_fit(sizes, values):
    """Least-squares line through ``(log2 n, log2 value)``: ``(slope, intercept, r2)``."""
    x = np.array([math.log2(n) for n in sizes])
    y = np.array([_log2(v) for v in values])
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 if ss_tot == 0 else max(0.0, 1.0 - float((resid**2).sum()) / ss_tot)
    return float(slope), float(intercept), min(1.0, r2)


def validate_sizes(sizes) -> list:
    sizes = [int(s) for s in sizes]
    if len(sizes) < 3:
        raise InputError("an exponent scan needs at least 3 sizes")
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise InputError("sizes must be strictly increasing")
    if sizes[0] < 1:
        raise InputError("sizes must be positive")
    return sizes


def fit_exponent(spec: FamilySpec, sizes, statistic: str, seed: int = 0) -> ExponentFit:
    """Fit ``log2(statistic)`` against ``log2(n)`` over family members of each size."""
    sizes = validate_sizes(sizes)
    stat = statistics.resolve(statistic)
    values = []
    for n in sizes:
        A = generate(spec, n, seed)
        v = statistics.compute(stat.name, A)
        if v <= 0:
            raise InputError(f"{stat.name} is zero at n={n}; cannot take logarithms")
        values.append(v)
    slope, intercept, r2 = loglog_fit(sizes, values)
    return ExponentFit(spec, stat.name, sizes, values, slope, intercept, r2)
