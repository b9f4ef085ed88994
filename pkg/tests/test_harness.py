import math
from fractions import Fraction

import pytest

from sumprodlab import (
    CertificationError,
    FamilySpec,
    InputError,
    build_set,
    check_certified,
    fit_exponent,
    iterated_product,
    measure_asymptotic,
    options,
    ratio_set,
)
from sumprodlab import harness
from sumprodlab.harness import CSV_COLUMNS, MANIFEST_IDS, evaluate_all, loglog_fit, records_to_csv

S = build_set


def by_id(records):
    return {r.id: r for r in records}


def test_certified_examples_123():
    recs = by_id(check_certified(S([1, 2, 3])))
    a = recs["energy_vs_sumset"]
    assert (a.lhs, a.rhs, a.satisfied) == (19, Fraction(81, 5), True)
    b = recs["plunnecke_1_1"]
    assert (b.lhs, b.rhs, b.satisfied) == (5, Fraction(25, 3), True)
    assert all(r.satisfied for r in recs.values())
    assert len(recs) >= 4


def test_zero_skips_multiplicative_records():
    recs = by_id(check_certified(S([0, 1])))
    d = recs["quad_vs_energy"]
    assert (d.lhs, d.rhs, d.satisfied) == (10, 9, True)
    for rid in ("plunnecke_mult_ratio", "plunnecke_mult_two_set"):
        assert recs[rid].status == "skipped" and recs[rid].satisfied is None
        assert "0 in A" in recs[rid].note


def test_certified_singleton():
    recs = check_certified(S([5]))
    assert all(r.satisfied for r in recs)


def test_measure_examples():
    recs = by_id(measure_asymptotic(S([1, 2, 3])))
    soly = recs["solymosi"]
    assert soly.lhs == 150
    assert soly.rhs == pytest.approx(81 / math.log2(3))
    assert soly.ratio == pytest.approx(2.935, abs=5e-3)
    main = by_id(measure_asymptotic(S([1, 2, 4, 8])))["main_quantitative"]
    assert main.lhs == 10
    assert main.rhs == pytest.approx(4 ** (2 + 1 / 392) / 2.5 ** (125 / 56))
    assert main.context["K"] == Fraction(10, 4)


def test_measure_needs_two_elements():
    with pytest.raises(InputError):
        measure_asymptotic(S([1]))


def test_record_order_follows_manifest():
    ids = [r.id for r in evaluate_all(S([1, 3, 4, 9]))]
    assert tuple(ids) == MANIFEST_IDS
    assert len(set(ids)) == len(ids)


def test_asymptotic_records_deterministic():
    A = S([2, 3, 5, 7, 11, 13])
    first = [r.to_json() for r in measure_asymptotic(A)]
    assert [r.to_json() for r in measure_asymptotic(A)] == first


def test_asymptotic_verdicts_never_raise():
    # a GP has tiny |AA|; sum-product records with constant 1 may read False
    recs = measure_asymptotic(S([2**i for i in range(12)]))
    assert all(r.status == "ok" for r in recs)


def test_violation_signals(monkeypatch):
    bogus = harness.RecordSpec("bogus", harness.CERTIFIED, "le", "10 <= 5", False,
                               lambda d: (10, Fraction(5), {}))
    monkeypatch.setattr(harness, "MANIFEST", harness.MANIFEST + (bogus,))
    with pytest.raises(CertificationError) as info:
        check_certified(S([1, 2]))
    assert any(r.id == "bogus" and r.satisfied is False for r in info.value.records)
    recs = check_certified(S([1, 2]), strict=False)
    assert by_id(recs)["bogus"].satisfied is False


def test_ratio_record_bound_agrees_with_exact(monkeypatch):
    A = S(range(1, 9))
    exact = by_id(check_certified(A))["plunnecke_mult_ratio"]
    assert exact.status == "ok"
    R = ratio_set(A, A)
    assert exact.lhs == len(iterated_product(R, 4))
    monkeypatch.setattr(harness, "EXACT_RATIO_BUDGET", 0)
    bounded = by_id(check_certified(A))["plunnecke_mult_ratio"]
    assert bounded.status == "bounded" and bounded.satisfied
    assert exact.lhs <= bounded.lhs <= bounded.rhs == exact.rhs


def test_cap_skips_instead_of_failing():
    with options(cap=2000):
        recs = by_id(evaluate_all(S(range(1, 30))))
    assert recs["plunnecke_mult_two_set"].status == "skipped"
    assert "resource cap" in recs["plunnecke_mult_two_set"].note
    assert recs["energy_vs_sumset"].satisfied


def test_sigma_record_context():
    rec = by_id(measure_asymptotic(S([1, 2, 3, 5])))["sigma_bound"]
    assert rec.context["c_prime"] == 0
    assert rec.context["a"] == 1
    assert rec.lhs <= rec.context["|B|"] ** 2


def test_witness_exponents():
    rec = by_id(measure_asymptotic(S(range(1, 17))))["triple_product_growth"]
    assert rec.context["sumset_exponent"] == pytest.approx(math.log2(31) / 4)
    assert rec.context["product_exponent"] == pytest.approx(math.log2(rec.lhs) / 4)


def test_csv_layout():
    text = records_to_csv(evaluate_all(S([1, 2, 3])))
    lines = text.strip().splitlines()
    assert lines[0].split(",") == list(CSV_COLUMNS)
    assert len(lines) == 1 + len(MANIFEST_IDS)
    assert lines[1].startswith("energy_vs_sumset,certified,19,81/5,")


def test_fit_recovers_linear_growth():
    fit = fit_exponent(FamilySpec("ap"), [16, 32, 64, 128], "sumset")
    assert fit.slope == pytest.approx(1.0, abs=0.02)
    assert 0.0 <= fit.r_squared <= 1.0
    assert fit.values == [31, 63, 127, 255]
    assert fit.plot_rows()[0] == (4.0, pytest.approx(math.log2(31)))


def test_loglog_fit_exact_power_law():
    slope, intercept, r2 = loglog_fit([2, 4, 8, 16], [12, 48, 192, 768])
    assert slope == pytest.approx(2.0) and intercept == pytest.approx(math.log2(3))
    assert r2 == pytest.approx(1.0)


@pytest.mark.parametrize("sizes", [[8, 16], [8, 8, 16], [16, 8, 32], [0, 4, 8]])
def test_bad_size_lists(sizes):
    with pytest.raises(InputError):
        fit_exponent(FamilySpec("ap"), sizes, "sumset")


def test_unknown_statistic():
    with pytest.raises(InputError):
        fit_exponent(FamilySpec("ap"), [4, 8, 16], "volume")
