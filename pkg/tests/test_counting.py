import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from sumprodlab import (
    InputError,
    MultiplicityTable,
    additive_energy,
    affine_image,
    build_set,
    collinear_energy,
    heavy_ratio_set,
    options,
    paper_threshold,
    quad_count,
    quad_slice,
    rep_table,
    sigma,
    sumset,
    verify_basic_identity,
)
from sumprodlab.counting import collinear_ratio_table, quad_count_pairwise, threshold_tau

S = build_set


def fracs(bound, den):
    return st.builds(Fraction, st.integers(-bound, bound), st.integers(1, den))


small = st.lists(fracs(12, 4), min_size=1, max_size=7).map(build_set)
tiny = st.lists(fracs(6, 3), min_size=1, max_size=5).map(build_set)


def test_rep_table_examples():
    r = rep_table(S([1, 2, 3]), S([1, 2, 3]))
    assert r[4] == 3 and r[100] == 0 and r["7/2"] == 0
    assert rep_table(S([1, 2]), S([10, 20]))[21] == 1
    assert r.total == 9 and r.support == S([2, 3, 4, 5, 6])


def test_rep_table_difference_mode():
    r = rep_table(S([0, 1, 3]), S([0, 1, 3]), "difference")
    assert r[0] == 3 and r[-3] == 1 and r[2] == 1
    with pytest.raises(InputError):
        rep_table(S([1]), S([1]), "product")


def test_table_json_round_trip():
    r = rep_table(S(["1/2", 1, 4]), S([0, "1/3"]))
    doc = r.to_json()
    assert all(isinstance(k, str) for k in doc)
    assert MultiplicityTable.from_json(r.dumps()) == r


@pytest.mark.parametrize("A, E", [([1, 2, 3], 19), ([7], 1), ([1, 2, 4, 8], 28)])
def test_energy_examples(A, E):
    assert additive_energy(S(A)) == E


def test_sigma_examples():
    B = S([1, 2])
    assert sigma(S([2, 3]), B, B) == 3
    assert sigma(sumset(B, S([5, 9])), B, S([5, 9])) == 4
    assert sigma(S([]), B, B) == 0


def test_collinear_examples():
    assert collinear_energy(S([0, 1]), S([0, 1])) == 8
    assert collinear_energy(S([1, 2]), S([0])) == 6
    with pytest.raises(InputError):
        collinear_energy(S([3]), S([3]))


def test_quad_examples():
    assert quad_count(S([0, 1])) == 10
    assert quad_count(S([5])) == 1
    assert quad_count(S([0, 1, 2])) == 45


def test_quad_slice_examples():
    A = S([0, 1])
    assert quad_slice(A, 1, 1, 0) == 2
    assert quad_slice(A, 0, 1, 0) == 1
    assert quad_slice(A, 2, 1, 0) == 0  # 2 - 0 is not in A
    with pytest.raises(InputError):
        quad_slice(A, 5, 1, 0)
    with pytest.raises(InputError):
        quad_slice(A, 1, 1, 7)


def test_heavy_examples():
    A = S([0, 1])
    assert heavy_ratio_set(A, 1) == S([0, 1])
    assert heavy_ratio_set(A, 2) == S([1])
    assert len(heavy_ratio_set(A, 3)) == 0
    with pytest.raises(InputError):
        heavy_ratio_set(A, 0)


def test_threshold_examples():
    assert paper_threshold(S([0, 1])) == Fraction(16, 81)
    assert paper_threshold(S([4])) == Fraction(1, 2)
    assert paper_threshold(S([1, 2, 3])) == Fraction(243, 1250)
    assert threshold_tau(S([0, 1])) == 1


def test_identity_examples():
    assert verify_basic_identity(3, 1, 5, 2)
    assert verify_basic_identity(0, 0, 1, 0)
    with pytest.raises(InputError):
        verify_basic_identity(1, 2, 2, 0)


@given(small)
def test_energy_matches_enumeration(A):
    E = additive_energy(A)
    assert E == oracles.energy(A)
    assert E == additive_energy(A, via="difference")
    n = len(A)
    assert n * n <= E <= n**3


@given(small)
def test_energy_cauchy_schwarz(A):
    assert additive_energy(A) * len(sumset(A, A)) >= len(A) ** 4


@given(small, small)
def test_rep_table_matches_enumeration(B, C):
    for mode in ("sum", "difference"):
        r = rep_table(B, C, mode)
        expected = oracles.rep_counts(B, C, mode)
        assert dict(r.items()) == dict(expected)
        assert r.total == len(B) * len(C)


@given(small, small, small)
def test_sigma_matches_enumeration(X, B, C):
    assert sigma(X, B, C) == oracles.sigma(X, B, C)
    assert sigma(sumset(B, C), B, C) == len(B) * len(C)


@settings(max_examples=40, deadline=None)
@given(tiny, tiny)
def test_collinear_matches_enumeration(P, B):
    expected = oracles.collinear(P, B)
    if expected == 0:
        with pytest.raises(InputError):
            collinear_energy(P, B)
    else:
        assert collinear_energy(P, B) == expected


@given(small)
def test_triple_count_identity(A):
    table = collinear_ratio_table(A, A)
    n = len(A)
    assert table.total == n**3 - n * n  # triples with p2 == b are exactly n^2


@given(small, fracs(9, 5).filter(lambda u: u != 0), fracs(9, 5))
def test_affine_invariance(A, u, v):
    B = affine_image(A, u, v)
    assert additive_energy(B) == additive_energy(A)
    if len(A) > 1:
        assert collinear_energy(B, B) == collinear_energy(A, A)


@settings(max_examples=50, deadline=None)
@given(tiny)
def test_quad_count_three_routes(A):
    q = quad_count(A)
    assert q == quad_count_pairwise(A) == oracles.quad_set_size(A)
    n = len(A)
    assert q * n * n >= additive_energy(A) ** 2


@settings(max_examples=30, deadline=None)
@given(tiny, st.integers(1, 5))
def test_heavy_matches_enumeration(A, tau):
    H = heavy_ratio_set(A, tau)
    assert set(H) == oracles.heavy_ratios(A, tau)
    assert set(heavy_ratio_set(A, tau + 1)) <= set(H)


@settings(max_examples=30, deadline=None)
@given(tiny, st.data())
def test_slice_matches_enumeration(A, data):
    Sset = sorted(sumset(A, A))
    b = data.draw(st.sampled_from(Sset))
    b2 = data.draw(st.sampled_from(Sset))
    c = data.draw(st.sampled_from(list(A)))
    assert quad_slice(A, b, b2, c) == oracles.slice_size(A, b, b2, c)


# numpy kernels against independent routes on sets large enough to leave the Python path

def _random_set(rng, n, lo, hi, den=1):
    vals = set()
    while len(vals) < n:
        vals.add(Fraction(rng.randint(lo, hi), rng.randint(1, den)))
    return build_set(vals)


@pytest.mark.parametrize("seed", range(4))
def test_vectorized_counts_large(seed):
    rng = random.Random(seed)
    A = _random_set(rng, 80, -200, 200, den=1 + seed)
    assert dict(rep_table(A, A).items()) == dict(oracles.rep_counts(A, A))
    assert additive_energy(A) == sum(c * c for c in oracles.rep_counts(A, A, "difference").values())
    P = _random_set(rng, 22, -40, 40, den=1 + seed % 2)
    n = oracles.ratio_multiplicities(P, P)
    assert dict(collinear_ratio_table(P, P).items()) == dict(n)
    assert collinear_energy(P) == sum(c * c for c in n.values())
    assert quad_count(A) == sum(c**3 for c in oracles.rep_counts(A, A, "difference").values())


def test_ap_energy_closed_form_range():
    for n in list(range(1, 40)) + [100, 257, 512]:
        assert additive_energy(S(range(n))) == (2 * n**3 + n) // 3


@pytest.mark.parametrize("threads", [1, 3, 8])
def test_counts_independent_of_threads(threads):
    A = _random_set(random.Random(9), 300, 1, 3000)
    P = _random_set(random.Random(10), 40, -100, 100, den=3)
    with options(threads=1):
        ref = (additive_energy(A), quad_count(A), collinear_energy(P), rep_table(A, A))
    with options(threads=threads):
        assert (additive_energy(A), quad_count(A), collinear_energy(P), rep_table(A, A)) == ref


def test_identity_on_random_tuples():
    rng = random.Random(5)
    for _ in range(500):
        b, c, b2, c2 = (Fraction(rng.randint(-50, 50), rng.randint(1, 20)) for _ in range(4))
        if b2 != c:
            assert verify_basic_identity(b, c, b2, c2)
