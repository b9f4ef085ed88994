"""Brute-force reference implementations.

Nothing here imports the package kernels: every function enumerates tuples
directly over ``Fraction`` values, so agreement with the fast paths is an
independent check.  Inputs are plain iterables of numbers.
"""

from collections import Counter
from fractions import Fraction
from itertools import product
from math import lcm


def F(xs):
    return sorted({Fraction(x) for x in xs})


def scaled(xs):
    """Integers ``D * x`` for a common denominator ``D``; ratios of differences are unchanged."""
    xs = F(xs)
    D = lcm(*(x.denominator for x in xs)) if xs else 1
    return [int(x * D) for x in xs]


def sums(A, B):
    return {a + b for a in F(A) for b in F(B)}


def diffs(A, B):
    return {a - b for a in F(A) for b in F(B)}


def prods(A, B):
    return {a * b for a in F(A) for b in F(B)}


def ratios(A, B):
    return {a / b for a in F(A) for b in F(B) if b != 0}


def k_fold_sums(A, k):
    return {sum(t, Fraction(0)) for t in product(F(A), repeat=k)}


def k_fold_prods(A, k):
    out = set()
    for t in product(F(A), repeat=k):
        p = Fraction(1)
        for x in t:
            p *= x
        out.add(p)
    return out


def shift_ratios(A, sign):
    A = F(A)
    s = 1 if sign == "plus" else -1
    return {(b + s * c) / (b2 + s * c) for b in A for b2 in A for c in A if b2 + s * c != 0}


def rep_counts(B, C, mode="sum"):
    s = 1 if mode == "sum" else -1
    return Counter(b + s * c for b in F(B) for c in F(C))


def energy(A):
    A = F(A)
    return sum(1 for a1, a2, a3, a4 in product(A, repeat=4) if a1 + a2 == a3 + a4)


def sigma(X, B, C):
    X = set(F(X))
    return sum(1 for b in F(B) for c in F(C) if b + c in X)


def collinear(P, B):
    """Ordered 6-tuples with equal ratios, compared by cross-multiplication."""
    both = scaled(list(F(P)) + list(F(B)))
    index = {x: v for x, v in zip(F(list(F(P)) + list(F(B))), both)}
    P = [index[x] for x in F(P)]
    B = [index[x] for x in F(B)]
    pairs = [(p1 - b, p2 - b) for p1 in P for p2 in P for b in B if p2 != b]
    count = 0
    for num, den in pairs:
        for num2, den2 in pairs:
            if num * den2 == num2 * den:
                count += 1
    return count


def quad_set_size(A):
    """``|{(b, b', c, c') in S x S x A x A : b-c, b-c', b'-c, b'-c' in A}|``."""
    A = F(A)
    members = set(A)
    S = sorted(sums(A, A))
    return sum(
        1
        for b, b2, c, c2 in product(S, S, A, A)
        if b - c in members and b - c2 in members and b2 - c in members and b2 - c2 in members
    )


def slice_size(A, b, b2, c):
    A = F(A)
    members = set(A)
    b, b2, c = Fraction(b), Fraction(b2), Fraction(c)
    if b - c not in members or b2 - c not in members:
        return 0
    return sum(1 for c2 in A if b - c2 in members and b2 - c2 in members)


def heavy_ratios(A, tau):
    return {x for x, top in heaviest_slices(A).items() if top >= tau}


def heaviest_slices(A):
    """``ratio -> largest slice over (b, b', c) in S x S x A with b' != c`` attaining it."""
    A = F(A)
    S = sorted(sums(A, A))
    best = {}
    for b, b2, c in product(S, S, A):
        if b2 != c:
            x = (b - c) / (b2 - c)
            best[x] = max(best.get(x, 0), slice_size(A, b, b2, c))
    return best


def ratio_multiplicities(P, B):
    """``n(x)`` by direct Fraction division over admissible triples (O(n^3))."""
    return Counter((p1 - b) / (p2 - b) for p1 in F(P) for p2 in F(P) for b in F(B) if p2 != b)
