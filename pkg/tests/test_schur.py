from fractions import Fraction
from functools import lru_cache
from math import factorial

import flint
from hypothesis import given, settings
from hypothesis import strategies as st

from ns_sigma.algebra import GradedSeries, t_family
from ns_sigma.schur import (
    Partition,
    RhoSequence,
    d_coefficient,
    enumerate_superpartitions,
    p_polynomials,
    partition_from_rho,
    partitions_up_to,
    rho_from_partition,
    schur,
)

Q = flint.fmpq


def brute_partitions(w):
    """Every partition of weight <= w, by recursion on the largest part."""
    def of(n, top):
        if n == 0:
            yield ()
            return
        for p in range(min(n, top), 0, -1):
            for rest in of(n - p, p):
                yield (p,) + rest
    return [p for k in range(w + 1) for p in of(k, k)]


# Murnaghan-Nakayama on beta-sets: an oracle independent of Jacobi-Trudi.
@lru_cache(maxsize=None)
def character(lam: tuple, mu: tuple) -> int:
    if not mu:
        return 1 if not lam else 0
    k, rest = mu[0], mu[1:]
    L = len(lam)
    beta = [lam[i] + L - 1 - i for i in range(L)]
    total = 0
    for b in beta:
        nb = b - k
        if nb < 0 or nb in beta:
            continue
        sign = (-1) ** sum(1 for x in beta if nb < x < b)
        new = sorted([x for x in beta if x != b] + [nb], reverse=True)
        shape = tuple(x - (L - 1 - i) for i, x in enumerate(new))
        total += sign * character(tuple(p for p in shape if p), rest)
    return total


def z_mu(mu):
    out = 1
    for k in set(mu):
        m = mu.count(k)
        out *= k ** m * factorial(m)
    return out


def schur_oracle(lam, w):
    """s_lam = sum_mu chi^lam(mu)/z_mu prod p_k, with p_k = k t_k."""
    fam = t_family(w)
    terms = {}
    for mu in brute_partitions(sum(lam)):
        if sum(mu) != sum(lam):
            continue
        chi = character(tuple(lam), mu)
        if not chi:
            continue
        mono = [0] * w
        coef = Fraction(chi, z_mu(mu))
        for k in mu:
            mono[k - 1] += 1
            coef *= k
        terms[tuple(mono)] = Q(coef.numerator, coef.denominator)
    return GradedSeries(fam, w, terms)


def test_partition_validation():
    assert Partition((2, 1, 0)) == (2, 1)
    assert Partition((3, 1)).contains(Partition((2, 1)))
    assert not Partition((3,)).contains(Partition((2, 1)))


def test_rho_examples():
    rho = RhoSequence([2, 0, -2, -4, -5, -6])
    assert partition_from_rho(rho) == (3, 2, 1)
    assert partition_from_rho(RhoSequence([-1, -2, -3])) == ()
    assert rho_from_partition((2, 1)).values(5) == [1, -1, -3, -4, -5]


partitions = st.lists(st.integers(1, 12), max_size=10).map(lambda x: Partition(sorted(x, reverse=True)))


@settings(max_examples=1000)
@given(partitions)
def test_rho_round_trip(lam):
    assert partition_from_rho(rho_from_partition(lam)) == lam


def test_p_polynomials():
    p = p_polynomials(3, 3)
    fam = t_family(3)
    assert p[0] == GradedSeries.constant(fam, 3)
    assert p[1] == GradedSeries.variable(fam, 0, 3)
    assert p[2] == GradedSeries(fam, 3, {(2, 0, 0): Q(1, 2), (0, 1, 0): Q(1)})


def test_schur_examples():
    assert schur((1,), 3) == GradedSeries.variable(t_family(3), 0, 3)
    assert schur((2, 1), 3) == GradedSeries(t_family(3), 3, {(3, 0, 0): Q(1, 3), (0, 0, 1): Q(-1)})


def test_schur_against_character_oracle():
    for lam in partitions_up_to(6):
        assert schur(lam, 6) == schur_oracle(lam, 6), lam


def test_schur_weight_homogeneous():
    for lam in partitions_up_to(8):
        assert schur(lam, 8).homogeneity_scan() <= {lam.weight}


def test_d_coefficient():
    assert d_coefficient((1,)) == 1
    assert d_coefficient((2, 1)) == Fraction(1, 3)
    assert d_coefficient((3, 1)) == Fraction(1, 8)
    for lam in partitions_up_to(8):
        if not lam:
            continue
        s = schur(lam, lam.weight)
        mono = (lam.weight,) + (0,) * (lam.weight - 1)
        got = s.coefficient(mono)
        assert Fraction(int(got.p), int(got.q)) == d_coefficient(lam)
        assert d_coefficient(lam, len(lam) + 2) == d_coefficient(lam)


def test_t1_restriction_of_schur():
    for lam in [(3, 1), (2, 2, 1), (4,), (1, 1, 1)]:
        w = sum(lam)
        restricted = schur(lam, w).set_zero(range(1, w))
        assert set(restricted.terms) == {(w,) + (0,) * (w - 1)}


def test_superpartitions():
    assert enumerate_superpartitions((1,), 2) == [(1,), (2,), (1, 1)]
    assert enumerate_superpartitions((), 0) == [()]
    brute = [Partition(p) for p in brute_partitions(5) if Partition(p).contains(Partition((2, 1)))]
    got = enumerate_superpartitions((2, 1), 5)
    assert sorted(got) == sorted(brute)
    assert got == sorted(got, key=Partition.sort_key)
