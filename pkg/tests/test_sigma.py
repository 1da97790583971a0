import flint
import pytest

from ns_sigma import NSCurve, compute
from ns_sigma.algebra import GradedSeries, LaurentSeries, as_constant, series_exp, series_log, u_family
from ns_sigma.schur import schur
from ns_sigma.sigma import factorization_check, t_of_u, u_of_t, weierstrass_oracle

Q = flint.fmpq


def oracle_as_laurent(sig, W):
    return LaurentSeries(0, [sig.coefficient((k,)) for k in range(W + 1)], W)


def test_oracle_trivial_and_first_steps():
    assert weierstrass_oracle(Q(0), Q(0), 13) == GradedSeries(u_family((1,)), 13, {(1,): Q(1)})
    g2, g3 = Q(7, 3), Q(-2, 5)
    s = weierstrass_oracle(g2, g3, 9)
    assert s.coefficient((5,)) == -g2 / 240
    assert s.coefficient((7,)) == -g3 / 840
    assert s.coefficient((9,)) == -g2 ** 2 / 161280


@pytest.mark.parametrize("g2,g3", [(Q(1), Q(0)), (Q(3, 2), Q(-5, 7)), (Q(-4), Q(9))])
def test_oracle_satisfies_weierstrass_equation(g2, g3):
    # p = 1/u^2 - (log(sigma/u))'' must solve p'^2 = 4p^3 - g2 p - g3
    W = 25
    sig = oracle_as_laurent(weierstrass_oracle(g2, g3, W + 1), W + 1)
    ratio = LaurentSeries(0, sig.coeffs[1:], W)
    p = LaurentSeries.monomial(-2, Q(1), W - 2) - series_log(ratio).derivative().derivative()
    dp = p.derivative()
    res = dp * dp - (p * p * p).scale(Q(4)) + p.scale(g2) + LaurentSeries.monomial(0, g3, W)
    assert res.is_zero() and res.prec >= 10


def test_elliptic_sigma_matches_oracle(data_elliptic):
    ring = data_elliptic.curve.ring
    l00, l10 = ring.gen(0, 0), ring.gen(1, 0)
    want = weierstrass_oracle(-4 * l10, -4 * l00, 13, one=ring.one())
    sig = data_elliptic.sigma.series
    assert sig == want
    assert sig.coefficient((5,)) == l10 / 60
    assert sig.coefficient((7,)) == l00 / 210
    assert sig.coefficient((9,)) == -l10 ** 2 / 10080
    assert sig.coefficient((11,)) == -l00 * l10 / 138600


def test_elliptic_parity(data_elliptic):
    assert all(m[0] % 2 == 1 for m in data_elliptic.sigma.series.terms)


@pytest.mark.parametrize("ns,W", [((2, 3), 10), ((2, 5), 10), ((3, 4), 9)])
def test_degenerate_sigma_is_schur_in_gaps(ns, W):
    data = compute(NSCurve(*ns), W)
    gaps = data.curve.semigroup().gaps
    fam = u_family(gaps)
    images = [GradedSeries(fam, W) for _ in range(W)]
    for k, w in enumerate(gaps):
        images[w - 1] = GradedSeries.variable(fam, k, W)
    lam = data.curve.partition_ns()
    assert data.sigma.series == schur(lam, W).substitute(images, W)
    assert factorization_check(data.tau, data.sigma, data.c, data.q, data.B).passed


@pytest.mark.parametrize("fixture", ["data_23", "data_25", "data_34"])
def test_leading_term_and_homogeneity(fixture, request):
    data = request.getfixturevalue(fixture)
    sig = data.sigma.series
    lam = data.curve.partition_ns()
    assert sig.homogeneity_scan(data.curve.ring) <= {lam.weight}
    assert sig.valuation() == lam.weight
    # the lowest-weight part is s_lambda(u) with unit coefficient
    low = {m: as_constant(c) for m, c in sig.terms.items() if sig.weight(m) == lam.weight}
    degenerate = compute(NSCurve(data.curve.n, data.curve.s), lam.weight + 1).sigma.series
    assert low == {m: c for m, c in degenerate.terms.items() if degenerate.weight(m) == lam.weight}


@pytest.mark.parametrize("fixture", ["data_23", "data_25", "data_34"])
def test_factorization(fixture, request):
    data = request.getfixturevalue(fixture)
    r = factorization_check(data.tau, data.sigma, data.c, data.q, data.B)
    assert r.passed, r.counterexample
    assert r.weight_bound == data.W


def test_coordinate_change_round_trip(data_34):
    B, W = data_34.B, data_34.W
    back = t_of_u(B, W)
    fam = back[0].family
    for i, img in enumerate(u_of_t(B, W)):
        assert img.substitute(back, W) == GradedSeries.variable(fam, i, W)


def test_gauge_changes_sigma_by_gaussian():
    curve = NSCurve.symbolic(2, 5)
    ring = curve.ring
    W = 9
    base = compute(curve, W)
    # a symmetric perturbation of the gap block, homogeneous of degree w_a + w_b
    delta = {(1, 1): ring.gen(4, 0) * Q(2, 3), (1, 3): ring.gen(3, 0) * Q(-1, 2),
             (3, 1): ring.gen(3, 0) * Q(-1, 2), (3, 3): ring.gen(2, 0) * Q(5)}
    moved = compute(curve, W, gauge=delta)
    assert factorization_check(moved.tau, moved.sigma, moved.c, moved.q, moved.B).passed
    # the gap block of B is [[1, b13], [0, 1]]; C = Bg^-T delta Bg^-1
    b13 = base.B.entry(1, 3)
    D = [[delta[(1, 1)], delta[(1, 3)]], [delta[(3, 1)], delta[(3, 3)]]]
    inv = [[ring.one(), -b13], [ring.zero(), ring.one()]]
    C = [[sum((inv[k][a] * D[k][l] * inv[l][b] for k in range(2) for l in range(2)), ring.zero())
          for b in range(2)] for a in range(2)]
    fam = base.sigma.series.family
    quad = GradedSeries(fam, W, {(2, 0): C[0][0], (1, 1): C[0][1] + C[1][0], (0, 2): C[1][1]})
    gaussian = series_exp(quad.scale(Q(-1, 2)))
    assert moved.sigma.series == (base.sigma.series * gaussian).truncate(W)
    assert moved.sigma.gauge == delta
