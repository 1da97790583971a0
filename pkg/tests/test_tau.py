import random

import flint
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ns_sigma.algebra import GradedSeries, admissible_indices, as_constant, t_family, to_fraction
from ns_sigma.curve import NSCurve
from ns_sigma.schur import Partition, d_coefficient, schur
from ns_sigma.tau import (
    BOUSSINESQ,
    KDV,
    KP,
    HirotaOperator,
    TauSeries,
    build_tau,
    hirota_apply,
    hirota_check,
    homogeneity_check,
    kp_generating_check,
    kp_generating_coefficients,
    nontrivial_generating_operators,
    reduction_check,
    t1_restriction,
)

Q = flint.fmpq
FAM = t_family(6)


@st.composite
def polys(draw):
    terms = draw(st.dictionaries(st.tuples(*[st.integers(0, 3)] * 3 + [st.just(0)] * 3),
                                 st.integers(-4, 4), min_size=1, max_size=5))
    return GradedSeries(FAM, 100, {m: Q(c) for m, c in terms.items() if c})


def same(a, b, w=80):
    # random polynomials have weight <= 18, so nothing is lost below w
    return a.truncate(w) == b.truncate(w)


def d(f, *idx):
    for i in idx:
        f = f.derivative(i - 1)
    return f


def op(terms):
    return HirotaOperator(terms)


@settings(max_examples=30, deadline=None)
@given(polys())
def test_hirota_matches_classical_formulas(f):
    assert hirota_apply(op({(1,): 1}), f, f).is_zero()
    d11 = (f * d(f, 1, 1) - d(f, 1) * d(f, 1)).scale(2)
    assert same(hirota_apply(op({(2,): 1}), f, f), d11)
    d1111 = (f * d(f, 1, 1, 1, 1) - d(f, 1).scale(4) * d(f, 1, 1, 1) + d(f, 1, 1).scale(3) * d(f, 1, 1)).scale(2)
    assert same(hirota_apply(op({(4,): 1}), f, f), d1111)
    d13 = (f * d(f, 1, 3) - d(f, 1) * d(f, 3)).scale(2)
    assert same(hirota_apply(op({(1, 0, 1): 1}), f, f), d13)


@settings(max_examples=20, deadline=None)
@given(polys(), polys())
def test_hirota_is_antisymmetric_for_odd_operators(f, g):
    D3 = op({(0, 0, 1): 1})
    assert same(hirota_apply(D3, f, g), -hirota_apply(D3, g, f))


def test_operator_weights():
    assert KP.weight == 4 and KDV.weight == 4 and BOUSSINESQ.weight == 4
    with pytest.raises(ValueError):
        op({(1,): 1, (2,): 1}).weight


def test_kp_on_first_schur():
    s1 = schur((1,), 8)
    assert hirota_apply(KP, s1, s1).is_zero()


def test_kp_detects_non_solution():
    # 1 + s_(2,2) breaks xi_0 xi_22 - xi_1 xi_21 + xi_2 xi_11 = 0
    f = schur((), 8) + schur((2, 2), 8)
    assert not hirota_apply(KP, f, f).is_zero()


def test_generating_identity_coefficients():
    coeffs = dict(kp_generating_coefficients(3))
    assert coeffs[(1, 0, 0)].even_part().is_zero()
    y3 = coeffs[(0, 0, 1)]
    assert y3.even_part().terms == {m: c * Q(-1, 12) for m, c in KP.terms.items()}
    names = [H.name for H in nontrivial_generating_operators(4)]
    assert names == ["coefficient of y1^3", "coefficient of y1*y2", "coefficient of y3",
                     "coefficient of y1^4"]


def test_degenerate_tau_is_leading_schur():
    for ns, W in [((2, 3), 8), ((2, 5), 9), ((3, 4), 9)]:
        curve = NSCurve(*ns)
        tau = build_tau(curve, W)
        assert tau.series == schur(curve.partition_ns(), W)


def test_elliptic_tau_starts_with_t1():
    tau = build_tau(NSCurve.symbolic(2, 3), 8)
    assert tau.series.truncate(1) == GradedSeries.variable(t_family(8), 0, 8).truncate(1)
    # lambda11 has degree 1, so weight 2 is already corrected
    assert tau.series.truncate(2).homogeneity_scan(tau.curve.ring) == {1}


def test_kp_and_generating_identity(data_25):
    tau = data_25.tau
    r = hirota_check(KP, tau)
    assert r.passed and r.weight_bound == 12 + 3 - 4
    assert all(c.passed for c in kp_generating_check(tau, 4))


def test_kp_fault_injection():
    curve = NSCurve.symbolic(2, 5)
    tau = build_tau(curve, 9, pluckers={(3, 1): Q(1, 3)})
    r = hirota_check(KP, tau)
    assert not r.passed
    assert r.counterexample.startswith("t1^5")


@pytest.mark.parametrize("fixture", ["data_25", "data_23", "data_34"])
def test_reduction(fixture, request):
    data = request.getfixturevalue(fixture)
    results = reduction_check(data.tau, data.c)
    assert all(r.passed for r in results), [r for r in results if not r.passed]
    names = {r.name for r in results}
    if data.curve.n == 2:
        assert any("KdV" in x for x in names)
    else:
        assert any("Boussinesq" in x for x in names)


@pytest.mark.parametrize("fixture", ["data_25", "data_23", "data_34"])
def test_total_weight_homogeneity(fixture, request):
    assert homogeneity_check(request.getfixturevalue(fixture).tau).passed


def test_t1_restriction(data_25, data_34):
    for data in (data_25, data_34):
        lam = data.curve.partition_ns()
        r = t1_restriction(data.tau)
        assert r.valuation() == lam.weight
        lead = r.coefficient((lam.weight,) + (0,) * (data.W - 1))
        assert to_fraction(as_constant(lead)) == d_coefficient(lam)


def test_specialization_commutes_with_construction():
    rng = random.Random(11)
    for ns, W in [((2, 5), 9), ((3, 4), 8)]:
        values = {ij: Q(rng.randint(-5, 5), rng.randint(1, 4)) for ij in admissible_indices(*ns)}
        sym = build_tau(NSCurve.symbolic(*ns), W)
        num_curve = NSCurve(*ns, values)
        num = build_tau(num_curve, W)
        spec = sym.series.map_coefficients(
            lambda c: sym.curve.ring.specialize(c, values, num_curve.ring))
        assert spec == num.series


def test_residual_bound_is_honest():
    tau = build_tau(NSCurve.symbolic(2, 3), 6)
    r = hirota_check(KP, tau)
    assert r.weight_bound == 6 + 1 - 4


def test_tau_series_metadata(data_25):
    tau = data_25.tau
    assert isinstance(tau, TauSeries)
    assert tau.leading == Partition((2, 1)) and tau.pluckers[tau.leading] == 1
