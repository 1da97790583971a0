"""
The sigma series, obtained from tau by stripping the exponential of a
linear and a quadratic form and restricting to the gap directions.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

import flint

from .algebra import GradedSeries, series_exp, t_family, u_family
from .curve import NSCurve
from .forms import BMatrix, QHatMatrix
from .linalg import unit_upper_inverse
from .tau import CheckResult, TauSeries, _residual_report, linear_exponential


@dataclass
class SigmaSeries:
    series: GradedSeries          # in u_{w_1} .. u_{w_g}
    curve: NSCurve
    W: int
    gauge: dict


def t_of_u(B: BMatrix, W: int) -> list[GradedSeries]:
    """Images of t_1..t_W as linear forms in u: inverse of u_{w_i} = sum_j b_{i,w_j} t_{w_j}.

    Non-gap t's map to zero.
    """
    ring = B.curve.ring
    gaps = B.gaps
    fam = u_family(gaps)
    inv = unit_upper_inverse(B.gap_block(), ring.zero())
    images = [GradedSeries(fam, W) for _ in range(W)]
    g = len(gaps)
    for j in range(g):
        if gaps[j] > W:
            continue
        terms = {}
        for i in range(g):
            # u = Bg t, so t_j = sum_i (Bg^-1)_{ji} u_i
            c = inv[j][i]
            if c != 0:
                mono = [0] * g
                mono[i] = 1
                terms[tuple(mono)] = c
        images[gaps[j] - 1] = GradedSeries(fam, W, terms)
    return images


def u_of_t(B: BMatrix, W: int) -> list[GradedSeries]:
    """u_{w_i} = sum_{j <= W} b_ij t_j."""
    fam = t_family(W)
    out = []
    for i in range(1, B.g + 1):
        terms = {}
        for j in range(1, W + 1):
            c = B.entry(i, j)
            if c != 0:
                mono = [0] * W
                mono[j - 1] = 1
                terms[tuple(mono)] = c
        out.append(GradedSeries(fam, W, terms))
    return out


def prefactor(c: list, q: QHatMatrix, W: int) -> GradedSeries:
    """exp(sum c_i t_i - q_hat(t)/2) through weight W."""
    half = flint.fmpq(1, 2)
    return linear_exponential(c, W) * series_exp(-q.quadratic_form(W).scale(half))


def build_sigma(tau: TauSeries, c: list, q: QHatMatrix, B: BMatrix) -> SigmaSeries:
    W = tau.W
    if len(c) < W or B.ncols < W or q.bound < W:
        raise ValueError("differential data does not reach the weight cutoff of tau")
    lhs = prefactor(c, q, W) * tau.series
    if lhs.cutoff != W:
        raise ArithmeticError("prefactor product lost exactness")
    sig = lhs.substitute(t_of_u(B, W), W)
    return SigmaSeries(sig, tau.curve, W, dict(q.gauge))


def factorization_check(tau: TauSeries, sigma: SigmaSeries, c: list, q: QHatMatrix,
                        B: BMatrix) -> CheckResult:
    """exp(sum c t - q_hat(t)/2) tau(t) = sigma(B t) as series in t_1..t_W."""
    W = tau.W
    lhs = prefactor(c, q, W) * tau.series
    rhs = sigma.series.substitute(u_of_t(B, W), W)
    return _residual_report("factorization exp(c.t - q(t)/2) tau = sigma(Bt)",
                            lhs - rhs, W, tau.curve.ring)


def weierstrass_oracle(g2, g3, W: int, one=None) -> GradedSeries:
    """Weierstrass sigma through u^W from the classical coefficient recursion.

    sigma = sum a_{m,n} (g2/2)^m (2 g3)^n u^{4m+6n+1} / (4m+6n+1)!
    """
    one = flint.fmpq(1) if one is None else one
    a: dict = {(0, 0): flint.fmpq(1)}

    def A(m, n):
        if m < 0 or n < 0:
            return flint.fmpq(0)
        return a.get((m, n), flint.fmpq(0))

    top = W
    for deg in range(1, top + 1):
        for n in range(0, deg // 6 + 1):
            m4 = deg - 1 - 6 * n
            if m4 < 0 or m4 % 4:
                continue
            m = m4 // 4
            if (m, n) in a:
                continue
            a[(m, n)] = (3 * (m + 1) * A(m + 1, n - 1)
                         + flint.fmpq(16, 3) * (n + 1) * A(m - 2, n + 1)
                         - flint.fmpq(1, 3) * (2 * m + 3 * n - 1) * (4 * m + 6 * n - 1) * A(m - 1, n))
    fam = u_family((1,))
    terms = {}
    h2 = g2 * flint.fmpq(1, 2)
    d3 = g3 * 2
    for (m, n), v in a.items():
        k = 4 * m + 6 * n + 1
        if k > W or v == 0:
            continue
        coef = one * v * flint.fmpq(1, factorial(k))
        if m:
            coef = coef * h2 ** m
        if n:
            coef = coef * d3 ** n
        terms[(k,)] = terms[(k,)] + coef if (k,) in terms else coef
    return GradedSeries(fam, W, terms)
