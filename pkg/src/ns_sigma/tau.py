"""
The Schur expansion of the tau function of the affine ring, Hirota bilinear
operators, and the checks run against it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

import flint

from .algebra import GradedSeries, series_exp, t_family
from .curve import NSCurve
from .frame import build_frame, plucker_many
from .schur import Partition, enumerate_superpartitions, schur


@dataclass
class TauSeries:
    series: GradedSeries
    curve: NSCurve
    W: int
    leading: Partition
    pluckers: dict               # Partition -> xi_mu


def build_tau(curve: NSCurve, W: int, jobs: int = 1, pluckers: dict | None = None) -> TauSeries:
    """tau = sum over mu containing lambda(n,s), |mu| <= W, of xi_mu s_mu(t).

    ``pluckers`` overrides individual coordinates (used for fault injection).
    """
    lam = curve.partition_ns()
    parts = enumerate_superpartitions(lam, W)
    frame = build_frame(curve, W)
    xi = plucker_many(frame, parts, W, jobs=jobs)
    if pluckers:
        for mu, v in pluckers.items():
            xi[Partition(mu)] = curve.ring.coerce(v)
    fam = t_family(W)
    terms: dict = {}
    for mu in parts:
        c = xi[mu]
        if c == 0:
            continue
        for m, x in schur(mu, W).terms.items():
            v = c * x
            terms[m] = terms[m] + v if m in terms else v
    return TauSeries(GradedSeries(fam, W, terms), curve, W, lam, xi)


# ---------------------------------------------------------------------------
# Hirota operators
# ---------------------------------------------------------------------------

class HirotaOperator:
    """A polynomial sum_M a_M D^M in the Hirota symbols D_1, D_2, ..."""

    def __init__(self, terms: dict, name: str = ""):
        clean = {}
        for mono, c in terms.items():
            mono = tuple(int(e) for e in mono)
            while mono and mono[-1] == 0:
                mono = mono[:-1]
            c = flint.fmpq(c) if not isinstance(c, flint.fmpq) else c
            if c != 0:
                clean[mono] = clean.get(mono, flint.fmpq(0)) + c
        self.terms = {m: c for m, c in clean.items() if c != 0}
        self.name = name

    @staticmethod
    def monomial_weight(mono) -> int:
        return sum((i + 1) * e for i, e in enumerate(mono))

    def weights(self) -> set[int]:
        return {self.monomial_weight(m) for m in self.terms}

    @property
    def weight(self) -> int:
        ws = self.weights()
        if len(ws) != 1:
            raise ValueError(f"operator {self} is not weight-homogeneous")
        return ws.pop()

    def even_part(self) -> "HirotaOperator":
        """Drop monomials of odd total degree (they vanish on f.f)."""
        return HirotaOperator({m: c for m, c in self.terms.items() if sum(m) % 2 == 0}, self.name)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, HirotaOperator) and self.terms == other.terms

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items(), key=lambda mc: (self.monomial_weight(mc[0]), mc[0])):
            mon = "*".join(f"D{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(m) if e)
            parts.append(f"({c})*{mon or '1'}")
        return " + ".join(parts)

    __repr__ = __str__


KP = HirotaOperator({(4,): 1, (0, 2): 3, (1, 0, 1): -4}, "KP")
KDV = HirotaOperator({(4,): 1, (1, 0, 1): -4}, "KdV")
BOUSSINESQ = HirotaOperator({(4,): 1, (0, 2): 3}, "Boussinesq")


def _derivative(f: GradedSeries, mono, cache: dict) -> GradedSeries:
    mono = tuple(mono)
    if mono in cache:
        return cache[mono]
    if not any(mono):
        cache[mono] = f
        return f
    k = max(i for i, e in enumerate(mono) if e)
    prev = list(mono)
    prev[k] -= 1
    out = _derivative(f, prev, cache).derivative(k)
    cache[mono] = out
    return out


def hirota_apply(H: HirotaOperator, f: GradedSeries, g: GradedSeries) -> GradedSeries:
    """H(D) f.g = sum_M a_M sum_K prod C(m_i, k_i) (-1)^{|M-K|} d^K f d^{M-K} g."""
    if f.family != g.family:
        raise ValueError("operands live in different variable families")
    cf: dict = {}
    cg: dict = cf if f is g else {}
    products: dict = {}
    total = None
    for M, a in H.terms.items():
        for K in itertools.product(*(range(m + 1) for m in M)):
            L = tuple(m - k for m, k in zip(M, K))
            coef = a * ((-1) ** sum(L))
            for m, k in zip(M, K):
                coef *= comb(m, k)
            key = (K, L)
            if f is g:
                key = min((K, L), (L, K))
            if key not in products:
                products[key] = _derivative(f, key[0], cf) * _derivative(g, key[1], cg)
            term = products[key].scale(coef)
            total = term if total is None else total + term
    if total is None:
        return GradedSeries(f.family, min(f.cutoff, g.cutoff))
    return total


@dataclass
class CheckResult:
    name: str
    weight_bound: int
    passed: bool
    counterexample: str | None = None

    def to_dict(self) -> dict:
        return {"check": self.name, "weight_bound": self.weight_bound,
                "passed": self.passed, "counterexample": self.counterexample}


def _residual_report(name: str, res: GradedSeries, bound: int, ring=None) -> CheckResult:
    if res.cutoff < bound:
        raise ArithmeticError(f"{name}: residual known through {res.cutoff} < claimed bound {bound}")
    res = res.truncate(bound)
    mono = res.first_nonzero()
    if mono is None:
        return CheckResult(name, bound, True)
    c = res.terms[mono]
    cs = ring.format(c) if ring is not None else str(c)
    return CheckResult(name, bound, False, f"{res.family.format_monomial(mono)}: {cs}")


def hirota_check(H: HirotaOperator, tau: TauSeries, name: str | None = None) -> CheckResult:
    """H tau.tau = 0 through W + |lambda(n,s)| - weight(H)."""
    bound = tau.W + tau.leading.weight - H.weight
    res = hirota_apply(H, tau.series, tau.series)
    return _residual_report(name or f"hirota {H.name}", res, bound, tau.curve.ring)


# ---------------------------------------------------------------------------
# the generating identity sum_j p_j(-2y) p_{j+1}(D~) exp(sum y_l D_l)
# ---------------------------------------------------------------------------

def _elementary_p(args: list, top: int, ctx):
    """p_0..p_top of the given arguments, from j p_j = sum_i i a_i p_{j-i}."""
    ps = [ctx.constant(1)]
    for j in range(1, top + 1):
        acc = ctx.from_dict({})
        for i in range(1, min(j, len(args)) + 1):
            acc += args[i - 1] * ps[j - i] * i
        ps.append(acc / j)
    return ps


def _y_weight(mono, Y):
    return sum((l + 1) * e for l, e in enumerate(mono[:Y]))


def kp_generating_coefficients(max_weight: int) -> list[tuple[tuple, HirotaOperator]]:
    """(y-exponents, Hirota operator) for every y-monomial of weight <= max_weight.

    Ordered by weight, then reverse lexicographically on the exponents.
    """
    Y = max_weight
    names = [f"y{l}" for l in range(1, Y + 1)] + [f"D{l}" for l in range(1, Y + 2)]
    ctx = flint.fmpq_mpoly_ctx.get(tuple(names), "lex")
    gens = ctx.gens()
    ys, Ds = gens[:Y], gens[Y:]

    def cut(p):
        return ctx.from_dict({m: c for m, c in p.to_dict().items() if _y_weight(m, Y) <= Y})

    X = sum((ys[l] * Ds[l] for l in range(Y)), ctx.from_dict({}))
    expo = ctx.constant(1)
    term = ctx.constant(1)
    for k in range(1, Y + 1):
        term = cut(term * X) / k
        expo += term
    p_y = _elementary_p([-2 * y for y in ys], Y, ctx)
    p_d = _elementary_p([Ds[i] / (i + 1) for i in range(Y + 1)], Y + 1, ctx)
    gen = ctx.from_dict({})
    for j in range(Y + 1):
        gen += cut(p_y[j] * p_d[j + 1] * expo)
    gen = cut(gen)
    grouped: dict = {}
    for m, c in gen.to_dict().items():
        ym, dm = tuple(m[:Y]), tuple(m[Y:])
        grouped.setdefault(ym, {})
        grouped[ym][dm] = grouped[ym].get(dm, 0) + c
    out = []
    for ym in sorted(grouped, key=lambda m: (_y_weight(m, Y), tuple(-e for e in m))):
        if not any(ym):
            continue
        name = "*".join(f"y{l + 1}" + (f"^{e}" if e > 1 else "") for l, e in enumerate(ym) if e)
        out.append((ym, HirotaOperator(grouped[ym], f"coefficient of {name}")))
    return out


def nontrivial_generating_operators(count: int) -> list[HirotaOperator]:
    """The first ``count`` coefficient operators with a nonzero even part."""
    w = 1
    while True:
        ops = [H.even_part() for _, H in kp_generating_coefficients(w)]
        ops = [H for H in ops if not H.is_zero()]
        if len(ops) >= count:
            return ops[:count]
        w += 1


def kp_generating_check(tau: TauSeries, count: int) -> list[CheckResult]:
    if count < 1:
        raise ValueError("count must be at least 1")
    return [hirota_check(H, tau, f"generating identity, {H.name}")
            for H in nontrivial_generating_operators(count)]


# ---------------------------------------------------------------------------
# reduction and homogeneity
# ---------------------------------------------------------------------------

def linear_exponential(c: list, W: int) -> GradedSeries:
    """exp(sum_i c_i t_i) in t_1..t_W."""
    fam = t_family(W)
    lin = GradedSeries(fam, W)
    for i, ci in enumerate(c[:W], start=1):
        if ci != 0:
            lin = lin + GradedSeries.variable(fam, i - 1, W, ci)
    return series_exp(lin)


def reduction_check(tau: TauSeries, c: list) -> list[CheckResult]:
    """(d/dt_{nk} + c_{nk}) tau = 0 and the reduced bilinear equation."""
    n, W = tau.curve.n, tau.W
    if len(c) < W:
        raise ValueError("need c_1..c_W")
    ring = tau.curve.ring
    out = []
    for nk in range(n, W + 1, n):
        d = tau.series.derivative(nk - 1)
        res = d + tau.series.truncate(W - nk).scale(c[nk - 1])
        out.append(_residual_report(f"reduction d/dt{nk} + c{nk}", res, W - nk, ring))
    phi = linear_exponential(c, W) * tau.series
    phi = phi.set_zero(range(n - 1, W, n))
    H = {2: KDV, 3: BOUSSINESQ}.get(n)
    if H is not None:
        red = TauSeries(phi, tau.curve, phi.cutoff, tau.leading, tau.pluckers)
        out.append(hirota_check(H, red, f"hirota {H.name} on exp(c.t) tau"))
    return out


def homogeneity_check(tau: TauSeries) -> CheckResult:
    found = tau.series.homogeneity_scan(tau.curve.ring)
    target = tau.leading.weight
    bad = sorted(found - {target})
    if not bad:
        return CheckResult("tau total-weight homogeneity", tau.W, True)
    for m, c in tau.series.sorted_terms():
        w = tau.series.weight(m)
        if any(w - d != target for d in tau.curve.ring.degree_set(c)):
            return CheckResult("tau total-weight homogeneity", tau.W, False,
                               f"{tau.series.family.format_monomial(m)}: {tau.curve.ring.format(c)}")
    return CheckResult("tau total-weight homogeneity", tau.W, False, str(bad))


def t1_restriction(tau: TauSeries) -> GradedSeries:
    """tau(t_1, 0, 0, ...)."""
    return tau.series.set_zero(range(1, tau.W))
