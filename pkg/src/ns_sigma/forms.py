"""
Differentials at infinity: the holomorphic basis du_{w_i}, the normalizing
constants c_i, the fundamental bidifferential and its coefficients q_hat,
the second-kind differentials dr_i, and the residue pairing.

A one-form h(z) dz is represented by the LaurentSeries h.  The two-point
form is expanded in the region |z1| < |z2|.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import (
    BiSeries,
    GradedSeries,
    LaurentSeries,
    ONE,
    TruncationError,
    series_log,
    series_sqrt,
    t_family,
)
from .curve import NSCurve
from .linalg import unit_upper_inverse


class FormError(ArithmeticError):
    pass


# ---------------------------------------------------------------------------
# expansions of f_k dx/f_y
# ---------------------------------------------------------------------------

class FormExpander:
    """Expansions of monomials and of f_k dx/f_y through z^prec."""

    def __init__(self, curve: NSCurve, prec: int, max_order: int):
        self.curve = curve
        self.prec = prec
        g = curve.genus
        order = max(prec + max_order + 2, prec + max_order - 2 * g + 2, 1)
        self.ex = curve.expansions(order)
        self._basis = {b.index: b for b in curve.basis_monomials(max(self._index_bound(max_order), 1))}

    def _index_bound(self, max_order: int) -> int:
        sg = self.curve.semigroup()
        k = 1
        while sg.nongap(k + 1) <= max_order:
            k += 1
        return k

    def basis(self, k: int):
        if k not in self._basis:
            more = self.curve.basis_monomials(k)
            self._basis.update({b.index: b for b in more})
        return self._basis[k]

    def monomial(self, m1: int, m2: int, prec: int) -> LaurentSeries:
        return self.ex.monomial(m1, m2).truncate(prec)

    def form(self, k: int, prec: int | None = None) -> LaurentSeries:
        """f_k dx/f_y divided by dz."""
        prec = self.prec if prec is None else prec
        b = self.basis(k)
        return (self.ex.monomial(b.m1, b.m2) * self.ex.dx_over_fy).truncate(prec)


# ---------------------------------------------------------------------------
# holomorphic data
# ---------------------------------------------------------------------------

@dataclass
class BMatrix:
    """b_ij with du_{w_i} = sum_j b_ij z^{j-1} dz, 1 <= i <= g, 1 <= j <= ncols."""

    curve: NSCurve
    rows: list[list]        # rows[i-1][j-1]
    gaps: tuple[int, ...]

    @property
    def g(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def entry(self, i: int, j: int):
        if j > self.ncols:
            raise TruncationError(f"b_{i},{j} beyond column bound {self.ncols}")
        if j < 1:
            return self.curve.ring.zero()
        return self.rows[i - 1][j - 1]

    def gap_block(self) -> list[list]:
        """Matrix (b_{i, w_j}), unit upper triangular."""
        return [[self.entry(i, w) for w in self.gaps] for i in range(1, self.g + 1)]


def holomorphic_forms(curve: NSCurve, prec: int) -> list[LaurentSeries]:
    """du_{w_1}, ..., du_{w_g} through z^prec."""
    g = curve.genus
    if g == 0:
        return []
    sg = curve.semigroup()
    exp = FormExpander(curve, prec, sg.nongap(g))
    out = []
    for i in range(1, g + 1):
        du = -exp.form(g + 1 - i)
        w = sg.gaps[i - 1]
        if du.valuation() != w - 1 or du.coefficient(w - 1) != 1:
            raise FormError(f"du_{w} does not start with z^{w - 1} dz")
        out.append(du)
    return out


def holomorphic_basis(curve: NSCurve, W: int) -> BMatrix:
    du = holomorphic_forms(curve, W - 1)
    rows = [[d.coefficient(j - 1) for j in range(1, W + 1)] for d in du]
    rows = [[curve.ring.coerce(x) for x in r] for r in rows]
    return BMatrix(curve, rows, curve.semigroup().gaps)


def log_sqrt_coefficients(curve: NSCurve, W: int) -> list:
    """[e_1, ..., e_W] with log z^{-(g-1)} sqrt(du_{w_g}/dz) = sum e_i z^i."""
    g = curve.genus
    if g == 0:
        return [curve.ring.zero()] * W
    du = holomorphic_forms(curve, W + 2 * g - 2)[-1]
    h = du.shift(-(2 * g - 2)).truncate(W)
    logs = series_log(series_sqrt(h))
    if logs.coefficient(0) != 0:
        raise FormError("constant term of the c-series is not zero")
    return [curve.ring.coerce(logs.coefficient(i)) for i in range(1, W + 1)]


def c_coefficients(curve: NSCurve, W: int) -> list:
    """[c_1, ..., c_W] with sum c_i z^i / i = log z^{-(g-1)} sqrt(du_{w_g}/dz).

    The 1/i matches the shift t -> t + [z] in the wave function, so that
    exp(sum c_i t_i) tau(t) is free of every t_{nk}.
    """
    return [e * i for i, e in enumerate(log_sqrt_coefficients(curve, W), start=1)]


# ---------------------------------------------------------------------------
# the two-point form
# ---------------------------------------------------------------------------

def omega_form(curve: NSCurve, N1: int, N2: int, total: int | None = None) -> BiSeries:
    """d_{p2} Omega(p1, p2) / (dz1 dz2) in the region |z1| < |z2|.

    Exact for z1^a z2^b with a <= N1, b <= N2 and, if given, a + b <= total.
    """
    n, s = curve.n, curve.s
    g = curve.genus
    mmax = max((N1 + n + 1) // n, 0)
    vals = [2 * g - 2 - s * i for i in range(n)]        # valuation of y^i dx/f_y

    def b_bound(i, m):
        hi = N2
        if total is not None:
            hi = min(hi, total - vals[i] - n * (m + 1))
        return hi

    p_prec = max(b_bound(i, m) + 1 + n * m for i in range(n) for m in range(mmax + 1))
    max_pole = n * max([k for (k, _) in curve.coefficients] + [0]) + s * (n - 1)
    exp = FormExpander(curve, max(p_prec, N1 + s * (n - 1)), max_pole)
    ex = exp.ex
    a_series = [(ex.ypow[i] * ex.dx_over_fy).truncate(N1) for i in range(n)]
    # [f(x2, w) / w^{i+1}]_+ evaluated at w = y2
    polys = []
    for i in range(n):
        p = exp.monomial(0, n - 1 - i, p_prec)
        for (k, l) in curve.coefficients:
            if l >= i + 1:
                p = p - exp.monomial(k, l - i - 1, p_prec).scale(curve.lam(k, l))
        polys.append(p)
    terms: dict = {}
    for i in range(n):
        A = a_series[i]
        for m in range(mmax + 1):
            shift = n * (m + 1)
            if A.val + shift > N1:
                break
            hi = b_bound(i, m)
            D = polys[i].truncate(hi + 1 + n * m).shift(-n * m).derivative()
            d_items = list(D.items())
            for a0, ca in A.items():
                a = a0 + shift
                if a > N1:
                    break
                for b, cb in d_items:
                    if total is not None and a + b > total:
                        break
                    key = (a, b)
                    terms[key] = terms.get(key, 0) + ca * cb
    return BiSeries(terms, N1, N2, total)


# ---------------------------------------------------------------------------
# second-kind differentials and q_hat
# ---------------------------------------------------------------------------

@dataclass
class SecondKindForm:
    index: int                     # pairs with du_{w_index}
    coefficients: dict             # basis index k -> coefficient of f_k dx/f_y
    series: LaurentSeries          # the form divided by dz


@dataclass
class QHatMatrix:
    curve: NSCurve
    entries: dict                  # (i, j) -> polynomial, known for i + j <= bound
    bound: int
    gauge: dict = field(default_factory=dict)   # (w_i, w_j) -> gap-block value

    def entry(self, i: int, j: int):
        if i < 1 or j < 1 or i + j > self.bound:
            raise TruncationError(f"q_hat_{i},{j} unknown (known for i + j <= {self.bound})")
        return self.entries.get((i, j), self.curve.ring.zero())

    def is_symmetric(self) -> bool:
        return all(self.entry(i, j) == self.entry(j, i)
                   for i in range(1, self.bound) for j in range(i + 1, self.bound - i + 1))

    def quadratic_form(self, W: int) -> GradedSeries:
        """sum_{i+j <= W} q_ij t_i t_j in t_1..t_W."""
        terms = {}
        for (i, j), c in self.entries.items():
            if i + j > W or c == 0:
                continue
            mono = [0] * W
            mono[i - 1] += 1
            mono[j - 1] += 1
            key = tuple(mono)
            terms[key] = terms.get(key, 0) + c
        if W > self.bound:
            raise TruncationError("q_hat too small for the requested weight")
        return GradedSeries(t_family(W), W, terms)


def gauge_descriptor(q: QHatMatrix) -> dict:
    ring = q.curve.ring
    return {"gap_block": {f"{a},{b}": ring.to_json(v) for (a, b), v in sorted(q.gauge.items())}}


def validate_gauge(curve: NSCurve, gauge: dict | None) -> dict:
    gaps = curve.semigroup().gaps
    out = {}
    for (a, b), v in (gauge or {}).items():
        if a not in gaps or b not in gaps:
            raise ValueError(f"gauge entry ({a},{b}) is not a pair of gaps {list(gaps)}")
        out[(a, b)] = curve.ring.coerce(v)
    for (a, b), v in out.items():
        if out.get((b, a), curve.ring.zero()) != v:
            raise ValueError("gauge block must be symmetric")
    return out


def solve_dr(curve: NSCurve, W: int, gauge: dict | None = None):
    """Second-kind forms dr_1..dr_g and q_hat_ij for i + j <= max(W, 4g - 2).

    ``gauge`` prescribes the gap block (q_hat_{w_i, w_j}); default zero.
    """
    g = curve.genus
    ring = curve.ring
    gauge = validate_gauge(curve, gauge)
    sg = curve.semigroup()
    gaps = sg.gaps
    N = max(W - 2, 4 * g - 4, 0)
    if g == 0:
        return [], QHatMatrix(curve, {}, N + 2, gauge)
    B = holomorphic_basis(curve, N + 1)
    E = omega_form(curve, N, N, total=N) - BiSeries.diagonal_kernel(N, N)

    # polar parts of dr_i from the negative z2 powers of E
    rho = [dict() for _ in range(g)]
    for b in E.polar_exponents():
        vals = []
        for j in range(g):
            acc = -E.coefficient(gaps[j] - 1, b)
            for i in range(j):
                acc = acc - B.entry(i + 1, gaps[j]) * vals[i]
            vals.append(acc)
        for a in range(-1, N + 1):
            tot = E.coefficient(a, b)
            for i in range(g):
                tot = tot + B.entry(i + 1, a + 1) * vals[i]
            if tot != 0:
                raise FormError("no symmetric fundamental form in ansatz")
        for i in range(g):
            if vals[i] != 0:
                rho[i][b] = vals[i]

    # build each dr_i^0 from the non-holomorphic forms h_p (pole order p)
    pmax = max([-b for r in rho for b in r] + [2])
    exp = FormExpander(curve, N, pmax + 2 * g - 2)
    h = {p: exp.form(p + g - 1) for p in range(2, pmax + 1)}
    for p, hp in h.items():
        if hp.valuation() != -p or hp.coefficient(-p) != -1:
            raise FormError(f"h_{p} has unexpected leading term")
    dr0, coeffs0 = [], []
    for i in range(g):
        w = gaps[i]
        if rho[i].get(-1, 0) != 0:
            raise FormError("second-kind form would carry a residue")
        if rho[i] and min(rho[i]) < -(w + 1):
            raise FormError(f"dr_{i + 1} exceeds the pole-order bound {w + 1}")
        S = LaurentSeries.zero(N)
        coeff = {}
        for p in range(pmax, 1, -1):
            beta = S.coefficient(-p) - rho[i].get(-p, 0)
            if beta != 0:
                S = S + h[p].scale(beta)
                coeff[p + g - 1] = beta
        for b in range(S.val, 0):
            if S.coefficient(b) != rho[i].get(b, 0):
                raise FormError("polar part of dr_i does not match")
        dr0.append(S)
        coeffs0.append(coeff)

    # regular part before fixing the holomorphic freedom
    q0 = {}
    for a in range(0, N + 1):
        for b in range(0, N + 1 - a):
            v = E.coefficient(a, b)
            for i in range(g):
                v = v + B.entry(i + 1, a + 1) * dr0[i].coefficient(b)
            q0[(a + 1, b + 1)] = ring.coerce(v)

    # C = Bg^{-T} (G - Q0_gap) Bg^{-1}
    Bg = B.gap_block()
    Binv = unit_upper_inverse(Bg, ring.zero())
    X = [[gauge.get((gaps[r], gaps[c]), ring.zero()) - q0[(gaps[r], gaps[c])]
          for c in range(g)] for r in range(g)]
    XB = [[sum((X[r][k] * Binv[k][c] for k in range(g)), ring.zero()) for c in range(g)] for r in range(g)]
    C = [[sum((Binv[k][r] * XB[k][c] for k in range(g)), ring.zero()) for c in range(g)] for r in range(g)]

    du = holomorphic_forms(curve, N)
    forms = []
    for i in range(g):
        S = dr0[i]
        coeff = dict(coeffs0[i])
        for k in range(g):
            if C[i][k] != 0:
                S = S + du[k].scale(C[i][k])
                idx = g - k        # du_{w_{k+1}} = -f_{g-k} dx/f_y
                coeff[idx] = coeff.get(idx, ring.zero()) - C[i][k]
        forms.append(SecondKindForm(i + 1, {k: v for k, v in sorted(coeff.items()) if v != 0}, S))

    entries = {}
    for (a, b), v in q0.items():
        for i in range(g):
            bi = B.entry(i + 1, a)
            if bi == 0:
                continue
            for k in range(g):
                if C[i][k] != 0:
                    v = v + bi * C[i][k] * B.entry(k + 1, b)
        if v != 0:
            entries[(a, b)] = v
    q = QHatMatrix(curve, entries, N + 2, gauge)
    if not q.is_symmetric():
        raise FormError("no symmetric fundamental form in ansatz")
    return forms, q


# ---------------------------------------------------------------------------
# pairing
# ---------------------------------------------------------------------------

def pairing(omega: LaurentSeries, eta: LaurentSeries):
    """omega o eta = Res_{z=0} (integral of omega) * eta."""
    return (omega.integrate_no_log() * eta).residue()


def exact_form(k: int, prec: int) -> LaurentSeries:
    """d(z^-k) divided by dz; for k = n*m this is d(x^m)."""
    return LaurentSeries(-k - 1, [-k * ONE], prec)
