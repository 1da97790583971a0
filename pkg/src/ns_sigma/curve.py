"""
(n, s)-curves  y^n = x^s + sum lambda_ij x^i y^j  (n*i + s*j < n*s).

The local parameter at infinity is z with x = z^-n and y = z^-s v(z),
v = 1 + O(z).  All expansions are exact Laurent series in z whose
coefficient of z^m has lambda-degree m (after removing the leading power).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

from .algebra import (
    LambdaRing,
    LaurentSeries,
    ONE,
    ZERO,
    admissible_indices,
    rational,
    rational_str,
)
from .schur import Partition

SYM = "sym"


class CurveError(ValueError):
    pass


@dataclass(frozen=True)
class WeierstrassSemigroup:
    genus: int
    gaps: tuple[int, ...]
    nongaps: tuple[int, ...]  # w*_1 .. w*_{g+1}; w*_i = g - 1 + i beyond

    def nongap(self, i: int) -> int:
        """w*_i, 1-based."""
        if i <= len(self.nongaps):
            return self.nongaps[i - 1]
        return self.genus - 1 + i


@dataclass(frozen=True)
class BasisMonomial:
    index: int
    m1: int
    m2: int
    order: int

    def __str__(self):
        parts = []
        if self.m1:
            parts.append("x" if self.m1 == 1 else f"x^{self.m1}")
        if self.m2:
            parts.append("y" if self.m2 == 1 else f"y^{self.m2}")
        return "*".join(parts) or "1"


class NSCurve:
    """An (n, s)-curve with symbolic and/or rational coefficients.

    ``coefficients`` maps (i, j) to ``"sym"`` or a rational; absent
    indices are zero.  Smoothness is assumed, never checked.
    """

    def __init__(self, n: int, s: int, coefficients: Mapping | None = None):
        if not (1 < n < s):
            raise CurveError(f"need 1 < n < s, got ({n},{s})")
        if math.gcd(n, s) != 1:
            raise CurveError(f"n and s must be coprime, got ({n},{s})")
        self.n, self.s = n, s
        allowed = set(admissible_indices(n, s))
        coeffs = {}
        for key, val in (coefficients or {}).items():
            ij = tuple(key)
            if ij not in allowed:
                raise CurveError(f"lambda_{ij} violates n*i + s*j < n*s, j <= n-1 for ({n},{s})")
            if isinstance(val, str) and val.strip().lower() == SYM:
                coeffs[ij] = SYM
            else:
                q = rational(val)
                if q != 0:
                    coeffs[ij] = q
        self.coefficients = dict(sorted(coeffs.items()))
        self.ring = LambdaRing(n, s, [ij for ij, v in self.coefficients.items() if v == SYM])
        self._v: LaurentSeries | None = None
        self._ex: CurveExpansions | None = None

    @classmethod
    def symbolic(cls, n: int, s: int, indices=None) -> "NSCurve":
        """All admissible parameters (or the given subset) symbolic."""
        idx = admissible_indices(n, s) if indices is None else indices
        return cls(n, s, {ij: SYM for ij in idx})

    @property
    def mode(self) -> str:
        return "symbolic" if self.ring.nvars else "numeric"

    def lam(self, i: int, j: int):
        """The coefficient lambda_ij as an element of the parameter ring."""
        v = self.coefficients.get((i, j))
        if v is None:
            return self.ring.zero()
        if v == SYM:
            return self.ring.gen(i, j)
        return self.ring.coerce(v)

    def spec(self) -> dict:
        """Canonical JSON-able description (used for caching and output headers)."""
        return {
            "n": self.n,
            "s": self.s,
            "lambda": {f"{i},{j}": (v if v == SYM else rational_str(v))
                       for (i, j), v in self.coefficients.items()},
        }

    def __repr__(self):
        return f"NSCurve({self.n}, {self.s}, {self.spec()['lambda']})"

    def param_degree(self, i: int, j: int) -> int:
        return self.n * self.s - self.n * i - self.s * j

    # -- combinatorics -----------------------------------------------------

    @property
    def genus(self) -> int:
        return (self.n - 1) * (self.s - 1) // 2

    def semigroup(self) -> WeierstrassSemigroup:
        return semigroup(self.n, self.s)

    def basis_monomials(self, count: int) -> list[BasisMonomial]:
        return basis_monomials(self.n, self.s, count)

    def partition_ns(self) -> Partition:
        return partition_ns(self.n, self.s)

    # -- local expansions at infinity ---------------------------------------

    def v_expansion(self, order: int) -> LaurentSeries:
        """v(z) with y = z^-s v, exact through z^order (Newton lifting)."""
        if order < 0:
            raise ValueError("order must be nonnegative")
        if self._v is not None and self._v.prec >= order:
            return self._v.truncate(order)
        n = self.n
        terms = [(self.param_degree(i, j), j, self.lam(i, j)) for (i, j) in self.coefficients]
        v = LaurentSeries(0, [ONE], 0)
        prec = 0
        while prec < order:
            target = min(2 * prec + 1, order)
            vv = LaurentSeries(0, v.coeffs, target)
            vpow = [LaurentSeries(0, [ONE], target)]
            for _ in range(n):
                vpow.append(vpow[-1] * vv)
            F = vpow[n] - LaurentSeries(0, [ONE], target)
            dF = vpow[n - 1].scale(n)
            for d, j, c in terms:
                if d > target:
                    continue
                F = F - vpow[j].shift(d).truncate(target).scale(c)
                if j:
                    dF = dF - vpow[j - 1].shift(d).truncate(target).scale(c * j)
            v = vv - F * dF.reciprocal()
            if v.prec < target:
                raise RuntimeError("Newton step lost precision")
            v = v.truncate(target)
            prec = target
        self._v = v
        return v

    def expansions(self, order: int) -> "CurveExpansions":
        """Expansions exact at least through ``order`` (memoized, possibly deeper)."""
        if self._ex is None or self._ex.order < order:
            self._ex = CurveExpansions(self, order)
        return self._ex

    def y_expansion(self, N: int) -> LaurentSeries:
        """y(z) exact through z^N."""
        return self.v_expansion(max(N + self.s, 0)).shift(-self.s).truncate(N)

    def expand_monomial(self, m1: int, m2: int, N: int) -> LaurentSeries:
        """x^m1 y^m2 exact through z^N."""
        if not 0 <= m2 < self.n:
            raise CurveError("monomial exponent of y must satisfy 0 <= m2 < n")
        order = self.n * m1 + self.s * m2
        if N + order < 0:
            return LaurentSeries.zero(N)
        v = self.v_expansion(N + order)
        return (v ** m2).truncate(N + order).shift(-order)

    def f_y_expansion(self, N: int) -> LaurentSeries:
        """df/dy on the local parametrization, exact through z^N."""
        return self.expansions(N + self.s * (self.n - 1)).f_y.truncate(N)

    def residual(self, N: int) -> LaurentSeries:
        """f(z^-n, y(z)) * z^(ns): identically zero through z^N when v is right."""
        v = self.v_expansion(N)
        out = v ** self.n - LaurentSeries(0, [ONE], N)
        for (i, j) in self.coefficients:
            d = self.param_degree(i, j)
            if d <= N:
                out = out - (v ** j).shift(d).truncate(N).scale(self.lam(i, j))
        return out


class CurveExpansions:
    """Memoized z-expansions derived from v known through ``order``.

    Each derived series carries the precision that ``order`` supports.
    """

    def __init__(self, curve: NSCurve, order: int):
        self.curve = curve
        self.order = order
        self.v = curve.v_expansion(order)
        n, s = curve.n, curve.s
        self._vpow = [LaurentSeries(0, [ONE], order)]
        for _ in range(n):
            self._vpow.append(self._vpow[-1] * self.v)
        # y^j = z^{-sj} v^j
        self.ypow = [self._vpow[j].shift(-s * j) for j in range(n + 1)]
        fy = self.ypow[n - 1].scale(n)
        for (i, j) in curve.coefficients:
            if j >= 1:
                fy = fy - self.ypow[j - 1].shift(-n * i).scale(curve.lam(i, j) * j)
        self.f_y = fy
        self.inv_f_y = fy.reciprocal()
        # dx / f_y as a multiple of dz
        self.dx_over_fy = self.inv_f_y * LaurentSeries(-n - 1, [rational(-n)], self.inv_f_y.prec)

    def monomial(self, m1: int, m2: int) -> LaurentSeries:
        return self.ypow[m2].shift(-self.curve.n * m1)


# ---------------------------------------------------------------------------
# combinatorial data depending only on (n, s)
# ---------------------------------------------------------------------------

def _check_ns(n, s):
    if not (1 < n < s) or math.gcd(n, s) != 1:
        raise CurveError(f"(n,s) = ({n},{s}) must be coprime with 1 < n < s")


def genus(n: int, s: int) -> int:
    _check_ns(n, s)
    return (n - 1) * (s - 1) // 2


def semigroup(n: int, s: int) -> WeierstrassSemigroup:
    g = genus(n, s)
    limit = 2 * g + 1
    reachable = [False] * (limit + 1)
    for a in range(limit // n + 1):
        for b in range(limit // s + 1):
            k = n * a + s * b
            if k <= limit:
                reachable[k] = True
    gaps = tuple(k for k in range(2 * g) if not reachable[k])
    nongaps = tuple(k for k in range(limit + 1) if reachable[k])[: g + 1]
    if len(gaps) != g:
        raise RuntimeError("gap count differs from genus")
    return WeierstrassSemigroup(g, gaps, nongaps)


def basis_monomials(n: int, s: int, count: int) -> list[BasisMonomial]:
    """The first ``count`` monomials x^m1 y^m2 (m2 < n) by increasing pole order."""
    _check_ns(n, s)
    if count < 1:
        raise ValueError("count must be positive")
    bound = n * count + s * n
    mons = []
    for m2 in range(n):
        for m1 in range(bound // n + 1):
            o = n * m1 + s * m2
            if o <= bound:
                mons.append((o, m1, m2))
    mons.sort()
    return [BasisMonomial(k + 1, m1, m2, o) for k, (o, m1, m2) in enumerate(mons[:count])]


def partition_ns(n: int, s: int) -> Partition:
    """lambda(n,s) = (w_g, ..., w_1) - (g-1, ..., 0)."""
    sg = semigroup(n, s)
    g = sg.genus
    return Partition(w - (g - 1 - k) for k, w in enumerate(reversed(sg.gaps)))
