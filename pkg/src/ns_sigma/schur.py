"""Partitions, Maya (rho) sequences, the polynomials p_j and Schur functions."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import flint

from .algebra import GradedSeries, t_family
from .linalg import det_cofactor


class Partition(tuple):
    """A weakly decreasing tuple of positive integers; () is the empty partition."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def part(self, i: int) -> int:
        """lambda_i with 1-based i; zero beyond the length."""
        return self[i - 1] if i <= len(self) else 0

    def contains(self, other: "Partition") -> bool:
        """True if self_i >= other_i for every i."""
        if len(other) > len(self):
            return False
        return all(a >= b for a, b in zip(self, other))

    def rho(self) -> "RhoSequence":
        return rho_from_partition(self)

    def sort_key(self):
        return (self.weight, tuple(-p for p in self))

    def __repr__(self):
        return f"Partition({tuple(self)})"


class RhoSequence:
    """Strictly decreasing rho(-1) > rho(-2) > ... with rho(-i) = -i eventually.

    Stored as the head (rho(-1), ..., rho(-k)); beyond k the tail is the
    identity.
    """

    __slots__ = ("head",)

    def __init__(self, head: Sequence[int]):
        head = list(head)
        while head and head[-1] == -len(head):
            head.pop()
        vals = head + [-len(head) - 1]
        if any(vals[i] <= vals[i + 1] for i in range(len(vals) - 1)):
            raise ValueError(f"rho must be strictly decreasing with identity tail: {head}")
        self.head = tuple(head)

    def __call__(self, i: int) -> int:
        if i >= 0:
            raise IndexError("rho is indexed by negative integers")
        k = -i
        return self.head[k - 1] if k <= len(self.head) else i

    def values(self, count: int) -> list[int]:
        return [self(-k) for k in range(1, count + 1)]

    def __eq__(self, other):
        return isinstance(other, RhoSequence) and self.head == other.head

    def __hash__(self):
        return hash(self.head)

    def __repr__(self):
        return f"RhoSequence({list(self.head)} + identity tail)"


def partition_from_rho(rho: RhoSequence) -> Partition:
    return Partition(rho(-i) + i for i in range(1, len(rho.head) + 1))


def rho_from_partition(lam: Sequence[int]) -> RhoSequence:
    lam = Partition(lam)
    return RhoSequence([lam.part(i) - i for i in range(1, len(lam) + 1)])


# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _t_ctx(m: int):
    return flint.fmpq_mpoly_ctx.get(tuple(f"t{i}" for i in range(1, m + 1)), "lex")


@lru_cache(maxsize=None)
def _p_polys(m: int, top: int) -> tuple:
    """p_0..p_top as flint polynomials in t_1..t_m (exact, untruncated)."""
    ctx = _t_ctx(m)
    gens = ctx.gens()
    ps = [ctx.constant(1)]
    for j in range(1, top + 1):
        acc = ctx.from_dict({})
        for i in range(1, min(j, m) + 1):
            acc += gens[i - 1] * ps[j - i] * i
        ps.append(acc / j)
    return tuple(ps)


def _to_series(poly, m: int, cutoff: int) -> GradedSeries:
    return GradedSeries(t_family(m), cutoff,
                        {tuple(int(e) for e in k): v for k, v in poly.to_dict().items()})


def p_polynomials(m: int, w: int) -> list[GradedSeries]:
    """p_0..p_w in t_1..t_m, from exp(sum t_i k^i) = sum p_j k^j."""
    if m < w:
        raise ValueError("need at least as many variables as the weight cutoff")
    return [_to_series(p, m, w) for p in _p_polys(m, w)]


@lru_cache(maxsize=None)
def schur_poly(lam: tuple, m: int):
    """Jacobi-Trudi determinant det(p_{lam_i - i + j}) as a flint polynomial."""
    lam = Partition(lam)
    ell = len(lam)
    ctx = _t_ctx(m)
    if ell == 0:
        return ctx.constant(1)
    top = lam[0] + ell
    ps = _p_polys(m, top)
    zero = ctx.from_dict({})
    mat = [[ps[k] if 0 <= (k := lam[i] - i + j) <= top else zero
            for j in range(ell)] for i in range(ell)]
    return det_cofactor(mat, zero)


def schur(lam: Sequence[int], w: int, m: int | None = None) -> GradedSeries:
    """s_lambda(t) in t_1..t_m (m defaults to w), weight cutoff w."""
    lam = Partition(lam)
    if lam.weight > w:
        raise ValueError(f"|lambda| = {lam.weight} exceeds cutoff {w}")
    m = w if m is None else m
    return _to_series(schur_poly(tuple(lam), m), m, w)


def d_coefficient(lam: Sequence[int], ell: int | None = None) -> Fraction:
    """Coefficient d_lambda with s_lambda(t1, 0, 0, ...) = d_lambda t1^|lambda|."""
    lam = Partition(lam)
    if ell is None:
        ell = len(lam)
    if ell < len(lam):
        raise ValueError("ell must be at least the length of lambda")
    mu = [lam.part(i) + ell - i for i in range(1, ell + 1)]
    num = 1
    for i in range(ell):
        for j in range(i + 1, ell):
            num *= mu[i] - mu[j]
    den = 1
    for x in mu:
        den *= math.factorial(x)
    return Fraction(num, den)


def enumerate_superpartitions(lam0: Sequence[int], w: int) -> list[Partition]:
    """All mu containing lam0 with |mu| <= w, ordered by weight then reverse lex."""
    lam0 = Partition(lam0)
    if lam0.weight > w:
        raise ValueError("|lam0| exceeds the cutoff")
    out: list[Partition] = []

    def rec(prefix, remaining, maxpart):
        i = len(prefix)
        lower = lam0.part(i + 1)
        if lower == 0:
            out.append(Partition(prefix))
        # a part here must be >= lam0_{i+1} (and >= 1)
        for p in range(max(lower, 1), min(maxpart, remaining) + 1):
            # parts still required later must fit
            need = sum(lam0[i + 1:]) if i + 1 < len(lam0) else 0
            if p + need > remaining:
                continue
            rec(prefix + [p], remaining - p, p)

    rec([], w, w)
    out.sort(key=Partition.sort_key)
    return out


def partitions_up_to(w: int) -> list[Partition]:
    return enumerate_superpartitions((), w)
