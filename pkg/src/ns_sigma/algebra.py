"""
Exact arithmetic kernel: rationals, graded polynomials in the curve
parameters, truncated Laurent series in z, truncated multivariate series
in t (or u), and two-variable series in (z1, z2).

Coefficients are ``flint.fmpq`` (pure numbers) or ``flint.fmpq_mpoly``
elements of a :class:`LambdaRing`.  Nothing here ever rounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import flint

Rational = flint.fmpq
ZERO = flint.fmpq(0)
ONE = flint.fmpq(1)


class TruncationError(ValueError):
    """A coefficient beyond the known precision was requested."""


class SeriesError(ValueError):
    """A series operation's precondition failed (e.g. exp of a series with constant term)."""


def rational(x) -> flint.fmpq:
    """Coerce int, Fraction, fmpq or a string ``"a/b"`` to an exact rational."""
    if isinstance(x, flint.fmpq):
        return x
    if isinstance(x, int):
        return flint.fmpq(x)
    if isinstance(x, Fraction):
        return flint.fmpq(x.numerator, x.denominator)
    if isinstance(x, str):
        f = Fraction(x.strip())
        return flint.fmpq(f.numerator, f.denominator)
    if isinstance(x, flint.fmpz):
        return flint.fmpq(x)
    raise TypeError(f"cannot make a rational from {x!r}")


def rational_str(q) -> str:
    q = rational(q)
    return f"{int(q.p)}/{int(q.q)}"


def to_fraction(q) -> Fraction:
    q = rational(q)
    return Fraction(int(q.p), int(q.q))


def is_zero(c) -> bool:
    return c == 0


def as_constant(c):
    """Return the rational value of a constant coefficient, or None."""
    if isinstance(c, (int, flint.fmpq)):
        return rational(c)
    if isinstance(c, flint.fmpq_mpoly):
        if c == 0:
            return ZERO
        if c.is_constant():
            return c.leading_coefficient()
    return None


def admissible_indices(n: int, s: int) -> list[tuple[int, int]]:
    """All (i, j) with n*i + s*j < n*s, i >= 0, 0 <= j <= n-1, in lex order."""
    out = []
    for i in range(s + 1):
        for j in range(n):
            if n * i + s * j < n * s:
                out.append((i, j))
    return sorted(out)


class LambdaRing:
    """Q[lambda_ij] for the symbolic parameters of an (n, s)-curve.

    Graded by deg lambda_ij = n*s - n*i - s*j.  Generators are kept in
    lexicographic (i, j) order so exponent vectors are canonical.
    """

    def __init__(self, n: int, s: int, symbols: Iterable[tuple[int, int]] = ()):
        allowed = set(admissible_indices(n, s))
        symbols = tuple(sorted(set(tuple(x) for x in symbols)))
        for ij in symbols:
            if ij not in allowed:
                raise ValueError(f"lambda_{ij} is not an admissible parameter for ({n},{s})")
        self.n, self.s = n, s
        self.symbols = symbols
        self.degrees = tuple(n * s - n * i - s * j for i, j in symbols)
        self.names = tuple(f"l{i}_{j}" for i, j in symbols)
        self.ctx = flint.fmpq_mpoly_ctx.get(self.names, "lex")
        self._gens = dict(zip(symbols, self.ctx.gens())) if symbols else {}

    def __eq__(self, other):
        return isinstance(other, LambdaRing) and (self.n, self.s, self.symbols) == (
            other.n, other.s, other.symbols)

    def __hash__(self):
        return hash((self.n, self.s, self.symbols))

    def __repr__(self):
        return f"LambdaRing(({self.n},{self.s}), {list(self.symbols)})"

    @property
    def nvars(self) -> int:
        return len(self.symbols)

    def gen(self, i: int, j: int):
        return self._gens[(i, j)]

    def zero(self):
        return self.ctx.from_dict({})

    def one(self):
        return self.ctx.constant(1)

    def coerce(self, c):
        if isinstance(c, flint.fmpq_mpoly):
            if c.context() is not self.ctx:
                raise ValueError("coefficient belongs to a different parameter ring")
            return c
        return self.ctx.constant(rational(c))

    def monomial_degree(self, exps: Sequence[int]) -> int:
        return sum(e * d for e, d in zip(exps, self.degrees))

    def degree_set(self, c) -> set[int]:
        """Weighted degrees of all monomials present in ``c``."""
        if c == 0:
            return set()
        if not isinstance(c, flint.fmpq_mpoly):
            return {0}
        return {self.monomial_degree(m) for m in c.monoms()}

    def is_homogeneous(self, c, degree: int) -> bool:
        return self.degree_set(c) <= {degree}

    def terms(self, c) -> list[tuple[tuple[int, ...], flint.fmpq]]:
        """(exponent vector, coefficient) pairs sorted by exponent vector."""
        if c == 0:
            return []
        if not isinstance(c, flint.fmpq_mpoly):
            return [((0,) * self.nvars, rational(c))]
        return sorted(c.to_dict().items())

    def to_json(self, c) -> dict[str, str]:
        return {",".join(map(str, e)): rational_str(q) for e, q in self.terms(c)}

    def from_json(self, data: dict[str, str]):
        d = {}
        for key, val in data.items():
            exps = tuple(int(x) for x in key.split(",")) if key else ()
            if len(exps) != self.nvars:
                raise ValueError(f"exponent vector {key!r} does not match {self.nvars} parameters")
            d[exps] = rational(val)
        return self.ctx.from_dict(d)

    def format(self, c) -> str:
        if c == 0:
            return "0"
        out = []
        for exps, q in self.terms(c):
            mono = "*".join(
                (f"{nm}^{e}" if e > 1 else nm) for nm, e in zip(self.names, exps) if e)
            qs = rational_str(q).removesuffix("/1")
            if not mono:
                out.append(qs)
            elif q == 1:
                out.append(mono)
            elif q == -1:
                out.append("-" + mono)
            else:
                out.append(f"{qs}*{mono}")
        return " + ".join(out).replace("+ -", "- ")

    def specialize(self, c, values: dict[tuple[int, int], object], target: "LambdaRing"):
        """Substitute rationals for some symbols; remaining symbols map into ``target``."""
        if c == 0:
            return target.zero()
        pos = {ij: k for k, ij in enumerate(target.symbols)}
        out = {}
        for exps, q in self.terms(c):
            coef = rational(q)
            texp = [0] * target.nvars
            for ij, e in zip(self.symbols, exps):
                if not e:
                    continue
                if ij in values:
                    coef *= rational(values[ij]) ** e
                else:
                    texp[pos[ij]] += e
            key = tuple(texp)
            out[key] = out.get(key, ZERO) + coef
        return target.ctx.from_dict({k: v for k, v in out.items() if v != 0})


# ---------------------------------------------------------------------------
# Laurent series in one variable z
# ---------------------------------------------------------------------------

class LaurentSeries:
    """Truncated Laurent series sum_{k=val}^{prec} c_k z^k + O(z^{prec+1}).

    ``prec`` is the highest exponent whose coefficient is known.  Reading a
    coefficient above ``prec`` raises :class:`TruncationError`.
    """

    __slots__ = ("val", "prec", "coeffs")

    def __init__(self, val: int, coeffs: Sequence, prec: int | None = None):
        coeffs = list(coeffs)
        if prec is None:
            prec = val + len(coeffs) - 1
        size = prec - val + 1
        if size < 0:
            size = 0
        if len(coeffs) < size:
            coeffs.extend([ZERO] * (size - len(coeffs)))
        self.val = val
        self.prec = prec
        self.coeffs = coeffs[:size]

    @classmethod
    def monomial(cls, k: int, coef=ONE, prec: int | None = None):
        if prec is None:
            prec = k
        if prec < k:
            return cls(prec + 1, [], prec)
        return cls(k, [coef], prec)

    @classmethod
    def zero(cls, prec: int):
        return cls(prec + 1, [], prec)

    def coefficient(self, k: int):
        if k > self.prec:
            raise TruncationError(f"coefficient of z^{k} requested; series known through z^{self.prec}")
        if k < self.val:
            return ZERO
        return self.coeffs[k - self.val]

    def __getitem__(self, k):
        return self.coefficient(k)

    def items(self):
        for k, c in enumerate(self.coeffs):
            if c != 0:
                yield self.val + k, c

    def valuation(self) -> int:
        """Lowest exponent with a nonzero coefficient (prec+1 if none known)."""
        for k, c in self.items():
            return k
        return self.prec + 1

    def leading(self):
        v = self.valuation()
        return v, (self.coefficient(v) if v <= self.prec else ZERO)

    def normalized(self) -> "LaurentSeries":
        v = self.valuation()
        if v == self.val:
            return self
        return LaurentSeries(v, self.coeffs[v - self.val:], self.prec)

    def truncate(self, prec: int) -> "LaurentSeries":
        if prec > self.prec:
            raise TruncationError(f"cannot raise precision from {self.prec} to {prec}")
        return LaurentSeries(self.val, self.coeffs, prec)

    def __add__(self, other):
        if not isinstance(other, LaurentSeries):
            other = LaurentSeries(0, [other], self.prec)
        val = min(self.val, other.val)
        prec = min(self.prec, other.prec)
        out = []
        for k in range(val, prec + 1):
            a = self.coeffs[k - self.val] if self.val <= k else ZERO
            b = other.coeffs[k - other.val] if other.val <= k else ZERO
            out.append(a + b)
        return LaurentSeries(val, out, prec)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.val, [-c for c in self.coeffs], self.prec)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "LaurentSeries":
        return LaurentSeries(self.val, [c * x for x in self.coeffs], self.prec)

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by z^k."""
        return LaurentSeries(self.val + k, self.coeffs, self.prec + k)

    def __mul__(self, other):
        if not isinstance(other, LaurentSeries):
            return self.scale(other)
        a, b = self.normalized(), other.normalized()
        val = a.val + b.val
        prec = min(a.prec + b.val, b.prec + a.val)
        out = []
        ac, bc = a.coeffs, b.coeffs
        for k in range(val, prec + 1):
            acc = ZERO
            # exponents i of a with k - i in b's known range
            lo = max(a.val, k - b.prec)
            hi = min(a.prec, k - b.val)
            for i in range(lo, hi + 1):
                x = ac[i - a.val]
                if x == 0:
                    continue
                y = bc[k - i - b.val]
                if y == 0:
                    continue
                acc = acc + x * y
            out.append(acc)
        return LaurentSeries(val, out, prec)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            return self.reciprocal() ** (-k)
        if k == 0:
            return LaurentSeries(0, [ONE], self.prec - self.val)
        result = self
        for _ in range(k - 1):
            result = result * self
        return result

    def reciprocal(self) -> "LaurentSeries":
        a = self.normalized()
        if a.val > a.prec:
            raise SeriesError("reciprocal of a series with no known nonzero term")
        lead = as_constant(a.coeffs[0])
        if lead is None or lead == 0:
            raise SeriesError("reciprocal needs a nonzero rational leading coefficient")
        inv_lead = 1 / lead
        rel = a.prec - a.val
        out = [inv_lead]
        for k in range(1, rel + 1):
            acc = ZERO
            for j in range(1, k + 1):
                x = a.coeffs[j]
                if x != 0:
                    acc = acc + x * out[k - j]
            out.append(-acc * inv_lead)
        return LaurentSeries(-a.val, out, -a.val + rel)

    def derivative(self) -> "LaurentSeries":
        out = [c * (self.val + k) for k, c in enumerate(self.coeffs)]
        return LaurentSeries(self.val - 1, out, self.prec - 1)

    def residue(self):
        """Coefficient of z^-1."""
        if self.prec < -1:
            raise TruncationError("series truncated below z^-1; residue unknown")
        return self.coefficient(-1)

    def integrate_no_log(self) -> "LaurentSeries":
        """Term-wise antiderivative with zero constant; fails on a z^-1 term."""
        if self.prec < -1 and self.val <= -1:
            raise TruncationError("cannot certify absence of a logarithmic term")
        if self.val <= -1 <= self.prec and self.coefficient(-1) != 0:
            raise SeriesError("logarithmic term: residue is nonzero")
        out = []
        for k, c in enumerate(self.coeffs):
            e = self.val + k
            out.append(ZERO if e == -1 else c * flint.fmpq(1, e + 1))
        return LaurentSeries(self.val + 1, out, self.prec + 1)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        if self.prec != other.prec:
            return False
        return (self - other).is_zero()

    def __repr__(self):
        terms = [f"({c})*z^{k}" for k, c in self.items()]
        return " + ".join(terms or ["0"]) + f" + O(z^{self.prec + 1})"

    # hooks for the generic power-series compositions below
    def _constant_term(self):
        if self.prec < 0:
            raise TruncationError("constant term unknown")
        for k, c in self.items():
            if k < 0:
                raise SeriesError("series has negative powers of z")
            break
        return self.coefficient(0)

    def _unit(self):
        return LaurentSeries(0, [ONE], self.prec)

    def _drop_constant(self):
        return self - LaurentSeries(0, [self.coefficient(0)], self.prec)

    def _vanishes_beyond(self, cutoff):
        return self.valuation() > cutoff

    def _cutoff(self):
        return self.prec


# ---------------------------------------------------------------------------
# Graded multivariate series (t- or u-variables)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Family:
    """An ordered set of graded variables."""

    names: tuple[str, ...]
    weights: tuple[int, ...]

    def __len__(self):
        return len(self.names)

    def weight(self, mono: Sequence[int]) -> int:
        return sum(e * w for e, w in zip(mono, self.weights))

    def format_monomial(self, mono: Sequence[int]) -> str:
        parts = [(f"{nm}^{e}" if e > 1 else nm) for nm, e in zip(self.names, mono) if e]
        return "*".join(parts) or "1"


def t_family(m: int) -> Family:
    return Family(tuple(f"t{i}" for i in range(1, m + 1)), tuple(range(1, m + 1)))


def u_family(gaps: Sequence[int]) -> Family:
    return Family(tuple(f"u{w}" for w in gaps), tuple(gaps))


class GradedSeries:
    """Sparse truncated series: monomial exponent tuple -> coefficient.

    Every stored monomial has weight <= ``cutoff``; the series is exact
    through that weight.  Terms above the cutoff are dropped on
    construction.
    """

    __slots__ = ("family", "cutoff", "terms")

    def __init__(self, family: Family, cutoff: int, terms: dict | None = None):
        self.family = family
        self.cutoff = cutoff
        clean = {}
        if terms:
            wts = family.weights
            for mono, c in terms.items():
                if c == 0:
                    continue
                if sum(e * w for e, w in zip(mono, wts)) > cutoff:
                    continue
                clean[tuple(mono)] = c
        self.terms = clean

    @classmethod
    def constant(cls, family, cutoff, c=ONE):
        return cls(family, cutoff, {(0,) * len(family): c})

    @classmethod
    def variable(cls, family, index, cutoff, c=ONE):
        mono = [0] * len(family)
        mono[index] = 1
        return cls(family, cutoff, {tuple(mono): c})

    def weight(self, mono) -> int:
        return self.family.weight(mono)

    def valuation(self) -> int:
        if not self.terms:
            return self.cutoff + 1
        return min(self.weight(m) for m in self.terms)

    def coefficient(self, mono):
        mono = tuple(mono)
        if self.weight(mono) > self.cutoff:
            raise TruncationError(
                f"monomial {self.family.format_monomial(mono)} lies beyond weight cutoff {self.cutoff}")
        return self.terms.get(mono, ZERO)

    def _check(self, other):
        if self.family != other.family:
            raise ValueError("series in different variable families")

    def __add__(self, other):
        if not isinstance(other, GradedSeries):
            other = GradedSeries.constant(self.family, self.cutoff, other)
        self._check(other)
        cutoff = min(self.cutoff, other.cutoff)
        out = dict(self.terms)
        for m, c in other.terms.items():
            if m in out:
                out[m] = out[m] + c
            else:
                out[m] = c
        return GradedSeries(self.family, cutoff, out)

    __radd__ = __add__

    def __neg__(self):
        return GradedSeries(self.family, self.cutoff, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "GradedSeries":
        if c == 0:
            return GradedSeries(self.family, self.cutoff)
        return GradedSeries(self.family, self.cutoff, {m: c * x for m, x in self.terms.items()})

    def by_weight(self) -> dict[int, list]:
        groups: dict[int, list] = {}
        for m, c in self.terms.items():
            groups.setdefault(self.weight(m), []).append((m, c))
        return groups

    def __mul__(self, other):
        if not isinstance(other, GradedSeries):
            return self.scale(other)
        self._check(other)
        cutoff = min(self.cutoff + other.valuation(), other.cutoff + self.valuation())
        return self._mul(other, cutoff)

    def _mul(self, other, cutoff):
        ga = self.by_weight()
        gb = other.by_weight()
        out: dict = {}
        for wa, la in ga.items():
            if wa > cutoff:
                continue
            for wb, lb in gb.items():
                if wa + wb > cutoff:
                    continue
                for ma, ca in la:
                    for mb, cb in lb:
                        m = tuple(x + y for x, y in zip(ma, mb))
                        c = ca * cb
                        if m in out:
                            out[m] = out[m] + c
                        else:
                            out[m] = c
        return GradedSeries(self.family, cutoff, out)

    def __rmul__(self, other):
        return self.scale(other)

    def truncate(self, cutoff: int) -> "GradedSeries":
        if cutoff > self.cutoff:
            raise TruncationError(f"cannot extend cutoff {self.cutoff} to {cutoff}")
        return GradedSeries(self.family, cutoff, self.terms)

    def derivative(self, index: int) -> "GradedSeries":
        """Partial derivative by the ``index``-th variable (0-based)."""
        w = self.family.weights[index]
        out = {}
        for m, c in self.terms.items():
            e = m[index]
            if e:
                mm = list(m)
                mm[index] = e - 1
                out[tuple(mm)] = c * e
        return GradedSeries(self.family, self.cutoff - w, out)

    def set_zero(self, indices: Iterable[int]) -> "GradedSeries":
        idx = list(indices)
        return GradedSeries(self.family, self.cutoff,
                            {m: c for m, c in self.terms.items() if not any(m[i] for i in idx)})

    def map_coefficients(self, fn) -> "GradedSeries":
        return GradedSeries(self.family, self.cutoff, {m: fn(c) for m, c in self.terms.items()})

    def substitute(self, images: Sequence["GradedSeries"], cutoff: int) -> "GradedSeries":
        """Replace variable k by ``images[k]``; result exact through ``cutoff``.

        Substitution must be weight-graded: each image has valuation at
        least the weight of the variable it replaces, so source terms above
        the source cutoff cannot reach weight ``cutoff``.
        """
        if len(images) != len(self.family):
            raise ValueError("one image per variable required")
        if not images:
            raise ValueError("no variables to substitute")
        fam = images[0].family
        if self.cutoff < cutoff:
            raise TruncationError(f"source known through {self.cutoff}, target {cutoff}")
        for k, img in enumerate(images):
            if img.family != fam:
                raise ValueError("images must share one family")
            if img.terms and img.valuation() < self.family.weights[k]:
                raise ValueError("substitution is not weight-graded")
            if img.terms and img.cutoff < cutoff:
                raise TruncationError(f"image {k} known through {img.cutoff}, target {cutoff}")
        powers: list[list[GradedSeries]] = [[GradedSeries.constant(fam, cutoff)] for _ in images]

        def power(k, e):
            lst = powers[k]
            while len(lst) <= e:
                lst.append(lst[-1]._mul(images[k], cutoff))
            return lst[e]

        acc_terms: dict = {}
        for mono, c in self.terms.items():
            if self.weight(mono) > cutoff:
                continue
            prod = None
            for k, e in enumerate(mono):
                if e:
                    p = power(k, e)
                    prod = p if prod is None else prod._mul(p, cutoff)
                    if not prod.terms:
                        break
            if prod is None:
                prod = powers[0][0]
            for m, x in prod.terms.items():
                v = c * x
                if m in acc_terms:
                    acc_terms[m] = acc_terms[m] + v
                else:
                    acc_terms[m] = v
        return GradedSeries(fam, cutoff, acc_terms)

    def homogeneity_scan(self, ring: LambdaRing | None = None) -> set[int]:
        """Set of (monomial weight - lambda-degree) over all terms present."""
        found = set()
        for m, c in self.terms.items():
            w = self.weight(m)
            if ring is None or not isinstance(c, flint.fmpq_mpoly):
                found.add(w)
            else:
                found.update(w - d for d in ring.degree_set(c))
        return found

    def first_nonzero(self):
        """Lowest-weight nonzero monomial (deterministic), or None."""
        if not self.terms:
            return None
        return min(self.terms, key=lambda m: (self.weight(m), tuple(-e for e in m)))

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: (self.weight(mc[0]), tuple(-e for e in mc[0])))

    def __eq__(self, other):
        if not isinstance(other, GradedSeries):
            return NotImplemented
        return self.family == other.family and self.cutoff == other.cutoff and \
            (self - other).is_zero()

    def __repr__(self):
        parts = [f"({c})*{self.family.format_monomial(m)}" for m, c in self.sorted_terms()]
        return " + ".join(parts or ["0"]) + f" + O(weight {self.cutoff + 1})"

    def _constant_term(self):
        return self.terms.get((0,) * len(self.family), ZERO)

    def _unit(self):
        return GradedSeries.constant(self.family, self.cutoff)

    def _drop_constant(self):
        z = (0,) * len(self.family)
        return GradedSeries(self.family, self.cutoff, {m: c for m, c in self.terms.items() if m != z})

    def _vanishes_beyond(self, cutoff):
        return not self.terms or self.valuation() > cutoff

    def _cutoff(self):
        return self.cutoff


# ---------------------------------------------------------------------------
# exp / log / sqrt for both series kinds
# ---------------------------------------------------------------------------

def _compose(r, coefficient, cutoff):
    """sum_k coefficient(k) * r^k for r without constant term."""
    result = r._unit()
    term = r._unit()
    k = 0
    while True:
        k += 1
        term = term * r
        if term._vanishes_beyond(cutoff):
            break
        a = coefficient(k)
        if a != 0:
            result = result + term.scale(a)
    return result


def series_exp(s):
    """exp(s) for a series with zero constant term."""
    if s._constant_term() != 0:
        raise SeriesError("exp requires zero constant term")
    fact = [ONE]

    def coef(k):
        while len(fact) <= k:
            fact.append(fact[-1] * len(fact))
        return 1 / fact[k]

    return _compose(s._drop_constant(), coef, s._cutoff())


def _check_unit(s, what):
    c0 = s._constant_term()
    if c0 != 1:
        raise SeriesError(f"{what} requires leading term exactly 1")


def series_log(s):
    """log(s) for a series with constant term 1."""
    _check_unit(s, "log")
    r = s._drop_constant()
    return _compose(r, lambda k: flint.fmpq((-1) ** (k + 1), k), s._cutoff()) - s._unit()


def series_sqrt(s):
    """Square root with constant term 1, by the binomial series."""
    _check_unit(s, "sqrt")
    r = s._drop_constant()
    half = flint.fmpq(1, 2)
    binom = [ONE]

    def coef(k):
        while len(binom) <= k:
            j = len(binom)
            binom.append(binom[-1] * (half - (j - 1)) / j)
        return binom[k]

    return _compose(r, coef, s._cutoff())


# ---------------------------------------------------------------------------
# Two-variable series for bidifferentials
# ---------------------------------------------------------------------------

class BiSeries:
    """Series sum c_ab z1^a z2^b in the region |z1| < |z2|.

    Exact for every a <= prec1, b <= prec2 (arbitrarily negative b) and,
    when ``total`` is set, a + b <= total.
    """

    __slots__ = ("terms", "prec1", "prec2", "total")

    def __init__(self, terms: dict, prec1: int, prec2: int, total: int | None = None):
        self.prec1, self.prec2, self.total = prec1, prec2, total
        self.terms = {k: v for k, v in terms.items() if v != 0 and self._known(*k)}

    def _known(self, a: int, b: int) -> bool:
        return a <= self.prec1 and b <= self.prec2 and (self.total is None or a + b <= self.total)

    @staticmethod
    def _min_total(x, y):
        if x is None:
            return y
        return x if y is None else min(x, y)

    @classmethod
    def diagonal_kernel(cls, prec1: int, prec2: int) -> "BiSeries":
        """1/(z1 - z2)^2 = sum_{k>=1} k z1^{k-1} z2^{-k-1}."""
        return cls({(k - 1, -k - 1): flint.fmpq(k) for k in range(1, prec1 + 2)}, prec1, prec2)

    def coefficient(self, a: int, b: int):
        if not self._known(a, b):
            raise TruncationError(f"z1^{a} z2^{b} beyond truncation ({self.prec1}, {self.prec2}, total {self.total})")
        return self.terms.get((a, b), ZERO)

    def __sub__(self, other):
        p1, p2 = min(self.prec1, other.prec1), min(self.prec2, other.prec2)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, ZERO) - v
        return BiSeries(out, p1, p2, self._min_total(self.total, other.total))

    def __add__(self, other):
        p1, p2 = min(self.prec1, other.prec1), min(self.prec2, other.prec2)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, ZERO) + v
        return BiSeries(out, p1, p2, self._min_total(self.total, other.total))

    def polar_exponents(self) -> list[int]:
        """Negative z2-exponents that carry a nonzero coefficient."""
        return sorted({b for (_, b) in self.terms if b < 0})

    def homogeneity_scan(self, ring: LambdaRing) -> set[int]:
        """Set of (lambda-degree - a - b) over all terms."""
        found = set()
        for (a, b), c in self.terms.items():
            found.update(d - a - b for d in ring.degree_set(c))
        return found
