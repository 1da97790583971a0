"""
The affine ring of an (n, s)-curve as a point of the Sato Grassmannian.

Column j (1-based) of the frame is iota(f_j): the coefficient of z^m in the
expansion of the j-th basis monomial sits in row e_{m+g-1}.  Its pivot row
is g - 1 - w*_j.  Plucker coordinates are finite minors of this matrix.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from .algebra import TruncationError
from .curve import NSCurve
from .linalg import det
from .schur import Partition


class FrameMatrix:
    """Columns of the embedded affine ring, rows known up to ``row_bound``."""

    def __init__(self, curve: NSCurve, columns: list[list], pivots: list[int],
                 row_bound: int, normalized: bool = False):
        self.curve = curve
        self.g = curve.genus
        self.columns = columns          # columns[j-1][r - pivot_j] = entry at row r
        self.pivots = pivots            # pivots[j-1]
        self.row_bound = row_bound
        self.normalized = normalized

    @property
    def ncols(self) -> int:
        return len(self.columns)

    def entry(self, r: int, j: int):
        if j < 1 or j > self.ncols:
            raise TruncationError(f"column {j} not built (have {self.ncols})")
        if r > self.row_bound:
            raise TruncationError(f"row {r} beyond row bound {self.row_bound}")
        p = self.pivots[j - 1]
        if r < p:
            return self.curve.ring.zero()
        return self.columns[j - 1][r - p]

    def structural_check(self) -> None:
        """Unit pivots, strictly decreasing pivot rows (zeros below are implicit)."""
        one = self.curve.ring.one()
        for j, col in enumerate(self.columns, start=1):
            if col[0] != one:
                raise AssertionError(f"column {j} pivot entry is not 1")
        for a, b in zip(self.pivots, self.pivots[1:]):
            if not a > b:
                raise AssertionError("pivots must strictly decrease")
        if self.normalized:
            for j in range(1, self.ncols + 1):
                for k in range(1, j):
                    if self.entry(self.pivots[k - 1], j) != 0:
                        raise AssertionError(f"column {j} not reduced at pivot of column {k}")


def frame_columns_needed(curve: NSCurve, W: int) -> int:
    return max(W, curve.genus) + 2


def build_frame(curve: NSCurve, W: int, ncols: int | None = None) -> FrameMatrix:
    """Raw frame with rows exact through R = W + g."""
    lam = curve.partition_ns()
    if W < lam.weight:
        raise ValueError(f"W = {W} is below |lambda(n,s)| = {lam.weight}")
    g = curve.genus
    R = W + g
    if ncols is None:
        ncols = frame_columns_needed(curve, W)
    basis = curve.basis_monomials(ncols)
    zmax = R - g + 1                      # highest z-exponent needed
    top_order = max(b.order for b in basis)
    ex = curve.expansions(zmax + top_order)
    columns, pivots = [], []
    sg = curve.semigroup()
    for b in basis:
        ser = ex.monomial(b.m1, b.m2)
        if ser.prec < zmax:
            raise TruncationError("expansion order insufficient for frame rows")
        pivot = g - 1 - b.order
        if b.order != sg.nongap(b.index):
            raise AssertionError("basis orders must be the nongaps")
        col = [curve.ring.coerce(ser.coefficient(r - g + 1)) for r in range(pivot, R + 1)]
        columns.append(col)
        pivots.append(pivot)
    fr = FrameMatrix(curve, columns, pivots, R)
    fr.structural_check()
    return fr


def normalize_frame(frame: FrameMatrix) -> FrameMatrix:
    """Subtract earlier columns so every column vanishes at earlier pivot rows."""
    cols = [list(c) for c in frame.columns]
    piv = frame.pivots
    R = frame.row_bound
    for j in range(len(cols)):
        # later pivots are lower; clear from the nearest earlier column upward
        for k in range(j - 1, -1, -1):
            r = piv[k]
            c = cols[j][r - piv[j]]
            if c == 0:
                continue
            for rr in range(piv[k], R + 1):
                x = cols[k][rr - piv[k]]
                if x != 0:
                    cols[j][rr - piv[j]] = cols[j][rr - piv[j]] - c * x
    out = FrameMatrix(frame.curve, cols, list(piv), R, normalized=True)
    out.structural_check()
    return out


def minor_size(frame: FrameMatrix, mu: Partition) -> int:
    return max(len(mu), frame.g)


def plucker(frame: FrameMatrix, mu: Sequence[int], m: int | None = None):
    """xi_mu: determinant at rows rho(-1..-m) = mu_i - i and columns f_1..f_m."""
    mu = Partition(mu)
    if m is None:
        m = minor_size(frame, mu)
    if m < minor_size(frame, mu):
        raise ValueError("minor too small to capture the Plucker coordinate")
    rows = [mu.part(i) - i for i in range(1, m + 1)]
    if rows[0] > frame.row_bound:
        raise TruncationError(f"row {rows[0]} beyond frame row bound {frame.row_bound}")
    mat = [[frame.entry(r, j) for j in range(1, m + 1)] for r in rows]
    return det(mat, frame.curve.ring.zero())


# -- parallel evaluation ------------------------------------------------------

_WORKER: dict = {}


def _worker_init(spec: dict, W: int, ncols: int):
    from .serialize import curve_from_spec
    curve = curve_from_spec(spec)
    _WORKER["frame"] = build_frame(curve, W, ncols)


def _worker_plucker(parts: tuple):
    fr = _WORKER["frame"]
    return fr.curve.ring.to_json(plucker(fr, parts))


def plucker_many(frame: FrameMatrix, partitions: Sequence[Partition], W: int,
                 jobs: int = 1) -> dict[Partition, object]:
    """xi_mu for many mu; with jobs > 1 the minors run in worker processes."""
    parts = [Partition(p) for p in partitions]
    if jobs <= 1 or len(parts) < 2:
        return {p: plucker(frame, p) for p in parts}
    ring = frame.curve.ring
    with ProcessPoolExecutor(max_workers=jobs, initializer=_worker_init,
                             initargs=(frame.curve.spec(), W, frame.ncols)) as pool:
        results = list(pool.map(_worker_plucker, [tuple(p) for p in parts], chunksize=4))
    return {p: ring.from_json(r) for p, r in zip(parts, results)}
