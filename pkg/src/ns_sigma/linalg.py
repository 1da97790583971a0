"""Determinants over exact commutative rings (rationals or flint polynomials)."""

from __future__ import annotations


def det_cofactor(mat, zero):
    """Laplace expansion along rows, memoized on the set of used columns.

    Zero entries are skipped, so sparse (e.g. Hessenberg) matrices stay cheap.
    """
    n = len(mat)
    if n == 0:
        return zero + 1
    memo: dict[int, object] = {}

    def rec(row: int, used: int):
        if row == n:
            return zero + 1
        if used in memo:
            return memo[used]
        acc = zero
        sign_pos = 0
        for col in range(n):
            if used >> col & 1:
                continue
            entry = mat[row][col]
            if entry != 0:
                sub = rec(row + 1, used | (1 << col))
                if sub != 0:
                    term = entry * sub
                    acc = acc - term if sign_pos & 1 else acc + term
            sign_pos += 1
        memo[used] = acc
        return acc

    return rec(0, 0)


def det_bareiss(mat, zero):
    """Fraction-free Bareiss elimination; divisions are exact in the ring."""
    n = len(mat)
    if n == 0:
        return zero + 1
    a = [list(row) for row in mat]
    sign = 1
    prev = zero + 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return zero
        piv = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                v = a[i][j] * piv - aik * a[k][j]
                a[i][j] = v / prev if v != 0 else zero
            a[i][k] = zero
        prev = piv
    res = a[n - 1][n - 1]
    return res if sign == 1 else -res


def det(mat, zero, small: int = 4):
    """Cofactor expansion for size <= ``small``, Bareiss otherwise."""
    if len(mat) <= small:
        return det_cofactor(mat, zero)
    return det_bareiss(mat, zero)


def unit_upper_inverse(mat, zero):
    """Inverse of a unit upper-triangular matrix by back substitution."""
    n = len(mat)
    one = zero + 1
    inv = [[(one if i == j else zero) for j in range(n)] for i in range(n)]
    for i in range(n):
        if mat[i][i] != 1:
            raise ValueError("matrix is not unit upper triangular")
        for j in range(i):
            if mat[i][j] != 0:
                raise ValueError("matrix is not unit upper triangular")
    for j in range(n):
        for i in range(j - 1, -1, -1):
            acc = zero
            for k in range(i + 1, j + 1):
                if mat[i][k] != 0 and inv[k][j] != 0:
                    acc = acc + mat[i][k] * inv[k][j]
            inv[i][j] = -acc
    return inv
