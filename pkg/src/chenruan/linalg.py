"""Exact dense linear algebra over a field.

Matrices are lists of rows.  Entries may be Fraction, int or
CyclotomicNumber; the routines only use ring operations plus exact
division, so any exact field type works.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .cyclotomic import CyclotomicNumber

Matrix = list[list]


def _zero_like(x):
    return x * 0


def _one_like(x):
    return x * 0 + 1


def _is_zero(x) -> bool:
    return not x


def copy(M: Sequence[Sequence]) -> Matrix:
    return [list(r) for r in M]


def identity(n: int, one=Fraction(1)) -> Matrix:
    zero = one * 0
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    cols = list(zip(*B))
    out = []
    for row in A:
        out_row = []
        for col in cols:
            acc = None
            for a, b in zip(row, col):
                if _is_zero(a) or _is_zero(b):
                    continue
                acc = a * b if acc is None else acc + a * b
            out_row.append(acc if acc is not None else _zero_like(row[0]))
        out.append(out_row)
    return out


def matvec(A: Sequence[Sequence], v: Sequence) -> list:
    return [row[0] for row in matmul(A, [[x] for x in v])]


def transpose(A: Sequence[Sequence]) -> Matrix:
    return [list(c) for c in zip(*A)]


def matpow(A: Sequence[Sequence], e: int) -> Matrix:
    n = len(A)
    result = identity(n, _one_like(A[0][0]))
    base = copy(A)
    while e:
        if e & 1:
            result = matmul(result, base)
        base = matmul(base, base)
        e >>= 1
    return result


def kron(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    return [[a * b for a in ra for b in rb] for ra in A for rb in B]


def rref(M: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    A = copy(M)
    rows = len(A)
    cols = len(A[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if not _is_zero(A[i][c])), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = _one_like(A[r][c]) / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(rows):
            if i != r and not _is_zero(A[i][c]):
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A, pivots


def rank(M: Sequence[Sequence]) -> int:
    if not M:
        return 0
    return len(rref(M)[1])


def nullspace(M: Sequence[Sequence]) -> list[list]:
    """Basis of {v : M v = 0}, one vector per free column."""
    if not M:
        return []
    R, pivots = rref(M)
    cols = len(M[0])
    one = _one_like(M[0][0])
    zero = one * 0
    basis = []
    for free in range(cols):
        if free in pivots:
            continue
        v = [zero] * cols
        v[free] = one
        for i, p in enumerate(pivots):
            v[p] = -R[i][free]
        basis.append(v)
    return basis


def eigenspace(M: Sequence[Sequence], lam) -> list[list]:
    """Exact basis of ker(M - lam I)."""
    n = len(M)
    if any(len(r) != n for r in M):
        raise ValueError("eigenspace needs a square matrix")
    shifted = [[M[i][j] - (lam if i == j else 0) for j in range(n)] for i in range(n)]
    return nullspace(shifted)


def det(M: Sequence[Sequence]):
    """Determinant by fraction-free (Bareiss) elimination."""
    A = copy(M)
    n = len(A)
    if n == 0:
        return Fraction(1)
    sign = 1
    prev = _one_like(A[0][0])
    for k in range(n - 1):
        if _is_zero(A[k][k]):
            p = next((i for i in range(k + 1, n) if not _is_zero(A[i][k])), None)
            if p is None:
                return _zero_like(A[0][0])
            A[k], A[p] = A[p], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) / prev
        prev = A[k][k]
    return A[n - 1][n - 1] * sign


def solve(M: Sequence[Sequence], b: Sequence) -> list | None:
    """One solution of M x = b, or None if inconsistent (free variables set to 0)."""
    rows = len(M)
    cols = len(M[0])
    aug = [list(M[i]) + [b[i]] for i in range(rows)]
    R, pivots = rref(aug)
    if cols in pivots:
        return None
    zero = _zero_like(aug[0][0])
    x = [zero] * cols
    for i, p in enumerate(pivots):
        x[p] = R[i][cols]
    return x


def inverse(M: Sequence[Sequence]) -> Matrix:
    n = len(M)
    one = _one_like(M[0][0])
    aug = [list(M[i]) + identity(n, one)[i] for i in range(n)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in R]


def charpoly(M: Sequence[Sequence]) -> list:
    """Coefficients of det(xI - M), lowest degree first (Faddeev-LeVerrier)."""
    n = len(M)
    one = _one_like(M[0][0])
    coeffs = [None] * (n + 1)
    coeffs[n] = one
    Mk = identity(n, one * 0)  # M_0 = 0
    for k in range(1, n + 1):
        AM = matmul(M, Mk)
        Mk = [[AM[i][j] + (coeffs[n - k + 1] if i == j else 0) for j in range(n)] for i in range(n)]
        tr = sum((row[i] for i, row in enumerate(matmul(M, Mk))), one * 0)
        coeffs[n - k] = -tr / k
    return coeffs


def is_scalar_multiple(u: Sequence, v: Sequence) -> bool:
    """True if u = c v for some c (u, v nonzero)."""
    i = next((k for k, x in enumerate(v) if not _is_zero(x)), None)
    if i is None or _is_zero(u[i]):
        return False
    c = u[i] / v[i]
    return all(a == c * b for a, b in zip(u, v))


def _column_echelon(M: Sequence[Sequence[int]]):
    """Unimodular column reduction A = M U; returns (A, U, [(row, pivot column)])."""
    rows = len(M)
    n = len(M[0])
    A = [list(map(int, r)) for r in M]
    U = [[int(i == j) for j in range(n)] for i in range(n)]  # columns track transforms

    def col_op(dst, src, k):  # col_dst -= k * col_src
        for r in A:
            r[dst] -= k * r[src]
        for r in U:
            r[dst] -= k * r[src]

    def swap(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in U:
            r[i], r[j] = r[j], r[i]

    pivots = []
    pivot_col = 0
    for r in range(rows):
        if pivot_col >= n:
            break
        while True:
            nz = [j for j in range(pivot_col, n) if A[r][j]]
            if not nz:
                break
            j0 = min(nz, key=lambda j: abs(A[r][j]))
            swap(pivot_col, j0)
            done = True
            for j in range(pivot_col + 1, n):
                if A[r][j]:
                    col_op(j, pivot_col, A[r][j] // A[r][pivot_col])
                    if A[r][j]:
                        done = False
            if done:
                break
        if any(A[r][j] for j in range(pivot_col, n)):
            pivots.append((r, pivot_col))
            pivot_col += 1
    return A, U, pivots


def integer_kernel(M: Sequence[Sequence[int]]) -> list[list[int]]:
    """Z-basis of {v in Z^n : M v = 0} via unimodular column reduction."""
    n = len(M[0])
    _, U, pivots = _column_echelon(M)
    return [[U[i][j] for i in range(n)] for j in range(len(pivots), n)]


def integer_solve(M: Sequence[Sequence[int]], b: Sequence[int]) -> list[int] | None:
    """Some v in Z^n with M v = b, or None when there is no integral solution."""
    n = len(M[0])
    A, U, pivots = _column_echelon(M)
    pivot_of = dict(pivots)
    y = [0] * n
    for r in range(len(M)):
        acc = sum(A[r][j] * y[j] for j in range(n))
        if r in pivot_of:
            p = pivot_of[r]
            q, rem = divmod(int(b[r]) - acc, A[r][p])
            if rem:
                return None
            y[p] = q
        elif acc != b[r]:
            return None
    return [sum(U[i][j] * y[j] for j in range(n)) for i in range(n)]


def cyclotomic_matrix(n: int, rows: Sequence[Sequence]) -> Matrix:
    return [[x if isinstance(x, CyclotomicNumber) else CyclotomicNumber.rational(n, x)
             for x in r] for r in rows]
