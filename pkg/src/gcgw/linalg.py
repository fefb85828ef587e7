"""Exact dense linear algebra over the Gaussian rationals.

Matrices are lists of rows. Subspaces are given by lists of spanning vectors.
"""
from __future__ import annotations

from typing import Sequence

from .exterior import GaussianRational, ONE, ZERO, gq

Matrix = list


def matrix(rows) -> Matrix:
    return [[gq(x) for x in row] for row in rows]


def zeros(m: int, n: int) -> Matrix:
    return [[ZERO] * n for _ in range(m)]


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def shape(A: Matrix):
    return (len(A), len(A[0]) if A else 0)


def transpose(A: Matrix, ncols: int | None = None) -> Matrix:
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def conj(A: Matrix) -> Matrix:
    return [[x.conjugate() for x in row] for row in A]


def adjoint(A: Matrix) -> Matrix:
    return conj(transpose(A))


def matmul(A: Matrix, B: Matrix, inner: int | None = None) -> Matrix:
    """Product; ``inner`` disambiguates empty factors."""
    m = len(A)
    n = len(B[0]) if B else 0
    if not B:
        return zeros(m, 0)
    k = len(B)
    if m and len(A[0]) != k:
        raise ValueError(f"shape mismatch {shape(A)} x {shape(B)}")
    Bt = list(zip(*B))
    out = []
    for row in A:
        nz = [(j, a) for j, a in enumerate(row) if a]
        out_row = []
        for col in Bt:
            s = ZERO
            for j, a in nz:
                b = col[j]
                if b:
                    s = s + a * b
            out_row.append(s)
        out.append(out_row)
    return out


def matvec(A: Matrix, v: Sequence) -> list:
    out = []
    for row in A:
        s = ZERO
        for a, b in zip(row, v):
            if a and b:
                s = s + a * b
        out.append(s)
    return out


def add(A: Matrix, B: Matrix) -> Matrix:
    return [[a + b for a, b in zip(r, s)] for r, s in zip(A, B)]


def sub(A: Matrix, B: Matrix) -> Matrix:
    return [[a - b for a, b in zip(r, s)] for r, s in zip(A, B)]


def scale(A: Matrix, c) -> Matrix:
    c = gq(c)
    return [[a * c for a in r] for r in A]


def is_zero(A: Matrix) -> bool:
    return all(not x for row in A for x in row)


def equal(A: Matrix, B: Matrix) -> bool:
    return shape(A) == shape(B) and all(a == b for r, s in zip(A, B) for a, b in zip(r, s))


def rref(A: Matrix):
    """Reduced row echelon form and pivot columns."""
    R = [list(r) for r in A]
    m = len(R)
    n = len(R[0]) if R else 0
    pivots = []
    row = 0
    for col in range(n):
        if row >= m:
            break
        p = next((r for r in range(row, m) if R[r][col]), None)
        if p is None:
            continue
        R[row], R[p] = R[p], R[row]
        inv = ONE / R[row][col]
        R[row] = [x * inv for x in R[row]]
        for r in range(m):
            if r != row and R[r][col]:
                f = R[r][col]
                R[r] = [x - f * y for x, y in zip(R[r], R[row])]
        pivots.append(col)
        row += 1
    return R, pivots


def rank(A: Matrix) -> int:
    if not A or not A[0]:
        return 0
    return len(rref(A)[1])


def nullspace(A: Matrix, ncols: int | None = None) -> list:
    """Basis (list of vectors) of ``{x : A x = 0}``."""
    n = len(A[0]) if A else (ncols or 0)
    if not A:
        return [[ONE if i == j else ZERO for i in range(n)] for j in range(n)]
    R, pivots = rref(A)
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for r, p in enumerate(pivots):
            v[p] = -R[r][f]
        basis.append(v)
    return basis


def solve(A: Matrix, b: Sequence):
    """One solution of ``A x = b`` or ``None``."""
    m = len(A)
    n = len(A[0]) if A else 0
    aug = [list(A[i]) + [gq(b[i])] for i in range(m)]
    R, pivots = rref(aug)
    if n in pivots:
        return None
    x = [ZERO] * n
    for r, p in enumerate(pivots):
        x[p] = R[r][n]
    return x


def inverse(A: Matrix) -> Matrix:
    n = len(A)
    aug = [list(A[i]) + identity(n)[i] for i in range(n)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in R]


def det(A: Matrix) -> GaussianRational:
    n = len(A)
    if n == 0:
        return ONE
    M = [list(r) for r in A]
    d = ONE
    for col in range(n):
        p = next((r for r in range(col, n) if M[r][col]), None)
        if p is None:
            return ZERO
        if p != col:
            M[col], M[p] = M[p], M[col]
            d = -d
        d = d * M[col][col]
        inv = ONE / M[col][col]
        for r in range(col + 1, n):
            if M[r][col]:
                f = M[r][col] * inv
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return d


def span_basis(vectors: Sequence[Sequence]) -> list:
    """Row-reduced basis of the span of ``vectors``."""
    vs = [list(map(gq, v)) for v in vectors]
    if not vs:
        return []
    R, pivots = rref(vs)
    return R[: len(pivots)]


def span_dim(vectors: Sequence[Sequence]) -> int:
    return len(span_basis(vectors))


def contains(U: Sequence[Sequence], W: Sequence[Sequence]) -> bool:
    """Whether span(W) is inside span(U)."""
    return span_dim(list(U) + list(W)) == span_dim(U)


def same_span(U, W) -> bool:
    return contains(U, W) and contains(W, U)


def intersection(U: Sequence[Sequence], W: Sequence[Sequence], n: int) -> list:
    """Basis of span(U) ∩ span(W) inside an ``n``-dimensional space."""
    U = span_basis(U)
    W = span_basis(W)
    if not U or not W:
        return []
    # solve sum a_i u_i = sum b_j w_j
    cols = [list(u) for u in U] + [[-x for x in w] for w in W]
    A = transpose(cols)
    out = []
    for sol in nullspace(A):
        a = sol[: len(U)]
        v = [ZERO] * n
        for coef, u in zip(a, U):
            if coef:
                v = [x + coef * y for x, y in zip(v, u)]
        out.append(v)
    return span_basis(out)


def coordinates(basis: Sequence[Sequence], v: Sequence):
    """Coefficients of ``v`` in ``basis`` or ``None`` if outside the span."""
    if not basis:
        return [] if not any(v) else None
    return solve(transpose([list(b) for b in basis]), v)


def block(rows_of_blocks) -> Matrix:
    out = []
    for brow in rows_of_blocks:
        height = len(brow[0])
        for r in range(height):
            out.append([x for blk in brow for x in blk[r]])
    return out
