"""Exact rational linear algebra over fractions.Fraction.

Gram matrices of permutation operators are badly conditioned in floating point
at large d, and the Weingarten cross-validation demands zero-tolerance
equality, so inversion here is done in exact arithmetic.  Matrices are lists
of lists of Fraction.
"""

from __future__ import annotations

from fractions import Fraction


class SingularGram(Exception):
    """Raised when a Gram matrix is singular at the requested dimension."""


def identity(n):
    return [[Fraction(i == j) for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    n, m, k = len(A), len(B[0]), len(B)
    out = [[Fraction(0)] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for l in range(k):
            a = Ai[l]
            if not a:
                continue
            Bl = B[l]
            row = out[i]
            for j in range(m):
                row[j] += a * Bl[j]
    return out


def mat_vec(A, v):
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def transpose(A):
    return [list(col) for col in zip(*A)]


def mat_eq(A, B):
    return all(a == b for ra, rb in zip(A, B) for a, b in zip(ra, rb))


def _row_reduce(M):
    """In-place row echelon; returns pivot column indices."""
    rows, cols = len(M), len(M[0])
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if pivot is None:
            continue
        M[r], M[pivot] = M[pivot], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return pivots


def rank(A) -> int:
    return len(_row_reduce([list(map(Fraction, row)) for row in A]))


def inverse(A):
    """Exact inverse via Gauss-Jordan; raises SingularGram if singular."""
    n = len(A)
    M = [list(map(Fraction, row)) + list(identity(n)[i]) for i, row in enumerate(A)]
    pivots = _row_reduce(M)
    if pivots != list(range(n)):
        raise SingularGram("matrix is singular")
    return [row[n:] for row in M]


def pinv_psd(A):
    """Moore-Penrose pseudo-inverse of a symmetric PSD matrix, exactly.

    Uses pinv(A) = B (B^T A B)^-1 B^T with B the pivot columns of A, valid
    because col(B) = col(A) for symmetric A.  Returns (pinv, full_rank).
    """
    n = len(A)
    pivots = _row_reduce([list(map(Fraction, row)) for row in A])
    full = len(pivots) == n
    B = [[A[i][j] for j in pivots] for i in range(n)]
    Bt = transpose(B)
    core = inverse(mat_mul(Bt, mat_mul(A, B)))
    return mat_mul(B, mat_mul(core, Bt)), full
