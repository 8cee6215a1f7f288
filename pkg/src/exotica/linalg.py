"""Exact Gaussian elimination over a field (Fraction or GaussRat entries)."""

from __future__ import annotations


def _copy(rows):
    return [list(r) for r in rows]


def row_echelon(rows):
    """Reduced row echelon form; returns ``(R, pivot_columns)``."""
    A = _copy(rows)
    if not A:
        return A, []
    m, n = len(A), len(A[0])
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        if A[r][c] != 1:
            inv = 1 / A[r][c]
            A[r] = [x * inv if x != 0 else x for x in A[r]]
        pivot_row = A[r]
        for i in range(m):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y if y != 0 else x for x, y in zip(A[i], pivot_row)]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return A, pivots


def rank(rows):
    return len(row_echelon(rows)[1])


def solve(A, b):
    """One solution ``x`` of ``A x = b``, or None when the system is inconsistent."""
    m = len(A)
    n = len(A[0]) if m else 0
    aug = [list(A[i]) + [b[i]] for i in range(m)]
    R, pivots = row_echelon(aug)
    if n in pivots:
        return None
    zero = b[0] - b[0] if b else 0
    x = [zero] * n
    for row, c in enumerate(pivots):
        x[c] = R[row][n]
    return x


def transpose(rows):
    return [list(col) for col in zip(*rows)]


def matmul(A, B):
    return [[sum((a * b for a, b in zip(row, col)), start=0 * row[0]) for col in zip(*B)] for row in A]
