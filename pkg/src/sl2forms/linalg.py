"""Exact linear algebra over an arbitrary field context.

Matrices are lists of row lists of field elements.  Everything is plain
Gaussian elimination with exact pivoting; no numerics anywhere.
"""

from __future__ import annotations

from .fields import Field


def identity(F: Field, n: int):
    z, o = F.zero, F.one
    return [[o if i == j else z for j in range(n)] for i in range(n)]


def mat_mul(F: Field, A, B):
    n, k = len(A), len(B)
    m = len(B[0]) if B else 0
    z = F.zero
    out = []
    for i in range(n):
        row = []
        Ai = A[i]
        for j in range(m):
            s = z
            for t in range(k):
                if Ai[t] != z and B[t][j] != z:
                    s = F.add(s, F.mul(Ai[t], B[t][j]))
            row.append(s)
        out.append(row)
    return out


def mat_vec(F: Field, A, v):
    z = F.zero
    out = []
    for row in A:
        s = z
        for a, x in zip(row, v):
            if a != z and x != z:
                s = F.add(s, F.mul(a, x))
        out.append(s)
    return out


def transpose(A):
    return [list(col) for col in zip(*A)]


def rref(F: Field, A):
    """Reduced row echelon form; returns (R, pivot_columns)."""
    R = [list(row) for row in A]
    rows = len(R)
    cols = len(R[0]) if rows else 0
    z = F.zero
    pivots = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if R[i][c] != z), None)
        if pr is None:
            continue
        R[r], R[pr] = R[pr], R[r]
        inv = F.inv(R[r][c])
        R[r] = [F.mul(inv, x) for x in R[r]]
        for i in range(rows):
            if i != r and R[i][c] != z:
                f = R[i][c]
                R[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return R, pivots


def rank(F: Field, A) -> int:
    return len(rref(F, A)[1])


def kernel_basis(F: Field, A):
    """Basis of the right kernel of A."""
    rows = len(A)
    cols = len(A[0]) if rows else 0
    R, pivots = rref(F, A)
    z, o = F.zero, F.one
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [z] * cols
        v[fc] = o
        for r, pc in enumerate(pivots):
            v[pc] = F.neg(R[r][fc])
        basis.append(v)
    return basis


def solve(F: Field, A, b):
    """One solution x of A x = b, or None if inconsistent."""
    rows = len(A)
    cols = len(A[0]) if rows else 0
    aug = [list(row) + [bb] for row, bb in zip(A, b)]
    R, pivots = rref(F, aug)
    z = F.zero
    if cols in pivots:
        return None
    x = [z] * cols
    for r, pc in enumerate(pivots):
        x[pc] = R[r][cols]
    return x


def is_invertible(F: Field, A) -> bool:
    return len(A) == len(A[0]) and rank(F, A) == len(A)
