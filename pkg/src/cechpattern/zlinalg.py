"""Exact integer linear algebra over Python ints.

Matrices are lists of row lists.  Nothing here ever touches floating point.
"""

from __future__ import annotations

from typing import Optional, Sequence

Matrix = list  # list[list[int]]


class DimensionMismatch(ValueError):
    pass


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if A and len(A[0]) != len(B):
        raise DimensionMismatch("inner dimensions differ")
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Matrix, x: Sequence[int]) -> list[int]:
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def transpose(A: Matrix, cols: int | None = None) -> Matrix:
    if not A:
        return [[] for _ in range(cols or 0)]
    return [list(c) for c in zip(*A)]


def determinant(A: Matrix) -> int:
    """Bareiss fraction-free elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [row[:] for row in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def smith_normal_form(A: Matrix, cols: int | None = None):
    """Return ``(U, S, V)`` with ``U·A·V = S`` and ``U, V`` unimodular.

    ``S`` is diagonal with nonnegative entries ``d1 | d2 | ...``.  The pivot is
    the entry of least absolute value in the trailing block, ties broken by
    (row, column).  ``cols`` gives the width when ``A`` has no rows.
    """
    m = len(A)
    n = len(A[0]) if m else (cols or 0)
    if any(len(row) != n for row in A):
        raise DimensionMismatch("ragged matrix")
    S = [list(row) for row in A]
    U = identity(m)
    V = identity(n)

    def add_row(dst, src, q):  # row_dst -= q * row_src
        rs, rd = S[src], S[dst]
        for j in range(n):
            if rs[j]:
                rd[j] -= q * rs[j]
        us, ud = U[src], U[dst]
        for j in range(m):
            if us[j]:
                ud[j] -= q * us[j]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for row in S:
            if row[src]:
                row[dst] -= q * row[src]
        for row in V:
            if row[src]:
                row[dst] -= q * row[src]

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                row = S[i]
                for j in range(t, n):
                    a = row[j]
                    if a and (best is None or abs(a) < best[0]):
                        best = (abs(a), i, j)
                        if best[0] == 1:
                            break
                if best is not None and best[0] == 1:
                    break
            if best is None:
                return U, S, V
            _, i, j = best
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            p = S[t][t]
            clean = True
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(i, t, S[i][t] // p)
                    if S[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(j, t, S[t][j] // p)
                    if S[t][j]:
                        clean = False
            if not clean:
                continue
            bad = None
            for i in range(t + 1, m):
                row = S[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, -1)
        if S[t][t] < 0:
            S[t] = [-a for a in S[t]]
            U[t] = [-a for a in U[t]]
    return U, S, V


def diagonal(S: Matrix) -> list[int]:
    return [S[i][i] for i in range(min(len(S), len(S[0]) if S else 0))]


def invariant_factors(A: Matrix, cols: int | None = None) -> list[int]:
    """Nonzero diagonal of the Smith form."""
    _, S, _ = smith_normal_form(A, cols)
    return [d for d in diagonal(S) if d]


def rank(A: Matrix, cols: int | None = None) -> int:
    return len(invariant_factors(A, cols))


def kernel_basis(A: Matrix, cols: int | None = None) -> list[list[int]]:
    """A Z-basis of ``{x : A x = 0}``: the columns of V facing zero pivots."""
    n = len(A[0]) if A else (cols or 0)
    _, S, V = smith_normal_form(A, n)
    r = sum(1 for d in diagonal(S) if d)
    out = []
    for j in range(r, n):
        v = [V[i][j] for i in range(n)]
        lead = next(a for a in v if a)
        out.append(v if lead > 0 else [-a for a in v])
    return out


def hermite_rows(vectors: list[list[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of the lattice spanned by ``vectors``.

    Pivots are positive, entries above each pivot are reduced into
    ``[0, pivot)``, zero rows are dropped.  The result is a canonical basis.
    """
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return []
    n = len(rows[0])
    out = []
    col = 0
    while rows and col < n:
        active = [r for r in rows if r[col]]
        if not active:
            col += 1
            continue
        rest = [r for r in rows if not r[col]]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            piv = active[0]
            nxt = [piv]
            for r in active[1:]:
                q = r[col] // piv[col]
                r = [a - q * b for a, b in zip(r, piv)]
                if r[col]:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            active = nxt
        piv = active[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        for k, prev in enumerate(out):
            q = prev[col] // piv[col]
            if q:
                out[k] = [a - q * b for a, b in zip(prev, piv)]
        out.append(piv)
        rows = rest
        col += 1
    return out


def solve_linear(A: Matrix, b: Sequence[int], cols: int | None = None) -> Optional[list[int]]:
    """Some integer ``x`` with ``A x = b``, or ``None`` if there is none."""
    m = len(A)
    n = len(A[0]) if m else (cols or 0)
    if len(b) != m:
        raise DimensionMismatch(f"matrix has {m} rows, right-hand side has {len(b)}")
    U, S, V = smith_normal_form(A, n)
    c = matvec(U, b)
    y = [0] * n
    for i in range(m):
        d = S[i][i] if i < n else 0
        if d == 0:
            if c[i]:
                return None
        else:
            if c[i] % d:
                return None
            y[i] = c[i] // d
    return matvec(V, y) if n else []
