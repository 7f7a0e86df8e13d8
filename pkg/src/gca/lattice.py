"""Exact integer linear algebra.

Matrices are plain lists of rows holding Python ints, so entries never
overflow.  The Smith normal form drives every rank, kernel and cokernel
computation elsewhere in the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

IntMatrix = list[list[int]]


def shape(B: Sequence[Sequence[int]]) -> tuple[int, int]:
    rows = len(B)
    cols = len(B[0]) if rows else 0
    for row in B:
        if len(row) != cols:
            raise ValueError("ragged matrix")
    return rows, cols


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> IntMatrix:
    return [[0] * cols for _ in range(rows)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
    """Product of integer matrices.

    ``cols`` gives the column count of ``B`` when ``B`` has no rows.
    """
    if B:
        cols = len(B[0])
    elif cols is None:
        cols = 0
    out = []
    for row in A:
        acc = [0] * cols
        for k, a in enumerate(row):
            if a:
                brow = B[k]
                for j in range(cols):
                    acc[j] += a * brow[j]
        out.append(acc)
    return out


def transpose(B: Sequence[Sequence[int]], rows: int | None = None) -> IntMatrix:
    if not B:
        return [[] for _ in range(rows or 0)]
    return [list(col) for col in zip(*B)]


def determinant(B: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    n, m = shape(B)
    if n != m:
        raise ValueError("determinant of a non-square matrix")
    M = [list(r) for r in B]
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
    return sign * M[n - 1][n - 1] if n else 1


def bareiss_rank(B: Sequence[Sequence[int]]) -> int:
    """Rank by fraction-free Gaussian elimination.

    Kept independent of :func:`smith_normal_form` so the two can check
    each other.
    """
    M = [list(r) for r in B]
    rows, cols = shape(M)
    rank, prev = 0, 1
    for c in range(cols):
        pivot = next((i for i in range(rank, rows) if M[i][c]), None)
        if pivot is None:
            continue
        M[rank], M[pivot] = M[pivot], M[rank]
        p = M[rank][c]
        for i in range(rank + 1, rows):
            for j in range(c + 1, cols):
                M[i][j] = (M[i][j] * p - M[i][c] * M[rank][j]) // prev
            M[i][c] = 0
        prev = p
        rank += 1
        if rank == rows:
            break
    return rank


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ B @ V == diag(divisors, 0, ...)`` with ``U``, ``V`` unimodular."""

    U: IntMatrix
    V: IntMatrix
    divisors: tuple[int, ...]
    rows: int
    cols: int

    @property
    def rank(self) -> int:
        return len(self.divisors)

    def diagonal(self) -> IntMatrix:
        D = zeros(self.rows, self.cols)
        for i, d in enumerate(self.divisors):
            D[i][i] = d
        return D


def _nearest(a: int, p: int) -> int:
    """Integer quotient ``q`` with ``|a - q p| <= |p| / 2``."""
    q, r = divmod(a, p)
    if 2 * abs(r) > abs(p):
        q += 1
    return q


def smith_normal_form(B: Sequence[Sequence[int]]) -> SmithDecomposition:
    rows, cols = shape(B)
    D = [list(map(int, r)) for r in B]
    U = identity(rows)
    V = identity(cols)

    def swap_rows(i: int, j: int) -> None:
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i: int, j: int) -> None:
        for M in (D, V):
            for r in M:
                r[i], r[j] = r[j], r[i]

    def add_row(src: int, dst: int, q: int) -> None:
        # row[dst] += q * row[src]
        for M in (D, U):
            a, b = M[src], M[dst]
            for k in range(len(a)):
                b[k] += q * a[k]

    def add_col(src: int, dst: int, q: int) -> None:
        for M in (D, V):
            for r in M:
                r[dst] += q * r[src]

    divisors = []
    for t in range(min(rows, cols)):
        # smallest nonzero entry of the trailing block becomes the pivot
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            # keep the smallest entry of row t and column t as the pivot
            i_min = min((i for i in range(t, rows) if D[i][t]), key=lambda i: abs(D[i][t]))
            j_min = min((j for j in range(t, cols) if D[t][j]), key=lambda j: abs(D[t][j]))
            if abs(D[i_min][t]) < abs(D[t][j_min]):
                swap_rows(t, i_min)
            elif j_min != t and abs(D[t][j_min]) < abs(D[t][t]):
                swap_cols(t, j_min)
            p = D[t][t]
            for i in range(t + 1, rows):
                if D[i][t]:
                    add_row(t, i, -_nearest(D[i][t], p))
            for j in range(t + 1, cols):
                if D[t][j]:
                    add_col(t, j, -_nearest(D[t][j], p))
            if any(D[i][t] for i in range(t + 1, rows)) or any(D[t][j] for j in range(t + 1, cols)):
                continue
            # divisibility: fold an offending row into the pivot row
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if D[i][j] % D[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(bad, t, 1)
        if D[t][t] < 0:
            for M in (D, U):
                M[t] = [-x for x in M[t]]
        divisors.append(D[t][t])
    return SmithDecomposition(U, V, tuple(divisors), rows, cols)


def rank(B: Sequence[Sequence[int]]) -> int:
    return smith_normal_form(B).rank


def is_unimodular(M: Sequence[Sequence[int]]) -> bool:
    return abs(determinant(M)) == 1


def kernel_basis(B: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
    """Basis of the integer kernel ``{x : B x = 0}`` as a list of vectors."""
    if not B:
        n = cols or 0
        return identity(n)
    snf = smith_normal_form(B)
    return [[snf.V[i][j] for i in range(snf.cols)] for j in range(snf.rank, snf.cols)]


def solve(B: Sequence[Sequence[int]], b: Sequence[int], cols: int | None = None) -> list[int] | None:
    """One integer solution of ``B x = b``, or ``None`` when none exists."""
    if not B:
        return [0] * (cols or 0) if not any(b) else None
    snf = smith_normal_form(B)
    Ub = [sum(u * v for u, v in zip(row, b)) for row in snf.U]
    w = [0] * snf.cols
    for i, d in enumerate(snf.divisors):
        if Ub[i] % d:
            return None
        w[i] = Ub[i] // d
    if any(Ub[snf.rank:]):
        return None
    return [sum(snf.V[i][j] * w[j] for j in range(snf.cols)) for i in range(snf.cols)]


def kernel_invariants(B: Sequence[Sequence[int]], torsion: Callable[[int], int], cols: int | None = None) -> tuple[int, int]:
    """Dimension and number of connected components of ``ker B``.

    ``B`` acts on ``D^cols`` for a divisible group ``D`` whose ``n``-torsion
    has ``torsion(n)`` points.  The kernel splits as ``D^(cols - rank)``
    times the ``d``-torsion for every Smith divisor ``d``.
    """
    if B:
        snf = smith_normal_form(B)
        n, divisors = snf.cols, snf.divisors
    else:
        n, divisors = cols or 0, ()
    components = 1
    for d in divisors:
        if d > 1:
            components *= torsion(d)
    return n - len(divisors), components
