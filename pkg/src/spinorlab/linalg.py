"""Small exact linear algebra kernel over Fraction matrices.

Matrices are lists of row lists.  Nothing here mutates its arguments;
reductions copy first.  Pivoting is deterministic (first nonzero entry in
column order), which fixes echelon forms and null-space bases bit for bit.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]
Vector = list[Fraction]


def copy_matrix(rows: Sequence[Sequence[Fraction]]) -> Matrix:
    return [list(map(Fraction, row)) for row in rows]


def zeros(n_rows: int, n_cols: int) -> Matrix:
    return [[Fraction(0)] * n_cols for _ in range(n_rows)]


def identity(n: int) -> Matrix:
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = Fraction(1)
    return out


def mat_mul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Matrix:
    """Product with zero-skipping, useful for the sparse point matrices."""
    n, k = len(a), len(b)
    if any(len(row) != k for row in a):
        raise ValueError("inner dimensions do not match")
    m = len(b[0])
    out = zeros(n, m)
    for i in range(n):
        row_a = a[i]
        row_out = out[i]
        for t in range(k):
            c = row_a[t]
            if not c:
                continue
            row_b = b[t]
            for j in range(m):
                if row_b[j]:
                    row_out[j] += c * row_b[j]
    return out


def mat_vec(a: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vector:
    return [sum((c * v[j] for j, c in enumerate(row) if c), Fraction(0)) for row in a]


def mat_eq(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> bool:
    return len(a) == len(b) and all(list(ra) == list(rb) for ra, rb in zip(a, b))


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    m = copy_matrix(rows)
    if not m:
        return m, []
    n_rows, n_cols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        pivot_row = next((i for i in range(r, n_rows) if m[i][c]), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = Fraction(1) / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return m, pivots


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    return len(rref(rows)[1])


def null_space(rows: Sequence[Sequence[Fraction]]) -> list[Vector]:
    """Basis of the right null space, one vector per free column.

    Vectors are in the standard reduced-echelon parametrization: entry 1 at
    the free column, minus the echelon entry at each pivot column, zero
    elsewhere.  Free columns are emitted in increasing order.
    """
    if not rows:
        return []
    reduced, pivots = rref(rows)
    n_cols = len(rows[0])
    pivot_set = set(pivots)
    basis: list[Vector] = []
    for free in range(n_cols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * n_cols
        vec[free] = Fraction(1)
        for row_idx, piv in enumerate(pivots):
            vec[piv] = -reduced[row_idx][free]
        basis.append(vec)
    return basis


def solve_unique(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Vector | None:
    """Unique solution of A x = b, or None when singular/inconsistent."""
    if len(rows) != len(rhs):
        raise ValueError("matrix and right-hand side sizes differ")
    n_cols = len(rows[0]) if rows else 0
    augmented = [list(map(Fraction, row)) + [Fraction(rhs[i])] for i, row in enumerate(rows)]
    reduced, pivots = rref(augmented)
    if n_cols in pivots:
        return None  # inconsistent
    if len(pivots) != n_cols:
        return None  # underdetermined
    solution = [Fraction(0)] * n_cols
    for row_idx, piv in enumerate(pivots):
        solution[piv] = reduced[row_idx][n_cols]
    return solution


def det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    m = copy_matrix(rows)
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant needs a square matrix")
    result = Fraction(1)
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if m[i][c]), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != c:
            m[c], m[pivot_row] = m[pivot_row], m[c]
            result = -result
        result *= m[c][c]
        inv = Fraction(1) / m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return result


def column_space_contains(basis_rows: Sequence[Sequence[Fraction]], vector: Sequence[Fraction]) -> bool:
    """True when `vector` lies in the row span of `basis_rows`."""
    if all(not x for x in vector):
        return True
    base_rank = rank(basis_rows)
    return rank(list(basis_rows) + [list(vector)]) == base_rank


def same_row_space(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> bool:
    ra, rb = rank(a), rank(b)
    if ra != rb:
        return False
    return rank(list(a) + list(b)) == ra
