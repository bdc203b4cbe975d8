"""Exact linear algebra over Q(i) scalars and over polynomial matrices.

Matrices are plain lists of lists.  Everything here is deterministic
and exact; there is no pivoting heuristic beyond "first nonzero".
"""

from __future__ import annotations

from .scalars import ONE, ZERO, Scalar
from .unipoly import UniPoly

# -- scalar matrices -------------------------------------------------------


def identity(n: int) -> list[list[Scalar]]:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = ZERO
            for k in range(m):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def mat_vec(a, v):
    return [sum((a[i][k] * v[k] for k in range(len(v))), ZERO) for i in range(len(a))]


def det(a) -> Scalar:
    """Determinant by exact Gaussian elimination."""
    n = len(a)
    m = [row[:] for row in a]
    out = ONE
    for col in range(n):
        pivot = next((r for r in range(col, n) if not m[r][col].is_zero()), None)
        if pivot is None:
            return ZERO
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            out = -out
        out = out * m[col][col]
        inv = m[col][col].inverse()
        for r in range(col + 1, n):
            if m[r][col].is_zero():
                continue
            f = m[r][col] * inv
            for c in range(col, n):
                m[r][c] = m[r][c] - f * m[col][c]
    return out


def inverse(a) -> list[list[Scalar]]:
    """Exact inverse by Gauss-Jordan; raises ZeroDivisionError if singular."""
    n = len(a)
    m = [row[:] + identity(n)[i] for i, row in enumerate(a)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if not m[r][col].is_zero()), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        m[col], m[pivot] = m[pivot], m[col]
        inv = m[col][col].inverse()
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and not m[r][col].is_zero():
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


def rref(a):
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    m = [row[:] for row in a]
    rows, cols = len(m), len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        pivot = next((k for k in range(r, rows) if not m[k][c].is_zero()), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for k in range(rows):
            if k != r and not m[k][c].is_zero():
                f = m[k][c]
                m[k] = [x - f * y for x, y in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def solve_particular(a, b):
    """One exact solution x of a x = b, or None if inconsistent.

    Free variables are set to zero, so the solution support is exactly
    the pivot columns (deterministic).
    """
    rows = [a[i][:] + [b[i]] for i in range(len(a))]
    red, pivots = rref(rows)
    cols = len(a[0]) if a else 0
    if cols in pivots:
        return None  # pivot in the augmented column: inconsistent
    x = [ZERO] * cols
    for r, c in enumerate(pivots):
        x[c] = red[r][cols]
    return x


# -- polynomial matrices ---------------------------------------------------


def upoly_identity(n: int, var: str = "t") -> list[list[UniPoly]]:
    one = UniPoly.const(ONE, var)
    zero = UniPoly({}, var)
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def upoly_mat_mul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = None
            for k in range(m):
                term = a[i][k] * b[k][j]
                acc = term if acc is None else acc + term
            row.append(acc)
        out.append(row)
    return out


def upoly_det(m) -> UniPoly:
    """Determinant by Laplace expansion memoized on column subsets."""
    n = len(m)
    var = m[0][0].var
    memo2: dict[tuple[int, int], UniPoly] = {}

    def minor2(row: int, colmask: int) -> UniPoly:
        if row == n:
            return UniPoly.const(ONE, var)
        got = memo2.get((row, colmask))
        if got is not None:
            return got
        acc = UniPoly({}, var)
        sign = 1
        for j in range(n):
            bit = 1 << j
            if colmask & bit:
                continue  # sign alternates over the *available* columns only
            entry = m[row][j]
            if not entry.is_zero():
                term = entry * minor2(row + 1, colmask | bit)
                acc = acc + (term if sign > 0 else -term)
            sign = -sign
        memo2[(row, colmask)] = acc
        return acc

    return minor2(0, 0)


def upoly_adjugate(m) -> list[list[UniPoly]]:
    """Adjugate matrix: adj(M)[i][j] = (-1)^(i+j) * minor_ji."""
    n = len(m)
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            sub = [
                [m[r][c] for c in range(n) if c != i]
                for r in range(n)
                if r != j
            ]
            cof = upoly_det(sub) if sub else UniPoly.const(ONE, m[0][0].var)
            out[i][j] = cof if (i + j) % 2 == 0 else -cof
    return out


def upoly_mat_eval(m, point: Scalar):
    return [[e.evaluate(point) for e in row] for row in m]
