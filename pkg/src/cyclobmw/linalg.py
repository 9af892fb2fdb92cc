"""Small dense matrices over an exact ground ring, and a Bareiss solver.

Matrices are lists of rows.  Entries may be ints, Fractions, MultiPoly or
RatFunc; only ring operations are used except in :func:`bareiss_solve`.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from .errors import SingularityError
from .ring import is_zero

Matrix = list[list]


def identity(n: int, one=1) -> Matrix:
    return [[one if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(n: int, m: int | None = None) -> Matrix:
    return [[0] * (n if m is None else m) for _ in range(n)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    inner = len(b)
    cols = len(b[0])
    out = []
    for row in a:
        new = []
        for j in range(cols):
            acc = 0
            for k in range(inner):
                if not is_zero(row[k]) and not is_zero(b[k][j]):
                    acc = acc + row[k] * b[k][j]
            new.append(acc)
        out.append(new)
    return out


def mat_vec(a: Matrix, v: Sequence) -> list:
    return [row[0] for row in mat_mul(a, [[x] for x in v])]


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, a: Matrix) -> Matrix:
    return [[c * x for x in row] for row in a]


def mat_pow(a: Matrix, k: int, one=1) -> Matrix:
    out = identity(len(a), one)
    for _ in range(k):
        out = mat_mul(out, a)
    return out


def first_difference(a: Matrix, b: Matrix) -> tuple[int, int] | None:
    for i, (ra, rb) in enumerate(zip(a, b)):
        for j, (x, y) in enumerate(zip(ra, rb)):
            if not is_zero(x - y):
                return i, j
    return None


def mat_equal(a: Matrix, b: Matrix) -> bool:
    return first_difference(a, b) is None


def rank(a: Matrix) -> int:
    """Rank over the rationals (Fraction entries)."""
    m = [[Fraction(x) for x in row] for row in a]
    rows, cols = len(m), len(m[0]) if m else 0
    rk = 0
    for c in range(cols):
        pivot = next((i for i in range(rk, rows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[rk], m[pivot] = m[pivot], m[rk]
        for i in range(rows):
            if i != rk and m[i][c] != 0:
                f = m[i][c] / m[rk][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[rk])]
        rk += 1
    return rk


def bareiss_solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Solve a x = b exactly by fraction-free (Bareiss) elimination.

    Rows are first scaled to integers; every intermediate division is exact.
    """
    n = len(a)
    aug = []
    for row, rhs in zip(a, b):
        entries = [Fraction(x) for x in row] + [Fraction(rhs)]
        scale = lcm(*(x.denominator for x in entries))
        aug.append([int(x * scale) for x in entries])
    prev = 1
    for k in range(n):
        if aug[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if aug[i][k] != 0), None)
            if swap is None:
                raise SingularityError("linear system is singular")
            aug[k], aug[swap] = aug[swap], aug[k]
        pivot = aug[k][k]
        for i in range(k + 1, n):
            lead = aug[i][k]
            for j in range(k + 1, n + 1):
                aug[i][j] = (aug[i][j] * pivot - lead * aug[k][j]) // prev
            aug[i][k] = 0
        prev = pivot
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(aug[i][n])
        for j in range(i + 1, n):
            acc -= aug[i][j] * x[j]
        x[i] = acc / aug[i][i]
    return x
