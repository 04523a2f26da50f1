"""Exact linear algebra over the rationals.

Everything here works with ``fractions.Fraction`` or plain ints; there is no
floating point anywhere in the package.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def invert(matrix) -> list[list[Fraction]]:
    """Invert a square rational matrix by Gauss-Jordan elimination.

    Raises ValueError if the matrix is singular.
    """
    n = len(matrix)
    aug = [
        [Fraction(matrix[i][j]) for j in range(n)]
        + [Fraction(1 if i == j else 0) for j in range(n)]
        for i in range(n)
    ]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise ValueError("singular matrix")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def ldl(matrix) -> tuple[list[list[Fraction]], list[Fraction]]:
    """LDL^T decomposition of a symmetric positive definite rational matrix.

    Returns (L, D) with L unit lower triangular and D the diagonal entries.
    Used for exact bounded enumeration of lattice points: the quadratic form
    becomes a weighted sum of squares with per-coordinate exact bounds.
    """
    n = len(matrix)
    L = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    D = [Fraction(0)] * n
    for j in range(n):
        D[j] = Fraction(matrix[j][j]) - sum(L[j][k] ** 2 * D[k] for k in range(j))
        if D[j] <= 0:
            raise ValueError("matrix is not positive definite")
        for i in range(j + 1, n):
            L[i][j] = (
                Fraction(matrix[i][j]) - sum(L[i][k] * L[j][k] * D[k] for k in range(j))
            ) / D[j]
    return L, D


def _strip_gcd(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        g = gcd(g, x)
        if g == 1:
            return row
    return row if g <= 1 else [x // g for x in row]


class IntRowEchelon:
    """Incremental fraction-free row echelon form of an integer matrix.

    Rows are inserted one at a time; each is reduced against the current
    pivots with integer cross-multiplication, so no Fraction ever appears.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, list[int]] = {}  # pivot column -> reduced row

    def insert(self, row: list[int]) -> bool:
        """Reduce ``row`` and add it if independent. Returns True if added."""
        row = list(row)
        for col in sorted(self.pivots):
            if row[col]:
                p = self.pivots[col]
                a, b = p[col], row[col]
                g = gcd(a, b)
                a, b = a // g, b // g
                row = _strip_gcd([a * x - b * y for x, y in zip(row, p)])
        lead = next((c for c, x in enumerate(row) if x), None)
        if lead is None:
            return False
        row = _strip_gcd(row)
        if row[lead] < 0:
            row = [-x for x in row]
        self.pivots[lead] = row
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def nullspace(self) -> list[list[int]]:
        """Primitive integer basis of the right nullspace.

        One basis vector per free column, normalized so the first nonzero
        entry is positive and the entries are coprime.
        """
        pivot_cols = sorted(self.pivots)
        free_cols = [c for c in range(self.ncols) if c not in self.pivots]
        basis = []
        for f in free_cols:
            x = [Fraction(0)] * self.ncols
            x[f] = Fraction(1)
            # Pivot rows are mutually unreduced above the diagonal, so solve
            # bottom-up by substitution.
            for col in reversed(pivot_cols):
                row = self.pivots[col]
                s = sum(
                    (Fraction(row[c]) * x[c] for c in range(col + 1, self.ncols) if row[c]),
                    Fraction(0),
                )
                x[col] = -s / row[col]
            lcm = 1
            for v in x:
                lcm = lcm * v.denominator // gcd(lcm, v.denominator)
            ints = _strip_gcd([int(v * lcm) for v in x])
            first = next(v for v in ints if v)
            if first < 0:
                ints = [-v for v in ints]
            basis.append(ints)
        return basis


def nullspace_int(rows: list[list[int]], ncols: int) -> list[list[int]]:
    """Primitive integer nullspace basis of an integer constraint matrix."""
    ech = IntRowEchelon(ncols)
    for row in rows:
        ech.insert(row)
    return ech.nullspace()
