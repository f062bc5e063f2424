"""Exact rank and inversion for small rational matrices."""
from __future__ import annotations

from fractions import Fraction
from math import gcd


def _primitive(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {k: v // g for k, v in row.items()}
    return row


def sparse_rank(rows) -> int:
    """Rank over Q of an integer matrix given as an iterable of {col: int} rows.

    Fraction-free elimination: every pivot row is kept primitive, and rows are
    reduced by integer combinations ``p*r - r[c]*pivot``.
    """
    pivots = {}  # column -> primitive row with leading entry at that column
    rank = 0
    for row in rows:
        r = {k: int(v) for k, v in row.items() if v}
        while r:
            c = min(r)
            piv = pivots.get(c)
            if piv is None:
                pivots[c] = _primitive(r)
                rank += 1
                break
            a, b = piv[c], r[c]
            g = gcd(a, b)
            a, b = a // g, b // g
            new = {}
            for k, v in r.items():
                new[k] = a * v
            for k, v in piv.items():
                w = new.get(k, 0) - b * v
                if w:
                    new[k] = w
                else:
                    new.pop(k, None)
            r = _primitive(new) if new else new
    return rank


def rank(matrix) -> int:
    """Rank over Q of a dense integer matrix (list of lists)."""
    return sparse_rank({j: v for j, v in enumerate(row) if v} for row in matrix)


class SingularMatrixError(ArithmeticError):
    pass


def inverse(matrix):
    """Exact inverse of a square matrix of rationals via Gauss-Jordan elimination."""
    n = len(matrix)
    a = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [v / p for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                k = a[r][col]
                a[r] = [x - k * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def is_invertible(matrix) -> bool:
    n = len(matrix)
    if n == 0:
        return True
    ints = _integerize(matrix)
    return rank(ints) == n


def _integerize(matrix):
    out = []
    for row in matrix:
        fr = [Fraction(v) for v in row]
        den = 1
        for v in fr:
            den = den * v.denominator // gcd(den, v.denominator)
        out.append([int(v * den) for v in fr])
    return out


def matmul(a, b):
    n, m, k = len(a), len(b), len(b[0]) if b else 0
    return [[sum((a[i][t] * b[t][j] for t in range(m)), Fraction(0)) for j in range(k)]
            for i in range(n)]


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
