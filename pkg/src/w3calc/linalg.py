"""Exact Gauss-Jordan elimination over the rationals."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

Row = list[Fraction]


def rref(rows: Sequence[Sequence[Fraction]], ncols: int) -> tuple[list[Row], list[int]]:
    """Reduced row echelon form; pivots are taken left to right.

    Returns the non-zero rows of the RREF and their pivot columns.
    """
    basis: list[Row] = []
    pivots: list[int] = []
    for raw in rows:
        row = [Fraction(x) for x in raw]
        if len(row) != ncols:
            raise ValueError(f"row of length {len(row)} in a {ncols}-column system")
        _insert(basis, pivots, row)
    order = sorted(range(len(pivots)), key=pivots.__getitem__)
    return [basis[i] for i in order], [pivots[i] for i in order]


def _insert(basis: list[Row], pivots: list[int], row: Row) -> int | None:
    # eliminate against the current basis, then back-substitute the new pivot
    for b, p in zip(basis, pivots):
        c = row[p]
        if c:
            for j, x in enumerate(b):
                if x:
                    row[j] -= c * x
    lead = next((j for j, x in enumerate(row) if x), None)
    if lead is None:
        return None
    inv = 1 / row[lead]
    row = [x * inv for x in row]
    for b in basis:
        c = b[lead]
        if c:
            for j, x in enumerate(row):
                if x:
                    b[j] -= c * x
    basis.append(row)
    pivots.append(lead)
    return lead


def reduce_vector(vec: Sequence[Fraction], basis: Sequence[Row], pivots: Sequence[int]) -> Row:
    """Normal form of ``vec`` modulo the row space: zero at every pivot column."""
    out = [Fraction(x) for x in vec]
    for b, p in zip(basis, pivots):
        c = out[p]
        if c:
            for j, x in enumerate(b):
                if x:
                    out[j] -= c * x
    return out


def rank_with_witness(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[tuple[int, int]]:
    """Scan rows in order; return (row index, pivot column) for each independent row.

    The submatrix of the original rows and columns named by the witness is
    non-singular, so its size is the rank.
    """
    basis: list[Row] = []
    pivots: list[int] = []
    witness = []
    for i, raw in enumerate(rows):
        lead = _insert(basis, pivots, [Fraction(x) for x in raw])
        if lead is not None:
            witness.append((i, lead))
    return witness


def determinant(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    """Determinant by fraction-free Bareiss elimination on cleared denominators."""
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    ints = []
    for row in matrix:
        if len(row) != n:
            raise ValueError("determinant of a non-square matrix")
        fr = [Fraction(x) for x in row]
        den = 1
        for x in fr:
            den = math.lcm(den, x.denominator)
        scale /= den
        ints.append([int(x * den) for x in fr])
    m = ints
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if swap is None:
                return Fraction(0)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return Fraction(sign * m[n - 1][n - 1]) * scale

