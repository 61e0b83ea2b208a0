"""Fraction-free exact linear algebra.

Matrices are lists of rows. Entries may be rationals, :class:`MultiPoly`
or :class:`QuadSurd`. Elimination is Bareiss-style: every intermediate
entry is a minor of the input, so each division is exact and rational
matrices stay integral once row denominators are cleared.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .multipoly import MultiPoly
from .scalars import field_div, is_scalar, lcm, norm

Matrix = list[list]


def shape(m: Sequence[Sequence]) -> tuple[int, int]:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if any(len(r) != cols for r in m):
        raise ValueError("matrix is not rectangular")
    return rows, cols


def _pivot_key(x):
    if isinstance(x, MultiPoly):
        return (x.degree(), len(x))
    if type(x) is int:
        return (0, abs(x).bit_length())
    if isinstance(x, Fraction):
        return (0, abs(x.numerator).bit_length() + x.denominator.bit_length())
    return (0, 0)


def _exact_div(a, b):
    if type(a) is int and type(b) is int:
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError("Bareiss division was not exact")
        return q
    if isinstance(a, MultiPoly):
        return a.exact_div(b) if isinstance(b, MultiPoly) else a / b
    return field_div(a, b)


def _integral_rows(m: Sequence[Sequence]) -> Matrix:
    """Scale each rational row by its denominators' lcm."""
    out = []
    for row in m:
        den = 1
        for x in row:
            if isinstance(x, Fraction):
                den = lcm(den, x.denominator)
        out.append([norm(x * den) for x in row])
    return out


def _is_rational(m: Sequence[Sequence]) -> bool:
    return all(is_scalar(x) for row in m for x in row)


def bareiss_echelon(m: Sequence[Sequence]) -> tuple[Matrix, list[int], int]:
    """Fraction-free row echelon form.

    Returns ``(rows, pivot_columns, sign)`` where ``sign`` is the parity of
    the row swaps. Pivots prefer the lowest-degree (smallest) entry.
    """
    nrows, ncols = shape(m)
    a = [list(r) for r in m]
    prev = 1
    sign = 1
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        candidates = [i for i in range(r, nrows) if a[i][c]]
        if not candidates:
            continue
        p = min(candidates, key=lambda i: _pivot_key(a[i][c]))
        if p != r:
            a[r], a[p] = a[p], a[r]
            sign = -sign
        piv = a[r][c]
        for i in range(r + 1, nrows):
            lead = a[i][c]
            row_i, row_r = a[i], a[r]
            for j in range(c + 1, ncols):
                v = piv * row_i[j]
                if lead and row_r[j]:
                    v = v - lead * row_r[j]
                row_i[j] = _exact_div(v, prev) if v else 0
            row_i[c] = 0
        # rows above r keep their scale; rows below were multiplied through
        prev = piv
        pivots.append(c)
        r += 1
    return a, pivots, sign


def rank_exact(m: Sequence[Sequence]) -> int:
    if not m or not m[0]:
        return 0
    rows = _integral_rows(m) if _is_rational(m) else m
    return len(bareiss_echelon(rows)[1])


def det_exact(m: Sequence[Sequence]):
    """Determinant by fraction-free elimination."""
    n, cols = shape(m)
    if n != cols:
        raise ValueError(f"determinant of a non-square {n}x{cols} matrix")
    if n == 0:
        return 1
    scale = 1
    rows = m
    if _is_rational(m):
        rows = _integral_rows(m)
        for orig, new in zip(m, rows):
            for x, y in zip(orig, new):
                if x:
                    scale = scale * Fraction(y) / x
                    break
    a, pivots, sign = bareiss_echelon(rows)
    if len(pivots) < n:
        zero = a[0][0] * 0 if not is_scalar(a[0][0]) else 0
        return zero
    d = a[n - 1][n - 1] * sign
    if scale != 1:
        d = norm(Fraction(d) / scale)
    return d


def null_space_exact(m: Sequence[Sequence]) -> list[list]:
    """Basis of the right kernel over the coefficient field.

    Each basis vector has a 1 in one free column and 0 in the others.
    Returns ``[]`` when the kernel is trivial. Entries must come from a
    field (rationals or a quadratic field), not a polynomial ring.
    """
    nrows, ncols = shape(m) if m else (0, 0)
    if ncols == 0:
        return []
    if any(isinstance(x, MultiPoly) for row in m for x in row):
        raise TypeError("null space needs field entries, not polynomials")
    rows = _integral_rows(m) if _is_rational(m) else [list(r) for r in m]
    a, pivots, _ = bareiss_echelon(rows) if nrows else ([], [], 1)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x: list = [0] * ncols
        x[f] = 1
        for r in range(len(pivots) - 1, -1, -1):
            pc = pivots[r]
            s = 0
            for j in range(pc + 1, ncols):
                if a[r][j] and x[j]:
                    s = s + a[r][j] * x[j]
            x[pc] = field_div(-s, a[r][pc]) if s else 0
        basis.append(x)
    return basis


def submatrix(m: Sequence[Sequence], rows: Sequence[int], cols: Sequence[int]) -> Matrix:
    return [[m[i][j] for j in cols] for i in rows]


def mat_vec(m: Sequence[Sequence], v: Sequence) -> list:
    out = []
    for row in m:
        s = 0
        for x, y in zip(row, v):
            if x and y:
                s = s + x * y
        out.append(s)
    return out
