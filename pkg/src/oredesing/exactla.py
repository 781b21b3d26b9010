"""Exact linear algebra over the rationals.

Solving is fraction-free: each row is scaled to integers, then one-step
Bareiss elimination keeps every intermediate entry an exact minor of the
integer matrix, and only the final back substitution returns to rationals.
Pivoting is deterministic (first eligible column, smallest bit-length entry,
ties broken by row index) so kernels are reproducible across platforms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as int_gcd
from typing import List, Optional, Sequence, Tuple


@dataclass(frozen=True)
class QMatrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows * self.cols != len(self.entries):
            raise ValueError("entry count does not match the matrix shape")

    @staticmethod
    def from_rows(rows: Sequence[Sequence]) -> "QMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        flat = []
        for row in rows:
            if len(row) != ncols:
                raise ValueError("ragged rows")
            flat.extend(Fraction(c) for c in row)
        return QMatrix(nrows, ncols, tuple(flat))

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def mul_vec(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise ValueError("vector length does not match column count")
        out = []
        for i in range(self.rows):
            row = self.row(i)
            out.append(sum((a * b for a, b in zip(row, v)), Fraction(0)))
        return tuple(out)


def _integer_rows(m: QMatrix, rhs: Optional[Sequence] = None) -> Tuple[list, list]:
    """Scale each row (and its rhs entry) to integers; preserves solutions."""
    rows = []
    vec = []
    for i in range(m.rows):
        row = list(m.row(i))
        extra = [Fraction(rhs[i])] if rhs is not None else []
        scale = 1
        for c in row + extra:
            scale = scale * c.denominator // int_gcd(scale, c.denominator)
        rows.append([int(c * scale) for c in row])
        if rhs is not None:
            vec.append(int(extra[0] * scale))
    return rows, vec


def _eliminate(rows: List[List[int]], pivot_cols: int) -> list:
    """In-place fraction-free row echelon; returns the pivot (row, col) list.

    One-step Bareiss: every update divides exactly by the previous pivot.
    Only the first ``pivot_cols`` columns are eligible for pivots, so an
    augmented column never becomes one.
    """
    if not rows:
        return []
    width = len(rows[0])
    pivots = []
    prev = 1
    piv_row = 0
    for col in range(pivot_cols):
        if piv_row >= len(rows):
            break
        best = None
        for r in range(piv_row, len(rows)):
            e = rows[r][col]
            if e:
                bits = abs(e).bit_length()
                if best is None or bits < best[0]:
                    best = (bits, r)
        if best is None:
            continue
        if best[1] != piv_row:
            rows[piv_row], rows[best[1]] = rows[best[1]], rows[piv_row]
        pivot = rows[piv_row][col]
        prow = rows[piv_row]
        for r in range(piv_row + 1, len(rows)):
            row = rows[r]
            factor = row[col]
            if factor:
                for c in range(col, width):
                    row[c] = (pivot * row[c] - factor * prow[c]) // prev
            elif pivot != prev:
                for c in range(col, width):
                    if row[c]:
                        row[c] = pivot * row[c] // prev
        prev = pivot
        pivots.append((piv_row, col))
        piv_row += 1
    return pivots


def rank(m: QMatrix) -> int:
    rows, _ = _integer_rows(m)
    return len(_eliminate(rows, m.cols))


def nullspace(m: QMatrix) -> list:
    """A basis of the right kernel, each vector a primitive integer tuple.

    The basis is in one-to-one correspondence with the free columns, taken in
    ascending order; each vector's first nonzero entry is positive.
    """
    rows, _ = _integer_rows(m)
    pivots = _eliminate(rows, m.cols)
    pivot_cols = {c for _, c in pivots}
    free_cols = [c for c in range(m.cols) if c not in pivot_cols]
    basis = []
    for fc in free_cols:
        v = [Fraction(0)] * m.cols
        v[fc] = Fraction(1)
        for r, c in reversed(pivots):
            if c > fc:
                continue
            acc = Fraction(0)
            row = rows[r]
            for j in range(c + 1, m.cols):
                if v[j]:
                    acc += row[j] * v[j]
            v[c] = -acc / row[c]
        basis.append(_primitive_int_vector(v))
    return basis


def solve_affine(m: QMatrix, rhs: Sequence) -> Optional[tuple]:
    """One exact solution of m*x = rhs, or None when inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    if len(rhs) != m.rows:
        raise ValueError("right-hand side length does not match row count")
    rows, vec = _integer_rows(m, rhs)
    for row, b in zip(rows, vec):
        row.append(b)
    pivots = _eliminate(rows, m.cols)
    pivot_rows = {r for r, _ in pivots}
    for r in range(len(rows)):
        if r not in pivot_rows and rows[r][m.cols] != 0:
            if any(rows[r][:m.cols]):
                raise AssertionError("unreduced non-pivot row after elimination")
            return None
    x = [Fraction(0)] * m.cols
    for r, c in reversed(pivots):
        row = rows[r]
        acc = Fraction(row[m.cols])
        for j in range(c + 1, m.cols):
            if x[j]:
                acc -= row[j] * x[j]
        x[c] = acc / row[c]
    return tuple(x)


def _primitive_int_vector(v: List[Fraction]) -> tuple:
    scale = 1
    for c in v:
        scale = scale * c.denominator // int_gcd(scale, c.denominator)
    ints = [int(c * scale) for c in v]
    g = 0
    for c in ints:
        g = int_gcd(g, c)
    if g > 1:
        ints = [c // g for c in ints]
    for c in ints:
        if c:
            if c < 0:
                ints = [-e for e in ints]
            break
    return tuple(ints)
