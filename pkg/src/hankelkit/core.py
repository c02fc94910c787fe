"""Moment sequences, Hankel determinants, minors, and the binomial transform.

A sequence prefix s_0..s_M determines the Hankel matrices
H_n = (s_{i+j})_{i,j=0..n}.  This module computes their determinants D_n,
the shifted determinants D'_{n+1} (last column advanced one step), arbitrary
single-entry minors, matrix ranks, and the determinant-preserving binomial
transform.  Everything here is exact: determinants run fraction-free
(Bareiss) elimination on integer matrices obtained by clearing denominators
row by row, which keeps intermediate growth polynomial while staying
bit-identical to cofactor expansion.

All statements about "all n" are certified only up to the prefix horizon
(the number of known terms); results carry that horizon where relevant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import IndexOutOfRange, ParseError
from .scalars import format_rational, parse_rational

SequenceLike = Union["MomentSequence", Sequence]


@dataclass(frozen=True)
class MomentSequence:
    """An immutable finite prefix s_0..s_M of exact rational moments."""

    terms: tuple[Fraction, ...]

    @classmethod
    def from_values(cls, values: Iterable) -> "MomentSequence":
        return cls(tuple(parse_rational(v) for v in values))

    @classmethod
    def from_json(cls, doc) -> "MomentSequence":
        if not isinstance(doc, dict) or "sequence" not in doc:
            raise ParseError('expected a JSON object {"sequence": [...]}')
        values = doc["sequence"]
        if not isinstance(values, list):
            raise ParseError('"sequence" must be a list of rational strings')
        return cls.from_values(values)

    def to_json(self) -> dict:
        return {"sequence": [format_rational(t) for t in self.terms]}

    @property
    def max_index(self) -> int:
        """M, the largest known moment index."""
        return len(self.terms) - 1

    @property
    def horizon(self) -> int:
        """Number of known terms (M + 1)."""
        return len(self.terms)

    def is_zero(self) -> bool:
        return all(t == 0 for t in self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __getitem__(self, idx):
        return self.terms[idx]


def as_moments(s: SequenceLike) -> MomentSequence:
    """Coerce lists/tuples of rationals (or rational strings) to MomentSequence."""
    if isinstance(s, MomentSequence):
        return s
    return MomentSequence.from_values(s)


@dataclass(frozen=True)
class DeterminantProfile:
    """All determinants computable from a prefix: D_0..D_N and D'_1..D'_{N'}."""

    d_values: tuple[Fraction, ...]
    d_prime_values: tuple[Fraction, ...]
    horizon: int

    def to_json(self) -> dict:
        return {
            "D": [format_rational(v) for v in self.d_values],
            "Dprime": [format_rational(v) for v in self.d_prime_values],
        }


# ---------------------------------------------------------------------------
# Exact elimination kernels
# ---------------------------------------------------------------------------


def _clear_denominators(rows: list[list[Fraction]]) -> tuple[list[list[int]], int]:
    """Scale each row to integers by its denominator lcm; return (matrix, product of scalings)."""
    cleared: list[list[int]] = []
    scaling = 1
    for row in rows:
        lcm = 1
        for x in row:
            lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
        scaling *= lcm
        cleared.append([int(x * lcm) for x in row])
    return cleared, scaling


def fraction_free_det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant via one-step Bareiss elimination (denominators cleared first)."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    m, scaling = _clear_denominators([list(r) for r in rows])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if pivot is None:
                return Fraction(0)
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        pk = m[k][k]
        row_k = m[k]
        for i in range(k + 1, n):
            row_i = m[i]
            mik = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (pk * row_i[j] - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pk
    return Fraction(sign * m[n - 1][n - 1], scaling)


def solve_unique(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction]:
    """Solve a nonsingular square system by the same fraction-free elimination.

    Raises ValueError on a singular matrix; callers are expected to have
    checked the relevant leading determinant already.
    """
    n = len(rows)
    m, _ = _clear_denominators([list(r) + [b] for r, b in zip(rows, rhs)])
    prev = 1
    for k in range(n):
        if m[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if pivot is None:
                raise ValueError("singular system")
            m[k], m[pivot] = m[pivot], m[k]
        pk = m[k][k]
        row_k = m[k]
        for i in range(k + 1, n):
            row_i = m[i]
            mik = row_i[k]
            for j in range(k + 1, n + 1):
                row_i[j] = (pk * row_i[j] - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pk
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(m[i][n])
        for j in range(i + 1, n):
            acc -= m[i][j] * x[j]
        x[i] = acc / m[i][i]
    return x


def echelonize(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], int, list[int]]:
    """Reduce to row echelon form using only row swaps and row additions.

    Those operations preserve every maximal minor up to the swap sign, which
    is what the bordered-determinant expansion below relies on.  Returns
    (echelon matrix, swap sign, pivot columns).  Pivot search scans the
    remaining rows and columns deterministically; with exact arithmetic any
    nonzero pivot is as good as any other.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    sign = 1
    pivot_cols: list[int] = []
    row = 0
    for col in range(ncols):
        if row >= nrows:
            break
        pivot = next((i for i in range(row, nrows) if m[i][col] != 0), None)
        if pivot is None:
            continue
        if pivot != row:
            m[row], m[pivot] = m[pivot], m[row]
            sign = -sign
        pv = m[row][col]
        row_r = m[row]
        for i in range(row + 1, nrows):
            if m[i][col] != 0:
                factor = m[i][col] / pv
                row_i = m[i]
                for j in range(col, ncols):
                    row_i[j] -= factor * row_r[j]
        pivot_cols.append(col)
        row += 1
    return m, sign, pivot_cols


def bottom_row_minors(rows: Sequence[Sequence[Fraction]]) -> list[Fraction]:
    """All maximal minors M_j (column j deleted) of an n x (n+1) matrix, one pass.

    If the matrix has full row rank, its kernel is spanned by the vector
    w_j = c (-1)^j M_j (Cramer); one elimination yields both a kernel vector
    and one known minor (the pivot-column product), which fixes the scale c.
    Rank < n makes every maximal minor zero.
    """
    n = len(rows)
    width = n + 1
    if n == 0:
        return [Fraction(1)]
    echelon, sign, pivot_cols = echelonize(rows)
    if len(pivot_cols) < n:
        return [Fraction(0)] * width
    q = next(c for c in range(width) if c not in pivot_cols)
    minor_q = Fraction(sign)
    for i, c in enumerate(pivot_cols):
        minor_q *= echelon[i][c]
    w = [Fraction(0)] * width
    w[q] = Fraction(1)
    for i in range(n - 1, -1, -1):
        c = pivot_cols[i]
        acc = Fraction(0)
        for j in range(c + 1, width):
            if w[j] != 0:
                acc += echelon[i][j] * w[j]
        w[c] = -acc / echelon[i][c]
    return [minor_q * w[j] if (j + q) % 2 == 0 else -minor_q * w[j] for j in range(width)]


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------


def _require_index(s: MomentSequence, needed: int) -> None:
    if needed > s.max_index:
        raise IndexOutOfRange(needed, s.horizon)


def hankel_matrix(s: SequenceLike, n: int) -> list[list[Fraction]]:
    """The (n+1) x (n+1) matrix (s_{i+j})."""
    seq = as_moments(s)
    _require_index(seq, 2 * n)
    return [[seq[i + j] for j in range(n + 1)] for i in range(n + 1)]


def hankel_det(s: SequenceLike, n: int) -> Fraction:
    """D_n, the determinant of (s_{i+j})_{i,j=0..n}."""
    return fraction_free_det(hankel_matrix(s, n))


def shifted_det(s: SequenceLike, n: int) -> Fraction:
    """D'_{n+1}: determinant of H_n with its last column advanced one step.

    Equivalently the minor of H_{n+1} deleting the last row and column n+1;
    D'_1 = s_1.  Needs moments through s_{2n+1}.
    """
    seq = as_moments(s)
    _require_index(seq, 2 * n + 1)
    rows = [[seq[i + j] for j in range(n)] + [seq[i + n + 1]] for i in range(n + 1)]
    return fraction_free_det(rows)


def hankel_minor(s: SequenceLike, n: int, k: int, m: int) -> Fraction:
    """Minor of H_n deleting row k and column m (both 1-indexed)."""
    seq = as_moments(s)
    _require_index(seq, 2 * n)
    if not 1 <= k <= n + 1:
        raise IndexOutOfRange(k, n + 1, what="row")
    if not 1 <= m <= n + 1:
        raise IndexOutOfRange(m, n + 1, what="column")
    rows = [
        [seq[i + j] for j in range(n + 1) if j != m - 1]
        for i in range(n + 1)
        if i != k - 1
    ]
    return fraction_free_det(rows)


def determinant_transform(s: SequenceLike) -> DeterminantProfile:
    """All computable D_n (2n <= M) and D'_{n+1} (2n+1 <= M) for the prefix."""
    seq = as_moments(s)
    if len(seq) == 0:
        raise IndexOutOfRange(0, 0)
    d_values = tuple(hankel_det(seq, n) for n in range(seq.max_index // 2 + 1))
    d_prime_values = tuple(shifted_det(seq, n) for n in range((seq.max_index + 1) // 2))
    return DeterminantProfile(d_values, d_prime_values, seq.horizon)


def binomial_transform(s: SequenceLike) -> MomentSequence:
    """beta(s)_n = sum_k C(n,k) s_k; preserves the determinant profile."""
    seq = as_moments(s)
    out = []
    for n in range(len(seq)):
        acc = Fraction(0)
        for k in range(n + 1):
            acc += math.comb(n, k) * seq[k]
        out.append(acc)
    return MomentSequence(tuple(out))


def matrix_rank(s: SequenceLike, n: int) -> int:
    """Rank of H_n by exact elimination."""
    rows = hankel_matrix(s, n)
    _, _, pivot_cols = echelonize(rows)
    return len(pivot_cols)
