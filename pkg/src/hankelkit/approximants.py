"""Rank-r approximating sequences, gap determinants, and degree structure.

Whenever D_{r-1} != 0 the prefix s_0..s_{2r-1} determines a unique length-r
linear recurrence; running it forward yields the approximating sequence
s^(r), the unique rank-r extension agreeing with s through index 2r-1.
Comparing s against s^(r) converts determinant questions into term
comparisons: the first disagreement index is the characteristic d_r, a run of
agreements is equivalent to a run of vanishing determinants, and the first
disagreement value gives D_{r+d} in closed form (the gap formula) without any
large determinant.

The degree profile organizes the determinant polynomials P_n of an arbitrary
nonzero sequence: full-degree indices n_0 < n_1 < ..., identically-zero
blocks between them, the constant proportionality P_{n_{k+1}-1} = gamma_k
P_{n_k} across gaps, and the block three-term recurrence
p_{n_{k+1}} = a_k(x) p_{n_k} - beta_k p_{n_{k-1}} on the monic normalizations
(with p at the index before n_0 taken to be 0, which leaves beta_0 free; it
is reported as 1 by convention).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .core import (
    MomentSequence,
    SequenceLike,
    as_moments,
    hankel_det,
    shifted_det,
    solve_unique,
)
from .errors import (
    GapHypothesisViolated,
    IndexOutOfRange,
    SingularLeadingMinor,
    ZeroSequence,
)
from .polynomials import ZERO, Polynomial, poly_P
from .scalars import format_rational


@dataclass(frozen=True)
class ApproxRecurrence:
    """Recurrence data (r, d_0..d_{r-1}) generating the rank-r extension s^(r)."""

    r: int
    d: tuple[Fraction, ...]

    def to_json(self) -> dict:
        return {"r": self.r, "d": [format_rational(v) for v in self.d]}


@dataclass(frozen=True)
class ExceedsHorizon:
    """Verdict value: no mismatch was found within the known prefix.

    Finite data can never certify that the characteristic is infinite, so
    this carries the horizon up to which agreement was verified.
    """

    horizon: int


def _leading_det(seq: MomentSequence, r: int) -> Fraction:
    value = hankel_det(seq, r - 1)
    if value == 0:
        raise SingularLeadingMinor(r)
    return value


def recurrence_coeffs(s: SequenceLike, r: int) -> ApproxRecurrence:
    """Solve (s_{i+j})_{i,j<r} d = (s_{r+i})_i exactly.

    The solution also equals -p_{r,k}/D_{r-1} coefficient-wise, which tests
    cross-validate as an independent route.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    seq = as_moments(s)
    if 2 * r - 1 > seq.max_index:
        raise IndexOutOfRange(2 * r - 1, seq.horizon)
    _leading_det(seq, r)
    rows = [[seq[i + j] for j in range(r)] for i in range(r)]
    rhs = [seq[r + i] for i in range(r)]
    return ApproxRecurrence(r, tuple(solve_unique(rows, rhs)))


def _extension_values(seq: MomentSequence, rec: ApproxRecurrence, upto: int) -> list[Fraction]:
    """Values s^(r)_0..s^(r)_upto: copied prefix, then the recurrence."""
    r = rec.r
    values = [seq[i] for i in range(min(2 * r, upto + 1))]
    for idx in range(2 * r, upto + 1):
        acc = Fraction(0)
        for k in range(r):
            acc += rec.d[k] * values[idx - r + k]
        values.append(acc)
    return values


def approx_sequence(s: SequenceLike, r: int, m_out: int) -> MomentSequence:
    """The approximating sequence s^(r) on indices 0..m_out."""
    if m_out < 2 * r - 1:
        raise ValueError("m_out must be at least 2r-1 (the copied prefix)")
    seq = as_moments(s)
    rec = recurrence_coeffs(seq, r)
    return MomentSequence(tuple(_extension_values(seq, rec, m_out)))


def shifted_recurrence_coeffs(
    ar: ApproxRecurrence, s: SequenceLike, n: int
) -> tuple[Fraction, ...]:
    """Coefficients d_{n,k} with sum_k d_{n,k} s^(r)_{k+m} = s^(r)_{r+n+m}.

    They form the first row of the (n+1)-th power of the companion matrix of
    the recurrence; d_{0,k} = d_k.
    """
    if n < 0:
        raise ValueError("shift must be >= 0")
    seq = as_moments(s)
    r = ar.r
    if 2 * r - 1 > seq.max_index:
        raise IndexOutOfRange(2 * r - 1, seq.horizon)
    for m in range(r):
        acc = Fraction(0)
        for k in range(r):
            acc += ar.d[k] * seq[k + m]
        if acc != seq[r + m]:
            raise ValueError("recurrence does not generate this sequence prefix")
    # v tracks the first row of successive companion-matrix powers.
    v = [Fraction(1)] + [Fraction(0)] * (r - 1)
    for _ in range(n + 1):
        v = [
            v[0] * ar.d[r - 1 - j] + (v[j + 1] if j + 1 < r else Fraction(0))
            for j in range(r)
        ]
    return tuple(reversed(v))


def characteristic(s: SequenceLike, r: int) -> Union[int, ExceedsHorizon]:
    """Smallest m with s_{2r+m} != s^(r)_{2r+m}, or ExceedsHorizon.

    Equals the length of the zero-determinant run after D_{r-1} whenever
    both quantities are within the horizon.
    """
    seq = as_moments(s)
    rec = recurrence_coeffs(seq, r)
    sigma = _extension_values(seq, rec, seq.max_index)
    for idx in range(2 * r, seq.max_index + 1):
        if seq[idx] != sigma[idx]:
            return idx - 2 * r
    return ExceedsHorizon(seq.horizon)


def gap_determinant(s: SequenceLike, r: int, d: int) -> Fraction:
    """D_{r+d} from the gap formula, assuming D_r = ... = D_{r+d-1} = 0.

    The hypothesis is verified through the equivalent term agreements
    s_{2r+j} = s^(r)_{2r+j}, j < d.  Then
    D_{r+d} = (-1)^{d(d+1)/2} (s_{2r+d} - s^(r)_{2r+d})^{d+1} D_{r-1};
    d = 0 is the rank-one update D_r = (s_{2r} - s^(r)_{2r}) D_{r-1}.
    """
    if d < 0:
        raise ValueError("gap must be >= 0")
    seq = as_moments(s)
    if 2 * (r + d) > seq.max_index:
        raise IndexOutOfRange(2 * (r + d), seq.horizon)
    rec = recurrence_coeffs(seq, r)
    lead = hankel_det(seq, r - 1)
    sigma = _extension_values(seq, rec, 2 * r + d)
    for j in range(d):
        if seq[2 * r + j] != sigma[2 * r + j]:
            raise GapHypothesisViolated(r + j)
    diff = seq[2 * r + d] - sigma[2 * r + d]
    sign = -1 if (d * (d + 1) // 2) % 2 else 1
    return sign * diff ** (d + 1) * lead


def shifted_gap_det(s: SequenceLike, r: int) -> Fraction:
    """D'_{r+1} via the rank-one update:

    D'_{r+1} = (s_{2r+1} - s^(r)_{2r+1}) D_{r-1} - (s_{2r} - s^(r)_{2r}) D'_r.
    """
    seq = as_moments(s)
    if 2 * r + 1 > seq.max_index:
        raise IndexOutOfRange(2 * r + 1, seq.horizon)
    rec = recurrence_coeffs(seq, r)
    lead = hankel_det(seq, r - 1)
    sigma = _extension_values(seq, rec, 2 * r + 1)
    d_prime_r = shifted_det(seq, r - 1)
    return (seq[2 * r + 1] - sigma[2 * r + 1]) * lead - (
        seq[2 * r] - sigma[2 * r]
    ) * d_prime_r


# ---------------------------------------------------------------------------
# Degree structure of the P_n family
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BlockStep:
    """One step of the block recurrence p_{n_{k+1}} = a p_{n_k} - beta p_{n_{k-1}}."""

    k: int
    a: Polynomial
    beta: Fraction
    consistent: bool

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "a": self.a.to_json(),
            "beta": format_rational(self.beta),
            "consistent": self.consistent,
        }


@dataclass(frozen=True)
class StructureReport:
    """Degree structure of P_0..P_{n_max} certified up to the prefix horizon."""

    full_degree_indices: tuple[int, ...]
    gammas: tuple[tuple[int, Fraction], ...]
    blocks: tuple[BlockStep, ...]
    zero_blocks: tuple[tuple[int, int], ...]
    tail_zero: bool
    horizon: int
    anomalies: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "full_degree_indices": list(self.full_degree_indices),
            "gammas": [{"k": k, "value": format_rational(g)} for k, g in self.gammas],
            "blocks": [b.to_json() for b in self.blocks],
            "zero_blocks": [list(pair) for pair in self.zero_blocks],
            "tail_zero": self.tail_zero,
            "horizon": self.horizon,
            "anomalies": list(self.anomalies),
        }


def degree_profile(s: SequenceLike) -> StructureReport:
    """Classify every computable P_n: full degree, zero, or gamma-multiple.

    Verifies the whole structure exactly; anomalies (which the underlying
    theory rules out) are reported rather than silently accepted, since any
    entry there signals an implementation bug.
    """
    seq = as_moments(s)
    if len(seq) == 0 or seq.is_zero():
        raise ZeroSequence()
    n_max = len(seq) // 2
    polys = [poly_P(seq, n) for n in range(n_max + 1)]
    full = tuple(n for n in range(n_max + 1) if polys[n].degree == n)
    anomalies: list[str] = []

    zero_blocks: list[tuple[int, int]] = []
    start = None
    for n in range(n_max + 1):
        if polys[n].is_zero():
            start = n if start is None else start
        elif start is not None:
            zero_blocks.append((start, n - 1))
            start = None
    if start is not None:
        zero_blocks.append((start, n_max))

    gammas: list[tuple[int, Fraction]] = []
    for k in range(len(full) - 1):
        a, b = full[k], full[k + 1]
        if b - a < 2:
            continue
        for n in range(a + 1, b - 1):
            if not polys[n].is_zero():
                anomalies.append(f"P_{n} expected zero inside gap ({a},{b})")
        candidate = polys[b - 1]
        if candidate.is_zero() or candidate.degree != polys[a].degree:
            anomalies.append(f"P_{b - 1} is not a constant multiple of P_{a}")
            continue
        gamma = candidate.leading / polys[a].leading
        if candidate - gamma * polys[a] != ZERO:
            anomalies.append(f"P_{b - 1} is not proportional to P_{a}")
            continue
        gammas.append((k, gamma))

    blocks: list[BlockStep] = []
    monic = {n: polys[n].monic() for n in full}
    for k in range(len(full) - 1):
        p_next = monic[full[k + 1]]
        p_cur = monic[full[k]]
        quotient, rem = p_next.divmod(p_cur)
        if k == 0:
            consistent = rem.is_zero()
            beta = Fraction(1)  # multiplies the (zero) polynomial below n_0; free
        else:
            p_before = monic[full[k - 1]]
            if rem.is_zero() or rem.degree != p_before.degree:
                consistent = False
                beta = Fraction(0)
            else:
                beta = -rem.leading
                consistent = (rem + beta * p_before).is_zero()
        if not consistent:
            anomalies.append(f"block recurrence at k={k} has no valid beta")
        blocks.append(BlockStep(k, quotient, beta, consistent))

    n_last = full[-1]
    tail = range(n_last + 1, n_max + 1)
    tail_zero = bool(tail) and all(polys[n].is_zero() for n in tail)
    if tail and not tail_zero:
        # An unfinished gap may legitimately end the horizon with one
        # gamma-multiple at the last computable index; anything else is anomalous.
        for n in tail:
            p = polys[n]
            if p.is_zero():
                continue
            proportional = (
                n == n_max
                and p.degree == polys[n_last].degree
                and (p - (p.leading / polys[n_last].leading) * polys[n_last]).is_zero()
            )
            if not proportional:
                anomalies.append(f"P_{n} has unexpected shape beyond the last full index")

    return StructureReport(
        full_degree_indices=full,
        gammas=tuple(gammas),
        blocks=tuple(blocks),
        zero_blocks=tuple(zero_blocks),
        tail_zero=tail_zero,
        horizon=seq.horizon,
        anomalies=tuple(anomalies),
    )
