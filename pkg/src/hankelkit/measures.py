"""Recovery of a discrete measure from a positive-definite flat prefix.

If D_0..D_{r-1} > 0 and every later computable determinant vanishes, the
sequence is the moment sequence of a unique positive measure supported on r
distinct real points: the atoms sit at the r (real, simple) roots of P_r and
the weight at root lambda is the partial-fraction residue
Q_r(lambda) / P_r'(lambda), equivalently the reciprocal of the
Christoffel-Darboux sum  sum_{k<r} P_k(lambda)^2 / (D_k D_{k-1}).

Roots are isolated with exact Sturm chains over the rationals and refined by
bisection into guaranteed disjoint enclosures; weights are computed by both
formulas at high precision and must agree, and the recovered measure's
moments are re-checked against the input in outward-rounded interval
arithmetic.  Nothing in this module trusts an unverified numeric step.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence

from mpmath import iv, libmp, mp

from .core import (
    MomentSequence,
    SequenceLike,
    as_moments,
    determinant_transform,
    hankel_det,
)
from .errors import (
    DegreeViolation,
    IndexOutOfRange,
    NonPositiveWeight,
    NotPSDFlat,
    NotQuasiDefinite,
    RootCountMismatch,
    WeightMismatch,
    ZeroSequence,
)
from .polynomials import ZERO, Polynomial, poly_P, poly_Q
from .rank import hankel_rank
from .scalars import (
    DEFAULT_PRECISION_BITS,
    RealScalar,
    parse_rational,
    real_scalar,
    to_mpf,
)


@dataclass(frozen=True)
class Interval:
    """Rational enclosure (lo, hi]; after isolation it brackets one root."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError("interval endpoints out of order")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def to_json(self) -> list[str]:
        return [str(self.lo), str(self.hi)]


@dataclass(frozen=True)
class Atom:
    location: RealScalar
    enclosure: Interval
    weight: RealScalar

    def to_json(self) -> dict:
        return {
            "location": self.location.to_str(),
            "enclosure": self.enclosure.to_json(),
            "weight": self.weight.to_str(),
        }


@dataclass(frozen=True)
class DiscreteMeasure:
    """A sum of r positive point masses at distinct real locations."""

    atoms: tuple[Atom, ...]
    r: int

    def to_json(self) -> dict:
        return {"atoms": [atom.to_json() for atom in self.atoms], "r": self.r}


def psd_finite_rank_check(s: SequenceLike) -> int:
    """Return r if the determinant profile is strictly positive then flat zero.

    Requires D_0 .. D_{r-1} > 0, all later computable D_n = 0, and the rank
    certificate to confirm FiniteRank r.  Raises NotPSDFlat at the first
    offending determinant (or missing flat region) otherwise.
    """
    seq = as_moments(s)
    if len(seq) == 0 or seq.is_zero():
        raise ZeroSequence()
    profile = determinant_transform(seq)
    d = profile.d_values
    r = 0
    while r < len(d) and d[r] > 0:
        r += 1
    if r < len(d) and d[r] < 0:
        raise NotPSDFlat(r, d[r], "negative determinant")
    for n in range(r, len(d)):
        if d[n] != 0:
            raise NotPSDFlat(n, d[n], "determinant becomes nonzero after the zero run")
    if r == len(d):
        raise NotPSDFlat(
            len(d), Fraction(0), "determinants never vanish within the horizon"
        )
    certificate = hankel_rank(seq)
    if certificate.verdict != "FiniteRank" or certificate.rank != r:
        raise NotPSDFlat(
            r,
            d[r - 1] if r else Fraction(0),
            "prefix is not rank-consistent with a finite-rank extension",
        )
    return r


# ---------------------------------------------------------------------------
# Exact real-root isolation
# ---------------------------------------------------------------------------


def _integer_coeffs(p: Polynomial) -> tuple[int, ...]:
    scale = lcm(*(c.denominator for c in p.coeffs)) if p.coeffs else 1
    return tuple(int(c * scale) for c in p.coeffs)


def _sign_at(coeffs: tuple[int, ...], x: Fraction) -> int:
    """Sign of the polynomial with integer coeffs at rational x.

    Evaluates num-scaled Horner entirely over the integers:
    sign(sum c_i num^i den^{d-i}).
    """
    num, den = x.numerator, x.denominator
    acc = 0
    den_power = 1
    for c in coeffs[::-1]:
        acc = acc * num + c * den_power
        den_power *= den
    return (acc > 0) - (acc < 0)


def _sturm_chain(p: Polynomial) -> list[tuple[int, ...]]:
    chain = [p, p.derivative()]
    while not chain[-1].is_zero():
        _, rem = chain[-2].divmod(chain[-1])
        chain.append(-rem)
    chain.pop()
    return [_integer_coeffs(q) for q in chain]


def _sign_changes(chain: list[tuple[int, ...]], x: Fraction) -> int:
    signs = [s for s in (_sign_at(c, x) for c in chain) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def cauchy_bound(p: Polynomial) -> Fraction:
    """max(1, sum |p_k / p_lead|): all real roots lie within [-B, B]."""
    if p.is_zero() or p.degree == 0:
        return Fraction(1)
    lead = p.leading
    total = sum(abs(c / lead) for c in p.coeffs[:-1])
    return max(Fraction(1), total)


def isolate_real_roots(p: Polynomial, precision_bits: int = DEFAULT_PRECISION_BITS) -> list[Interval]:
    """Disjoint rational enclosures of ALL real roots of p, each of width
    at most 2^-precision_bits * max(1, root bound).

    Multiple roots are counted once (the generalized Sturm chain counts
    distinct roots).  Raises RootCountMismatch when p has fewer real roots
    than its degree, since callers in this package expect totally real
    polynomials.
    """
    if p.is_zero() or p.degree < 1:
        raise DegreeViolation("root isolation requires degree >= 1")
    chain = _sturm_chain(p)
    bound = cauchy_bound(p)
    lo, hi = -bound - 1, bound + 1
    target = max(Fraction(1), bound) / (Fraction(2) ** precision_bits)
    total = _sign_changes(chain, lo) - _sign_changes(chain, hi)
    if total < p.degree:
        raise RootCountMismatch(p.degree, total)

    done: list[Interval] = []
    pending = [(lo, hi, total)]
    while pending:
        a, b, count = pending.pop()
        if count == 0:
            continue
        if count == 1 and b - a <= target:
            done.append(Interval(a, b))
            continue
        mid = (a + b) / 2
        left = _sign_changes(chain, a) - _sign_changes(chain, mid)
        pending.append((a, mid, left))
        pending.append((mid, b, count - left))
    done.sort(key=lambda interval: interval.lo)
    return done


# ---------------------------------------------------------------------------
# Measure recovery
# ---------------------------------------------------------------------------


def recover_measure(s: SequenceLike, precision_bits: int = DEFAULT_PRECISION_BITS) -> DiscreteMeasure:
    """Atoms at the roots of P_r with residue weights, double-checked.

    The two weight formulas (partial-fraction residue and reciprocal
    Christoffel-Darboux sum) must agree within 2^-(precision_bits/2) relative
    on every atom, and every weight must be strictly positive.
    """
    seq = as_moments(s)
    r = psd_finite_rank_check(seq)
    p_r = poly_P(seq, r)
    q_r = poly_Q(seq, r)
    intervals = isolate_real_roots(p_r, precision_bits)
    if len(intervals) != r:
        raise RootCountMismatch(r, len(intervals))
    profile = determinant_transform(seq)
    d = [Fraction(1)] + list(profile.d_values)  # d[k+1] = D_k, d[0] = D_{-1}
    p_family = [poly_P(seq, k) for k in range(r)]
    p_prime = p_r.derivative()

    atoms = []
    with mp.workprec(precision_bits):
        threshold = mp.mpf(2) ** -(precision_bits // 2)
        for index, interval in enumerate(intervals):
            lam = to_mpf(interval.midpoint, precision_bits)
            w_residue = q_r.eval_mpf(lam, precision_bits) / p_prime.eval_mpf(
                lam, precision_bits
            )
            cd_sum = mp.mpf(0)
            for k in range(r):
                value = p_family[k].eval_mpf(lam, precision_bits)
                cd_sum += value * value / to_mpf(d[k + 1] * d[k], precision_bits)
            w_cd = 1 / cd_sum
            delta = abs(w_residue - w_cd)
            if delta > threshold * max(mp.mpf(1), abs(w_residue)):
                raise WeightMismatch(index, mp.nstr(delta, 10))
            if w_residue <= 0:
                raise NonPositiveWeight(index, mp.nstr(w_residue, 10))
            atoms.append(
                Atom(
                    location=real_scalar(lam, precision_bits),
                    enclosure=interval,
                    weight=real_scalar(w_residue, precision_bits),
                )
            )
    return DiscreteMeasure(atoms=tuple(atoms), r=r)


def _iv_from_fraction(value: Fraction, precision_bits: int):
    lo = mp.make_mpf(
        libmp.from_rational(value.numerator, value.denominator, precision_bits, libmp.round_floor)
    )
    hi = mp.make_mpf(
        libmp.from_rational(value.numerator, value.denominator, precision_bits, libmp.round_ceiling)
    )
    return iv.mpf((lo, hi))


def verify_moments(
    measure: DiscreteMeasure,
    s: SequenceLike,
    tol: Optional[str] = None,
    precision_bits: Optional[int] = None,
) -> RealScalar:
    """Upper bound on max_n |sum_k mu_k lambda_k^n - s_n| over the prefix.

    Locations enter as their full enclosures and endpoints are rounded
    outward, so the result is a certified bound, not an estimate.  The tol
    argument is advisory only (this function always returns the residual;
    callers compare).
    """
    del tol  # semantic comparison is the caller's job
    seq = as_moments(s)
    if precision_bits is None:
        precision_bits = max(
            (atom.location.precision_bits for atom in measure.atoms),
            default=DEFAULT_PRECISION_BITS,
        )
    old_prec = iv.prec
    iv.prec = precision_bits
    try:
        worst = mp.mpf(0)
        locations = [
            iv.mpf(
                (
                    mp.make_mpf(
                        libmp.from_rational(
                            atom.enclosure.lo.numerator,
                            atom.enclosure.lo.denominator,
                            precision_bits,
                            libmp.round_floor,
                        )
                    ),
                    mp.make_mpf(
                        libmp.from_rational(
                            atom.enclosure.hi.numerator,
                            atom.enclosure.hi.denominator,
                            precision_bits,
                            libmp.round_ceiling,
                        )
                    ),
                )
            )
            for atom in measure.atoms
        ]
        weights = [iv.mpf(atom.weight.value) for atom in measure.atoms]
        powers = [iv.mpf(1) for _ in measure.atoms]
        for n in range(len(seq)):
            total = iv.mpf(0)
            for k in range(len(measure.atoms)):
                total += weights[k] * powers[k]
                powers[k] *= locations[k]
            diff = total - _iv_from_fraction(seq[n], precision_bits)
            bound = abs(diff)
            upper = mp.mpf(bound.b)
            if upper > worst:
                worst = upper
    finally:
        iv.prec = old_prec
    return real_scalar(worst, precision_bits)


def cd_identity_residual(s: SequenceLike, r: int) -> Polynomial:
    """P_r' P_{r-1} - P_r P_{r-1}' - D_{r-1}^2 sum_{k<r} P_k^2/(D_k D_{k-1}).

    Identically zero whenever D_0..D_{r-1} are all nonzero; computed exactly
    so any deviation is a hard failure, not a tolerance question.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    seq = as_moments(s)
    if 2 * r - 1 > seq.max_index:
        raise IndexOutOfRange(2 * r - 1, seq.horizon)
    d = [Fraction(1)]  # D_{-1}
    for n in range(r):
        value = hankel_det(seq, n)
        if value == 0:
            raise NotQuasiDefinite(n)
        d.append(value)
    polys = [poly_P(seq, k) for k in range(r + 1)]
    combo = polys[r].derivative() * polys[r - 1] - polys[r] * polys[r - 1].derivative()
    cd_sum = ZERO
    for k in range(r):
        cd_sum = cd_sum + polys[k] * polys[k] * (Fraction(1) / (d[k + 1] * d[k]))
    return combo - d[r] * d[r] * cd_sum


def moments_of_atoms(atoms: Sequence[tuple], m_max: int) -> MomentSequence:
    """Exact moments s_n = sum_k mu_k x_k^n, n <= m_max, of rational atoms.

    atoms is a sequence of (location, weight) pairs in any rational-scalar
    notation accepted by parse_rational.  Test and demo helper: composing
    with recover_measure must return the same atoms.
    """
    pairs = [(parse_rational(x), parse_rational(w)) for x, w in atoms]
    terms = []
    powers = [Fraction(1) for _ in pairs]
    for _ in range(m_max + 1):
        terms.append(sum((w * p for (_, w), p in zip(pairs, powers)), Fraction(0)))
        powers = [p * x for (x, _), p in zip(pairs, powers)]
    return MomentSequence(tuple(terms))
