"""Scalar plumbing: exact rationals, integer k-th roots, and big-float values.

Exact scalars are ``fractions.Fraction`` throughout the package (canonical
form and exact arithmetic come for free).  Irrational values forced by root
extractions are carried as :class:`RealScalar`: an arbitrary-precision
``mpmath`` float tagged with the precision it was computed at.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import mpmath
from mpmath import mp

from .errors import ParseError

RationalLike = Union[Fraction, int, str]

MIN_PRECISION_BITS = 64
DEFAULT_PRECISION_BITS = 256


def parse_rational(value: RationalLike) -> Fraction:
    """Parse an exact rational from ``"p/q"`` / ``"p"`` strings or integers."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ParseError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a rational: {value!r}") from exc
    raise ParseError(f"not a rational: {value!r} (floats are not accepted; use strings)")


def format_rational(value: Fraction) -> str:
    """Serialize a rational as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    return str(value)


def int_kth_root(n: int, k: int) -> tuple[int, bool]:
    """Return (floor(n**(1/k)), is_exact) for n >= 0, k >= 1, by integer Newton."""
    if n < 0 or k < 1:
        raise ValueError("int_kth_root needs n >= 0 and k >= 1")
    if k == 1 or n in (0, 1):
        return n, True
    x = 1 << -(-n.bit_length() // k)  # 2^ceil(bits/k) >= n^(1/k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x, x**k == n


def exact_kth_root(value: Fraction, k: int) -> Fraction | None:
    """Exact real k-th root of a rational, or None when it is irrational.

    Odd k admits negative inputs (the real branch); even k requires value >= 0.
    """
    if k < 1:
        raise ValueError("root order must be >= 1")
    if value < 0:
        if k % 2 == 0:
            return None
        flipped = exact_kth_root(-value, k)
        return None if flipped is None else -flipped
    num_root, num_exact = int_kth_root(value.numerator, k)
    if not num_exact:
        return None
    den_root, den_exact = int_kth_root(value.denominator, k)
    if not den_exact:
        return None
    return Fraction(num_root, den_root)


def to_mpf(value: Fraction | int, precision_bits: int) -> mpmath.mpf:
    """Convert an exact value to an mpf, rounding once at the stated precision."""
    with mp.workprec(precision_bits):
        if isinstance(value, int):
            return +mp.mpf(value)
        return mp.mpf(value.numerator) / value.denominator


def real_kth_root(value: mpmath.mpf, k: int, precision_bits: int) -> mpmath.mpf:
    """Real k-th root at the stated precision; odd k follows the sign of value."""
    with mp.workprec(precision_bits):
        if value < 0:
            if k % 2 == 0:
                raise ValueError("even root of a negative value has no real branch")
            return -mp.root(-value, k)
        return +mp.root(value, k)


@dataclass(frozen=True)
class RealScalar:
    """An arbitrary-precision float together with the precision it carries."""

    value: mpmath.mpf
    precision_bits: int

    def __post_init__(self) -> None:
        if self.precision_bits < MIN_PRECISION_BITS:
            raise ValueError(f"precision_bits must be >= {MIN_PRECISION_BITS}")

    def to_str(self) -> str:
        dps = mpmath.libmp.prec_to_dps(self.precision_bits)
        return mpmath.nstr(self.value, dps)

    def __str__(self) -> str:
        return self.to_str()


def real_scalar(value, precision_bits: int) -> RealScalar:
    """Build a RealScalar, converting exact values at the stated precision."""
    if isinstance(value, (Fraction, int)):
        return RealScalar(to_mpf(value, precision_bits), precision_bits)
    return RealScalar(+value, precision_bits)
