"""Directed rational rounding for roots and rational powers.

Irrational quantities (square roots, factorial roots, powers with fractional
exponent) enter this package only through one-sided rational approximations.
A lower approximation may only be used where it weakens a lower bound and an
upper approximation only where it weakens an upper bound, so every exact
comparison downstream stays sound.  Precision is `bits` binary digits after
the point; results are dyadic rationals with denominator dividing 2**bits.
"""

from __future__ import annotations

import math
from fractions import Fraction

DEFAULT_BITS = 60


def iroot(m: int, r: int) -> int:
    """Integer floor root: the largest x >= 0 with x**r <= m.

    Requires m >= 0 and r >= 1.  Newton iteration on integers, seeded above
    the root, with a final clamp so the result is exact for all inputs.
    """
    if m < 0:
        raise ValueError("iroot of a negative number")
    if r < 1:
        raise ValueError("root index must be >= 1")
    if r == 1 or m in (0, 1):
        return m
    if r == 2:
        return math.isqrt(m)
    if m.bit_length() <= r:
        return 1
    x = 1 << ((m.bit_length() - 1) // r + 1)
    while True:
        y = ((r - 1) * x + m // x ** (r - 1)) // r
        if y >= x:
            break
        x = y
    while x**r > m:
        x -= 1
    while (x + 1) ** r <= m:
        x += 1
    return x


def root_lower(q: Fraction, r: int, bits: int = DEFAULT_BITS) -> Fraction:
    """Dyadic rational lower approximation of q**(1/r), q >= 0."""
    if q < 0:
        raise ValueError("root of a negative rational")
    if r == 1:
        return q
    scaled = (q.numerator << (r * bits)) // q.denominator
    return Fraction(iroot(scaled, r), 1 << bits)


def root_upper(q: Fraction, r: int, bits: int = DEFAULT_BITS) -> Fraction:
    """Dyadic rational upper approximation of q**(1/r), q >= 0."""
    if q < 0:
        raise ValueError("root of a negative rational")
    if r == 1:
        return q
    num = q.numerator << (r * bits)
    scaled = -((-num) // q.denominator)
    x = iroot(scaled, r)
    if x**r < scaled:
        x += 1
    return Fraction(x, 1 << bits)


def pow_bounds(
    base: int | Fraction, exponent: Fraction, bits: int = DEFAULT_BITS
) -> tuple[Fraction, Fraction]:
    """Bracket base**exponent between two dyadic rationals.

    Requires base >= 0 and exponent >= 0.  Exact (lo == hi) when the exponent
    is an integer.
    """
    base = Fraction(base)
    exponent = Fraction(exponent)
    if base < 0:
        raise ValueError("power of a negative base")
    if exponent < 0:
        raise ValueError("negative exponents are not supported")
    powered = base**exponent.numerator
    if exponent.denominator == 1:
        return powered, powered
    lo = root_lower(powered, exponent.denominator, bits)
    hi = root_upper(powered, exponent.denominator, bits)
    return lo, hi


def dyadic_floor(x: Fraction, bits: int = DEFAULT_BITS) -> Fraction:
    """Largest multiple of 2**-bits that is <= x."""
    scaled = (x.numerator << bits) // x.denominator
    return Fraction(scaled, 1 << bits)


def dyadic_ceil(x: Fraction, bits: int = DEFAULT_BITS) -> Fraction:
    """Smallest multiple of 2**-bits that is >= x."""
    num = x.numerator << bits
    scaled = -((-num) // x.denominator)
    return Fraction(scaled, 1 << bits)
