"""Exact integer/rational helpers shared across modules.

Weights of templates are kept as arbitrary-precision integers throughout;
every comparison that the mathematics states about log-weights is performed
on integer powers instead (cross-multiplied exponents), so no float ever
enters a verdict.
"""

from __future__ import annotations

from fractions import Fraction


def integer_root_floor(x: int, k: int) -> int:
    """floor(x ** (1/k)) for x >= 0, k >= 1, exactly."""
    if x < 0 or k < 1:
        raise ValueError("x must be >= 0 and k >= 1")
    if x in (0, 1) or k == 1:
        return x
    r = 1 << ((x.bit_length() + k - 1) // k)  # upper start for Newton
    while True:
        nr = ((k - 1) * r + x // r ** (k - 1)) // k
        if nr >= r:
            break
        r = nr
    while r ** k > x:
        r -= 1
    return r


def pow_compare(a: int, ea: int, b: int, eb: int) -> int:
    """Sign of a^ea - b^eb for nonnegative ints, computed exactly.

    Exponents at desk scale keep these numbers in the thousands of bits,
    so the direct big-int computation is fine.
    """
    lhs = a ** ea
    rhs = b ** eb
    return (lhs > rhs) - (lhs < rhs)


def frac_le_scaled(lhs: int, bound: Fraction, scale: int) -> bool:
    """lhs <= bound * scale, exactly."""
    return lhs * bound.denominator <= bound.numerator * scale


def frac_lt_scaled(lhs: int, bound: Fraction, scale: int) -> bool:
    """lhs < bound * scale, exactly."""
    return lhs * bound.denominator < bound.numerator * scale


def parse_fraction(text: str) -> Fraction:
    """Parse 'a/b', an integer, or a decimal literal into an exact Fraction.

    Decimal literals are taken at face value (0.3 means 3/10), never via
    binary floats.
    """
    s = text.strip()
    if "/" in s:
        num, den = s.split("/", 1)
        return Fraction(int(num), int(den))
    if "." in s or "e" in s or "E" in s:
        return Fraction(s)
    return Fraction(int(s))


def format_fraction(q: Fraction) -> str:
    """Canonical 'a/b' (or 'a' when integral) form used in JSON reports."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
