"""Small exact-arithmetic helpers: outward rounding, integer roots, formatting."""

from __future__ import annotations

import decimal
import math
from fractions import Fraction

#: Certified rational enclosure of pi.
PI_LOW = Fraction(314159265358, 10**11)
PI_HIGH = Fraction(314159265359, 10**11)


def round_down(x: Fraction, bits: int = 256) -> Fraction:
    """Largest dyadic ``<= x`` carrying about ``bits`` significant bits."""
    x = Fraction(x)
    if x == 0:
        return x
    if x < 0:
        return -round_up(-x, bits)
    scale = bits - (x.numerator.bit_length() - x.denominator.bit_length())
    if scale >= 0:
        return Fraction((x.numerator << scale) // x.denominator, 1 << scale)
    return Fraction((x.numerator // (x.denominator << -scale)) << -scale)


def round_up(x: Fraction, bits: int = 256) -> Fraction:
    """Smallest dyadic ``>= x`` carrying about ``bits`` significant bits."""
    x = Fraction(x)
    if x == 0:
        return x
    if x < 0:
        return -round_down(-x, bits)
    scale = bits - (x.numerator.bit_length() - x.denominator.bit_length())
    if scale >= 0:
        return Fraction(-((-(x.numerator << scale)) // x.denominator), 1 << scale)
    return Fraction((-((-x.numerator) // (x.denominator << -scale))) << -scale)


def iroot(n: int, k: int) -> int:
    """``floor(n ** (1/k))`` for ``n >= 0``."""
    if n < 0 or k < 1:
        raise ValueError("iroot needs n >= 0 and k >= 1")
    if n < 2 or k == 1:
        return n
    if k == 2:
        return math.isqrt(n)
    x = 1 << ((n.bit_length() + k - 1) // k)  # x >= root
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def pow2_interval(exponent: Fraction, bits: int = 128) -> tuple[Fraction, Fraction]:
    """Certified enclosure of ``2 ** exponent`` for a rational exponent."""
    exponent = Fraction(exponent)
    whole = exponent.numerator // exponent.denominator
    frac = exponent - whole
    if frac == 0:
        value = Fraction(2) ** whole
        return value, value
    p, q = frac.numerator, frac.denominator
    root = iroot(1 << (p + q * bits), q)  # floor(2**(p/q + bits))
    lo = Fraction(root, 1 << bits)
    hi = Fraction(root + 1, 1 << bits)
    scale = Fraction(2) ** whole
    return lo * scale, hi * scale


def rational_str(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def fits_exact(x: Fraction, bits: int = 4096) -> bool:
    x = Fraction(x)
    return x.numerator.bit_length() <= bits and x.denominator.bit_length() <= bits


def to_decimal(x: Fraction, digits: int = 20) -> decimal.Decimal:
    """Decimal approximation of a rational of any size (relative precision)."""
    x = Fraction(x)
    if x == 0:
        return decimal.Decimal(0)
    bits = digits * 4 + 16
    ax = abs(x)
    shift = bits - (ax.numerator.bit_length() - ax.denominator.bit_length())
    if shift >= 0:
        mantissa = (ax.numerator << shift) // ax.denominator
    else:
        mantissa = ax.numerator // (ax.denominator << -shift)
    with decimal.localcontext() as ctx:
        ctx.prec = digits + 10
        ctx.Emax = decimal.MAX_EMAX
        ctx.Emin = decimal.MIN_EMIN
        value = decimal.Decimal(mantissa) * decimal.Decimal(2) ** (-shift)
        ctx.prec = digits
        value = +value
        return -value if x < 0 else value


def decimal_str(x: Fraction, digits: int = 20) -> str:
    return format(to_decimal(x, digits), "g") if x else "0"


def int_json(v: int):
    """Keep JSON ints small: large integers become hexadecimal strings."""
    v = int(v)
    if v.bit_length() <= 256:
        return v
    return hex(v)
