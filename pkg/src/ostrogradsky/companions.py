"""Continued fractions and the Ostrogradsky-Pierce expansion.

These are the two systems the Ō² expansion is compared against.  Both
engines are exact on rationals; transcendental quantities (logarithms,
n-th roots) are produced as ``decimal.Decimal`` values at an explicit
precision and never flow back into exact pipelines.
"""

from __future__ import annotations

import decimal
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import DomainError, InvalidDigits
from .expansion import BarO2Digits, as_rational

DEFAULT_PRECISION = 64


@dataclass(frozen=True)
class CFDigits:
    a: tuple[int, ...]
    terminated: bool = False

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(v) for v in self.a))
        if any(v < 1 for v in self.a):
            raise InvalidDigits("partial quotients must be positive")

    def __len__(self):
        return len(self.a)


@dataclass(frozen=True)
class PierceDigits:
    q: tuple[int, ...]
    terminated: bool = False
    g: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        q = tuple(int(v) for v in self.q)
        object.__setattr__(self, "q", q)
        if q and q[0] < 1:
            raise InvalidDigits("Pierce digits must be positive")
        if any(b <= a for a, b in zip(q, q[1:])):
            raise InvalidDigits("Pierce digits must be strictly increasing")
        g = q[:1] + tuple(b - a for a, b in zip(q, q[1:]))
        object.__setattr__(self, "g", g)

    @classmethod
    def from_differences(cls, g: Iterable[int], terminated: bool = False) -> "PierceDigits":
        g = tuple(g)
        if any(v < 1 for v in g):
            raise InvalidDigits("Pierce difference digits must be positive")
        q, total = [], 0
        for v in g:
            total += v
            q.append(total)
        return cls(tuple(q), terminated)

    def __len__(self):
        return len(self.q)


def _check_unit(x):
    x = as_rational(x)
    if not 0 < x < 1:
        raise DomainError(f"x must lie in (0, 1), got {x}")
    return x


def cf_expand(x, max_terms: int = 10_000) -> CFDigits:
    """Partial quotients of ``x = [0; a_1, a_2, ...]`` by the Euclidean algorithm."""
    x = _check_unit(x)
    # plain integer Euclid: avoids a gcd per step on long expansions
    num, den = x.numerator, x.denominator
    a = []
    while len(a) < max_terms:
        quotient, rem = divmod(den, num)
        a.append(quotient)
        if rem == 0:
            return CFDigits(tuple(a), True)
        den, num = num, rem
    return CFDigits(tuple(a), False)


def cf_convergents(a: Iterable[int]):
    """Yield ``(p_n, q_n)`` for ``[0; a_1, ..., a_n]``."""
    p_prev, p = 1, 0
    q_prev, q = 0, 1
    for digit in a:
        p_prev, p = p, digit * p + p_prev
        q_prev, q = q, digit * q + q_prev
        yield p, q


def evaluate_cf(digits) -> Fraction:
    a = digits.a if isinstance(digits, CFDigits) else tuple(digits)
    p, q = 0, 1
    for p, q in cf_convergents(a):
        pass
    return Fraction(p, q)


def cf_cylinder(a) -> tuple[Fraction, Fraction]:
    """Closed interval of reals whose continued fraction starts with ``a``."""
    a = tuple(a)
    p_prev, p, q_prev, q = 1, 0, 0, 1
    for digit in a:
        p_prev, p = p, digit * p + p_prev
        q_prev, q = q, digit * q + q_prev
    ends = (Fraction(p, q), Fraction(p + p_prev, q + q_prev))
    return min(ends), max(ends)


def cf_child_ratio(a, i: int) -> Fraction:
    """``|Δ(a, i)| / |Δ(a)|`` for continued-fraction cylinders.

    Equals ``(1 + s) / ((i + s)(i + 1 + s))`` with ``s = q_{n-1}/q_n`` in
    ``[0, 1]``, so it always lies in ``[1/(3 i**2), 2/i**2]``.
    """
    lo, hi = cf_cylinder(a)
    clo, chi = cf_cylinder(tuple(a) + (i,))
    return (chi - clo) / (hi - lo)


def pierce_expand(x, max_terms: int = 64) -> PierceDigits:
    """Ostrogradsky-Pierce digits: ``q_k = floor(1/x_k)``, ``x_{k+1} = 1 - q_k x_k``."""
    x = _check_unit(x)
    num, den = x.numerator, x.denominator
    q = []
    while len(q) < max_terms:
        digit = den // num
        q.append(digit)
        num = den - digit * num
        if num == 0:
            return PierceDigits(tuple(q), True)
    return PierceDigits(tuple(q), False)


def evaluate_pierce(digits, n: int | None = None) -> Fraction:
    q = digits.q if isinstance(digits, PierceDigits) else tuple(digits)
    if n is None:
        n = len(q)
    total, prod = Fraction(0), 1
    for k in range(n):
        prod *= q[k]
        total += Fraction(1 if k % 2 == 0 else -1, prod)
    return total


def pierce_cylinder(q) -> tuple[Fraction, Fraction]:
    """Interval of reals whose Pierce expansion starts with ``q``.

    The remainder after n digits is ``(-1)**n t / (q_1...q_n)`` with
    ``t`` ranging over ``[0, 1/(q_n + 1)]``.
    """
    q = tuple(q)
    s = evaluate_pierce(q)
    prod = 1
    for v in q:
        prod *= v
    width = Fraction(1, prod * (q[-1] + 1))
    other = s + width if len(q) % 2 == 0 else s - width
    return min(s, other), max(s, other)


def _root_decimal(value: int, n: int, precision: int) -> decimal.Decimal:
    with decimal.localcontext() as ctx:
        ctx.prec = precision + 10
        result = (decimal.Decimal(value).ln() / n).exp()
        ctx.prec = precision
        return +result


def pierce_growth_stat(digits, precision: int = DEFAULT_PRECISION) -> list[tuple[int, decimal.Decimal]]:
    """``(n, q_n ** (1/n))`` for each digit; tends to e for Lebesgue-typical x."""
    q = digits.q if isinstance(digits, PierceDigits) else tuple(digits)
    if len(q) < 2:
        raise InvalidDigits("need at least 2 Pierce digits")
    return [(n, _root_decimal(v, n, precision)) for n, v in enumerate(q, 1)]


def gauss_frequency(i: int, precision: int = DEFAULT_PRECISION) -> decimal.Decimal:
    """Gauss-measure frequency ``log2((i+1)**2 / (i (i+2)))`` of partial quotient i."""
    if i < 1:
        raise DomainError("digit must be positive")
    with decimal.localcontext() as ctx:
        ctx.prec = precision + 10
        ratio = decimal.Decimal((i + 1) ** 2) / decimal.Decimal(i * (i + 2))
        value = ratio.ln() / decimal.Decimal(2).ln()
        ctx.prec = precision
        return +value


def transfer_map(digits, target: str) -> tuple[Fraction, Fraction]:
    """Image of an Ō² cylinder (or point) under the digit-preserving map.

    The same digit string is read as Pierce difference digits
    (``target="pierce"``) or as partial quotients (``target="cf"``).  For a
    terminated input the exact image point is returned as a degenerate
    interval; otherwise the target cylinder.
    """
    d = digits if isinstance(digits, BarO2Digits) else BarO2Digits(tuple(digits))
    if not d.d:
        raise InvalidDigits("digit prefix must be non-empty")
    if target == "pierce":
        q = PierceDigits.from_differences(d.d).q
        if d.terminated:
            point = evaluate_pierce(q)
            return point, point
        return pierce_cylinder(q)
    if target == "cf":
        if d.terminated:
            point = evaluate_cf(d.d)
            return point, point
        return cf_cylinder(d.d)
    raise DomainError(f"unknown transfer target {target!r}; expected 'pierce' or 'cf'")
