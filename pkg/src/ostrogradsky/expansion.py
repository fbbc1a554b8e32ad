"""Second Ostrogradsky expansion: digits, evaluation, cylinders and shift.

Two codings of the same alternating series

    x = 1/q_1 - 1/q_2 + 1/q_3 - ...,      q_{k+1} >= q_k (q_k + 1)

are used throughout.  ``O2Digits`` holds the raw denominators ``q_k``;
``BarO2Digits`` holds the increments ``d_1 = q_1``,
``d_{k+1} = q_{k+1} - q_k (q_k + 1) + 1``, which range freely over the
positive integers.  All arithmetic is exact (``fractions.Fraction``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainError, InvalidDigits, TooShort

#: Default number of terms produced by :func:`remez_expand`.  The companion
#: integers grow doubly exponentially (``c_k >= 2**(2**(k-2))``), so depth 24
#: already means integers of several million bits.
DEFAULT_MAX_TERMS = 24


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` / decimal strings exactly."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"not a rational literal: {value!r}") from exc
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def _check_positive(seq, what):
    for k, v in enumerate(seq, 1):
        if not isinstance(v, int) or isinstance(v, bool):
            raise InvalidDigits(f"{what}_{k} = {v!r} is not an integer")
        if v < 1:
            raise InvalidDigits(f"{what}_{k} = {v} is not positive")


@dataclass(frozen=True)
class O2Digits:
    q: tuple[int, ...]
    terminated: bool = False

    def __post_init__(self):
        object.__setattr__(self, "q", tuple(int(v) for v in self.q))
        _check_positive(self.q, "q")
        for k in range(len(self.q) - 1):
            a, b = self.q[k], self.q[k + 1]
            if b < a * (a + 1):
                raise InvalidDigits(
                    f"growth constraint fails at k={k + 1}: q_{k + 2}={b} < q_{k + 1}(q_{k + 1}+1)={a * (a + 1)}"
                )

    def __len__(self):
        return len(self.q)


@dataclass(frozen=True)
class BarO2Digits:
    d: tuple[int, ...]
    terminated: bool = False

    def __post_init__(self):
        object.__setattr__(self, "d", tuple(int(v) for v in self.d))
        _check_positive(self.d, "d")

    def __len__(self):
        return len(self.d)

    def __getitem__(self, item):
        return self.d[item]


@dataclass(frozen=True)
class CompanionSequence:
    """``c_1 = d_1``, ``c_{i+1} = c_i (c_i + 1) - 1 + d_{i+1}``."""

    c: tuple[int, ...]

    def __len__(self):
        return len(self.c)

    def __getitem__(self, item):
        return self.c[item]

    @property
    def last(self) -> int:
        return self.c[-1]

    def growth_holds(self) -> bool:
        """Check ``c_k >= 2**(2**(k-2))`` for every ``k >= 2``."""
        return all(c >= 1 << (1 << (k - 2)) for k, c in enumerate(self.c, 1) if k >= 2)


@dataclass(frozen=True)
class Cylinder:
    base: BarO2Digits
    rank: int
    a: Fraction
    b: Fraction

    @property
    def parity(self) -> str:
        return "odd" if self.rank % 2 else "even"

    @property
    def length(self) -> Fraction:
        return self.b - self.a

    def contains(self, x) -> bool:
        return self.a <= x <= self.b


def _digits(obj, cls_attr):
    if isinstance(obj, (O2Digits, BarO2Digits)):
        return getattr(obj, cls_attr)
    return tuple(obj)


def remez_expand(x, max_terms: int = DEFAULT_MAX_TERMS, alternate: bool = False) -> O2Digits:
    """Expand ``x`` in (0, 1) with the Ostrogradsky-Remez division scheme.

    The scheme is ``1 = q_1 x + beta_1``, ``q_1 = q_2 beta_1 + beta_2``,
    ``q_2 q_1 = q_3 beta_2 + beta_3`` and so on, each ``q`` being the integer
    quotient (``0 <= beta_{k+1} < beta_k``).  It stops when a remainder is
    exactly zero or after ``max_terms`` quotients.

    A rational number has two finite expansions; the scheme returns the
    shorter one.  With ``alternate=True`` the last digit ``q_n`` of a
    terminated expansion is rewritten as ``q_n - 1, (q_n - 1) q_n``, which sums
    to the same value.
    """
    x = as_rational(x)
    if not 0 < x < 1:
        raise DomainError(f"x must lie in (0, 1), got {x}")
    if max_terms < 1:
        raise DomainError("max_terms must be >= 1")

    q: list[int] = []
    dividend = Fraction(1)
    divisor = x
    product = 1
    terminated = False
    while len(q) < max_terms:
        quotient = dividend // divisor
        remainder = dividend - quotient * divisor
        q.append(int(quotient))
        if remainder == 0:
            terminated = True
            break
        product *= int(quotient)
        dividend, divisor = Fraction(product), remainder

    if alternate and terminated:
        last = q.pop()
        q.extend([last - 1, (last - 1) * last])
    return O2Digits(tuple(q), terminated)


def evaluate_o2(digits, n: int | None = None) -> Fraction:
    """Exact partial sum ``sum_{k<=n} (-1)**(k-1) / q_k``."""
    q = _digits(digits, "q")
    if n is None:
        n = len(q)
    if n < 0 or n > len(q):
        raise IndexError(f"n={n} exceeds the {len(q)} available digits")
    total = Fraction(0)
    for k in range(n):
        term = Fraction(1, q[k])
        total += term if k % 2 == 0 else -term
    return total


def o2_to_bar(digits) -> BarO2Digits:
    terminated = digits.terminated if isinstance(digits, O2Digits) else False
    q = O2Digits(_digits(digits, "q"), terminated).q
    if not q:
        return BarO2Digits((), terminated)
    d = [q[0]]
    for prev, cur in zip(q, q[1:]):
        d.append(cur - prev * (prev + 1) + 1)
    return BarO2Digits(tuple(d), terminated)


def companions(d: Sequence[int]) -> CompanionSequence:
    c: list[int] = []
    for digit in d:
        c.append(digit if not c else c[-1] * (c[-1] + 1) - 1 + digit)
    return CompanionSequence(tuple(c))


def bar_to_o2(digits) -> tuple[O2Digits, CompanionSequence]:
    terminated = digits.terminated if isinstance(digits, BarO2Digits) else False
    d = BarO2Digits(_digits(digits, "d"), terminated).d
    comp = companions(d)
    return O2Digits(comp.c, terminated), comp


def evaluate_bar(digits, n: int | None = None) -> Fraction:
    q, _ = bar_to_o2(digits)
    return evaluate_o2(q, n)


def cylinder_interval(base) -> Cylinder:
    """Closed interval of the rank-n cylinder with the given Ō² base.

    With ``S_n`` the n-term partial sum and ``L = 1/(c_n (c_n + 1))``, the
    cylinder is ``[S_n - L, S_n]`` for odd n and ``[S_n, S_n + L]`` for even n.
    """
    base = base if isinstance(base, BarO2Digits) else BarO2Digits(tuple(base))
    if not base.d:
        raise InvalidDigits("cylinder base must be non-empty")
    o2, comp = bar_to_o2(base)
    n = len(base)
    s = evaluate_o2(o2)
    cn = comp.last
    length = Fraction(1, cn * (cn + 1))
    if n % 2:
        a, b = s - length, s
    else:
        a, b = s, s + length
    return Cylinder(base, n, a, b)


def child_ratio(base, j: int) -> Fraction:
    """``|Δ(base, j)| / |Δ(base)| = C / ((C + j - 1)(C + j))`` with ``C = c_n (c_n + 1)``."""
    d = _digits(base, "d")
    if not d:
        raise InvalidDigits("base must be non-empty")
    if j < 1:
        raise InvalidDigits(f"child digit must be positive, got {j}")
    cn = companions(d).last
    big = cn * (cn + 1)
    return Fraction(big, (big + j - 1) * (big + j))


def shift(digits, times: int = 1) -> BarO2Digits:
    d = _digits(digits, "d")
    terminated = digits.terminated if isinstance(digits, BarO2Digits) else False
    if len(d) < times + 1:
        raise TooShort(f"need at least {times + 1} digits to shift {times} time(s), got {len(d)}")
    return BarO2Digits(tuple(d[times:]), terminated)


def digit_count(digits, i: int, n: int | None = None) -> int:
    """Number of positions ``k <= n`` with ``d_k == i``."""
    d = _digits(digits, "d")
    if n is None:
        n = len(d)
    if n < 0 or n > len(d):
        raise IndexError(f"n={n} exceeds the {len(d)} available digits")
    return sum(1 for v in d[:n] if v == i)
