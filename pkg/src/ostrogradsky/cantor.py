"""Lebesgue measure of digit-restricted sets C[Ō², {V_k}].

A set is described by a :class:`Tail`, :class:`Prefix` or
:class:`Complement` family of allowed digits per level.  The module
evaluates the series criteria for positive or zero measure and produces
certified rational bounds on the measure.

Bookkeeping conventions.  ``F_k`` is the union of rank-k cylinders whose
digits are all allowed; the level-k removal ratio is
``λ(F̄_k) / λ(F_{k-1})`` with ``F̄_k = F_{k-1} \\ F_k``.  A cylinder whose last
companion value is ``c`` has length ``1/C`` with ``C = c (c + 1)``; the
whole unit interval behaves as a parent with ``C = 1``.  Its children with
digits ``1..j`` occupy ``1/C - 1/(C + j)`` of it (telescoping).

Every bound below is rigorous: infinite tails are closed with explicit
inequalities, and rationals that grow too large are rounded outward
(lower bounds down, upper bounds up).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Union

from .errors import BudgetExceeded, ParseError, ValidityError
from .expr import (
    Expr,
    affine_upper,
    const_value,
    dominates_on_positive,
    exp_lower_base,
    exp_upper_bound,
    geometric_exponent,
    parse_expr,
    polynomial,
)
from .numeric import PI_HIGH, round_down, round_up

PREFIX_DEPTH = 6
CLOSED_FORM_DEPTH = 20
PREFIX_HORIZON = 8
CYLINDER_BUDGET = 10**6
VALIDATE_INDICES = range(1, 9)
ROUND_BITS = 256


class Verdict(str, Enum):
    POSITIVE = "PositiveCertified"
    ZERO = "ZeroCertified"
    INCONCLUSIVE = "Inconclusive"


class Series(str, Enum):
    CONVERGES = "Converges"
    DIVERGES = "Diverges"
    INCONCLUSIVE = "Inconclusive"


# --------------------------------------------------------------------------- families


@dataclass(frozen=True)
class Tail:
    """``V_k = {v_k + 1, v_k + 2, ...}``."""

    v: Expr
    source: str = ""

    def allowed(self, k, digit):
        return digit > self.v(k)

    def min_digit(self, k):
        return self.v(k) + 1


@dataclass(frozen=True)
class Prefix:
    """``V_k = {1, ..., m_k}``."""

    m: Expr
    source: str = ""

    def allowed(self, k, digit):
        return 1 <= digit <= self.m(k)

    def min_digit(self, k):
        return 1


@dataclass(frozen=True)
class Complement:
    """``V_k = N \\ {b_1, b_2, ...}`` with level-independent ``b``; ``b=None`` removes nothing."""

    b: Expr | None
    gap: Expr | None = None
    source: str = ""

    def removed(self, n):
        return self.b(n)

    def is_removed(self, digit):
        if self.b is None:
            return False
        n = 1
        while True:
            value = self.b(n)
            if value >= digit:
                return value == digit
            n += 1

    def allowed(self, k, digit):
        return digit >= 1 and not self.is_removed(digit)

    def min_digit(self, k):
        if self.b is None:
            return 1
        digit, n = 1, 1
        while n < 100_000:
            value = self.b(n)
            if value > digit:
                return digit
            digit, n = value + 1, n + 1
        raise ValidityError("removed sequence appears to cover every digit")


DigitFamily = Union[Tail, Prefix, Complement]


def family_spec(family) -> str:
    if family.source:
        return family.source
    if isinstance(family, Tail):
        return f"tail:{family.v}"
    if isinstance(family, Prefix):
        return f"prefix:{family.m}"
    text = "complement:" + ("" if family.b is None else str(family.b))
    return text + (f";gap={family.gap}" if family.gap is not None else "")


def parse_family(text: str) -> DigitFamily:
    """Parse ``tail:EXPR`` | ``prefix:EXPR`` | ``complement:EXPR[;gap=EXPR]``.

    ``complement:`` with an empty expression removes nothing.
    """
    source = text.strip()
    kind, sep, rest = source.partition(":")
    kind = kind.strip().lower()
    if not sep:
        raise ParseError("family must look like 'tail:EXPR', 'prefix:EXPR' or 'complement:EXPR[;gap=EXPR]'", 0)
    offset = len(kind) + 1

    def sub(expr_text, variable, where):
        try:
            return parse_expr(expr_text, variable)
        except ParseError as exc:
            pos = None if exc.position is None else exc.position + where
            raise ParseError(str(exc).split(" (at position")[0], pos) from None

    if kind == "tail":
        family = Tail(sub(rest, "k", offset), source)
        for k in VALIDATE_INDICES:
            if family.v(k) < 0:
                raise ValidityError(f"tail sequence must be >= 0; v_{k} = {family.v(k)}")
        return family
    if kind == "prefix":
        family = Prefix(sub(rest, "k", offset), source)
        for k in VALIDATE_INDICES:
            if family.m(k) < 1:
                raise ValidityError(f"prefix sequence must be >= 1; m_{k} = {family.m(k)}")
        return family
    if kind == "complement":
        body, semi, gap_text = rest.partition(";")
        gap = None
        if semi:
            key, eq, value = gap_text.partition("=")
            if key.strip() != "gap" or not eq:
                raise ParseError("expected ';gap=EXPR'", offset + len(body) + 1)
            gap = sub(value, "k", offset + len(body) + 1 + len(key) + 1)
        b = sub(body, "m", offset) if body.strip() else None
        family = Complement(b, gap, source)
        if b is not None:
            values = [b(n) for n in VALIDATE_INDICES]
            if values[0] < 1:
                raise ValidityError(f"removed digits must be >= 1; b_1 = {values[0]}")
            if any(y <= x for x, y in zip(values, values[1:])):
                raise ValidityError("removed digits must be strictly increasing")
        if gap is not None:
            for k in VALIDATE_INDICES:
                if gap(k) < 1:
                    raise ValidityError(f"gap bound must be >= 1; d_{k} = {gap(k)}")
        return family
    raise ParseError(f"unknown family kind {kind!r}", 0)


# --------------------------------------------------------------------------- results


@dataclass
class CriterionResult:
    name: str  # the series being tested
    verdict: str
    terms: list = field(default_factory=list)  # (k, exact term)
    partial_sum: Fraction = Fraction(0)
    tail_bound: Fraction | None = None
    notes: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)
    series: str = Series.INCONCLUSIVE.value


@dataclass
class LevelMeasure:
    level: int
    lower: Fraction
    upper: Fraction
    ratio_lower: Fraction
    ratio_upper: Fraction

    @property
    def exact(self):
        return self.lower == self.upper


@dataclass(repr=False)
class MeasureBound:
    family: str
    lower: Fraction
    upper: Fraction
    depth: int
    verdict: Verdict
    trace: list = field(default_factory=list)
    criterion: CriterionResult | None = None
    notes: list = field(default_factory=list)

    def __repr__(self):
        return (
            f"MeasureBound({self.family!r}, lower~{float(self.lower):.6g}, "
            f"upper~{float(self.upper):.6g}, depth={self.depth}, {self.verdict.value})"
        )


# --------------------------------------------------------------------------- helpers


def _big(c: int) -> int:
    return c * (c + 1)


def removed_low_mass(big_c: int, v: int) -> Fraction:
    """Mass of children with digits ``1..v`` under a parent of length ``1/big_c``."""
    return Fraction(1, big_c) - Fraction(1, big_c + v)


def min_companions(family, depth: int) -> list[int]:
    """Companions of the smallest allowed digit at each level; a lower bound for every allowed cylinder."""
    out = []
    for k in range(1, depth + 1):
        digit = family.min_digit(k)
        out.append(digit if not out else _big(out[-1]) - 1 + digit)
    return out


def _sum_certified(terms, exact_limit=64):
    """Enclose ``sum(num/den)`` for positive ``(num, den)`` pairs."""
    if not terms:
        return Fraction(0), Fraction(0)
    if len(terms) <= exact_limit:
        total = sum((Fraction(n, d) for n, d in terms), Fraction(0))
        return total, total
    bits = max(d.bit_length() for _, d in terms) + 64
    low = sum(((n << bits) // d) for n, d in terms)
    return Fraction(low, 1 << bits), Fraction(low + len(terms), 1 << bits)


# --------------------------------------------------------------------------- criteria


def criterion_tail(family: Tail, b: int = 2, horizon: int = 16) -> CriterionResult:
    """Test ``sum_k v_{k+1} / b**(2**k) < inf`` (sufficient for positive measure)."""
    if not isinstance(family, Tail):
        raise TypeError("criterion_tail needs a Tail family")
    if b < 1:
        raise ValueError("b must be a positive integer")
    terms = []
    total = Fraction(0)
    for k in range(1, horizon + 1):
        t = Fraction(family.v(k + 1), b ** (1 << k))
        terms.append((k, t))
        total += t
    result = CriterionResult("sum v_{k+1}/b^(2^k)", Series.INCONCLUSIVE.value, terms, total)
    result.extra["b"] = b
    bound = exp_upper_bound(family.v)
    if bound is not None and b >= 2:
        const, base = bound
        # term_k <= const * base**(k+1) / b**(2**k); successive bound ratio <= base / b**(2**k)
        for k0 in range(1, horizon + 1):
            if 2 * base <= b ** (1 << k0):
                tail_k = Fraction(const * base ** (k0 + 2), b ** (1 << (k0 + 1)))
                tail = 2 * tail_k
                head = sum((t for k, t in terms if k <= k0), Fraction(0))
                result.partial_sum = head
                result.tail_bound = tail
                result.series = Series.CONVERGES.value
                result.verdict = Series.CONVERGES.value
                result.extra["k0"] = k0
                result.notes.append(
                    f"v_k <= {const}*{base}^k, so terms beyond k={k0} shrink by a factor <= 1/2"
                )
                return result
    last = [t for _, t in terms[-3:]]
    if len(last) == 3 and all(t >= 1 for t in last) and last[0] <= last[1] <= last[2]:
        result.series = Series.DIVERGES.value
        result.verdict = Series.DIVERGES.value
        result.notes.append("terms do not vanish over the horizon; this criterion gives no positivity")
    return result


def m_sequence(family: Prefix, n: int) -> list[int]:
    """``M_1 = m_1``, ``M_{k+1} = (M_k + 1)**2 + m_{k+1}``: an upper bound for ``c_k``."""
    out = [family.m(1)]
    for k in range(2, n + 1):
        out.append((out[-1] + 1) ** 2 + family.m(k))
    return out


def oc_lower_companion(k: int) -> int:
    """``C_0`` in the lower half of the sandwich: ``c_k (c_k + 1) >= C_0``."""
    if k == 1:
        return 2
    low = 1 << (1 << (k - 2))
    return low * (low + 1)


def criterion_prefix(family: Prefix, horizon: int = PREFIX_HORIZON) -> CriterionResult:
    """Both prefix-family tests.

    Positivity: ``sum M_k**2 / m_{k+1} < inf``.  Zero measure:
    ``sum 2**(2**(k-1)) / (2**(2**(k-1)) + m_{k+1}) = inf``.
    """
    if not isinstance(family, Prefix):
        raise TypeError("criterion_prefix needs a Prefix family")
    big_m = m_sequence(family, horizon)
    pos_terms, zero_terms = [], []
    for k in range(1, horizon + 1):
        m_next = family.m(k + 1)
        pos_terms.append((k, Fraction(big_m[k - 1] ** 2, m_next)))
        p = 1 << (1 << (k - 1))
        zero_terms.append((k, Fraction(p, p + m_next)))
    result = CriterionResult("prefix", Verdict.INCONCLUSIVE.value, pos_terms)
    result.extra.update(zero_terms=zero_terms, M=big_m)

    pattern = geometric_exponent(family.m)
    if pattern is not None and pattern[1] >= 3:
        for k0 in range(1, horizon + 1):
            mk = family.m(k0)
            if mk >= 9 and big_m[k0 - 1] <= 2 * mk:
                # m_{k+1} >= m_k**3 and M_k <= 2 m_k propagate, so M_k**2/m_{k+1} <= 4/m_k
                result.series = Series.CONVERGES.value
                result.verdict = Verdict.POSITIVE.value
                result.partial_sum = sum((t for k, t in pos_terms if k < k0), Fraction(0))
                result.tail_bound = Fraction(4, mk - 1)
                result.extra["k0"] = k0
                result.notes.append(
                    f"m_(k+1) = m_k^{pattern[1]} and M_{k0} <= 2 m_{k0}: positivity series converges"
                )
                return result

    bound = exp_upper_bound(family.m)
    if bound is not None:
        const, base = bound
        for k0 in range(1, horizon + 1):
            p = 1 << (1 << (k0 - 1))
            if p >= const * base ** (k0 + 1) and p >= base:
                # beyond k0 every zero-series term is >= 1/2
                result.series = Series.DIVERGES.value
                result.verdict = Verdict.ZERO.value
                result.extra["k0"] = k0
                result.notes.append(
                    f"m_k <= {const}*{base}^k: zero-measure series terms stay >= 1/2 from k={k0}"
                )
                result.notes.append("m_k grows at most exponentially: zero Hausdorff dimension is also certified")
                return result
    result.partial_sum = sum((t for _, t in pos_terms), Fraction(0))
    result.notes.append(
        "neither prefix test fires; the zero-measure series has vanishing terms for this family"
    )
    return result


def criterion_complement(family: Complement, horizon: int = 12) -> CriterionResult:
    """Zero measure when ``sum 1/(b_1 d_k) = inf``; positivity for square-type removals."""
    if not isinstance(family, Complement):
        raise TypeError("criterion_complement needs a Complement family")
    if family.b is None:
        result = CriterionResult("empty removal", Verdict.POSITIVE.value, [], Fraction(0), Fraction(0))
        result.series = Series.CONVERGES.value
        result.notes.append("no digit is removed: the set is the whole interval")
        return result
    b1 = family.b(1)
    if family.gap is not None:
        values = [family.b(n) for n in range(1, horizon + 2)]
        gaps = [y - x for x, y in zip(values, values[1:])]
        for k in range(1, horizon + 1):
            d_k = family.gap(k)
            bad = [n for n, g in enumerate(gaps, 1) if g > d_k]
            if bad:
                n = bad[0]
                raise ValidityError(f"gap bound violated: b_{n + 1} - b_{n} = {gaps[n - 1]} > d_{k} = {d_k}")
        terms = [(k, Fraction(1, b1 * family.gap(k))) for k in range(1, horizon + 1)]
        result = CriterionResult("sum 1/(b_1 d_k)", Verdict.INCONCLUSIVE.value, terms, sum((t for _, t in terms), Fraction(0)))
        aff = affine_upper(family.gap)
        if aff is not None and aff[0] >= 0:
            s, r = aff
            result.series = Series.DIVERGES.value
            result.verdict = Verdict.ZERO.value
            result.notes.append(f"d_k <= {s}k + {r}: the series is at least harmonic and diverges")
        return result

    poly = polynomial(family.b)
    if poly is not None and dominates_on_positive(poly, [0, 0, 1]):
        terms = []
        comps = min_companions(family, horizon)
        for k in range(2, horizon + 1):
            big_c = _big(comps[k - 2])
            terms.append((k, PI_HIGH / (2 * math.isqrt(big_c))))
        result = CriterionResult(
            "sum pi/(2 sqrt(c_{k-1}(c_{k-1}+1)))",
            Verdict.POSITIVE.value,
            terms,
            sum((t for _, t in terms), Fraction(0)),
        )
        result.series = Series.CONVERGES.value
        c_last = comps[-1]
        result.tail_bound = PI_HIGH / 2 / (c_last - 1)
        result.notes.append("b_m >= m^2: removed share per level < pi/(2 sqrt(C)), C doubly exponential")
        return result
    result = CriterionResult("complement", Verdict.INCONCLUSIVE.value)
    result.notes.append("no gap bound declared and removals are not of square type")
    if poly is not None and len(poly) == 2 and poly[1] > 0:
        result.notes.append(f"removals are affine; declare the gap as ';gap={poly[1]}' for the zero-measure test")
    return result


# --------------------------------------------------------------------------- level measures


def _prefix_levels(family: Prefix, depth: int, budget: int):
    counts = 1
    for k in range(1, depth):
        counts *= family.m(k)
        if counts > budget:
            raise BudgetExceeded(
                f"enumerating rank-{k} cylinders needs {counts} > {budget}", max_depth=k
            )
    levels = []
    parents = [None]  # None stands for the unit interval (C = 1)
    prev_lo = prev_hi = Fraction(1)
    for k in range(1, depth + 1):
        m_k = family.m(k)
        terms = []
        for c in parents:
            big_c = 1 if c is None else _big(c)
            terms.append((m_k, big_c * (big_c + m_k)))
        lo, hi = _sum_certified(terms)
        ratio_lo = 1 - hi / prev_lo
        ratio_hi = 1 - lo / prev_hi
        levels.append(LevelMeasure(k, lo, hi, max(ratio_lo, Fraction(0)), ratio_hi))
        prev_lo, prev_hi = lo, hi
        if k < depth:
            parents = [
                j if c is None else _big(c) - 1 + j for c in parents for j in range(1, m_k + 1)
            ]
    return levels


def prefix_cylinder_companions(family: Prefix, rank: int) -> list[int]:
    """Last companion value of every rank-``rank`` cylinder meeting the set."""
    cs = [None]
    for k in range(1, rank + 1):
        m_k = family.m(k)
        cs = [j if c is None else _big(c) - 1 + j for c in cs for j in range(1, m_k + 1)]
    return cs


def _complement_root(family: Complement, terms: int = 4096):
    """Enclosure of the removed share of the unit interval, ``sum 1/(b (b+1))``."""
    bs = [family.b(n) for n in range(1, terms + 2)]
    head_lo, head_hi = _sum_certified([(1, b * (b + 1)) for b in bs[:terms]], exact_limit=0)
    tail_hi = Fraction(1, bs[terms - 1] + 1)
    tail_lo = Fraction(0)
    if family.gap is not None:
        tail_lo = Fraction(1, family.gap(1) * bs[terms])
    return head_lo + tail_lo, min(head_hi + tail_hi, Fraction(1))


def _tail_level2(family: Tail, terms: int = 2048):
    v1, v2 = family.v(1), family.v(2)
    head = [(1, i * (i + 1) + v2) for i in range(v1 + 1, v1 + 1 + terms)]
    lo, hi = _sum_certified(head, exact_limit=0)
    return lo, hi + Fraction(1, v1 + terms + 1)


def _tail_ratio_upper(family: Tail, comps, k):
    big_c = _big(comps[k - 2])
    v = family.v(k)
    return Fraction(v, big_c + v)


def _complement_ratio_bounds(family: Complement, comps, k):
    lo = Fraction(0)
    if family.gap is not None:
        lo = Fraction(1, family.b(1) * family.gap(k))
    hi = Fraction(1)
    poly = polynomial(family.b)
    if poly is not None and dominates_on_positive(poly, [0, 0, 1]):
        big_c = _big(comps[k - 2])
        hi = min(hi, PI_HIGH / (2 * math.isqrt(big_c)))
    return lo, hi


def exact_level_measures(family, depth: int | None = None, budget: int = CYLINDER_BUDGET) -> list[LevelMeasure]:
    """Per-level enclosures of ``λ(F_k)`` and of the removal ratio at level k."""
    if isinstance(family, Prefix):
        return _prefix_levels(family, depth or PREFIX_DEPTH, budget)
    depth = depth or CLOSED_FORM_DEPTH
    if isinstance(family, Complement) and family.b is None:
        return [LevelMeasure(k, Fraction(1), Fraction(1), Fraction(0), Fraction(0)) for k in range(1, depth + 1)]
    comps = min_companions(family, max(depth - 1, 1))
    levels = []
    if isinstance(family, Tail):
        first = Fraction(1, family.v(1) + 1)
        levels.append(LevelMeasure(1, first, first, 1 - first, 1 - first))
    else:
        rem_lo, rem_hi = _complement_root(family)
        levels.append(LevelMeasure(1, 1 - rem_hi, 1 - rem_lo, rem_lo, rem_hi))
    for k in range(2, depth + 1):
        prev = levels[-1]
        if isinstance(family, Tail):
            r_lo, r_hi = Fraction(0), _tail_ratio_upper(family, comps, k)
        else:
            r_lo, r_hi = _complement_ratio_bounds(family, comps, k)
        lo = round_down(prev.lower * (1 - r_hi), ROUND_BITS)
        hi = min(prev.upper, round_up(prev.upper * (1 - r_lo), ROUND_BITS))
        if isinstance(family, Tail) and k == 2:
            l2_lo, l2_hi = _tail_level2(family)
            lo, hi = max(lo, l2_lo), min(hi, l2_hi)
        levels.append(LevelMeasure(k, lo, hi, r_lo, r_hi))
    return levels


# --------------------------------------------------------------------------- measure bounds


def _criterion_for(family, horizon):
    if isinstance(family, Tail):
        if exp_upper_bound(family.v) is None:
            return criterion_tail(family, 2, horizon or 16)
        first = None
        for b in range(2, 33):
            res = criterion_tail(family, b, horizon or 16)
            if first is None:
                first = res
            if res.series == Series.CONVERGES.value:
                return res
        return first
    if isinstance(family, Prefix):
        return criterion_prefix(family, horizon or PREFIX_HORIZON)
    return criterion_complement(family, horizon or 12)


def _trace_row(level):
    return {
        "level": level.level,
        "measure_lower": level.lower,
        "measure_upper": level.upper,
        "ratio_lower": level.ratio_lower,
        "ratio_upper": level.ratio_upper,
    }


def _tail_lower(family: Tail, depth: int):
    """Product lower bound ``λ(F_1) prod (1 - ratio_upper_k)`` closed by an exponential-growth tail."""
    bound = exp_upper_bound(family.v)
    if bound is None:
        return Fraction(0), None
    const, base = bound
    lower = Fraction(1, family.v(1) + 1)
    comps = min_companions(family, depth)
    for k in range(2, depth + 1):
        lower = round_down(lower * (1 - _tail_ratio_upper(family, comps, k)), ROUND_BITS)
        c_k = comps[k - 1]
        if 2 * base <= c_k * c_k:
            tail = Fraction(2 * const * base ** (k + 1), c_k * c_k)
            if tail < 1:
                return round_down(lower * (1 - tail), ROUND_BITS), (k, tail)
    return Fraction(0), None


def _complement_lower(family: Complement, levels, depth):
    comps = min_companions(family, depth)
    lower = levels[0].lower
    for k in range(2, depth + 1):
        _, r_hi = _complement_ratio_bounds(family, comps, k)
        lower = round_down(lower * (1 - r_hi), ROUND_BITS)
        c_k = comps[k - 1]
        tail = PI_HIGH / 2 / (c_k - 1) if c_k >= 2 else None
        if tail is not None and tail < 1:
            return round_down(lower * (1 - tail), ROUND_BITS), (k, tail)
    return Fraction(0), None


def _prefix_lower(family: Prefix, criterion, levels):
    k0 = criterion.extra.get("k0")
    big_m = criterion.extra["M"]
    depth = len(levels)
    lower = levels[-1].lower
    start = depth
    for k in range(start, len(big_m) + 1):
        mk = family.m(k)
        if k >= k0 and Fraction(16, mk - 1) < 1:
            return round_down(lower * (1 - Fraction(16, mk - 1)), ROUND_BITS), (k, Fraction(16, mk - 1))
        mm = big_m[k - 1] * (big_m[k - 1] + 1)
        lower = round_down(lower * Fraction(family.m(k + 1), mm + family.m(k + 1)), ROUND_BITS)
    return Fraction(0), None


def measure_bounds(family, depth: int | None = None, horizon: int | None = None,
                   budget: int = CYLINDER_BUDGET) -> MeasureBound:
    """Certified ``[lower, upper]`` for ``λ(C[Ō², {V_k}])`` plus a verdict."""
    if isinstance(family, str):
        family = parse_family(family)
    notes = []
    if isinstance(family, Prefix) and depth is None:
        try:
            levels = exact_level_measures(family, PREFIX_DEPTH, budget)
        except BudgetExceeded as exc:
            notes.append(f"enumeration depth reduced to {exc.max_depth} by the cylinder budget")
            levels = exact_level_measures(family, exc.max_depth, budget)
    else:
        levels = exact_level_measures(family, depth, budget)
    depth = len(levels)
    criterion = _criterion_for(family, horizon)
    notes.extend(criterion.notes)
    trace = [_trace_row(lv) for lv in levels]
    lower, upper = Fraction(0), levels[-1].upper
    verdict = Verdict.INCONCLUSIVE

    if isinstance(family, Prefix):
        big_m = criterion.extra["M"]
        # (Oc) lower ratio keeps shrinking the upper bound past the enumerated depth
        for k in range(depth, len(big_m) + 1):
            c0 = oc_lower_companion(k)
            m_next = family.m(k + 1)
            upper = round_up(upper * Fraction(m_next, c0 + m_next), ROUND_BITS)
            trace.append({"level": k + 1, "ratio_lower": Fraction(c0, c0 + m_next), "measure_upper": upper})
        if criterion.verdict == Verdict.POSITIVE.value:
            lower, tail = _prefix_lower(family, criterion, levels)
            if tail:
                trace.append({"level": tail[0], "tail_ratio_sum_upper": tail[1], "measure_lower": lower})
        if criterion.verdict == Verdict.ZERO.value:
            verdict = Verdict.ZERO
        elif lower > 0:
            verdict = Verdict.POSITIVE
    elif isinstance(family, Tail):
        lower, tail = _tail_lower(family, max(depth, 2))
        if tail:
            trace.append({"level": tail[0], "tail_ratio_sum_upper": tail[1], "measure_lower": lower})
        if lower > 0:
            verdict = Verdict.POSITIVE
    else:
        if family.b is None:
            lower = upper = Fraction(1)
            verdict = Verdict.POSITIVE
        elif criterion.verdict == Verdict.ZERO.value:
            verdict = Verdict.ZERO
        elif criterion.verdict == Verdict.POSITIVE.value:
            lower, tail = _complement_lower(family, levels, max(depth, 2))
            if tail:
                trace.append({"level": tail[0], "tail_ratio_sum_upper": tail[1], "measure_lower": lower})
            if lower > 0:
                verdict = Verdict.POSITIVE
    if verdict == Verdict.ZERO:
        lower = Fraction(0)
    return MeasureBound(family_spec(family), lower, upper, depth, verdict, trace, criterion, notes)


# --------------------------------------------------------------------------- other systems


def pierce_growth_zero_test(family: Tail, horizon: int = 30):
    """Zero measure of the Pierce analogue when ``liminf v_k**(1/k) > e``."""
    if not isinstance(family, Tail):
        raise TypeError("needs a Tail family")
    roots = []
    for k in range(1, horizon + 1):
        v = family.v(k)
        roots.append((k, math.exp(math.log(v) / k) if v > 0 else 0.0))
    base = exp_lower_base(family.v)
    if base is not None and (base == -1 or base >= 3):
        verdict = Verdict.ZERO.value
        note = "v_k grows at least like 3^k (> e^k): Pierce digit growth excludes almost every point"
    else:
        verdict = Verdict.INCONCLUSIVE.value
        note = "no certified growth above e^k"
        if const_value(family.v) is not None:
            note += "; constant v is a finite deletion, which keeps positive Pierce measure"
    return {"verdict": verdict, "system": "pierce", "growth_base": base, "roots": roots, "notes": [note]}


def cf_prefix_removed_bound(family: Prefix, horizon: int = 6):
    """Continued-fraction analogue: removed share at level k+1 is at most ``sum_{i>m} 2/i**2 < 2/m``."""
    rows = []
    for k in range(1, horizon + 1):
        m_next = family.m(k + 1)
        rows.append({"level": k, "cf_removed_upper": Fraction(2, m_next), "reference": Fraction(4, 1 << (1 << max(k - 2, 0))) if k >= 2 else Fraction(4)})
    return rows


def pierce_prefix_trace(family: Prefix, horizon: int = 8):
    """Partial sums of ``sum (m_1+...+m_k)/m_{k+1}`` (Pierce positivity test, trace only)."""
    total, running, rows = Fraction(0), 0, []
    for k in range(1, horizon + 1):
        running += family.m(k)
        term = Fraction(running, family.m(k + 1))
        total += term
        rows.append((k, term, total))
    return rows
