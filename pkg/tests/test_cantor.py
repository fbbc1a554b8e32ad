import random
from fractions import Fraction

import pytest

from ostrogradsky.cantor import (
    Complement,
    Prefix,
    Series,
    Tail,
    Verdict,
    cf_prefix_removed_bound,
    criterion_complement,
    criterion_prefix,
    criterion_tail,
    exact_level_measures,
    m_sequence,
    measure_bounds,
    oc_lower_companion,
    parse_family,
    pierce_growth_zero_test,
    pierce_prefix_trace,
    prefix_cylinder_companions,
    removed_low_mass,
)
from ostrogradsky.errors import BudgetExceeded, ParseError, ValidityError
from ostrogradsky.expansion import child_ratio, cylinder_interval
from ostrogradsky.expr import FunctionSequence


def test_parse_family_examples():
    tail = parse_family("tail:3^k")
    assert isinstance(tail, Tail) and [tail.v(k) for k in (1, 2, 3)] == [3, 9, 27]
    prefix = parse_family("prefix:2^(2^(k-1))")
    assert isinstance(prefix, Prefix) and [prefix.m(k) for k in (1, 2, 3)] == [2, 4, 16]
    squares = parse_family("complement:m^2")
    assert isinstance(squares, Complement) and squares.is_removed(9) and not squares.is_removed(8)
    odd = parse_family("complement:2m-1;gap=2")
    assert odd.gap(5) == 2 and odd.min_digit(1) == 2


@pytest.mark.parametrize(
    "text, error",
    [
        ("tail:k-2", ValidityError),
        ("prefix:0", ValidityError),
        ("complement:3-m", ValidityError),
        ("complement:2m;gap=0", ValidityError),
        ("wedge:k", ParseError),
        ("tail", ParseError),
        ("tail:3^", ParseError),
        ("complement:2m;gapp=2", ParseError),
    ],
)
def test_parse_family_errors(text, error):
    with pytest.raises(error):
        parse_family(text)


def test_parse_error_position_is_absolute():
    with pytest.raises(ParseError) as info:
        parse_family("tail:3^")
    assert info.value.position == 7


def test_criterion_tail_examples():
    assert criterion_tail(parse_family("tail:3^k"), 2).verdict == Series.CONVERGES.value
    diverging = criterion_tail(parse_family("tail:2^(2^k)"), 2, horizon=8)
    assert diverging.verdict == Series.DIVERGES.value
    assert all(t == 2 ** (1 << k) for k, t in diverging.terms)
    assert criterion_tail(parse_family("tail:0"), 2).verdict == Series.CONVERGES.value


def test_tail_bound_dominates_series():
    res = criterion_tail(parse_family("tail:3^k"), 2, horizon=12)
    total = sum((t for _, t in res.terms), Fraction(0))
    assert total <= res.partial_sum + res.tail_bound


def test_m_sequence_recurrence():
    fam = parse_family("prefix:k")
    big_m = m_sequence(fam, 6)
    assert big_m[0] == 1
    assert all(big_m[k] == (big_m[k - 1] + 1) ** 2 + fam.m(k + 1) for k in range(1, 6))


def test_m_sequence_bounds_companions():
    fam = parse_family("prefix:3")
    big_m = m_sequence(fam, 4)
    for k in range(1, 5):
        assert max(prefix_cylinder_companions(fam, k)) <= big_m[k - 1]


def test_criterion_prefix_examples():
    assert criterion_prefix(parse_family("prefix:k")).verdict == Verdict.ZERO.value
    open_case = criterion_prefix(parse_family("prefix:2^(2^(k-1))"))
    assert open_case.verdict == Verdict.INCONCLUSIVE.value
    for k, term in open_case.extra["zero_terms"]:
        assert term == Fraction(1, 1 + (1 << (1 << (k - 1))))
    assert criterion_prefix(parse_family("prefix:2^(3^k)")).verdict == Verdict.POSITIVE.value


def test_prefix_positive_series_from_callable():
    big_m = {}

    def m(k):
        if k == 1:
            return 1
        prev = M(k - 1)
        return (1 << (k - 1)) * prev * prev

    def M(k):
        if k not in big_m:
            big_m[k] = m(1) if k == 1 else (M(k - 1) + 1) ** 2 + m(k)
        return big_m[k]

    fam = Prefix(FunctionSequence(m, "2^(k-1) M_(k-1)^2"))
    res = criterion_prefix(fam, horizon=5)
    assert [t for _, t in res.terms] == [Fraction(1, 2**k) for k in range(1, 6)]
    # no structural guarantee for an opaque callable
    assert res.verdict == Verdict.INCONCLUSIVE.value


def test_criterion_complement_examples():
    assert criterion_complement(parse_family("complement:2m-1;gap=2")).verdict == Verdict.ZERO.value
    assert criterion_complement(parse_family("complement:m^2")).verdict == Verdict.POSITIVE.value
    assert criterion_complement(parse_family("complement:")).verdict == Verdict.POSITIVE.value
    assert criterion_complement(parse_family("complement:3m")).verdict == Verdict.INCONCLUSIVE.value


def test_gap_violation_detected():
    with pytest.raises(ValidityError):
        criterion_complement(parse_family("complement:m^2;gap=3"))


def test_level_measure_prefix_example():
    # under the rank-1 cylinder d=(1): kept children 1, 2 have mass 1/6 + 1/12
    assert child_ratio((1,), 1) * Fraction(1, 2) + child_ratio((1,), 2) * Fraction(1, 2) == Fraction(1, 4)
    assert removed_low_mass(2, 2) == Fraction(1, 4)
    levels = exact_level_measures(parse_family("prefix:2"), 2)
    assert levels[0].lower == levels[0].upper == Fraction(2, 3)
    assert levels[1].exact and levels[1].lower == Fraction(1, 4) + Fraction(1, 24)


def test_level_measure_tail_closed_form():
    big = 42 * 43
    total = sum((child_ratio((1, 1, 1, 1), j) for j in range(1, 8)), Fraction(0)) / big
    assert total == removed_low_mass(big, 7)


def test_full_space_levels():
    for lv in exact_level_measures(parse_family("complement:"), 5):
        assert lv.lower == lv.upper == 1
    for lv in exact_level_measures(parse_family("tail:0"), 3):
        assert lv.ratio_upper == 0 or lv.level == 1


def test_prefix_level_measures_match_enumeration():
    fam = parse_family("prefix:k+1")
    levels = exact_level_measures(fam, 3)
    for lv in levels:
        total = Fraction(0)
        for c in prefix_cylinder_companions(fam, lv.level):
            total += Fraction(1, c * (c + 1))
        assert lv.lower == lv.upper == total


def test_monotone_levels():
    for spec in ["tail:3^k", "complement:m^2", "prefix:3", "complement:2m-1;gap=2"]:
        levels = exact_level_measures(parse_family(spec), 8)
        for a, b in zip(levels, levels[1:]):
            assert b.lower <= b.upper <= a.upper
        assert all(lv.lower <= lv.upper for lv in levels)


def test_oc_sandwich_holds_for_every_cylinder():
    fam = parse_family("prefix:k+1")
    big_m = m_sequence(fam, 4)
    for k in range(1, 4):
        m_next = fam.m(k + 1)
        c0 = oc_lower_companion(k)
        mm = big_m[k - 1] * (big_m[k - 1] + 1)
        for c in prefix_cylinder_companions(fam, k):
            big = c * (c + 1)
            ratio = Fraction(big, big + m_next)
            assert Fraction(c0, c0 + m_next) <= ratio <= Fraction(mm, mm + m_next)


def test_budget_exceeded_reports_depth():
    with pytest.raises(BudgetExceeded) as info:
        exact_level_measures(parse_family("prefix:100"), 6, budget=10**5)
    assert info.value.max_depth == 3


def test_measure_bounds_examples():
    tail = measure_bounds("tail:3^k")
    assert tail.verdict == Verdict.POSITIVE and 0 < tail.lower <= tail.upper
    assert measure_bounds("complement:2m-1;gap=2").verdict == Verdict.ZERO
    single = measure_bounds("prefix:1")
    assert single.verdict == Verdict.ZERO and single.upper < Fraction(1, 10**50)
    assert measure_bounds("complement:m^2").verdict == Verdict.POSITIVE


def test_measure_bounds_are_nested_in_level_measures():
    fam = parse_family("tail:3^k")
    res = measure_bounds(fam)
    level2 = exact_level_measures(fam, 2)[1]
    assert res.lower <= level2.lower
    assert res.upper <= level2.upper


def test_open_prefix_case_is_inconclusive():
    res = measure_bounds("prefix:2^(2^(k-1))")
    assert res.verdict == Verdict.INCONCLUSIVE
    assert res.lower == 0 and res.upper < Fraction(1, 10)


def test_positive_prefix_family_lower_bound():
    res = measure_bounds("prefix:2^(3^k)")
    assert res.verdict == Verdict.POSITIVE and 0 < res.lower <= res.upper


def test_random_point_membership_versus_bounds():
    # points drawn inside surviving rank-3 cylinders of tail:1 stay within the level-3 mass
    fam = parse_family("tail:1")
    rnd = random.Random(5)
    for _ in range(20):
        digits = tuple(rnd.randint(2, 9) for _ in range(3))
        cyl = cylinder_interval(digits)
        assert 0 < cyl.length <= exact_level_measures(fam, 3)[2].upper


def test_pierce_zero_test():
    assert pierce_growth_zero_test(parse_family("tail:3^k"))["verdict"] == "ZeroCertified"
    assert pierce_growth_zero_test(parse_family("tail:2^k"))["verdict"] == "Inconclusive"
    constant = pierce_growth_zero_test(parse_family("tail:5"))
    assert constant["verdict"] == "Inconclusive" and "finite deletion" in constant["notes"][0]


def test_cf_contrast_termwise():
    rows = cf_prefix_removed_bound(parse_family("prefix:2^(2^(k-1))"), 6)
    for row in rows:
        if row["level"] >= 2:
            assert row["cf_removed_upper"] < row["reference"]
    assert sum((r["reference"] for r in rows), Fraction(0)) < 12


def test_pierce_prefix_trace():
    rows = pierce_prefix_trace(parse_family("prefix:2^(2^(k-1))"), 5)
    assert rows[0][1] == Fraction(2, 4)
    assert rows[-1][2] < 2
