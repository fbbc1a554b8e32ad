from fractions import Fraction

import pytest

from ostrogradsky import (
    BarO2Digits,
    DomainError,
    InvalidDigits,
    O2Digits,
    TooShort,
    bar_to_o2,
    child_ratio,
    companions,
    cylinder_interval,
    digit_count,
    evaluate_bar,
    evaluate_o2,
    o2_to_bar,
    remez_expand,
    shift,
)
from ostrogradsky.expansion import as_rational


@pytest.mark.parametrize(
    "x, q",
    [("1/3", (3,)), ("2/5", (2, 10)), ("1/2", (2,)), ("0.4", (2, 10))],
)
def test_remez_examples(x, q):
    digits = remez_expand(x, 10)
    assert digits.q == q
    assert digits.terminated
    assert evaluate_o2(digits) == as_rational(x)


def test_remez_alternate_representation():
    canonical = remez_expand(Fraction(1, 3))
    alt = remez_expand(Fraction(1, 3), alternate=True)
    assert canonical.q == (3,)
    assert alt.q == (2, 6)
    assert evaluate_o2(alt) == Fraction(1, 3)


def test_remez_unterminated_bracket():
    x = Fraction(355, 1131)
    digits = remez_expand(x, 2)
    if not digits.terminated:
        qn = digits.q[-1]
        assert abs(x - evaluate_o2(digits)) <= Fraction(1, qn * (qn + 1))


@pytest.mark.parametrize("x", [0, 1, "3/2", "-1/4"])
def test_remez_domain(x):
    with pytest.raises(DomainError):
        remez_expand(x)


def test_remez_max_terms_validation():
    with pytest.raises(DomainError):
        remez_expand("1/3", 0)


@pytest.mark.parametrize(
    "q, n, value",
    [((2, 10), 2, Fraction(2, 5)), ((3,), 1, Fraction(1, 3)), ((2, 6, 42), 2, Fraction(1, 3))],
)
def test_evaluate_examples(q, n, value):
    assert evaluate_o2(O2Digits(q), n) == value


def test_evaluate_index_error():
    with pytest.raises(IndexError):
        evaluate_o2(O2Digits((2, 10)), 3)


@pytest.mark.parametrize("q, d", [((2, 10), (2, 5)), ((1, 2), (1, 1)), ((3, 12), (3, 1))])
def test_o2_to_bar(q, d):
    assert o2_to_bar(O2Digits(q)).d == d


def test_growth_constraint_rejected():
    with pytest.raises(InvalidDigits):
        o2_to_bar((2, 5))


def test_nonpositive_digits_rejected():
    with pytest.raises(InvalidDigits):
        BarO2Digits((1, 0))


@pytest.mark.parametrize("d, c", [((1, 1, 1), (1, 2, 6)), ((2, 5), (2, 10)), ((7,), (7,))])
def test_bar_to_o2(d, c):
    q, comp = bar_to_o2(BarO2Digits(d))
    assert comp.c == c
    assert q.q == c
    assert o2_to_bar(q).d == d


def test_companion_growth():
    assert companions((1,) * 8).growth_holds()
    assert companions((1, 1, 1, 1)).c == (1, 2, 6, 42)


@pytest.mark.parametrize("i", [1, 2, 7, 100])
def test_rank1_cylinder(i):
    cyl = cylinder_interval((i,))
    assert (cyl.a, cyl.b) == (Fraction(1, i + 1), Fraction(1, i))
    assert cyl.parity == "odd"


def test_rank2_cylinder_worked_case():
    cyl = cylinder_interval(BarO2Digits((2, 1)))
    assert (cyl.a, cyl.b, cyl.length) == (Fraction(1, 3), Fraction(5, 14), Fraction(1, 42))
    assert cyl.parity == "even"
    assert cyl.contains(Fraction(1, 3))


def test_empty_cylinder_rejected():
    with pytest.raises(InvalidDigits):
        cylinder_interval(())


@pytest.mark.parametrize(
    "base, j, ratio",
    [((1,), 1, Fraction(1, 3)), ((1,), 2, Fraction(1, 6)), ((2,), 1, Fraction(1, 7))],
)
def test_child_ratio(base, j, ratio):
    assert child_ratio(base, j) == ratio


def test_child_ratio_matches_lengths():
    base = (3, 1, 2)
    parent = cylinder_interval(base)
    for j in (1, 2, 9):
        child = cylinder_interval(base + (j,))
        assert child.length / parent.length == child_ratio(base, j)


def test_shift():
    assert shift(BarO2Digits((2, 5, 1))).d == (5, 1)
    assert shift((1, 1)).d == (1,)
    assert shift((3, 1, 4, 1), 2).d == (4, 1)
    with pytest.raises(TooShort):
        shift((1,))


def test_digit_count():
    d = BarO2Digits((1, 2, 1, 3))
    assert digit_count(d, 1, 4) == 2
    assert digit_count(d, 5, 4) == 0
    assert digit_count(d, 1, 2) == 1
    with pytest.raises(IndexError):
        digit_count(d, 1, 5)


def test_evaluate_bar():
    assert evaluate_bar((2, 5)) == Fraction(2, 5)
