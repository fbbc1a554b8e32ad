from decimal import Decimal
from fractions import Fraction

import pytest

from ostrogradsky import DomainError, InvalidDigits, cf_expand, gauss_frequency, pierce_expand, pierce_growth_stat, transfer_map
from ostrogradsky.companions import (
    PierceDigits,
    cf_child_ratio,
    cf_cylinder,
    evaluate_cf,
    evaluate_pierce,
    pierce_cylinder,
)


@pytest.mark.parametrize("x, a", [("2/5", (2, 2)), ("1/3", (3,)), ("5/11", (2, 5))])
def test_cf_examples(x, a):
    digits = cf_expand(x)
    assert digits.a == a and digits.terminated
    assert evaluate_cf(digits) == Fraction(x)


def test_cf_domain():
    with pytest.raises(DomainError):
        cf_expand("5/4")


@pytest.mark.parametrize("x, q", [("2/5", (2, 5)), ("1/2", (2,)), ("1/3", (3,))])
def test_pierce_examples(x, q):
    digits = pierce_expand(x)
    assert digits.q == q and digits.terminated
    assert evaluate_pierce(digits) == Fraction(x)


def test_pierce_difference_form():
    p = pierce_expand(Fraction(123456, 987654))
    assert all(sum(p.g[: n + 1]) == p.q[n] for n in range(len(p)))
    assert PierceDigits.from_differences(p.g).q == p.q


def test_pierce_rejects_non_increasing():
    with pytest.raises(InvalidDigits):
        PierceDigits((3, 3))


def test_pierce_growth_stat_examples():
    stat = pierce_growth_stat((2, 5), 20)
    assert stat[0] == (1, Decimal(2))
    assert abs(stat[1][1] - Decimal(5).sqrt()) < Decimal("1e-18")
    assert abs(pierce_growth_stat((1, 2))[1][1] - Decimal(2).sqrt()) < Decimal("1e-25")
    with pytest.raises(InvalidDigits):
        pierce_growth_stat((3,))


def test_gauss_frequency_values():
    assert str(gauss_frequency(1, 5)) == "0.41504"
    assert str(gauss_frequency(2, 5)) == "0.16993"
    with pytest.raises(DomainError):
        gauss_frequency(0)


def test_gauss_frequency_sum_telescopes():
    # the partial sum over i <= n equals log2(2 (n + 1) / (n + 2)) exactly
    n = 10**6
    partial = Decimal(2 * (n + 1)) / Decimal(n + 2)
    assert abs(partial.ln() / Decimal(2).ln() - 1) < Decimal("1e-5")


def test_transfer_examples():
    assert transfer_map(_terminated((2, 5)), "cf") == (Fraction(5, 11), Fraction(5, 11))
    assert transfer_map(_terminated((2, 5)), "pierce") == (Fraction(3, 7), Fraction(3, 7))
    assert transfer_map((4,), "cf") == cf_cylinder((4,))
    assert transfer_map((4,), "pierce") == pierce_cylinder((4,))
    with pytest.raises(DomainError):
        transfer_map((1,), "engel")


def _terminated(d):
    from ostrogradsky import BarO2Digits

    return BarO2Digits(d, terminated=True)


def _small_bases():
    yield ()
    for a in range(1, 6):
        yield (a,)
        for b in range(1, 6):
            yield (a, b)
            yield (a, b, 1)


def test_cf_ratio_bounds_small_bases():
    for base in _small_bases():
        for i in range(1, 40):
            ratio = cf_child_ratio(base, i)
            assert Fraction(1, 3 * i * i) <= ratio <= Fraction(2, i * i)
            if i <= 3:
                assert ratio <= Fraction(1, i * i)


def test_cf_ratio_can_exceed_inverse_square():
    # s = q_0/q_1 = 1 gives 2/((i+1)(i+2)), above 1/i**2 once i >= 4
    assert cf_child_ratio((1,), 4) == Fraction(1, 15) > Fraction(1, 16)


def test_pierce_cylinder_contains_expansions():
    x = Fraction(31, 97)
    p = pierce_expand(x)
    for n in range(1, len(p) + 1):
        lo, hi = pierce_cylinder(p.q[:n])
        assert lo <= x <= hi
