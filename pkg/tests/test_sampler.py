import math
from fractions import Fraction

import pytest

from ostrogradsky.errors import DomainError, InvalidLaw
from ostrogradsky.expansion import companions
from ostrogradsky.sampler import (
    SCALE,
    DigitLaw,
    envelope,
    eta_cdf,
    frequency_experiment,
    iid_sample,
    lebesgue_digit_sample,
    lebesgue_next_digit,
    lebesgue_rank1_sample,
    parse_law,
    singularity_diagnostic,
)


def test_law_validation():
    with pytest.raises(InvalidLaw):
        DigitLaw.finite(["1/2", "1/3"])
    with pytest.raises(InvalidLaw):
        DigitLaw.geometric("3/2")
    with pytest.raises(InvalidLaw):
        parse_law("poisson:3")
    with pytest.raises(InvalidLaw):
        parse_law("point:0")
    assert parse_law("lebesgue") is None


def test_geometric_law_masses():
    law = DigitLaw.geometric(Fraction(1, 2))
    assert [law.prob(m) for m in (1, 2, 3)] == [Fraction(1, 2), Fraction(1, 4), Fraction(1, 8)]
    assert law.survival(3) == Fraction(1, 8)
    assert law.mode() == 1


def test_mixed_law_sums_to_one():
    law = DigitLaw((Fraction(1, 3), Fraction(1, 6)), Fraction(1, 3))
    total = sum((law.prob(m) for m in range(1, 200)), Fraction(0)) + law.survival(199)
    assert total == 1


def test_quantile_boundaries():
    law = DigitLaw.finite(["1/4", "3/4"])
    assert law.quantile(0) == 1
    assert law.quantile(SCALE // 4 - 1) == 1
    assert law.quantile(SCALE // 4) == 2
    assert law.quantile(SCALE - 1) == 2
    geo = DigitLaw.geometric(Fraction(1, 2))
    assert geo.quantile(SCALE // 2 - 1) == 1
    assert geo.quantile(SCALE // 2) == 2
    assert geo.quantile(SCALE - 1) == 129


def test_lebesgue_conditional_law_is_exact():
    # the inverse CDF returns m exactly on the interval [ (m-1)/(C+m-1), m/(C+m) )
    for big in (1, 2, 6, 42 * 43):
        for m in (1, 2, 5):
            start = Fraction(m - 1, big + m - 1)
            n = -((-start.numerator * SCALE) // start.denominator)
            assert lebesgue_next_digit(n, big) == m
            assert lebesgue_next_digit(n - 1, big) == m - 1 or m == 1


def test_conditional_masses_telescope():
    for big in (1, 2, 6, 1806):
        partial = sum((Fraction(big, (big + j - 1) * (big + j)) for j in range(1, 20)), Fraction(0))
        assert partial == 1 - Fraction(big, big + 19)


def test_lebesgue_path_determinism():
    a = lebesgue_digit_sample(11, 10)
    b = lebesgue_digit_sample(11, 10)
    assert a == b
    assert lebesgue_digit_sample(12, 10) != a
    assert companions(a.digits.d).growth_holds()


def test_rank1_marginal_quick():
    draws = lebesgue_rank1_sample(3, 20_000)
    n = len(draws)
    for i in (1, 2, 3):
        p = 1 / (i * (i + 1))
        assert abs(draws.count(i) - n * p) < 4 * math.sqrt(n * p)


def test_iid_paths():
    assert set(iid_sample(DigitLaw.point_mass(3), 1, 50).digits.d) == {3}
    path = iid_sample(DigitLaw.geometric(Fraction(1, 2)), 5, 20_000)
    freq = path.digits.d.count(1) / 20_000
    assert abs(freq - 0.5) < 3 * math.sqrt(0.25 / 20_000)
    assert iid_sample(DigitLaw.geometric(Fraction(1, 2)), 5, 30) == iid_sample(DigitLaw.geometric(Fraction(1, 2)), 5, 30)


@pytest.mark.parametrize("law", [DigitLaw.geometric(Fraction(1, 2)), DigitLaw.finite(["1/3", "1/3", "1/3"])])
def test_eta_cdf_examples(law):
    assert eta_cdf(0, law) == (0, 0)
    assert eta_cdf(1, law) == (1, 1)
    assert eta_cdf(Fraction(1, 2), law) == (1 - law.prob(1), 1 - law.prob(1))
    for i in (1, 2, 4):
        expected = law.survival(i)
        assert eta_cdf(Fraction(1, i + 1), law) == (expected, expected)


def test_eta_cdf_bracket_width():
    law = DigitLaw.geometric(Fraction(1, 3))
    lo, hi = eta_cdf(Fraction(314159, 1000000), law, 3)
    assert 0 <= lo <= hi <= 1
    assert hi - lo <= max(law.prob(j) for j in range(1, 5)) ** 1


def test_eta_cdf_domain():
    with pytest.raises(DomainError):
        eta_cdf(Fraction(3, 2), DigitLaw.point_mass(1))


def test_eta_cdf_monotone_on_grid():
    law = DigitLaw.geometric(Fraction(1, 2))
    xs = [Fraction(k, 97) for k in range(0, 98)]
    brackets = [eta_cdf(x, law, 8) for x in xs]
    for (lo1, hi1), (lo2, hi2) in zip(brackets, brackets[1:]):
        assert lo1 <= hi2


def test_frequency_experiment_shapes():
    records, aggregate = frequency_experiment(None, 3, 8, 4, tracked=(1, 2))
    assert len(records) == 3 and aggregate["paths"] == 3
    assert aggregate["late_envelope_per_path"] == envelope(8, (1, 2))
    records2, _ = frequency_experiment(None, 3, 8, 4, tracked=(1, 2))
    assert records == records2
    _, iid = frequency_experiment(DigitLaw.point_mass(2), 2, 10, 4, tracked=(2,))
    assert iid["mean_freqs"][2] == 1


def test_envelope_value():
    assert envelope(5, (1,)) == Fraction(1, 16) + Fraction(1, 256)


def test_singularity_point_mass_and_control():
    report = singularity_diagnostic(DigitLaw.point_mass(1), 10, 12, 9)
    assert report["iid_mean"] == 1 and report["separation"]
    control = singularity_diagnostic(None, 10, 12, 9)
    assert not control["separation"]
