from fractions import Fraction

import pytest

from ostrogradsky.hausdorff import (
    E2_CONSTANTS,
    bounded_digit_report,
    certify_zero_dim,
    covering_sum,
    rank_cover,
)
from ostrogradsky.numeric import pow2_interval


def test_covering_sum_exact_case():
    value = covering_sum("prefix:2", 1, 1)
    assert value.exact and value.lower == 1


def test_covering_sum_fractional_exponent():
    value = covering_sum("prefix:2", Fraction(1, 10), 10)
    assert not value.exact
    # 2**10 / 2**51.2 = 2**-41.2, about 3.96e-13
    assert Fraction(395, 10**15) < value.lower <= value.upper < Fraction(397, 10**15)


def test_covering_sum_single_cylinder():
    for alpha in (Fraction(1, 3), Fraction(2)):
        for k in (1, 4):
            lo, hi = pow2_interval(-alpha * (1 << (k - 1)))
            value = covering_sum("prefix:1", alpha, k)
            assert (value.lower, value.upper) == (lo, hi)


def test_covering_sum_rejects_bad_input():
    with pytest.raises(ValueError):
        covering_sum("prefix:2", 0, 3)
    with pytest.raises(TypeError):
        covering_sum("tail:2", 1, 3)


@pytest.mark.parametrize("spec", ["prefix:2", "prefix:3^k", "prefix:k^2+1"])
def test_structural_certificate(spec):
    report = certify_zero_dim(spec)
    assert report.certificate
    assert all(r.k0 is not None for r in report.reports)


def test_double_exponential_not_certified():
    report = certify_zero_dim("prefix:2^(2^k)", depth=8)
    assert not report.certificate
    assert all(r.verdict == "NotCertified" for r in report.reports)


def test_monotone_decrease_after_k0():
    report = certify_zero_dim("prefix:3^k", [Fraction(1, 4)], depth=12)
    rep = report.reports[0]
    sums = rep.sums
    for a, b in zip(sums, sums[1:]):
        if a.k >= rep.k0 + 1:
            assert b.upper < a.lower


def test_cover_validity_small_depth():
    for k in range(1, 5):
        count, longest = rank_cover("prefix:3", k)
        assert count == 3**k
        assert longest <= Fraction(1, 1 << (1 << (k - 1)))


def test_bounded_digit_report():
    report = bounded_digit_report()
    assert report["o2_bounded_digits"]["dim_H"] == 0
    assert report["cf_bounded_digits"]["dim_H"] == 1
    assert report["E2"][0]["lower"] == "0.5194" and report["E2"][0]["upper"] == "0.5433"
    assert report["E2"][2]["lower"] == "0.53128049"
    assert report["E2"][3]["value"] == "0.5312805062772051416"
    assert len(E2_CONSTANTS) == 4
