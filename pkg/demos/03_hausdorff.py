"""Covering sums for sets with bounded digits.

At depth k the set with digits bounded by m_1, ..., m_k sits inside
m_1 ... m_k cylinders, each no longer than 2^-(2^(k-1)). Summing the
alpha-th powers of these lengths gives a covering sum for each alpha.
"""

# %%
from fractions import Fraction

from ostrogradsky import bounded_digit_report, certify_zero_dim, covering_sum

# %% [markdown]
# Even alpha = 1/10 drives the sum for m_k = 2 to zero. It only takes a
# few levels before the doubly exponential shrinkage wins.

# %%
for k in (1, 4, 8, 10, 12):
    value = covering_sum("prefix:2", Fraction(1, 10), k)
    print(k, float(value.upper))

# %%
for spec in ("prefix:2", "prefix:3^k", "prefix:2^(2^k)"):
    report = certify_zero_dim(spec, depth=10)
    print(spec, "certified" if report.certificate else "not certified", "-", report.reason)
    for rep in report.reports:
        top = rep.sums[-1].upper
        log2 = top.numerator.bit_length() - top.denominator.bit_length()
        print(f"    alpha={rep.alpha}: {rep.verdict}, last sum about 2^{log2}")

# %% [markdown]
# For comparison, continued fractions with bounded digits keep full dimension
# in the limit. The set with digits 1 and 2 alone already has dimension
# above 1/2.

# %%
for row in bounded_digit_report()["E2"]:
    print(row)
