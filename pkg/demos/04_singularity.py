"""Random digits: Lebesgue paths against i.i.d. digit laws.

A uniform x has Ō² digits that grow so fast that every small digit appears
only a handful of times. An i.i.d. law keeps producing small digits, so
its frequencies stay away from zero. That gap is what makes the i.i.d.
distribution singular.
"""

# %%
from fractions import Fraction

from ostrogradsky import DigitLaw, eta_cdf, frequency_experiment, lebesgue_digit_sample, singularity_diagnostic

# %%
path = lebesgue_digit_sample(seed=2024, depth=8)
print("Lebesgue digits:", [d if d < 10**12 else f"~2^{d.bit_length()}" for d in path.digits.d])

# %%
law = DigitLaw.geometric(Fraction(1, 2))
records, aggregate = frequency_experiment(law, n_paths=20, depth=400, seed=7)
print("i.i.d. geometric(1/2) mean frequencies:", {i: float(f) for i, f in aggregate["mean_freqs"].items()})
records, aggregate = frequency_experiment(None, n_paths=20, depth=16, seed=7)
print("Lebesgue small digits after level 4, summed over 20 paths:", aggregate["late_totals"])

# %% [markdown]
# The distribution function of an i.i.d. law is computed exactly on rationals.

# %%
for x in (Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(3, 4)):
    lo, hi = eta_cdf(x, law, depth=12)
    print(f"F({x}) in [{float(lo):.6f}, {float(hi):.6f}]")

# %%
# Lebesgue companions double in bit length per level, so depth stays modest
report = singularity_diagnostic(law, n_paths=30, depth=20, seed=11)
print({k: report[k] for k in ("iid_mean", "lebesgue_mean", "gap", "standard_error", "separation")})
