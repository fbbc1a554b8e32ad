"""Lebesgue measure of digit-restricted Ō² sets.

Three kinds of restriction are compared: digits bounded by a prefix,
digits that avoid a tail, and a fixed set of removed digits.
"""

# %%
from ostrogradsky import criterion_prefix, measure_bounds, parse_family

# %% [markdown]
# Bounded digits give measure zero. When the bound grows fast enough, like
# m_k = 2^(3^k), the measure becomes positive. m_k = 2^(2^(k-1)) sits between
# the two, and neither test decides it.

# %%
for spec in ("prefix:2", "prefix:k", "prefix:2^(2^(k-1))", "prefix:2^(3^k)"):
    result = measure_bounds(spec)
    print(f"{spec:22s} {result.verdict.value:18s} [{float(result.lower):.6f}, {float(result.upper):.6f}]")

# %%
crit = criterion_prefix(parse_family("prefix:2^(2^(k-1))"))
print("zero-measure series terms:", [float(t) for _, t in crit.extra["zero_terms"][:5]])

# %% [markdown]
# Tail families drop the first v_k digits at level k.

# %%
for spec in ("tail:1", "tail:3^k", "tail:2^(2^k)"):
    result = measure_bounds(spec)
    print(f"{spec:22s} {result.verdict.value:18s} [{float(result.lower):.6f}, {float(result.upper):.6f}]")

# %% [markdown]
# Removing the odd digits at every level kills the set. Removing only the
# squares does not.

# %%
for spec in ("complement:2m-1;gap=2", "complement:m^2"):
    result = measure_bounds(spec)
    print(f"{spec:22s} {result.verdict.value:18s} [{float(result.lower):.6f}, {float(result.upper):.6f}]")
    for row in result.trace[:3]:
        print("    level", row["level"], float(row["measure_lower"]), float(row["measure_upper"]))
