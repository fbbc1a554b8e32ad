"""Expanding a few rationals in O², Ō², Pierce and continued fractions.

Run with ``python demos/01_expansions.py``.
"""

# %%
from fractions import Fraction

from ostrogradsky import (
    cf_expand,
    child_ratio,
    cylinder_interval,
    evaluate_o2,
    o2_to_bar,
    pierce_expand,
    remez_expand,
    transfer_map,
)

# %% [markdown]
# Every rational in (0, 1) has a finite O² expansion. The Remez scheme returns
# the shorter of its two representations.

# %%
for x in (Fraction(2, 5), Fraction(1, 3), Fraction(355, 1130), Fraction(9, 10)):
    o2 = remez_expand(x)
    bar = o2_to_bar(o2)
    print(f"{x}: q={list(o2.q)} d={list(bar.d)} exact={evaluate_o2(o2) == x}")

# %% [markdown]
# Partial sums alternate around x.

# %%
x = Fraction(355, 1130)
o2 = remez_expand(x)
for n in range(1, len(o2) + 1):
    s = evaluate_o2(o2, n)
    side = "above" if s > x else "below" if s < x else "equal"
    print(n, side, float(s - x))

# %% [markdown]
# Cylinders of rank n have length 1/(c_n(c_n+1)). Odd ranks put the partial sum
# at the right end, even ranks at the left end. The children of one parent tile it.

# %%
parent = cylinder_interval([2])
print("parent", parent.a, parent.b, parent.parity)
for j in range(1, 5):
    child = cylinder_interval([2, j])
    print(f"  child {j}: [{child.a}, {child.b}] share={child_ratio([2], j)}")

# %% [markdown]
# The same digit string read in other systems.

# %%
print("pierce 2/5:", pierce_expand(Fraction(2, 5)).q)
print("cf 5/11:", cf_expand(Fraction(5, 11)).a)
print("d=(2,5) as pierce point:", transfer_map(o2_to_bar(remez_expand(Fraction(2, 5))), "pierce"))
