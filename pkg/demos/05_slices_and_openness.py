#!/usr/bin/env python3
# Slices of weighted models near the hyperplane w = 0.

# %%
from fractions import Fraction

from lctlab.bounds import openness_gain
from lctlab.invariants import invariant_table
from lctlab.models import TruncatedWeighted, WeightedMonomial
from lctlab.numeric import slice_energy, slice_limit_check

# normalized weights: the slice energy is log|w|
m = WeightedMonomial((Fraction(2), Fraction(1, 2)))
for w in (0.5, 0.1, 0.01):
    print(w, slice_energy(m, w))
print(slice_energy(TruncatedWeighted((2, "1/2"), 1), 0.01))

# %%
# the window above c_1 where the slice integrals times |w|^2 tend to 0
m = WeightedMonomial((1, 2))
t = invariant_table(m)
c1 = t.c_at(1)
gain = openness_gain(c1, 2, t.e[2])
print("window:", c1, c1 + gain, " c =", t.c)

# %%
for lam in (float(c1 + gain / 2), 1.05 * float(t.c)):
    tr = slice_limit_check(m, lam)
    print(lam, tr.verdict, [f"{v:.2e}" for v in tr.values[::6]])
