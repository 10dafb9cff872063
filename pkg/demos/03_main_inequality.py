#!/usr/bin/env python3
# The lower bound for c in terms of c_{n-1} and e_n, checked in exact arithmetic.

# %%
from fractions import Fraction

import numpy as np

from lctlab.bounds import report, theorem_rhs
from lctlab.models import MonomialIdeal, WeightedMonomial

# (x^p, y^q) is an equality case
for p, q in [(2, 3), (4, 5), (1, 6)]:
    r = report(MonomialIdeal.from_exponents([(p, 0), (0, q)]))
    main = r.check("main_inequality")
    print(p, q, main.lhs, main.rhs, main.margin)

# %%
# so are the weights (1, ..., 1, m)
print([str(theorem_rhs(2, m, 1, 3)) for m in range(1, 6)])

# %%
# random weights: the margin is positive but can be small
rng = np.random.default_rng(1)
for _ in range(5):
    ws = tuple(Fraction(int(rng.integers(1, 9)), int(rng.integers(1, 3))) for _ in range(3))
    r = report(WeightedMonomial(ws))
    print([str(w) for w in ws], r.verdict, r.check("main_inequality").margin)

# %%
# the remaining checks of one report
for c in report(WeightedMonomial((1, 2, 3))).checks:
    print(f"{c.name:16s} {c.verdict:8s} lhs={c.lhs} rhs={c.rhs}")
