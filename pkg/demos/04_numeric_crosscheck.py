#!/usr/bin/env python3
# Rebuilding thresholds from sublevel-set volumes and integrals.

# %%
import numpy as np

from lctlab.models import MonomialIdeal, WeightedMonomial
from lctlab.numeric import (generic_restriction_estimate, integrability_check, lct_estimate_decay,
                            sublevel_volume, sublevel_volume_mc)

w = WeightedMonomial((1, 2))
print(sublevel_volume(w, 1.0), sublevel_volume_mc(w, 1.0, samples=10**6, seed=0))

# %%
# log V({phi < -t}) decays like -2ct
cusp = MonomialIdeal.from_exponents([(2, 0), (0, 3)])
est = lct_estimate_decay(cusp, np.linspace(1, 8, 8), samples=500_000, seed=1)
print(f"c_hat = {est.c_hat:.4f} +- {est.stderr:.4f}  (exact 5/6)")

# %%
# shell contributions of exp(-2 c phi) shrink below the threshold and grow above it
for c in (0.7, 0.8, 0.9):
    r = integrability_check(cusp, c, 400_000, seed=2)
    print(c, r.verdict, round(r.threshold_estimate, 4))

# %%
# random lines through 0 see the Lelong number of (x^3, xy, y^3)
node = MonomialIdeal.from_exponents([(3, 0), (1, 1), (0, 3)])
print(generic_restriction_estimate(node, 1, trials=4))
