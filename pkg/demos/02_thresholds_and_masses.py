#!/usr/bin/env python3
# Thresholds, restricted thresholds and Monge-Ampere masses of two model classes.

# %%
from lctlab.invariants import coordinate_restricted_lct, invariant_table, lct, lct_dual
from lctlab.models import MonomialIdeal, WeightedMonomial

cusp = MonomialIdeal.from_exponents([(2, 0), (0, 3)])
t = invariant_table(cusp)
print("c =", t.c, " c_1 =", t.c_at(1), " e =", [str(x) for x in t.e])

# %%
# primal and dual LP give the same threshold
print(lct(cusp.polyhedron), lct_dual(cusp.polyhedron))

# %%
# a generic line sees the Lelong number, the coordinate axes see the pure powers
node = MonomialIdeal.from_exponents([(3, 0), (1, 1), (0, 3)])
print(invariant_table(node).c_at(1), coordinate_restricted_lct(node.polyhedron, 1))

# %%
# in three variables generic planes can beat every coordinate plane
m = MonomialIdeal.from_exponents([(6, 0, 0), (0, 6, 0), (0, 0, 6), (1, 1, 1)])
print(invariant_table(m).c_at(2), coordinate_restricted_lct(m.polyhedron, 2))

# %%
# weighted models have closed forms, and the polyhedral pipeline reproduces them
w = WeightedMonomial((3, 1, 2))
print(invariant_table(w))
print(invariant_table(MonomialIdeal(w.polyhedron())))
