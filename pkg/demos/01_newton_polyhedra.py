#!/usr/bin/env python3
# Newton polyhedra: vertices, membership, Minkowski sums and covolumes.

# %%
from fractions import Fraction

from lctlab.newton_poly import build_polyhedron, contains, covolume, covolume_mc, minkowski_sum, unit_corner

# generators of the ideal (x^3, x^2 y, x y^3, y^4); x y^3 sits above an edge and drops out
P = build_polyhedron([(3, 0), (2, 1), (1, 3), (0, 4)])
print(P)

# %%
# membership is an exact LP
print(contains(P, (1, 3)), contains(P, (1, 2)), contains(P, (Fraction(5, 2), Fraction(1, 2))))

# %%
# adding the unit corner shifts the staircase outwards
S = unit_corner(2)
Q = minkowski_sum(P, S)
print(Q)

# %%
# the covolume is the area under the staircase; both exact methods agree
for R in (P, Q):
    print(covolume(R, "slab").value, covolume(R, "cones").value)

# %%
# uniform sampling of the box gives the same number up to noise
est, se = covolume_mc(P, 4, 10**6, seed=0)
print(f"{est:.4f} +- {se:.4f} vs {float(covolume(P).value)}")
