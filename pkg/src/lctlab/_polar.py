"""Double-description enumeration of the polar of a Newton polyhedron.

For an m-primary point set V the polar ``{u >= 0 : u.v >= 1 for all v in V}``
is a polyhedron whose vertices are exactly the normals (scaled so the
right-hand side is 1) of the compact facets of ``conv(V) + R^n_+``.  We work
with the homogenised cone ``{(u, t) : u >= 0, t >= 0, u.v - t >= 0}`` in
integer coordinates and add one constraint at a time (Motzkin's method with
the combinatorial adjacency test).
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from ._exact import primitive


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def polar_vertices(points: Sequence[Sequence[Fraction]]) -> list[tuple[tuple[Fraction, ...], frozenset[int]]]:
    """Return ``(u, tight)`` pairs: polar vertex ``u`` and the indices of points with ``u.v == 1``.

    ``points`` must contain a point on every coordinate axis; otherwise the
    polar is unbounded and the result is meaningless.
    """
    n = len(points[0])
    d = n + 1
    constraints: list[list[int]] = []
    for v in points:
        den = lcm(*(x.denominator for x in v)) if n else 1
        constraints.append([int(x * den) for x in v] + [-den])

    # initial cone: the orthant, rays e_k, constraint k tight on every ray but e_k
    full = (1 << d) - 1
    rays: list[tuple[tuple[int, ...], int]] = []
    for k in range(d):
        r = [0] * d
        r[k] = 1
        rays.append((tuple(r), full & ~(1 << k)))

    for ci, a in enumerate(constraints):
        bit = 1 << (d + ci)
        pos, neg, zero = [], [], []
        for r, z in rays:
            s = _dot(a, r)
            if s > 0:
                pos.append((r, z, s))
            elif s < 0:
                neg.append((r, z, s))
            else:
                zero.append((r, z | bit))
        if not neg:
            rays = [(r, z | bit) if _dot(a, r) == 0 else (r, z) for r, z in rays]
            continue
        new = [(r, z) for r, z, _ in pos] + zero
        zsets = [z for _, z in rays]
        for rp, zp, sp in pos:
            for rn, zn, sn in neg:
                common = zp & zn
                if common.bit_count() < d - 2:
                    continue
                adjacent = True
                for z in zsets:
                    if z != zp and z != zn and (z & common) == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                r = primitive([sp * x - sn * y for x, y in zip(rn, rp)])
                new.append((r, common | bit))
        rays = new

    out = []
    for r, z in rays:
        t = r[n]
        if t <= 0:
            continue
        u = tuple(Fraction(x, t) for x in r[:n])
        tight = frozenset(i for i in range(len(points)) if (z >> (d + i)) & 1)
        out.append((u, tight))
    out.sort()
    return out
