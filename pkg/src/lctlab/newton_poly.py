"""Exact rational geometry of Newton polyhedra.

A Newton polyhedron here is ``conv(V) + R^n_+`` for a finite set ``V`` of
nonnegative rational exponent vectors.  Everything is computed with
:class:`fractions.Fraction`; floats only appear in :func:`covolume_mc`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial, lcm
from typing import Iterable, Sequence

import numpy as np

from ._exact import affine_dim, as_fraction, det_int
from ._parallel import chunked_seeds, thread_map
from ._polar import polar_vertices
from .lp import solve_lp

Vector = tuple[Fraction, ...]


def exponent_vector(coords: Iterable) -> Vector:
    """Coerce ``coords`` into a nonnegative rational tuple."""
    v = tuple(as_fraction(x) for x in coords)
    if not v:
        raise ValueError("exponent vector must have at least one coordinate")
    if any(x < 0 for x in v):
        raise ValueError(f"negative exponent in {v}")
    return v


@dataclass(frozen=True)
class NewtonPolyhedron:
    """``conv(vertices) + R^n_+`` with a minimal vertex list (sorted, antichain)."""

    n: int
    vertices: tuple[Vector, ...]

    def __repr__(self) -> str:
        vs = ", ".join("(" + ",".join(str(x) for x in v) + ")" for v in self.vertices)
        return f"NewtonPolyhedron(n={self.n}, vertices=[{vs}])"

    @property
    def is_m_primary(self) -> bool:
        """True iff some vertex lies on every coordinate axis."""
        return all(any(_on_axis(v, j) for v in self.vertices) for j in range(self.n))

    def axis_degrees(self) -> tuple[Fraction | None, ...]:
        """Smallest ``a`` with ``a e_j`` in the polyhedron, per axis (``None`` if missing)."""
        out = []
        for j in range(self.n):
            vals = [v[j] for v in self.vertices if _on_axis(v, j)]
            out.append(min(vals) if vals else None)
        return tuple(out)


@dataclass(frozen=True)
class Covolume:
    value: Fraction | None
    bounded: bool


def _on_axis(v: Vector, j: int) -> bool:
    return all(x == 0 for i, x in enumerate(v) if i != j)


def _prune_dominated(points: Iterable[Vector]) -> list[Vector]:
    """Drop duplicates and every point that dominates another one componentwise."""
    pts = sorted(set(points), key=lambda p: (sum(p), p))
    kept: list[Vector] = []
    for p in pts:
        if not any(all(a <= b for a, b in zip(q, p)) for q in kept):
            kept.append(p)
    return kept


def _in_hull_plus_orthant(x: Sequence[Fraction], pts: Sequence[Vector]) -> bool:
    """Exact feasibility LP: lambda in the simplex with sum lambda_i p_i <= x."""
    if not pts:
        return False
    n = len(x)
    m = len(pts)
    A_ub = [[p[j] for p in pts] for j in range(n)]
    res = solve_lp([0] * m, A_ub, list(x), [[1] * m], [1])
    return res.status == "optimal"


def build_polyhedron(generators: Iterable[Iterable]) -> NewtonPolyhedron:
    """Minimal vertex representation of ``conv(generators) + R^n_+``.

    Dominated generators go first (cheap); the survivors are tested one at a
    time against the others with the exact feasibility LP.
    """
    gens = [exponent_vector(g) for g in generators]
    if not gens:
        raise ValueError("need at least one generator")
    n = len(gens[0])
    if any(len(g) != n for g in gens):
        raise ValueError("generators have mismatched dimensions")
    pts = _prune_dominated(gens)
    i = 0
    while i < len(pts) and len(pts) > 1:
        others = pts[:i] + pts[i + 1:]
        if _in_hull_plus_orthant(pts[i], others):
            pts = others
        else:
            i += 1
    return NewtonPolyhedron(n, tuple(sorted(pts)))


def contains(P: NewtonPolyhedron, x: Iterable) -> bool:
    xv = exponent_vector(x) if not isinstance(x, tuple) else tuple(as_fraction(c) for c in x)
    if len(xv) != P.n:
        raise ValueError(f"dimension mismatch: point has {len(xv)} coordinates, polyhedron {P.n}")
    if any(c < 0 for c in xv):
        return False
    return _in_hull_plus_orthant(xv, P.vertices)


def minkowski_sum(P: NewtonPolyhedron, Q: NewtonPolyhedron) -> NewtonPolyhedron:
    if P.n != Q.n:
        raise ValueError(f"dimension mismatch: {P.n} vs {Q.n}")
    return build_polyhedron(_sum_points(P.vertices, Q.vertices))


def _sum_points(A: Sequence[Vector], B: Sequence[Vector]) -> list[Vector]:
    return _prune_dominated(tuple(a + b for a, b in zip(p, q)) for p in A for q in B)


def dilate(P: NewtonPolyhedron, k) -> NewtonPolyhedron:
    """``k * P`` for a rational ``k > 0`` (vertices scale, minimality is preserved)."""
    k = as_fraction(k)
    if k <= 0:
        raise ValueError("dilation factor must be positive")
    return NewtonPolyhedron(P.n, tuple(tuple(k * x for x in v) for v in P.vertices))


def unit_corner(n: int) -> NewtonPolyhedron:
    """Newton polyhedron of the maximal ideal: vertices are the basis vectors."""
    return NewtonPolyhedron(n, tuple(sorted(
        tuple(Fraction(int(i == j)) for i in range(n)) for j in range(n))))


def restrict(P: NewtonPolyhedron, coords: Iterable[int]) -> NewtonPolyhedron | None:
    """Restriction to the coordinate subspace spanned by ``coords`` (0-based).

    Returns ``None`` when no vertex is supported inside ``coords``: the
    restricted function is then identically ``-inf``.
    """
    idx = sorted(set(coords))
    if not idx:
        raise ValueError("coordinate subset must be nonempty")
    if idx[0] < 0 or idx[-1] >= P.n:
        raise ValueError(f"coordinates {idx} out of range for n={P.n}")
    outside = [j for j in range(P.n) if j not in idx]
    gens = [tuple(v[j] for j in idx) for v in P.vertices if all(v[j] == 0 for j in outside)]
    if not gens:
        return None
    return build_polyhedron(gens)


def compact_facets(P: NewtonPolyhedron) -> list[tuple[Vector, frozenset[int]]]:
    """Compact facets as ``(u, vertex indices)`` with ``u.x >= 1`` the facet inequality."""
    if not P.is_m_primary:
        raise ValueError("compact facets are only enumerated for m-primary polyhedra")
    return polar_vertices(P.vertices)


# -- covolume: slab decomposition -------------------------------------------------


@lru_cache(maxsize=None)
def _interp_rule(d: int) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """Open Newton-Cotes rule on [0, 1] with ``d`` nodes (exact for degree ``d - 1``)."""
    nodes = tuple(Fraction(i + 1, d + 1) for i in range(d))
    # solve the Vandermonde moment system sum_i w_i x_i^k = 1/(k+1)
    a = [[x ** k for x in nodes] + [Fraction(1, k + 1)] for k in range(d)]
    for c in range(d):
        piv = next(i for i in range(c, d) if a[i][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        for i in range(d):
            if i != c and a[i][c]:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    weights = tuple(a[i][d] / a[i][i] for i in range(d))
    return nodes, weights


def _slice(points: Sequence[Vector], s: Fraction) -> list[Vector]:
    """Candidate generators of the section at last coordinate ``s``."""
    below = [p for p in points if p[-1] <= s]
    above = [q for q in points if q[-1] > s]
    cands = [p[:-1] for p in below]
    for p in below:
        if p[-1] == s:
            continue
        for q in above:
            lam = (s - p[-1]) / (q[-1] - p[-1])
            cands.append(tuple(a + lam * (b - a) for a, b in zip(p[:-1], q[:-1])))
    return _prune_dominated(cands)


def _slab_covolume(points: Sequence[Vector], d: int) -> Fraction:
    if d == 1:
        return min(p[0] for p in points)
    top = min(p[-1] for p in points if all(x == 0 for x in p[:-1]))
    heights = sorted({p[-1] for p in points if p[-1] < top} | {Fraction(0), top})
    nodes, weights = _interp_rule(d)
    total = Fraction(0)
    for a, b in zip(heights, heights[1:]):
        width = b - a
        acc = Fraction(0)
        for x, w in zip(nodes, weights):
            acc += w * _slab_covolume(_slice(points, a + width * x), d - 1)
        total += width * acc
    return total


# -- covolume: cones from the origin over a pulling triangulation -----------------


def _cone_covolume(points: Sequence[Vector]) -> Fraction:
    n = len(points[0])
    pts = list(points)
    facets = polar_vertices(pts)
    den = lcm(*(x.denominator for p in pts for x in p))
    ipts = [tuple(int(x * den) for x in p) for p in pts]
    faces = [S for _, S in facets]
    faces += [frozenset(i for i, p in enumerate(pts) if p[j] == 0) for j in range(n)]

    memo: dict[frozenset[int], list[tuple[int, ...]]] = {}

    def dim(S: frozenset[int]) -> int:
        return affine_dim([pts[i] for i in sorted(S)])

    def triangulate(S: frozenset[int], d: int) -> list[tuple[int, ...]]:
        if S in memo:
            return memo[S]
        if len(S) == d + 1:
            out = [tuple(sorted(S))]
        else:
            apex = min(S)
            out = []
            seen: set[frozenset[int]] = set()
            for F in faces:
                R = S & F
                if apex in R or len(R) < d or R in seen:
                    continue
                seen.add(R)
                if dim(R) != d - 1:
                    continue
                out.extend((apex,) + t for t in triangulate(R, d - 1))
        memo[S] = out
        return out

    total = 0
    for S in faces[: len(facets)]:
        for simplex in triangulate(S, n - 1):
            total += abs(det_int([ipts[i] for i in simplex]))
    return Fraction(total, factorial(n) * den ** n)


def _covolume_points(points: Sequence[Vector], method: str = "cones") -> Fraction:
    pts = _prune_dominated(points)
    if method == "cones":
        return _cone_covolume(pts)
    if method == "slab":
        return _slab_covolume(pts, len(pts[0]))
    raise ValueError(f"unknown covolume method {method!r}")


def covolume(P: NewtonPolyhedron, method: str = "slab") -> Covolume:
    """Exact Lebesgue volume of ``R^n_+ minus P``.

    ``method="slab"`` integrates cross-sectional covolumes along the last
    coordinate; between consecutive vertex heights the section covolume is a
    polynomial of degree ``n - 1``, so an ``n``-node interpolatory rule is
    exact.  ``method="cones"`` sums cones from the origin over a pulling
    triangulation of the compact facets; it is much faster for large vertex
    sets and is used by the mixed-covolume code.
    """
    if not P.is_m_primary:
        return Covolume(None, False)
    return Covolume(_covolume_points(P.vertices, method), True)


def covolume_mc(P: NewtonPolyhedron, box_height, samples: int, seed: int,
                chunk: int = 1 << 16) -> tuple[float, float]:
    """Uniform Monte-Carlo estimate of the covolume over ``[0, box_height]^n``.

    Returns ``(estimate, standard_error)``.  Chunks draw from seeds spawned
    off ``seed``, so the result does not depend on the thread count.
    """
    if samples <= 0:
        raise ValueError("samples must be positive")
    if not P.is_m_primary:
        raise ValueError("covolume is unbounded: polyhedron is not m-primary")
    h = as_fraction(box_height)
    if h < max(max(v) for v in P.vertices):
        raise ValueError("box_height must be at least the largest vertex coordinate")
    U = np.array([[float(x) for x in u] for u, _ in compact_facets(P)])
    hf = float(h)
    sizes = [chunk] * (samples // chunk) + ([samples % chunk] if samples % chunk else [])

    def run(args):
        size, ss = args
        rng = np.random.default_rng(ss)
        x = rng.random((size, P.n)) * hf
        outside = (x @ U.T).min(axis=1) < 1.0
        return int(outside.sum())

    hits = sum(thread_map(run, list(zip(sizes, chunked_seeds(seed, len(sizes))))))
    p = hits / samples
    vol = hf ** P.n
    return vol * p, vol * np.sqrt(p * (1 - p) / samples)
