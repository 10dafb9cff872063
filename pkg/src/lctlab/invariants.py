"""Exact singularity invariants for the model classes.

For a monomial ideal with Newton polyhedron ``P``:

* ``lct(P) = max{t : (1,...,1) in t P}``, solved as a minimax LP over the
  generator simplex; :func:`lct_dual` recomputes it from the polar vertices.
* ``e_k = n! * MV(P[k], S[n-k])`` with ``S`` the unit corner, the mixed
  covolume being expanded by inclusion-exclusion over Minkowski sums.
* ``c_k`` (best threshold over k-planes through 0) is attained by generic
  planes.  All generic planes are equivalent under the torus action, and one
  blow-up of the origin turns the pulled-back ideal into a monomial ideal at
  every point of the exceptional divisor, so ``c_k`` is a minimum of weighted
  thresholds over the strata of ``n`` hyperplanes in general position in
  ``P^{k-1}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, factorial
from typing import Sequence

from .lp import solve_lp
from .models import ModelError, MonomialIdeal, SingularityModel, TruncatedWeighted, WeightedMonomial
from .newton_poly import (NewtonPolyhedron, Vector, _covolume_points, _prune_dominated, covolume,
                          restrict, unit_corner)
from ._polar import polar_vertices

INF = math.inf


@dataclass(frozen=True)
class RestrictedLCT:
    value: Fraction | float  # inf for the unit ideal
    exact: bool


@dataclass(frozen=True)
class InvariantTable:
    """``c``, ``c_1..c_{n-1}``, ``e_0..e_n`` and the Lelong number of one model."""

    n: int
    c: Fraction | float
    c_k: tuple[RestrictedLCT, ...]
    e: tuple[Fraction, ...]
    lelong: Fraction
    truncated: bool = False
    notes: tuple[str, ...] = field(default=())

    def c_at(self, k: int) -> Fraction | float:
        """``c_k`` with the conventions ``c_0 = 0`` and ``c_n = c``."""
        if k == 0:
            return Fraction(0)
        if k == self.n:
            return self.c
        return self.c_k[k - 1].value

    @property
    def c_exact(self) -> bool:
        return all(r.exact for r in self.c_k)

    def check(self) -> None:
        """Raise ``AssertionError`` if an internal invariant is violated."""
        assert self.e[0] == 1 and self.e[1] == self.lelong
        for k in range(1, self.n):
            a, b = self.e[k], self.e[k + 1]
            assert a ** (k + 1) <= b ** k, f"e_{k}^(1/{k}) > e_{k+1}^(1/{k+1})"
        vals = [self.c_at(k) for k in range(self.n + 1)]
        assert all(x <= y for x, y in zip(vals, vals[1:])), "c_k not nondecreasing"


def _require_m_primary(P: NewtonPolyhedron) -> None:
    if not P.is_m_primary:
        raise ModelError("polyhedron is not m-primary")


def weighted_threshold(points: Sequence[Vector], b: Sequence[Fraction]) -> Fraction | float:
    """``max{t : b in t * (conv(points) + R^n_+)}`` as an exact LP.

    This is the integrability threshold of ``|z^(b-1)|^2 |I|^(-2t)`` for the
    monomial ideal generated by ``points``; ``inf`` when a point is zero.
    """
    pts = list(points)
    if any(all(x == 0 for x in p) for p in pts):
        return INF
    m = len(pts)
    n = len(b)
    # variables: lambda_1..lambda_m, s ; minimise s
    A_ub = [[p[j] for p in pts] + [-b[j]] for j in range(n)]
    res = solve_lp([0] * m + [1], A_ub, [0] * n, [[1] * m + [0]], [1])
    assert res.status == "optimal" and res.fun > 0
    return 1 / res.fun


@lru_cache(maxsize=4096)
def lct(P: NewtonPolyhedron) -> Fraction:
    _require_m_primary(P)
    return weighted_threshold(P.vertices, [Fraction(1)] * P.n)


@lru_cache(maxsize=4096)
def lct_dual(P: NewtonPolyhedron) -> Fraction:
    """``min sum(u)`` over vertices ``u`` of the polar ``{u >= 0 : u.v >= 1}``.

    At a polar vertex ``min_v u.v = 1``, so this is ``inf_u sum(u) / min_v u.v``.
    """
    _require_m_primary(P)
    return min(sum(u) for u, _ in polar_vertices(P.vertices))


def lelong(P: NewtonPolyhedron) -> Fraction:
    return min(sum(v) for v in P.vertices)


@lru_cache(maxsize=None)
def _sum_covolume(P: NewtonPolyhedron, i: int, j: int) -> Fraction:
    """Covolume of ``iP + jS`` (S the unit corner)."""
    if i == 0 and j == 0:
        return Fraction(0)
    n = P.n
    a = [tuple(i * x for x in v) for v in P.vertices] if i else [tuple([Fraction(0)] * n)]
    b = [tuple(j * x for x in v) for v in unit_corner(n).vertices] if j else [tuple([Fraction(0)] * n)]
    pts = _prune_dominated(tuple(x + y for x, y in zip(p, q)) for p in a for q in b)
    return _covolume_points(pts, "cones")


def mixed_covolume(P: NewtonPolyhedron, k: int) -> Fraction:
    """``MV(P[k], S[n-k])`` by inclusion-exclusion over the sums ``iP + jS``."""
    n = P.n
    total = Fraction(0)
    for i in range(k + 1):
        for j in range(n - k + 1):
            if i == 0 and j == 0:
                continue
            sign = -1 if (n - i - j) % 2 else 1
            total += sign * comb(k, i) * comb(n - k, j) * _sum_covolume(P, i, j)
    return total / factorial(n)


def ma_mass(P: NewtonPolyhedron, k: int) -> Fraction:
    """Monge-Ampere mass ``e_k`` of the monomial model at the origin."""
    _require_m_primary(P)
    if not 0 <= k <= P.n:
        raise ValueError(f"k={k} out of range 0..{P.n}")
    if k == 0:
        return Fraction(1)
    return factorial(P.n) * mixed_covolume(P, k)


def generic_restricted_lct(P: NewtonPolyhedron, k: int) -> Fraction:
    """Exact threshold of the restriction to a generic k-plane through 0.

    After blowing up the origin of the plane, a point of the exceptional
    ``P^{k-1}`` lying on the hyperplanes ``S`` (|S| <= k-1) sees the ideal
    generated by ``e^{|alpha|} prod_{s in S} y_s^{alpha_s}``, with Jacobian
    weight ``e^{k-1}``.
    """
    _require_m_primary(P)
    n = P.n
    if not 1 <= k <= n:
        raise ValueError(f"k={k} out of range 1..{n}")
    best: Fraction | float = INF
    for size in range(k):
        b = [Fraction(k)] + [Fraction(1)] * size
        for S in combinations(range(n), size):
            pts = _prune_dominated((sum(v),) + tuple(v[s] for s in S) for v in P.vertices)
            best = min(best, weighted_threshold(pts, b))
    return best


def coordinate_restricted_lct(P: NewtonPolyhedron, k: int) -> Fraction:
    """Best threshold over coordinate k-planes: a certified lower bound for ``c_k``."""
    best = Fraction(0)
    for I in combinations(range(P.n), k):
        Q = restrict(P, I)
        if Q is not None:
            best = max(best, lct(Q))
    return best


def restricted_lct(model: SingularityModel, k: int, method: str = "generic") -> RestrictedLCT:
    """``c_k`` for a model.

    Weighted models use the closed form ``sum_{j<=k} 1/a_j`` (ascending
    weights).  Monomial ideals use the generic-plane formula (exact) unless
    ``method="coordinate"``, which returns the coordinate-subspace lower bound
    flagged inexact (except for ``k = 1``, where ``1/nu`` is returned).
    """
    if isinstance(model, TruncatedWeighted):
        model = model.untruncated()
    n = model.n
    if not 1 <= k <= n - 1:
        raise ValueError(f"k={k} out of range 1..{n - 1}")
    if isinstance(model, WeightedMonomial):
        return RestrictedLCT(sum(1 / a for a in model.sorted_weights()[:k]), True)
    P = model.polyhedron
    if k == 1:
        nu = lelong(P)
        return RestrictedLCT(1 / nu if nu else INF, True)
    if method == "generic":
        return RestrictedLCT(generic_restricted_lct(P, k), True)
    if method == "coordinate":
        return RestrictedLCT(coordinate_restricted_lct(P, k), False)
    raise ValueError(f"unknown method {method!r}")


def weighted_invariants(weights: Sequence) -> InvariantTable:
    """Closed forms for ``max_j a_j log|z_j|``: ``c_k = sum 1/a_j``, ``e_k = prod a_j`` over the k smallest."""
    a = WeightedMonomial(tuple(weights)).sorted_weights()
    n = len(a)
    partial = [sum(1 / x for x in a[:k]) for k in range(n + 1)]
    e = [Fraction(1)]
    for x in a:
        e.append(e[-1] * x)
    return InvariantTable(
        n=n,
        c=partial[n],
        c_k=tuple(RestrictedLCT(partial[k], True) for k in range(1, n)),
        e=tuple(e),
        lelong=a[0],
    )


def invariant_table(model: SingularityModel, method: str = "generic") -> InvariantTable:
    if isinstance(model, WeightedMonomial):
        return weighted_invariants(model.weights)
    if isinstance(model, TruncatedWeighted):
        t = weighted_invariants(model.weights)
        return InvariantTable(t.n, t.c, t.c_k, t.e, t.lelong, truncated=True,
                              notes=("invariants of the untruncated germ",))
    if isinstance(model, MonomialIdeal):
        P = model.polyhedron
        n = P.n
        return InvariantTable(
            n=n,
            c=lct(P),
            c_k=tuple(restricted_lct(model, k, method) for k in range(1, n)),
            e=tuple(ma_mass(P, k) for k in range(n + 1)),
            lelong=lelong(P),
        )
    raise TypeError(f"not a singularity model: {model!r}")


def covolume_mass(P: NewtonPolyhedron) -> Fraction:
    """``n! * covolume(P)`` via the slab method (independent of :func:`ma_mass`)."""
    return factorial(P.n) * covolume(P).value
