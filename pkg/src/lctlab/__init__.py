"""Exact and numeric invariants of toric plurisubharmonic singularities.

Model classes (weighted monomials, monomial ideals) have log canonical
thresholds, restricted thresholds and Monge-Ampere masses that can be computed
in rational arithmetic; :mod:`lctlab.bounds` checks the inequalities linking
them and :mod:`lctlab.numeric` re-derives them from sublevel-set integrals.
"""

__version__ = "0.1.0"

from .models import ModelError, MonomialIdeal, TruncatedWeighted, WeightedMonomial  # noqa: E402
from .newton_poly import NewtonPolyhedron, build_polyhedron, covolume  # noqa: E402
from .invariants import InvariantTable, invariant_table, lct, ma_mass, restricted_lct  # noqa: E402

__all__ = [
    "ModelError", "MonomialIdeal", "TruncatedWeighted", "WeightedMonomial",
    "NewtonPolyhedron", "build_polyhedron", "covolume",
    "InvariantTable", "invariant_table", "lct", "ma_mass", "restricted_lct",
]
