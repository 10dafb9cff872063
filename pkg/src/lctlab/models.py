"""Model classes of plurisubharmonic singularities with computable invariants.

* :class:`WeightedMonomial` -- ``phi = max_j a_j log|z_j|``
* :class:`MonomialIdeal` -- ``phi = 1/2 log sum_i |z^{alpha_i}|^2``
* :class:`TruncatedWeighted` -- ``max(max_j a_j log|z_j|, -M)``, bounded below

Weights are kept as Fractions in the order given; the invariant formulas sort
them where needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

import numpy as np

from ._exact import as_fraction
from .newton_poly import NewtonPolyhedron, build_polyhedron


class ModelError(ValueError):
    """Raised for invalid model data (nonpositive weight, non-m-primary ideal, ...)."""


def _weights(ws: Iterable) -> tuple[Fraction, ...]:
    try:
        out = tuple(as_fraction(w) for w in ws)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ModelError(f"bad weight: {exc}") from exc
    if not out:
        raise ModelError("need at least one weight")
    if any(w <= 0 for w in out):
        raise ModelError(f"weights must be positive, got {[str(w) for w in out]}")
    return out


@dataclass(frozen=True)
class WeightedMonomial:
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", _weights(self.weights))

    @property
    def n(self) -> int:
        return len(self.weights)

    def sorted_weights(self) -> tuple[Fraction, ...]:
        return tuple(sorted(self.weights))

    def axis_degrees(self) -> tuple[Fraction, ...]:
        return self.weights

    def polyhedron(self) -> NewtonPolyhedron:
        """Axis-vertex polyhedron with vertices ``a_j e_j``."""
        n = self.n
        return build_polyhedron(
            [tuple(a if i == j else 0 for i in range(n)) for j, a in enumerate(self.weights)])

    def log_phi(self, logabs: np.ndarray) -> np.ndarray:
        """phi evaluated from ``log|z_j|`` (last axis indexes coordinates)."""
        a = np.array([float(w) for w in self.weights])
        return (logabs * a).max(axis=-1)


@dataclass(frozen=True)
class TruncatedWeighted:
    weights: tuple[Fraction, ...]
    M: Fraction

    def __post_init__(self):
        object.__setattr__(self, "weights", _weights(self.weights))
        try:
            M = as_fraction(self.M)
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise ModelError(f"bad truncation level: {exc}") from exc
        if M <= 0:
            raise ModelError("truncation level M must be positive")
        object.__setattr__(self, "M", M)

    @property
    def n(self) -> int:
        return len(self.weights)

    def untruncated(self) -> WeightedMonomial:
        return WeightedMonomial(self.weights)

    def axis_degrees(self) -> tuple[Fraction, ...]:
        return self.weights

    def log_phi(self, logabs: np.ndarray) -> np.ndarray:
        return np.maximum(self.untruncated().log_phi(logabs), -float(self.M))


@dataclass(frozen=True)
class MonomialIdeal:
    polyhedron: NewtonPolyhedron

    def __post_init__(self):
        if not isinstance(self.polyhedron, NewtonPolyhedron):
            raise ModelError("MonomialIdeal needs a NewtonPolyhedron")
        if not self.polyhedron.is_m_primary:
            raise ModelError("monomial ideal is not m-primary (its covolume is unbounded)")

    @classmethod
    def from_exponents(cls, exponents: Iterable[Iterable]) -> "MonomialIdeal":
        try:
            P = build_polyhedron(exponents)
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise ModelError(str(exc)) from exc
        return cls(P)

    @property
    def n(self) -> int:
        return self.polyhedron.n

    def axis_degrees(self) -> tuple[Fraction, ...]:
        return self.polyhedron.axis_degrees()  # type: ignore[return-value]

    def log_phi(self, logabs: np.ndarray) -> np.ndarray:
        alpha = np.array([[float(x) for x in v] for v in self.polyhedron.vertices])
        s = 2.0 * (logabs @ alpha.T)
        top = s.max(axis=-1)
        with np.errstate(invalid="ignore"):
            out = 0.5 * (top + np.log(np.exp(s - top[..., None]).sum(axis=-1)))
        return np.where(np.isfinite(top), out, -np.inf)


SingularityModel = Union[WeightedMonomial, MonomialIdeal, TruncatedWeighted]
