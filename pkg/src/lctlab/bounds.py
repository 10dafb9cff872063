"""Evaluators and exact checkers for the threshold/mass inequalities.

Inequalities between k-th roots are never evaluated in floating point: every
comparison of the form ``x^(1/p) <= y^(1/q)`` is cross-powered into
``x^q <= y^p`` on rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

from ._exact import as_fraction
from .invariants import INF, InvariantTable, invariant_table
from .models import SingularityModel, WeightedMonomial

HOLDS = "holds"
FAILS = "fails"
HOLDS_LB = "holds-with-lower-bound"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class CheckResult:
    name: str
    lhs: Fraction | float
    rhs: Fraction | float
    verdict: str
    margin: Fraction | float
    detail: str = ""
    parts: tuple["CheckResult", ...] = ()
    error: float | None = None  # standard error for numeric checks

    @property
    def ok(self) -> bool:
        return self.verdict in (HOLDS, HOLDS_LB)


def _cmp(name, lhs, rhs, *, lower_bound=False, detail="") -> CheckResult:
    """Check ``lhs >= rhs``."""
    ok = lhs >= rhs
    verdict = (HOLDS_LB if lower_bound else HOLDS) if ok else FAILS
    margin = lhs - rhs if (lhs != INF and rhs != INF) else (INF if lhs == INF else -INF)
    return CheckResult(name, lhs, rhs, verdict, margin, detail)


def _combine(name: str, parts: Sequence[CheckResult], detail: str = "") -> CheckResult:
    if any(p.verdict == FAILS for p in parts):
        verdict = FAILS
    elif any(p.verdict == INCONCLUSIVE for p in parts):
        verdict = INCONCLUSIVE
    elif any(p.verdict == HOLDS_LB for p in parts):
        verdict = HOLDS_LB
    else:
        verdict = HOLDS
    first = parts[0]
    margin = min(p.margin for p in parts)
    return CheckResult(name, first.lhs, first.rhs, verdict, margin, detail, tuple(parts))


# -- main inequality --------------------------------------------------------------


def theorem_rhs(c_nm1, e_n, e_1, n: int) -> Fraction | float:
    """``c_{n-1} + (n-1)^(n-1) / (c_{n-1}^(n-1) e_n)``, or ``inf`` when ``e_1 = 0``."""
    if n < 2:
        raise ValueError("dimension must be at least 2")
    e_1 = as_fraction(e_1)
    if e_1 == 0:
        return INF
    e_n = as_fraction(e_n)
    c_nm1 = as_fraction(c_nm1)
    if e_n <= 0:
        raise ValueError("inconsistent table: e_1 > 0 but e_n = 0")
    if c_nm1 <= 0:
        raise ValueError("c_{n-1} must be positive")
    return c_nm1 + Fraction((n - 1) ** (n - 1)) / (c_nm1 ** (n - 1) * e_n)


def f_lemma21(t1, t2, n: int) -> Fraction:
    """``1/t1 + (n-1)^(n-1) t1^(n-1) / t2``."""
    t1, t2 = as_fraction(t1), as_fraction(t2)
    if t1 <= 0 or t2 <= 0:
        raise ValueError("f is defined for positive arguments only")
    return 1 / t1 + (n - 1) ** (n - 1) * t1 ** (n - 1) / t2


def in_domain_D(t1, t2, n: int) -> bool:
    """``(n-1)^n t1^n <= t2`` with both coordinates nonnegative."""
    t1, t2 = as_fraction(t1), as_fraction(t2)
    if t1 < 0 or t2 < 0:
        raise ValueError("D lives in the closed positive quadrant")
    return (n - 1) ** n * t1 ** n <= t2


def check_main(table: InvariantTable) -> CheckResult:
    """``c >= c_{n-1} + (n-1)^(n-1)/(c_{n-1}^(n-1) e_n)`` (``c = inf`` when ``e_1 = 0``).

    With an inexact ``c_{n-1}`` (a lower bound ``l``) the right side is
    evaluated at ``l`` when ``(1/l, e_n)`` lies in D, where it is increasing
    in ``c_{n-1}``.  Otherwise ``l`` is clamped to the boundary of D, which
    reduces the check to ``c^n e_n >= n^n``.
    """
    n = table.n
    name = "main_inequality"
    if table.e[1] == 0:
        return _cmp(name, table.c, INF)
    c_nm1 = table.c_at(n - 1)
    exact = table.c_k[n - 2].exact
    e_n = table.e[n]
    if exact or in_domain_D(1 / c_nm1, e_n, n):
        return _cmp(name, table.c, theorem_rhs(c_nm1, e_n, table.e[1], n), lower_bound=not exact)
    lhs = table.c ** n * e_n
    return _cmp(name, lhs, Fraction(n ** n), lower_bound=True,
                detail="c_{n-1} lower bound clamped to the boundary of D; compared c^n e_n >= n^n")


def _trivial(name: str, table: InvariantTable) -> CheckResult | None:
    """Unit ideal (``e_1 = 0``): phi is bounded, every threshold is infinite."""
    if table.e[1] == 0:
        return CheckResult(name, INF, INF, HOLDS, INF, "bounded model: all thresholds infinite")
    return None


def fem_chain_check(table: InvariantTable) -> CheckResult:
    """``c_{n-1} >= (n-1)/e_{n-1}^(1/(n-1)) >= (n-1)/e_n^(1/n)``, cross-powered."""
    if (t := _trivial("fem_chain", table)) is not None:
        return t
    n = table.n
    c_nm1 = table.c_at(n - 1)
    exact = table.c_k[n - 2].exact
    e_nm1, e_n = table.e[n - 1], table.e[n]
    first = _cmp("c_{n-1}^(n-1) e_{n-1} >= (n-1)^(n-1)", c_nm1 ** (n - 1) * e_nm1,
                 Fraction((n - 1) ** (n - 1)), lower_bound=not exact)
    if not exact and first.verdict == FAILS:
        first = CheckResult(first.name, first.lhs, first.rhs, INCONCLUSIVE, first.margin,
                            "lower bound for c_{n-1} too weak to certify this link")
    second = _cmp("e_n^(n-1) >= e_{n-1}^n", e_n ** (n - 1), e_nm1 ** n)
    parts = [first, second]
    res = _combine("fem_chain", parts)
    if not exact and first.verdict == INCONCLUSIVE and second.ok:
        res = CheckResult(res.name, res.lhs, res.rhs, HOLDS_LB, second.margin,
                          "only the mass link is certified", tuple(parts))
    return res


def upper_bound_check(table: InvariantTable) -> CheckResult:
    """``c <= n/(n-1) c_{n-1}``."""
    if (t := _trivial("upper_bound", table)) is not None:
        return t
    n = table.n
    exact = table.c_k[n - 2].exact
    rhs = Fraction(n, n - 1) * table.c_at(n - 1)
    res = _cmp("upper_bound", rhs, table.c, lower_bound=not exact)
    res = CheckResult(res.name, table.c, rhs, res.verdict, res.margin)
    if not exact and res.verdict == FAILS:
        res = CheckResult(res.name, res.lhs, res.rhs, INCONCLUSIVE, res.margin,
                          "lower bound for c_{n-1} cannot certify an upper bound on c")
    return res


def concavity_check(table: InvariantTable) -> CheckResult:
    """``c_k - c_{k-1} <= c_{k-1} - c_{k-2}`` for ``k = 2..n`` with ``c_0 = 0``, ``c_n = c``."""
    if not table.c_exact:
        raise ValueError("concavity needs exact c_k; a lower bound cannot certify it")
    if (t := _trivial("concavity", table)) is not None:
        return t
    n = table.n
    parts = []
    for k in range(2, n + 1):
        d_k = table.c_at(k) - table.c_at(k - 1)
        d_prev = table.c_at(k - 1) - table.c_at(k - 2)
        parts.append(_cmp(f"c_{k} - c_{k-1} <= c_{k-1} - c_{k-2}", d_prev, d_k))
    if not parts:
        raise ValueError("concavity needs n >= 2")
    return _combine("concavity", parts)


def dh14_2d_check(table: InvariantTable) -> CheckResult:
    """Dimension-2 bound ``c >= 1/e_1 + e_1/e_2`` and its derivation from the main inequality."""
    if table.n != 2:
        raise ValueError("the dimension-2 bound needs n = 2")
    if not table.c_exact:
        raise ValueError("needs exact c_1")
    if (t := _trivial("dh14_2d", table)) is not None:
        return t
    c1, e1, e2 = table.c_at(1), table.e[1], table.e[2]
    bound = 1 / e1 + e1 / e2
    rhs = theorem_rhs(c1, e2, e1, 2)
    parts = [
        _cmp("c >= 1/e_1 + e_1/e_2", table.c, bound),
        _cmp("theorem rhs == f(1/c_1, e_2)", rhs, f_lemma21(1 / c1, e2, 2)),
        _cmp("1/c_1 <= e_1", e1, 1 / c1),
        _cmp("(1/c_1, e_2) in D", e2, (1 / c1) ** 2),
        _cmp("(e_1, e_2) in D", e2, e1 ** 2),
        _cmp("f(1/c_1, e_2) >= f(e_1, e_2)", f_lemma21(1 / c1, e2, 2), f_lemma21(e1, e2, 2)),
    ]
    return _combine("dh14_2d", parts)


# -- analytic lemma evaluators ----------------------------------------------------


@dataclass(frozen=True)
class LemmaParams:
    """Inputs of the sublevel-volume and integrability estimates.

    ``c_n_const`` is the unspecified dimensional constant of those estimates
    (default 1); ``delta`` the diameter of the domain; ``vol`` the volume of
    the subdomain; ``A`` the energy bound and ``B`` the integral bound.
    """

    n: int
    A: float = 1.0
    B: float = 1.0
    delta: float = 1.0
    c_n_const: float = 1.0
    vol: float = 0.0
    c: float = 1.0
    lam: float | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        for name in ("delta", "c_n_const", "c"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        for name in ("A", "B", "vol"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")


def lemma23_rhs(t: float, p: LemmaParams) -> float:
    """``c_n delta^(2n) (1+u)^(n-1) exp(-2 n u)`` with ``u = t^((n+1)/n) A^(-1/n)``."""
    if t <= 0:
        raise ValueError("t must be positive")
    if p.A <= 0:
        raise ValueError("A must be positive")
    n = p.n
    u = t ** ((n + 1) / n) * p.A ** (-1 / n)
    return p.c_n_const * p.delta ** (2 * n) * (1 + u) ** (n - 1) * math.exp(-2 * n * u)


def jn_integral(n: int) -> Fraction:
    """``int_0^inf (1+2x)^(n-1) exp(-2nx) dx`` in closed form."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return sum((Fraction(comb(n - 1, j) * 2 ** j * factorial(j), (2 * n) ** (j + 1))
                for j in range(n)), Fraction(0))


def lambda_window(c: float, n: int) -> tuple[float, float]:
    return c, c + c / n


def lemma24_rhs(p: LemmaParams) -> float:
    """Upper bound for ``int e^(-2 lam phi)`` over the subdomain, ``lam`` in ``(c, c + c/n)``.

    Implements the three-term estimate in dimension ``n``.  Applied to a slice
    in dimension ``n - 1`` (as in the openness argument), pass ``n - 1`` and
    the slice data; the exponents then read ``n-1`` where the formula has ``n``.
    """
    n, c, lam = p.n, p.c, p.lam
    if lam is None:
        raise ValueError("lam is required")
    lo, hi = lambda_window(c, n)
    if not lo < lam < hi:
        raise ValueError(f"lam={lam} outside the open window ({lo}, {hi})")
    scale = p.c_n_const * p.delta ** (2 * n)
    E = math.exp(2 * (lam - c) * p.A * c ** n * n ** (-n))
    t1 = p.B / (2 * (lam - c)) * E
    t2 = 0.5 * scale * (1 + 2 ** (n + 1) * p.A * lam ** (n + 1) * n ** (-n - 1)) ** (n - 1) \
        / ((n + 1) * c / n - lam) * E
    t3 = scale * n ** 2 / (lam * (n + 2)) * float(jn_integral(n))
    return p.vol + t1 + t2 + t3


def openness_gain(c, n: int, e_n) -> Fraction:
    """``(n-1)^(n-1) / (c^(n-1) e_n)``: width of the window above ``c_{n-1}``."""
    c, e_n = as_fraction(c), as_fraction(e_n)
    if c <= 0 or e_n <= 0:
        raise ValueError("c and e_n must be positive")
    if n < 2:
        raise ValueError("n must be at least 2")
    return Fraction((n - 1) ** (n - 1)) / (c ** (n - 1) * e_n)


# -- reports ----------------------------------------------------------------------


@dataclass(frozen=True)
class ReportConfig:
    numeric: bool = False
    samples: int = 200_000
    seed: int = 0
    method: str = "generic"
    inject_c: Fraction | None = None  # test hook: overwrite c before checking


@dataclass(frozen=True)
class CheckReport:
    model: SingularityModel
    table: InvariantTable
    checks: tuple[CheckResult, ...]
    numeric: dict = field(default_factory=dict)
    config: ReportConfig = ReportConfig()

    @property
    def verdict(self) -> str:
        return FAILS if any(c.verdict == FAILS for c in self.checks) else HOLDS

    def check(self, name: str) -> CheckResult:
        return next(c for c in self.checks if c.name == name)


def exact_checks(table: InvariantTable) -> list[CheckResult]:
    checks = [check_main(table), fem_chain_check(table), upper_bound_check(table)]
    if table.c_exact:
        checks.append(concavity_check(table))
    if table.n == 2 and table.c_exact:
        checks.append(dh14_2d_check(table))
    return checks


def report(model: SingularityModel, config: ReportConfig = ReportConfig()) -> CheckReport:
    """Invariant table, every exact check, and optionally the numeric cross-checks."""
    table = invariant_table(model, config.method)
    if table.n < 2:
        raise ValueError("the inequalities need n >= 2")
    if config.inject_c is not None:
        table = InvariantTable(table.n, as_fraction(config.inject_c), table.c_k, table.e,
                               table.lelong, table.truncated, table.notes + ("c overwritten by test hook",))
    checks = exact_checks(table)
    numeric = {}
    if config.numeric:
        from .numeric import numeric_crosschecks
        numeric = numeric_crosschecks(model, table, samples=config.samples, seed=config.seed)
    return CheckReport(model, table, tuple(checks), numeric, config)


def scaled_rhs(weights: Sequence, s) -> Fraction:
    """``f(1/c_{n-1}, e_n)`` for the weights scaled by ``s`` (a more singular model when ``s >= 1``)."""
    s = as_fraction(s)
    t = invariant_table(WeightedMonomial(tuple(as_fraction(w) * s for w in weights)))
    return f_lemma21(1 / t.c_at(t.n - 1), t.e[t.n], t.n)
