"""Numeric estimators built from first-principles integrals.

Every integral over a polydisk is reduced to the real log-coordinates
``x_j = log|z_j|``, where Lebesgue measure on ``C^n`` becomes
``(2 pi)^n exp(2 sum x_j) dx``.  Sampling ``z_j`` uniformly in a disk of
radius ``rho_j`` is the same as sampling ``x_j`` with density proportional
to ``exp(2 x_j)`` on ``x_j < log rho_j``, so the Monte-Carlo estimators below
draw ``log|z_j| = log rho_j + log(U)/2``.

All randomness flows from a single integer seed through
:class:`numpy.random.SeedSequence`; work is split into fixed-size chunks with
their own child seeds, so results do not depend on the thread count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import integrate, optimize

from ._parallel import thread_map
from .models import MonomialIdeal, SingularityModel, TruncatedWeighted, WeightedMonomial

CHUNK = 1 << 16
LOG_PI = math.log(math.pi)


@dataclass(frozen=True)
class DecayEstimate:
    c_hat: float
    stderr: float
    t_grid: tuple[float, ...]
    log_volumes: tuple[float, ...]


@dataclass(frozen=True)
class IntegrabilityResult:
    verdict: str  # finite | diverging | inconclusive
    statistic: float  # growth rate of log shell contributions per unit depth
    threshold_estimate: float
    shell_log_integrals: tuple[float, ...] = ()


@dataclass(frozen=True)
class SliceLimitTrace:
    lam: float
    w_sequence: tuple[float, ...]
    values: tuple[float, ...]
    verdict: bool
    threshold: float


# -- Monte-Carlo plumbing -----------------------------------------------------------


def _chunk_mc(kernel: Callable[[np.random.Generator, int], np.ndarray], samples: int,
              seed: int | np.random.SeedSequence) -> tuple[float, float]:
    """Mean and standard error of ``kernel`` outputs over ``samples`` draws."""
    if samples <= 0:
        raise ValueError("samples must be positive")
    ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    sizes = [CHUNK] * (samples // CHUNK) + ([samples % CHUNK] if samples % CHUNK else [])
    jobs = list(zip(ss.spawn(len(sizes)), sizes))

    def run(job):
        s, m = job
        vals = kernel(np.random.default_rng(s), m)
        return float(vals.sum()), float((vals * vals).sum())

    sums = thread_map(run, jobs)
    total = sum(s for s, _ in sums)
    total_sq = sum(q for _, q in sums)
    mean = total / samples
    var = max(total_sq / samples - mean * mean, 0.0)
    return mean, math.sqrt(var / samples)


def _log_radii(model: SingularityModel, t: float, r: float, slack: float) -> np.ndarray:
    """Proposal radii ``min(r, exp(slack - t/a_j))`` from the axis degrees."""
    a = np.array([float(x) for x in model.axis_degrees()])
    return np.minimum(math.log(r), slack - t / a)


def _log_disk_samples(rng: np.random.Generator, log_rho: np.ndarray, m: int) -> np.ndarray:
    return log_rho + 0.5 * np.log(rng.random((m, log_rho.size)))


def _check_t_r(t: float, r: float) -> None:
    if not t > 0:
        raise ValueError("t must be positive")
    if not 0 < r <= 1:
        raise ValueError("radius must lie in (0, 1]")


# -- sublevel volumes -------------------------------------------------------------


def _log_volume_exact(model, t: float, r: float) -> float:
    if isinstance(model, TruncatedWeighted):
        if t >= float(model.M):
            return -math.inf
        model = model.untruncated()
    a = np.array([float(x) for x in model.weights])
    return float(np.sum(LOG_PI + 2 * np.minimum(math.log(r), -t / a)))


def _log_volume_mc(model, t, r, samples, seed, proposal="adaptive", slack=0.5) -> tuple[float, float]:
    """``(log V, relative stderr)``; ``log V = -inf`` when nothing was hit."""
    if proposal == "adaptive":
        log_rho = _log_radii(model, t, r, slack)
    elif proposal == "polydisk":
        log_rho = np.full(model.n, math.log(r))
    else:
        raise ValueError(f"unknown proposal {proposal!r}")

    def kernel(rng, m):
        x = _log_disk_samples(rng, log_rho, m)
        return (model.log_phi(x) < -t).astype(float)

    p, se = _chunk_mc(kernel, samples, seed)
    log_box = float(np.sum(LOG_PI + 2 * log_rho))
    if p == 0:
        return -math.inf, math.inf
    return log_box + math.log(p), se / p


def sublevel_volume(model: SingularityModel, t: float, r: float = 1.0, *,
                    samples: int = 200_000, seed: int = 0) -> float:
    """Volume of ``{phi < -t}`` inside the polydisk of radius ``r``.

    Weighted and truncated models use the closed form (the set is the
    polydisk with radii ``min(r, e^{-t/a_j})``); monomial ideals are
    estimated by Monte Carlo.
    """
    _check_t_r(t, r)
    if isinstance(model, (WeightedMonomial, TruncatedWeighted)):
        return math.exp(_log_volume_exact(model, t, r))
    return math.exp(_log_volume_mc(model, t, r, samples, seed)[0])


def sublevel_volume_mc(model: SingularityModel, t: float, r: float = 1.0, *, samples: int = 200_000,
                       seed: int = 0, proposal: str = "adaptive", slack: float = 0.5) -> tuple[float, float]:
    """Monte-Carlo volume and its standard error.

    ``proposal="adaptive"`` samples a polydisk whose radii are the axis-degree
    bound ``e^{-t/a_j}`` inflated by ``e^slack``; ``"polydisk"`` samples the
    whole polydisk of radius ``r`` and only suits shallow ``t``.
    """
    _check_t_r(t, r)
    logv, rel = _log_volume_mc(model, t, r, samples, seed, proposal, slack)
    v = math.exp(logv)
    return v, (v * rel if v > 0 else 0.0)


# -- decay regression -------------------------------------------------------------


def _tail_fit(t_grid: np.ndarray, log_v: np.ndarray) -> tuple[float, float]:
    """Slope of ``-log V`` against ``2t`` over the deepest 60% of the grid."""
    k = max(2, math.ceil(0.6 * len(t_grid)))
    x, y = 2 * t_grid[-k:], -log_v[-k:]
    ok = np.isfinite(y)
    x, y = x[ok], y[ok]
    if len(x) < 2:
        raise ValueError("volume underflow: fewer than two usable grid points; grid too deep")
    A = np.vstack([x, np.ones_like(x)]).T
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    if len(x) > 2:
        resid = y - A @ coef
        s2 = float(resid @ resid) / (len(x) - 2)
        se = math.sqrt(s2 / float(((x - x.mean()) ** 2).sum()))
    else:
        se = 0.0
    return float(coef[0]), se


def _check_grid(t_grid) -> np.ndarray:
    g = np.asarray(t_grid, dtype=float)
    if g.ndim != 1 or len(g) < 5:
        raise ValueError("need a grid of at least 5 t values")
    if np.any(np.diff(g) <= 0) or g[0] <= 0:
        raise ValueError("t grid must be positive and strictly increasing")
    return g


def lct_estimate_decay(model: SingularityModel, t_grid: Sequence[float], radius: float = 1.0, *,
                       method: str = "auto", samples: int = 200_000, seed: int = 0) -> DecayEstimate:
    """Estimate the threshold as the decay rate of ``log V({phi < -t})``.

    ``method="auto"`` uses closed-form volumes where they exist and Monte Carlo
    otherwise; ``"mc"`` forces Monte Carlo (one child seed per grid point).
    """
    g = _check_grid(t_grid)
    if not 0 < radius <= 1:
        raise ValueError("radius must lie in (0, 1]")
    closed = isinstance(model, (WeightedMonomial, TruncatedWeighted))
    if method not in ("auto", "mc", "exact"):
        raise ValueError(f"unknown method {method!r}")
    if method == "exact" and not closed:
        raise ValueError("no closed form for this model")
    if closed and method != "mc":
        log_v = np.array([_log_volume_exact(model, t, radius) for t in g])
    else:
        seeds = np.random.SeedSequence(seed).spawn(len(g))
        log_v = np.array([_log_volume_mc(model, t, radius, samples, s)[0] for t, s in zip(g, seeds)])
    if not np.isfinite(log_v).any():
        raise ValueError("volume underflow: every grid volume is zero")
    c_hat, se = _tail_fit(g, log_v)
    return DecayEstimate(c_hat, se, tuple(g.tolist()), tuple(log_v.tolist()))


# -- integrability ----------------------------------------------------------------


def integrability_check(model: SingularityModel, c: float, samples: int = 200_000, seed: int = 0, *,
                        r: float = 0.5, shells: int = 8, width: float = 1.0,
                        band: float = 0.03) -> IntegrabilityResult:
    """Decide whether ``exp(-2 c phi)`` is integrable near 0 from shell contributions.

    The shells are ``{t_k <= -phi < t_k + width}``; each is sampled with the
    adaptive polydisk at depth ``t_k``.  The log contributions grow linearly
    in ``t_k`` at rate ``2(c - c_true)``; the fitted rate yields an estimate of
    the threshold and the verdict is "inconclusive" when ``c`` lies within
    ``band`` (relative) of it.
    """
    if not c > 0:
        raise ValueError("c must be positive")
    a_max = max(float(x) for x in model.axis_degrees())
    t0 = max(1.0, a_max * math.log(1 / r))
    depths = t0 + width * np.arange(shells)
    per_shell = max(1, samples // shells)
    seeds = np.random.SeedSequence(seed).spawn(shells)
    log_I = []
    for tk, s in zip(depths, seeds):
        log_rho = _log_radii(model, tk, r, 0.5)
        log_box = float(np.sum(LOG_PI + 2 * log_rho))

        def kernel(rng, m, tk=tk, log_rho=log_rho):
            x = _log_disk_samples(rng, log_rho, m)
            phi = model.log_phi(x)
            inside = (phi < -tk) & (phi >= -tk - width)
            # factor out exp(2 c tk) to keep values moderate
            return np.where(inside, np.exp(-2 * c * (phi + tk)), 0.0)

        mean, _ = _chunk_mc(kernel, per_shell, s)
        log_I.append(log_box + 2 * c * tk + math.log(mean) if mean > 0 else -math.inf)
    log_I = np.array(log_I)
    finite = np.isfinite(log_I)
    if not finite.all():
        # empty deep shells: phi is bounded below near 0
        return IntegrabilityResult("finite", -math.inf, math.inf, tuple(log_I.tolist()))
    slope = float(np.polyfit(depths, log_I, 1)[0])
    c_star = c - slope / 2
    if c < c_star * (1 - band):
        verdict = "finite"
    elif c > c_star * (1 + band):
        verdict = "diverging"
    else:
        verdict = "inconclusive"
    return IntegrabilityResult(verdict, slope, c_star, tuple(log_I.tolist()))


# -- restrictions to random planes ------------------------------------------------


def _random_frame(rng: np.random.Generator, n: int, k: int) -> np.ndarray:
    g = rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))
    q, _ = np.linalg.qr(g)
    return q


def _radial_log_volumes(model, b: np.ndarray, g: np.ndarray, r: float) -> np.ndarray:
    """``log V`` of ``{w in C : phi(w b) < -t}`` for each ``t``: a disk of radius ``rho*(t)``."""
    log_b = np.log(np.abs(b))

    def phi(s):
        return float(model.log_phi((s + log_b)[None, :])[0])

    out = []
    hi = math.log(r)
    for t in g:
        if phi(hi) < -t:
            s = hi
        else:
            lo = hi - 1.0
            while phi(lo) >= -t:
                lo = hi - 2 * (hi - lo)
            s = optimize.brentq(lambda x: phi(x) + t, lo, hi, xtol=1e-13, rtol=1e-13)
        out.append(LOG_PI + 2 * s)
    return np.array(out)


def _plane_log_volumes(model, B: np.ndarray, g: np.ndarray, r: float, samples: int,
                       seeds, slack: float = 0.5) -> np.ndarray:
    """MC ``log V`` of ``{w in C^k : phi(B w) < -t}`` in form coordinates ``u = B_J w``."""
    n, k = B.shape
    a = np.array([float(x) for x in model.axis_degrees()])
    J = np.argsort(a, kind="stable")[:k]
    BJ = B[J, :]
    T = B @ np.linalg.inv(BJ)  # z = T u
    log_det = math.log(abs(np.linalg.det(BJ)))
    out = []
    for t, s in zip(g, seeds):
        log_rho = np.minimum(math.log(r), slack - t / a[J])

        def kernel(rng, m, log_rho=log_rho, t=t):
            mod = np.exp(_log_disk_samples(rng, log_rho, m))
            u = mod * np.exp(2j * np.pi * rng.random((m, k)))
            z = u @ T.T
            with np.errstate(divide="ignore"):
                return (model.log_phi(np.log(np.abs(z))) < -t).astype(float)

        p, _ = _chunk_mc(kernel, samples, s)
        log_box = float(np.sum(LOG_PI + 2 * log_rho)) - 2 * log_det
        out.append(log_box + math.log(p) if p > 0 else -math.inf)
    return np.array(out)


def generic_restriction_estimate(model: SingularityModel, k: int, trials: int = 8, seed: int = 0, *,
                                 t_grid: Sequence[float] | None = None, radius: float = 1.0,
                                 samples: int = 50_000) -> float:
    """Best decay-regression threshold over ``trials`` random k-planes through 0.

    Lines are handled deterministically (the sublevel set of a line restriction
    is a disk whose radius is found by root finding); higher-dimensional planes
    use Monte Carlo with ``samples`` draws per grid point.
    """
    n = model.n
    if not 1 <= k <= n - 1:
        raise ValueError(f"k={k} out of range 1..{n - 1}")
    if trials < 1:
        raise ValueError("trials must be positive")
    if t_grid is None:
        t_grid = np.linspace(5.0, 40.0, 12) if k == 1 else np.linspace(2.0, 16.0, 8)
    g = _check_grid(t_grid)
    ss = np.random.SeedSequence(seed)
    best = -math.inf
    for child in ss.spawn(trials):
        frame_seed, mc_seed = child.spawn(2)
        B = _random_frame(np.random.default_rng(frame_seed), n, k)
        if k == 1:
            log_v = _radial_log_volumes(model, B[:, 0], g, radius)
        else:
            log_v = _plane_log_volumes(model, B, g, radius, samples, mc_seed.spawn(len(g)))
        best = max(best, _tail_fit(g, log_v)[0])
    return best


# -- slices -----------------------------------------------------------------------


def slice_energy(model: WeightedMonomial | TruncatedWeighted, w: complex) -> float:
    """``int u dd^c u`` over the unit disk for the slice ``u = phi(., w)``.

    The slice is ``max(a_1 log|z_1|, L)`` with ``L = a_2 log|w|`` (or
    ``max(L, -M)`` when truncated); its Monge-Ampere measure is ``a_1`` times
    the normalized arc measure on ``|z_1| = e^{L/a_1}``, so the energy is
    ``a_1 L``, which is ``log|w|`` when ``a_1 a_2 = 1``.
    """
    if model.n != 2:
        raise ValueError("slice_energy supports n = 2 only")
    aw = abs(w)
    if not 0 < aw < 1:
        raise ValueError("need 0 < |w| < 1")
    a1, a2 = (float(x) for x in model.weights)
    level = a2 * math.log(aw)
    if isinstance(model, TruncatedWeighted):
        level = max(level, -float(model.M))
    return a1 * level


def _log_int_power(lo: float, hi: float, kappa: float) -> float:
    """``log int_lo^hi exp(kappa x) dx`` for ``lo < hi`` (``lo`` may be ``-inf`` when ``kappa > 0``)."""
    if hi <= lo:
        return -math.inf
    if abs(kappa) < 1e-14:
        return math.log(hi - lo)
    if kappa > 0:
        d = kappa * (lo - hi)
        return kappa * hi - math.log(kappa) + (math.log1p(-math.exp(d)) if d > -700 else 0.0)
    d = kappa * (hi - lo)
    return kappa * lo - math.log(-kappa) + (math.log1p(-math.exp(d)) if d > -700 else 0.0)


def _logaddexp(*xs: float) -> float:
    return float(np.logaddexp.reduce(np.array(xs, dtype=float)))


def _slice_log_h2(a1: float, a2: float, lam: float, r: float, log_w: float) -> float:
    """``log(h(w) |w|^2)`` for n = 2: slice integral over ``|z_1| < r`` in closed form."""
    L = a2 * log_w
    R = math.log(r)
    x0 = L / a1  # log rho_0
    # inner disk |z_1| < min(rho_0, r): integrand exp(-2 lam L)
    inner = LOG_PI + 2 * min(x0, R) - 2 * lam * L
    terms = [inner]
    if x0 < R:
        # annulus: 2 pi int rho^(1 - 2 lam a1) d rho  =  2 pi int exp((2 - 2 lam a1) x) dx
        terms.append(math.log(2 * math.pi) + _log_int_power(x0, R, 2 - 2 * lam * a1))
    return _logaddexp(*terms) + 2 * log_w


def _slice_log_h3(a: Sequence[float], lam: float, r: float, log_w: float) -> float:
    """``log(h(w) |w|^2)`` for n = 3: inner coordinate analytic, outer by quadrature."""
    a1, a2, a3 = a
    L = a3 * log_w
    R = math.log(r)

    def log_inner(m1: float) -> float:
        # log int_{-inf}^{R} exp(2 x2 - 2 lam max(a2 x2, m1)) dx2
        xs = m1 / a2
        if xs >= R:
            return -2 * lam * m1 + 2 * R - math.log(2)
        return _logaddexp(-2 * lam * m1 + 2 * xs - math.log(2), _log_int_power(xs, R, 2 - 2 * lam * a2))

    const = 2 * math.log(2 * math.pi) + 2 * log_w
    split = min(L / a1, R)
    parts = [log_inner(L) + 2 * split - math.log(2)]  # x1 < L/a1: m1 = L
    if split < R:
        # x1 in (L/a1, R): m1 = a1 x1; scale by the value at the left end to stay in range
        ref = log_inner(a1 * split) + 2 * split
        f = lambda x1: math.exp(log_inner(a1 * x1) + 2 * x1 - ref)
        pts = [p for p in (a2 * R / a1,) if split < p < R]
        val, _ = integrate.quad(f, split, R, points=pts or None, limit=200, epsabs=0, epsrel=1e-10)
        if val > 0:
            parts.append(ref + math.log(val))
    return const + _logaddexp(*parts)


def slice_limit_check(model: WeightedMonomial, lam: float, r: float = 0.4, depth: int = 30, *,
                      threshold: float = 1e-3) -> SliceLimitTrace:
    """Trace of ``h(w) |w|^2`` along ``w = 2^-j`` for ``j = 1..depth``.

    ``h(w)`` integrates ``exp(-2 lam phi(z', w))`` over the polydisk
    ``|z'| < r`` in ``C^{n-1}`` against the ``(2n-2)``-real-dimensional
    Lebesgue measure.  The weights are sorted so that ``w`` carries the
    largest weight.  The verdict is true when the last third of the trace is
    strictly decreasing and the final value is below ``threshold``.
    """
    if not isinstance(model, WeightedMonomial):
        raise ValueError("slice_limit_check needs a WeightedMonomial")
    if not 0 < r < 0.5:
        raise ValueError("r must lie in (0, 1/2)")
    if not lam > 0:
        raise ValueError("lambda must be positive")
    if depth < 3:
        raise ValueError("depth must be at least 3")
    a = [float(x) for x in model.sorted_weights()]
    if model.n == 2:
        fn = lambda lw: _slice_log_h2(a[0], a[1], lam, r, lw)
    elif model.n == 3:
        fn = lambda lw: _slice_log_h3(a, lam, r, lw)
    else:
        raise ValueError("slice_limit_check supports n = 2 and n = 3")
    ws = tuple(2.0 ** -j for j in range(1, depth + 1))
    vals = tuple(math.exp(fn(math.log(w))) for w in ws)
    tail = vals[-max(2, depth // 3):]
    decreasing = all(y < x for x, y in zip(tail, tail[1:]))
    return SliceLimitTrace(lam, ws, vals, bool(decreasing and vals[-1] < threshold), threshold)


# -- report helper ----------------------------------------------------------------


def default_t_grid(model: SingularityModel) -> np.ndarray:
    if isinstance(model, MonomialIdeal):
        return np.linspace(1.0, 8.0, 8)
    if isinstance(model, TruncatedWeighted):
        return np.linspace(0.1, 0.9, 9) * float(model.M)
    return np.linspace(2.0, 20.0, 10)


def numeric_crosschecks(model: SingularityModel, table, *, samples: int = 200_000, seed: int = 0) -> dict:
    """Decay estimate and integrability verdicts next to the exact threshold."""
    c = float(table.c)
    seeds = np.random.SeedSequence(seed).spawn(3)
    ints = [int(s.generate_state(1)[0]) for s in seeds]
    grid = default_t_grid(model)
    est = lct_estimate_decay(model, grid, method="mc", samples=samples, seed=ints[0])
    out = {
        "seed": seed,
        "samples": samples,
        "decay": {
            "c_hat": est.c_hat,
            "stderr": est.stderr,
            "c_exact": c,
            "relative_error": abs(est.c_hat - c) / c,
            "t_grid": list(est.t_grid),
        },
    }
    if not isinstance(model, TruncatedWeighted):
        lo = integrability_check(model, 0.9 * c, samples, ints[1])
        hi = integrability_check(model, 1.1 * c, samples, ints[2])
        out["integrability"] = {
            "below": {"c": 0.9 * c, "verdict": lo.verdict, "statistic": lo.statistic},
            "above": {"c": 1.1 * c, "verdict": hi.verdict, "statistic": hi.statistic},
        }
    return out
