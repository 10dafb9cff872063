import math

import numpy as np
import pytest
from scipy import integrate

from lctlab.bounds import openness_gain
from lctlab.invariants import invariant_table
from lctlab.models import MonomialIdeal, TruncatedWeighted, WeightedMonomial
from lctlab.numeric import (generic_restriction_estimate, integrability_check, lct_estimate_decay,
                            slice_energy, slice_limit_check, sublevel_volume, sublevel_volume_mc)

W = WeightedMonomial
M = MonomialIdeal.from_exponents
X23 = M([(2, 0), (0, 3)])


@pytest.mark.parametrize("t", [0.3, 1.0, 4.0])
def test_sublevel_volume_closed_forms(t):
    assert sublevel_volume(W((1, 1)), t) == pytest.approx(math.pi ** 2 * math.exp(-4 * t), rel=1e-12)
    assert sublevel_volume(W((3,)), t) == pytest.approx(math.pi * math.exp(-2 * t / 3), rel=1e-12)


def test_sublevel_volume_respects_radius_and_truncation():
    assert sublevel_volume(W((1, 2)), 0.1, r=0.5) == pytest.approx((math.pi * 0.25) ** 2)
    assert sublevel_volume(TruncatedWeighted((1, 2), 3), 3.5) == 0.0
    assert sublevel_volume(TruncatedWeighted((1, 2), 3), 1.0) == sublevel_volume(W((1, 2)), 1.0)


@pytest.mark.parametrize("proposal", ["adaptive", "polydisk"])
def test_sublevel_closed_form_matches_mc(proposal):
    exact = sublevel_volume(W((1, 2)), 1.0)
    est, se = sublevel_volume_mc(W((1, 2)), 1.0, samples=10**6, seed=4, proposal=proposal)
    assert se > 0 and abs(est - exact) <= 3 * se


def test_sublevel_mc_on_seeded_corpus():
    rng = np.random.default_rng(8)
    for i in range(6):
        ws = tuple(int(x) for x in rng.integers(1, 6, 2 + i % 2))
        t = float(rng.uniform(0.5, 3))
        exact = sublevel_volume(W(ws), t, r=0.8)
        est, se = sublevel_volume_mc(W(ws), t, r=0.8, samples=300_000, seed=i)
        assert abs(est - exact) <= 3 * se


def test_monomial_sublevel_volume_matches_quasi_homogeneous_scaling():
    # {|x|^4 + |y|^6 < e^{-2t}} scales exactly like e^{-2 (5/6) t}
    v1 = sublevel_volume_mc(X23, 2.0, samples=10**6, seed=1)
    v2 = sublevel_volume_mc(X23, 5.0, samples=10**6, seed=2)
    ratio = math.log(v1[0] / v2[0]) / 6.0
    assert ratio == pytest.approx(5 / 6, rel=0.01)


def test_sublevel_volume_errors():
    with pytest.raises(ValueError):
        sublevel_volume(W((1, 1)), 0.0)
    with pytest.raises(ValueError):
        sublevel_volume(W((1, 1)), 1.0, r=1.5)


def test_decay_examples():
    e = lct_estimate_decay(W((1, 1)), range(2, 11))
    assert e.c_hat == pytest.approx(2.0, abs=0.01)
    e = lct_estimate_decay(W((2, 3)), np.linspace(5, 40, 8))
    assert e.c_hat == pytest.approx(5 / 6, rel=0.05)
    e = lct_estimate_decay(X23, np.linspace(1, 8, 8), samples=300_000)
    assert e.c_hat == pytest.approx(5 / 6, rel=0.05)
    assert list(e.t_grid) == sorted(e.t_grid)


def test_decay_errors():
    with pytest.raises(ValueError):
        lct_estimate_decay(W((1, 1)), [1, 2, 3])
    with pytest.raises(ValueError):
        lct_estimate_decay(W((1, 1)), [1, 3, 2, 4, 5])
    with pytest.raises(ValueError, match="underflow"):
        lct_estimate_decay(TruncatedWeighted((1, 1), 1), [2, 3, 4, 5, 6])


def test_decay_is_deterministic():
    a = lct_estimate_decay(X23, np.linspace(1, 6, 6), samples=100_000, seed=3)
    b = lct_estimate_decay(X23, np.linspace(1, 6, 6), samples=100_000, seed=3)
    assert a == b


def test_mc_does_not_depend_on_thread_count(monkeypatch):
    monkeypatch.setenv("LCTLAB_THREADS", "1")
    a = sublevel_volume_mc(X23, 2.0, samples=200_000, seed=9)
    monkeypatch.setenv("LCTLAB_THREADS", "4")
    b = sublevel_volume_mc(X23, 2.0, samples=200_000, seed=9)
    assert a == b


@pytest.mark.parametrize("model, c, verdict", [
    (W((1, 1)), 1.5, "finite"), (W((1, 1)), 2.5, "diverging"),
    (X23, 0.75, "finite"), (X23, 0.95, "diverging"),
])
def test_integrability_examples(model, c, verdict):
    assert integrability_check(model, c, 200_000, seed=0).verdict == verdict


def test_integrability_dead_band_and_truncation():
    r = integrability_check(W((1, 2)), 1.5, 400_000, seed=1)
    assert r.verdict == "inconclusive"
    assert integrability_check(TruncatedWeighted((1, 1), 3), 5.0, 50_000).verdict == "finite"


def test_generic_restriction_examples():
    assert 0.45 <= generic_restriction_estimate(M([(3, 0), (1, 1), (0, 3)]), 1, trials=4) <= 0.55
    assert generic_restriction_estimate(W((1, 1)), 1, trials=3) == pytest.approx(1.0, rel=0.05)
    assert generic_restriction_estimate(W((1, 2, 3)), 2, trials=2, samples=20_000) == pytest.approx(1.5, rel=0.05)
    with pytest.raises(ValueError):
        generic_restriction_estimate(W((1, 2)), 2)


def test_generic_restriction_agrees_with_exact_generic_thresholds():
    m = M([(6, 0, 0), (0, 6, 0), (0, 0, 6), (1, 1, 1)])
    exact = float(invariant_table(m).c_at(2))
    est = generic_restriction_estimate(m, 2, trials=2, samples=40_000, t_grid=np.linspace(2, 9, 8))
    assert est == pytest.approx(exact, rel=0.05)


@pytest.mark.parametrize("ws, w, expected", [
    ((1, 1), 0.5, math.log(0.5)), ((2, "1/2"), 0.1, math.log(0.1)), ((1, 2), 0.5, 2 * math.log(0.5)),
])
def test_slice_energy_examples(ws, w, expected):
    assert abs(slice_energy(W(ws), w) - expected) <= 1e-12


def test_slice_energy_truncation_and_errors():
    assert slice_energy(TruncatedWeighted((1, 2), 1), 0.1) == -1.0
    with pytest.raises(ValueError):
        slice_energy(W((1, 1)), 1.0)
    with pytest.raises(ValueError):
        slice_energy(W((1, 1, 1)), 0.5)


@pytest.mark.parametrize("ws, w", [((1, 1), 0.5), ((2, 3), 0.3), (("1/2", 2), 0.05)])
def test_slice_energy_matches_dirichlet_energy(ws, w):
    """``int u dd^c u = -(1/2 pi) int |grad u|^2`` for ``u = max(a_1 log|z|, L)`` vanishing on the circle."""
    m = W(ws)
    a1, a2 = (float(x) for x in m.weights)
    rho0 = w ** (a2 / a1)
    grad_sq = lambda rho: (a1 / rho) ** 2 * 2 * math.pi * rho
    val, _ = integrate.quad(grad_sq, rho0, 1.0, epsrel=1e-13)
    assert slice_energy(m, w) == pytest.approx(-val / (2 * math.pi), rel=1e-10)


def test_slice_limit_examples():
    tr = slice_limit_check(W((1, 2)), 1.25, r=0.4, depth=30)
    assert tr.verdict and tr.values[19] < 1e-3
    assert not slice_limit_check(W((1, 2)), 1.6).verdict
    assert slice_limit_check(W((1, 1)), 1.5).verdict
    assert all(v >= 0 for v in tr.values)
    assert list(tr.w_sequence) == sorted(tr.w_sequence, reverse=True)


def test_slice_limit_closed_form_matches_quadrature():
    """n = 2 closed form against radial quadrature of ``exp(-2 lam phi)`` over ``|z| < r``."""
    from lctlab.numeric import _slice_log_h2
    for a1, a2, lam in ((1.0, 2.0, 1.25), (2.0, 3.0, 0.6), (1.0, 1.0, 1.0)):
        r = 0.4
        for w in (0.5, 0.1, 0.01):
            L = a2 * math.log(w)
            f = lambda rho: math.exp(-2 * lam * max(a1 * math.log(rho), L)) * 2 * math.pi * rho
            h, _ = integrate.quad(f, 0, r, points=[min(w ** (a2 / a1), r / 2)], epsabs=0, epsrel=1e-12)
            assert math.exp(_slice_log_h2(a1, a2, lam, r, math.log(w))) == pytest.approx(h * w * w, rel=1e-9)
    tr = slice_limit_check(W((1, 2)), 1.25, depth=5)
    assert tr.values[0] == pytest.approx(math.exp(_slice_log_h2(1.0, 2.0, 1.25, 0.4, math.log(0.5))))


def test_slice_limit_three_dimensional_quadrature():
    from lctlab.numeric import _slice_log_h3
    a, lam, r, w = (1.0, 2.0, 3.0), 1.7, 0.4, 0.3
    L = a[2] * math.log(w)

    R = math.log(r)

    def inner(x1):
        f = lambda x2: math.exp(2 * x1 + 2 * x2 - 2 * lam * max(a[0] * x1, a[1] * x2, L))
        kink = max(a[0] * x1, L) / a[1]
        pts = [kink] if -80 < kink < R else None
        return integrate.quad(f, -80, R, points=pts, epsabs=0, epsrel=1e-13, limit=200)[0]

    val, _ = integrate.quad(inner, -80, R, points=[L / a[0], a[1] * R / a[0]], epsabs=0, epsrel=1e-12, limit=200)
    direct = (2 * math.pi) ** 2 * val * w * w
    assert math.exp(_slice_log_h3(a, lam, r, math.log(w))) == pytest.approx(direct, rel=1e-9)
    t = invariant_table(W((1, 2, 3)))
    c2, c = float(t.c_at(2)), float(t.c)
    assert slice_limit_check(W((1, 2, 3)), (c2 + c) / 2, depth=40).verdict
    assert not slice_limit_check(W((1, 2, 3)), 1.05 * c, depth=40).verdict


def test_slice_limit_window_on_weighted_pairs():
    rng = np.random.default_rng(12)
    for _ in range(5):
        m = W(tuple(int(x) for x in rng.integers(1, 6, 2)))
        t = invariant_table(m)
        c1 = t.c_at(1)
        gain = openness_gain(c1, 2, t.e[2])
        for frac in (0.2, 0.5, 0.8):
            assert slice_limit_check(m, float(c1 + frac * gain), depth=60).verdict
        assert not slice_limit_check(m, 1.05 * float(t.c)).verdict


def test_slice_limit_errors():
    with pytest.raises(ValueError):
        slice_limit_check(W((1, 2)), 1.2, r=0.6)
    with pytest.raises(ValueError):
        slice_limit_check(W((1, 2)), -1.0)
    with pytest.raises(ValueError):
        slice_limit_check(W((1, 1, 1, 1)), 1.0)
