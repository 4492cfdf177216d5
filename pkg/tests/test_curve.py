import cmath
import math
import random

import pytest

from bridgetorsion.curve import (
    Dual,
    LimitConfig,
    continue_riley_curve,
    double_zero_profile,
    evaluate_F,
    fitted_local_form,
    metabelian_pairing,
    riley_residual,
    trace_longitude,
    trace_samples,
)
from bridgetorsion.errors import (
    EstimateDisagreement,
    NewtonDivergence,
    SingularPoint,
    ZeroParameter,
)
from bridgetorsion.reps import metabelian_u
from bridgetorsion.words import normalize_two_bridge

CENSUS = [(p, q) for p in range(3, 16, 2) for q in range(1, p, 2) if math.gcd(p, q) == 1]


# -- dual numbers -----------------------------------------------------------------


def test_dual_arithmetic():
    a = Dual(2.0, 1.0, 0.0)  # u-variable
    b = Dual(3.0, 0.0, 1.0)  # s-variable
    prod = a * b
    assert (prod.val, prod.du, prod.ds) == (6.0, 3.0, 2.0)
    quot = a / b
    assert abs(quot.val - 2 / 3) < 1e-15
    assert abs(quot.du - 1 / 3) < 1e-15
    assert abs(quot.ds + 2 / 9) < 1e-15


def test_dual_sqrt_derivative():
    x = Dual(4.0, 1.0, 0.0)
    r = x.sqrt(cmath.sqrt)
    assert abs(r.val - 2.0) < 1e-15
    assert abs(r.du - 0.25) < 1e-15


# -- Riley residual -------------------------------------------------------------------


def test_residual_vanishes_at_metabelian_points():
    fig8 = normalize_two_bridge(5, 3)
    for k in (1, 2):
        val, _, _ = riley_residual(fig8, -1.0, metabelian_u(5, k))
        assert abs(val) < 1e-9
    for p, q in CENSUS:
        knot = normalize_two_bridge(p, q)
        for k in range(1, (p - 1) // 2 + 1):
            val, _, _ = riley_residual(knot, -1.0, metabelian_u(p, k))
            assert abs(val) < 1e-8, (p, q, k)


def test_residual_nonzero_off_variety():
    knot = normalize_two_bridge(5, 3)
    rng = random.Random(41)
    for _ in range(10):
        s = complex(rng.uniform(-2, -0.5), rng.uniform(0.1, 1))
        u = complex(rng.uniform(1, 3), rng.uniform(0.5, 2))
        val, _, _ = riley_residual(knot, s, u)
        assert abs(val) > 1e-6


def test_residual_derivatives_match_finite_differences():
    knot = normalize_two_bridge(7, 3)
    s, u = -0.95, metabelian_u(7, 2) + 0.05
    val, du, ds = riley_residual(knot, s, u)
    eps = 1e-6
    fd_u = (riley_residual(knot, s, u + eps)[0] - riley_residual(knot, s, u - eps)[0]) / (2 * eps)
    fd_s = (riley_residual(knot, s + eps, u)[0] - riley_residual(knot, s - eps, u)[0]) / (2 * eps)
    assert abs(du - fd_u) < 1e-6 * max(1, abs(du))
    assert abs(ds - fd_s) < 1e-6 * max(1, abs(ds))


def test_residual_zero_parameter():
    with pytest.raises(ZeroParameter):
        riley_residual(normalize_two_bridge(5, 3), 0.0, 1.0)


def test_branch_independence():
    knot = normalize_two_bridge(7, 5)
    s, u = -0.97, metabelian_u(7, 1) + 0.02
    v1 = riley_residual(knot, s, u, branch=1)[0]
    v2 = riley_residual(knot, s, u, branch=-1)[0]
    assert abs(v1 - v2) < 1e-10 * max(1, abs(v1))
    t1 = trace_longitude(knot, s, u, branch=1)
    t2 = trace_longitude(knot, s, u, branch=-1)
    assert abs(t1 - t2) < 1e-10 * max(1, abs(t1))


# -- pairing ---------------------------------------------------------------------------


def test_pairing_examples():
    assert metabelian_pairing(5, 1) == 2
    assert metabelian_pairing(5, 2) == 1
    assert metabelian_pairing(3, 1) == 1
    assert metabelian_pairing(7, 1) == 3
    assert metabelian_pairing(7, 2) == 1
    assert metabelian_pairing(7, 3) == 2


def test_pairing_is_a_bijection():
    for p in range(3, 16, 2):
        images = [metabelian_pairing(p, k) for k in range(1, (p - 1) // 2 + 1)]
        assert sorted(images) == list(range(1, (p - 1) // 2 + 1))
        for k, kp in zip(range(1, (p - 1) // 2 + 1), images):
            assert (2 * kp - k) % p == 0 or (2 * kp + k) % p == 0


# -- longitude trace -------------------------------------------------------------------


def test_longitude_trace_at_metabelian_points():
    for p, q in ((5, 3), (7, 3), (9, 7), (13, 9)):
        knot = normalize_two_bridge(p, q)
        for k in range(1, (p - 1) // 2 + 1):
            t = trace_longitude(knot, -1.0, metabelian_u(p, k))
            assert abs(t - 2) < 1e-8


def test_figure_eight_local_form_along_curve():
    # I_lambda - 2 = -I_mu^2 (-I_mu^2 + 5) with I_mu^2 = I_mu_hat + 2
    knot = normalize_two_bridge(5, 3)
    for kp in (1, 2):
        for h in (0.02, 0.01, 0.005):
            pt = continue_riley_curve(knot, kp, h)
            s = pt.s
            imu2 = s + 1 / s + 2
            lam = trace_longitude(knot, s, pt.u)
            expected = -imu2 * (-imu2 + 5)
            assert abs((lam - 2) - expected) < 1e-8 * max(1, abs(expected))


def test_torus_longitude_closed_form_along_curve():
    # I_lambda = -(M^q + M^-q) with M, 1/M the eigenvalues of the mu-hat matrix,
    # i.e. -(s^q + s^-q) along the Riley curve of b(q, 1)
    for q in (3, 5, 7):
        knot = normalize_two_bridge(q, 1)
        for k in range(1, (q - 1) // 2 + 1):
            pt = continue_riley_curve(knot, k, 0.004)
            lam = trace_longitude(knot, pt.s, pt.u)
            expected = -(pt.s ** q + pt.s ** (-q))
            assert abs(lam - expected) < 1e-9 * max(1, abs(expected)), (q, k)


# -- continuation ---------------------------------------------------------------------


def test_continuation_h_zero_returns_seed():
    knot = normalize_two_bridge(7, 3)
    pt = continue_riley_curve(knot, 2, 0.0)
    assert pt.s == -1.0
    assert abs(pt.u - metabelian_u(7, 2)) < 1e-15
    assert pt.residual < 1e-10


def test_continuation_small_step():
    knot = normalize_two_bridge(5, 3)
    pt = continue_riley_curve(knot, 1, 1e-3)
    assert abs(pt.s - (-1 + 1e-3)) < 1e-15
    val, _, _ = riley_residual(knot, pt.s, pt.u)
    assert abs(val) < 1e-10


def test_torus_curves_smooth_at_metabelian_points():
    for q in (3, 5, 7, 9):
        knot = normalize_two_bridge(q, 1)
        for k in range(1, (q - 1) // 2 + 1):
            _, du, _ = riley_residual(knot, -1.0, metabelian_u(q, k))
            assert abs(du) > 1e-8


def test_singular_guard_and_newton_budget():
    knot = normalize_two_bridge(5, 3)
    with pytest.raises(SingularPoint):
        continue_riley_curve(knot, 1, 1e-3, cfg=LimitConfig(singular_tol=1e3))
    with pytest.raises(NewtonDivergence):
        continue_riley_curve(knot, 1, 1e-2, cfg=LimitConfig(max_newton_iter=1))


# -- the double zero and the limit F -----------------------------------------------------


def test_double_zero_structure():
    knot = normalize_two_bridge(7, 3)
    rows = double_zero_profile(knot, 2)
    gaps = [abs(row[1]) for row in rows]  # I_lambda - 2 -> 0, quadratically in h
    assert all(a < b for a, b in zip(gaps, gaps[1:]))
    assert gaps[0] < 1e-4
    assert gaps[0] < gaps[-1] / 100  # four halvings of h: factor ~256
    ratios = [row[2] for row in rows]  # converges to a finite nonzero limit
    assert abs(ratios[0]) > 1e-3
    assert abs(ratios[0] - ratios[1]) < abs(ratios[-1] - ratios[-2])


def test_trace_samples_approach_metabelian_values():
    knot = normalize_two_bridge(9, 5)
    rows = trace_samples(knot, 3)
    h0, first = rows[0]
    assert h0 == min(h for h, _ in rows)
    assert abs(first.i_mu_hat + 2) < 1e-5
    assert abs(first.i_lambda - 2) < 1e-3
    gaps_mu = [abs(s.i_mu_hat + 2) for _, s in rows]
    gaps_lam = [abs(s.i_lambda - 2) for _, s in rows]
    assert all(a < b for a, b in zip(gaps_mu, gaps_mu[1:]))
    assert all(a < b for a, b in zip(gaps_lam, gaps_lam[1:]))


def test_evaluate_F_figure_eight():
    knot = normalize_two_bridge(5, 3)
    for kp in (1, 2):
        est = evaluate_F(knot, kp)
        assert abs(est.value - 0.2) < 1e-6
        assert est.rel_disagreement < 1e-5


def test_evaluate_F_torus():
    for q in (3, 5, 7):
        knot = normalize_two_bridge(q, 1)
        for kp in range(1, (q - 1) // 2 + 1):
            est = evaluate_F(knot, kp)
            assert abs(est.value - 1 / q ** 2) < 1e-5 / q ** 2, (q, kp)


def test_fitted_local_form_figure_eight():
    knot = normalize_two_bridge(5, 3)
    for kp in (1, 2):
        h = fitted_local_form(knot, kp)
        assert abs(h - 5.0) < 1e-4


def test_estimate_disagreement_raises():
    knot = normalize_two_bridge(5, 3)
    with pytest.raises(EstimateDisagreement) as info:
        evaluate_F(knot, 1, LimitConfig(cross_tol=1e-18))
    assert info.value.ratio_value is not None
    assert info.value.direct_value is not None


def test_mu_muhat_change_of_variable_identity():
    # 4 (I_lam^2-4)/(I_mu^2-4) (dI_mu/dI_lam)^2 = (I_lam^2-4)/(I_muhat^2-4) (dI_muhat/dI_lam)^2
    knot = normalize_two_bridge(5, 3)
    kp = 1
    for h in (0.05, 0.02):
        delta = h / 200
        pts = {}
        seed = None
        for hh in (h - delta, h, h + delta):
            pt = continue_riley_curve(knot, kp, hh, seed=seed)
            seed = pt.u
            pts[hh] = pt

        def imu(s):
            r = cmath.sqrt(s)
            return r + 1 / r

        def imuhat(s):
            return s + 1 / s

        lam = {hh: trace_longitude(knot, pt.s, pt.u) for hh, pt in pts.items()}
        d_lam = lam[h + delta] - lam[h - delta]
        d_mu = imu(pts[h + delta].s) - imu(pts[h - delta].s)
        d_muhat = imuhat(pts[h + delta].s) - imuhat(pts[h - delta].s)
        s0 = pts[h].s
        lam0 = lam[h]
        lhs = 4 * (lam0 ** 2 - 4) / (imu(s0) ** 2 - 4) * (d_mu / d_lam) ** 2
        rhs = (lam0 ** 2 - 4) / (imuhat(s0) ** 2 - 4) * (d_muhat / d_lam) ** 2
        assert abs(lhs - rhs) < 1e-5 * max(abs(lhs), abs(rhs))
