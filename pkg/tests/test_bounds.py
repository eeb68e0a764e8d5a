import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rrdps import bounds as bnd
from rrdps.attack import SpectralParams, feasible_region, is_feasible
from rrdps.errors import DomainError
from rrdps.numerics import binary_entropy

# Reference values from an independent 50-digit bisection (mpmath) on the
# stationarity equations and on y^(d-1) + y - 1.
# d: (beta_star, saturated 2 log2 T, beta_zero, saturated I_AE)
GOLDEN = {
    3: (0.118373552556184, 0.747585587769873, 0.138196601125011, 0.694241913630617),
    4: (0.154630904101023, 0.631387085510265, 0.194254004024594, 0.551463089745596),
    5: (0.172510827293045, 0.559966605544256, 0.226256010690299, 0.464958417216209),
    10: (0.203862705248384, 0.397451622509045, 0.292151256845419, 0.278757614255451),
    16: (0.215616615341892, 0.31860009140741, 0.320961309671948, 0.197681794148893),
    22: (0.22143498442182, 0.274711094723024, 0.336289270061877, 0.156351153775464),
    23: (0.222146924525363, 0.269095358295514, 0.33822163692613, 0.151289415254091),
    256: (0.242139320336317, 0.0864176527948132, 0.401604195495888, 0.0233708982460885),
}
Y_ROOTS = {3: 0.618033988749895, 4: 0.682327803828019, 5: 0.724491959000516,
           10: 0.824300563229687, 16: 0.871950538781848}

betas = st.floats(0, 0.5)
dims = st.integers(3, 60)


@pytest.mark.parametrize("d", sorted(GOLDEN))
def test_saturation_golden_values(d):
    bst, sd, b0, iae = GOLDEN[d]
    assert bnd.beta_star(d) == pytest.approx(bst, abs=1e-12)
    assert bnd.statdist_leak(0.5, d) == pytest.approx(sd, abs=1e-12)
    assert bnd.beta_zero(d) == pytest.approx(b0, abs=1e-12)
    assert bnd.i_ae(0.5, d) == pytest.approx(iae, abs=1e-12)


@pytest.mark.parametrize("d", sorted(Y_ROOTS))
def test_y_root(d):
    assert bnd.y_root(d) == pytest.approx(Y_ROOTS[d], abs=1e-12)
    assert abs(bnd.y_polynomial(bnd.y_root(d), d)) <= 1e-13


def test_golden_ratio_special_case():
    assert bnd.y_root(3) == pytest.approx((math.sqrt(5) - 1) / 2, abs=1e-14)


def test_x_equation_forms_and_root():
    for d in (3, 7, 40):
        x = bnd.x_root(d)
        assert 0 < x < 1
        assert abs(bnd.x_equation(x, d)) <= 1e-12
        assert bnd.x_equation(x, d, form="sum") == pytest.approx(bnd.x_equation(x, d))
        assert bnd.beta_star(d) == pytest.approx(x / (2 * (1 + x)))


def test_beta_star_is_argmax_of_zeta():
    # beta_star maximises zeta(2 beta, d)
    for d in (4, 10):
        bs = bnd.beta_star(d)
        grid = np.linspace(0, 0.5 * (d - 2) / (d - 1), 20001)
        vals = bnd.zeta(2 * grid, d)
        assert abs(grid[np.argmax(vals)] - bs) <= 2 * (grid[1] - grid[0])


def test_beta_sat_exact():
    assert bnd.beta_sat(10) == 2 / 9
    assert bnd.beta_sat(3) == 1 / 8


def test_trivial_values_at_zero_noise():
    for d in (3, 5, 30):
        assert bnd.trace_T(0.0, d) == 1.0
        assert bnd.statdist_leak(0.0, d) == 0.0
        assert bnd.i_ae(0.0, d) == 0.0
        assert bnd.min_entropy_leak(0.0, d) == pytest.approx(0.0, abs=1e-15)
        assert bnd.accessible_info(0.0, d) == pytest.approx(0.0, abs=1e-15)


def test_min_entropy_values():
    assert bnd.trace_distance_D(0.1, 4) == pytest.approx(0.529150262212918, abs=1e-13)
    assert bnd.guessing_probability(0.1, 4) == pytest.approx(0.764575131106459, abs=1e-13)
    assert bnd.trace_distance_D(0.5, 5) == pytest.approx(0.5, abs=1e-15)
    assert bnd.accessible_info(0.5, 5) == pytest.approx(0.188721875540867, abs=1e-13)
    assert bnd.min_entropy_leak(0.5, 5) == pytest.approx(0.584962500721156, abs=1e-13)
    for d in (3, 9, 100):
        assert bnd.trace_distance_D(0.5, d) == pytest.approx(1 / math.sqrt(d - 1))


def test_i_ae_below_saturation_matches_objective():
    assert float(bnd.vn_objective(4, 0.1, *bnd.corner_lambdas(0.1, 4))) == pytest.approx(
        0.434851554559677, abs=1e-13)
    assert bnd.i_ae(0.1, 4) == pytest.approx(0.434851554559677, abs=1e-13)


def test_key_length_golden():
    kl = bnd.key_length_for_epsilon(10**6, 0.05, 5, 2.0**-40)
    assert kl.rate == pytest.approx(0.580685962692648, abs=1e-12)
    assert kl.ell == math.floor(10**6 * 0.580685962692648)
    assert kl.extractable


def test_key_length_zero_noise():
    kl = bnd.key_length_for_epsilon(10**6, 0.0, 5, 2e-20)
    assert kl.rate == pytest.approx(1 - 2 * math.log2(1 / 2e-20) / 1e6)
    assert kl.ell == 999869


def test_statdist_bound_hits_epsilon():
    n, d, b, eps = 10**5, 6, 0.05, 1e-6
    kl = bnd.key_length_for_epsilon(n, b, d, eps)
    q = bnd.KeyRateQuery(n, kl.ell, eps, d, b)
    # the norm-one distance is twice the statistical one
    assert 2 * bnd.statdist_bound(q) <= eps * (1 + 1e-9)
    looser = bnd.KeyRateQuery(n, kl.ell + 2, eps, d, b)
    assert 2 * bnd.statdist_bound(looser) > eps


def test_no_key_at_high_noise():
    kl = bnd.key_length_for_epsilon(100, 0.5, 3, 1e-10)
    assert kl.ell == 0 and not kl.extractable and kl.rate < 0


def test_key_rate_query_validation():
    with pytest.raises(DomainError):
        bnd.KeyRateQuery(0, 0, 0.1, 5, 0.1)
    with pytest.raises(DomainError):
        bnd.KeyRateQuery(10, -1, 0.1, 5, 0.1)
    with pytest.raises(DomainError):
        bnd.KeyRateQuery(10, 1, 1.5, 5, 0.1)
    with pytest.raises(DomainError):
        bnd.key_length_for_epsilon(10, 0.1, 5, 0.0)


@pytest.mark.parametrize("fn", [bnd.statdist_leak, bnd.i_ae, bnd.min_entropy_leak,
                                bnd.accessible_info, bnd.trace_T])
def test_domain_errors(fn):
    with pytest.raises(DomainError):
        fn(0.6, 5)
    with pytest.raises(DomainError):
        fn(-0.01, 5)
    with pytest.raises(DomainError):
        fn(0.1, 2)


def test_functions_broadcast():
    b = np.array([0.0, 0.1, 0.5])
    for fn in (bnd.statdist_leak, bnd.i_ae, bnd.min_entropy_leak, bnd.accessible_info):
        out = fn(b, 6)
        assert out.shape == (3,)
        assert out[1] == pytest.approx(fn(0.1, 6))
    assert isinstance(bnd.i_ae(0.1, 6), float)


@given(betas, dims)
def test_leakages_are_bounded(beta, d):
    for fn in (bnd.statdist_leak, bnd.i_ae, bnd.min_entropy_leak, bnd.accessible_info):
        v = fn(beta, d)
        assert -1e-15 <= v <= 1
    # accessible information never exceeds the von Neumann leakage at the same attack
    assert bnd.accessible_info(beta, d) <= bnd.min_entropy_leak(beta, d) + 1e-12


@given(st.floats(0, 0.49), st.floats(0.001, 0.01), dims)
def test_leakages_nondecreasing(beta, delta, d):
    hi = min(beta + delta, 0.5)
    for fn in (bnd.statdist_leak, bnd.i_ae, bnd.min_entropy_leak):
        assert fn(hi, d) >= fn(beta, d) - 1e-14


@given(betas, dims)
def test_leakage_decreases_with_dimension(beta, d):
    assert bnd.i_ae(beta, d + 1) <= bnd.i_ae(beta, d) + 1e-14
    assert bnd.trace_distance_D(beta, d + 1) <= bnd.trace_distance_D(beta, d) + 1e-14


@given(betas, st.integers(3, 40))
def test_optimal_lambdas_feasible_and_attain_bound(beta, d):
    reg = feasible_region(d, beta)
    cases = ((bnd.optimal_lambdas_T, bnd.T_objective, bnd.trace_T),
             (bnd.optimal_lambdas_vn, bnd.vn_objective, bnd.i_ae),
             (bnd.optimal_lambdas_min, bnd.tracedist_objective, bnd.trace_distance_D))
    for lam_fn, obj, closed in cases:
        lp, lm = lam_fn(beta, d)
        assert reg.contains(lp, lm, tol=1e-15)
        assert is_feasible(SpectralParams(d, beta, lp, lm), tol=1e-14)
        assert float(obj(d, beta, lp, lm)) == pytest.approx(float(closed(beta, d)), abs=1e-12)


@given(st.floats(0, 0.5), st.integers(3, 40))
def test_stationary_point_above_saturation(beta, d):
    if beta < bnd.beta_sat(d):
        return
    lp, lm = bnd.tracedist_stationary_point(beta, d)
    assert (lp, lm) == pytest.approx(bnd.optimal_lambdas_min(beta, d), abs=1e-15)


def test_plateaus():
    for d in (4, 9):
        for fn, sat in ((bnd.statdist_leak, bnd.beta_star), (bnd.i_ae, bnd.beta_zero),
                        (bnd.min_entropy_leak, bnd.beta_sat)):
            s = sat(d)
            assert fn(s, d) == pytest.approx(fn(0.5, d), abs=1e-15)
            assert fn(s - 1e-3, d) < fn(0.5, d)


def test_asymptotic_saturation_point():
    for d in (16, 64, 256, 1024):
        err = bnd.beta_star(d) - bnd.asymptotics(d).beta_star
        # next-order term scales as (d-2)^(-3/2)
        assert abs(err) * (d - 2) ** 1.5 <= 0.1
    assert abs(bnd.beta_star(256) - bnd.asymptotics(256).beta_star) <= 0.002


def test_asymptotic_trace_T():
    ratios = []
    for d in (16, 64, 256, 1024, 4096):
        ratios.append((bnd.trace_T(0.5, d) - 1) / (bnd.asymptotics(d).T - 1))
    assert all(0 < r < 1 for r in ratios)
    assert np.all(np.diff(ratios) > 0)
    assert ratios[-1] > 0.99


def test_asymptotic_i_ae_low_noise():
    for d in (16, 64, 256):
        a = bnd.asymptotics(d, beta=0.01)
        assert bnd.i_ae(0.01, d) / a.i_ae_low == pytest.approx(1, abs=1e-3)
    assert bnd.asymptotics(16, beta=0.0).i_ae_low == 0.0


def test_asymptotic_i_ae_saturated():
    # the plateau is log2(d)/d up to a slowly vanishing log log d correction
    ds = [16, 64, 256, 1024, 10**4, 10**5]
    plain = [bnd.i_ae(0.5, d) / bnd.asymptotics(d).i_ae_saturated for d in ds]
    corrected = [bnd.i_ae(0.5, d) * d / (math.log2(d) - math.log2(math.log(d)))
                 for d in ds]
    assert all(0.7 < r < 1 for r in plain)
    assert np.all(np.diff(plain[2:]) > 0)
    assert np.all(np.diff(corrected) < 0)
    assert 1 < corrected[-1] < 1.03


def test_qkd_rate():
    assert bnd.qkd_rate(0.0, 5) == 1.0
    assert bnd.qkd_rate(0.5, 5) == 0.0
    r = bnd.qkd_rate(0.05, 10)
    assert r == pytest.approx(1 - binary_entropy(0.05) - bnd.i_ae(0.05, 10))


def test_prior_bounds():
    p = bnd.prior_bounds(0.1, 16)
    assert p.syk == pytest.approx(binary_entropy(1 / 15))
    assert p.sk2017 == pytest.approx(binary_entropy(0.2 / 14))
    assert p.intercept_resend_lower == pytest.approx(1 - binary_entropy(0.5 + 1 / 16))
    assert bnd.prior_bounds(0.49, 16).sk2017 == pytest.approx(p.syk)


def test_leakage_report():
    rep = bnd.leakage_report(0.5, 10)
    assert rep.beta_sat == 2 / 9
    assert all(rep.saturated.values())
    d = rep.as_dict()
    assert d["i_ae"] == pytest.approx(bnd.i_ae(0.5, 10))
    assert set(d["optimal_lambdas"]) == {"statdist", "vn", "min_entropy"}
    zero = bnd.leakage_report(0.0, 5)
    assert not any(zero.saturated.values())
    assert zero.statdist_leak == zero.i_ae == 0.0


def test_sign_changes():
    assert bnd.sign_changes(np.sin, np.linspace(0.1, 10, 100)) == 3
