import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from anyonstats import (
    DomainError,
    SizeError,
    TruncatedSeries,
    closed_form_a,
    eval_series,
    forward_value,
    leading_coefficient,
    revert_series,
    rhs_series,
    solve_occupation,
)

A0_HALF = math.pi / 2 - 1
A2_HALF = A0_HALF - math.pi**3 / 48


# --- TruncatedSeries ---------------------------------------------------------------

def test_series_arithmetic():
    p = TruncatedSeries([1.0, 2.0, 3.0])
    q = TruncatedSeries([2.0, -1.0])
    assert (p + q).coefficients.tolist() == [3.0, 1.0]
    assert (p * q).coefficients.tolist() == [2.0, 3.0]
    assert (p - 1).coefficients.tolist() == [0.0, 2.0, 3.0]
    assert (3 - p).coefficients.tolist() == [2.0, -2.0, -3.0]
    assert (p * 2).coefficients.tolist() == [2.0, 4.0, 6.0]
    assert (p**0).coefficients.tolist() == [1.0, 0.0, 0.0]
    assert (p**2).coefficients.tolist() == [1.0, 4.0, 10.0]
    assert p(2.0) == 17.0


def test_series_division_inverts_multiplication():
    p = TruncatedSeries([1.0, 0.5, -0.25, 2.0, 1.0])
    q = TruncatedSeries([3.0, 1.0, 0.0, -1.0, 0.5])
    np.testing.assert_allclose(((p * q) / q).coefficients, p.coefficients, rtol=1e-14, atol=1e-14)
    geo = 1.0 / TruncatedSeries([1.0, -1.0], 6)
    assert geo.coefficients.tolist() == [1.0] * 7


def test_series_division_by_zero_constant():
    with pytest.raises(DomainError):
        TruncatedSeries([1.0, 1.0]) / TruncatedSeries([0.0, 1.0])


def test_series_compose_exp_of_log():
    K = 10
    z = TruncatedSeries.variable(K)
    log1p = TruncatedSeries([0.0] + [(-1) ** (k + 1) / k for k in range(1, K + 1)])
    exp = TruncatedSeries([1.0 / math.factorial(k) for k in range(K + 1)])
    np.testing.assert_allclose(exp.compose(log1p).coefficients, (1 + z).coefficients, atol=1e-14)
    with pytest.raises(DomainError):
        exp.compose(exp)


def test_series_immutable_and_sized():
    p = TruncatedSeries([1.0, 2.0], order=4)
    assert p.order == 4 and len(p) == 5
    with pytest.raises(ValueError):
        p.coefficients[0] = 3.0
    with pytest.raises(SizeError):
        TruncatedSeries([])
    with pytest.raises(DomainError):
        p ** -1


# --- forward coefficients ------------------------------------------------------------

def test_half_values():
    a = rhs_series(0.5, 12).a
    assert abs(a[0] - A0_HALF) <= 1e-12
    assert abs(a[2] - A2_HALF) <= 1e-12
    assert closed_form_a(0.5, 0) == pytest.approx(A0_HALF, abs=1e-15)
    assert closed_form_a(0.5, 1) == pytest.approx(1 - math.pi / 2, abs=1e-15)
    # frozen from the 60-digit oracle
    assert a[2] == pytest.approx(-0.075167770711349634, abs=1e-15)


def test_matches_closed_forms(alpha_grid_21):
    for alpha in alpha_grid_21:
        a = rhs_series(alpha, 6).a
        for k in range(4):
            assert abs(a[k] - closed_form_a(alpha, k)) <= 1e-10


@pytest.mark.parametrize("alpha", [0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99, 1.0])
def test_matches_high_precision_oracle(alpha):
    ref, _ = oracles.a_coefficients(alpha, 20)
    got = rhs_series(alpha, 20).a
    for k in range(21):
        assert abs(got[k] - ref[k]) <= 1e-13 * max(1.0, abs(ref[k])), k


@given(alpha=st.floats(min_value=1e-3, max_value=1.0))
@settings(max_examples=40, deadline=None)
def test_leading_coefficients_property(alpha):
    ref, _ = oracles.a_coefficients(alpha, 3)
    got = rhs_series(alpha, 3).a
    assert np.allclose(got, ref, rtol=1e-12, atol=1e-13)


def test_bose_point():
    s = rhs_series(0.0, 5)
    assert s.a == (1.0, 0.0, 0.0, 0.0, 0.0, 0.0)
    assert [closed_form_a(0.0, k) for k in range(4)] == [1.0, 0.0, 0.0, 0.0]


def test_limits():
    a = rhs_series(1e-4, 3).a
    assert abs(a[0] - 1) <= 1e-3
    assert max(abs(v) for v in a[1:]) <= 1e-3
    assert abs(rhs_series(1 - 1e-4, 0).a[0] + 1) <= 1e-3
    assert leading_coefficient(1.0) == -1.0
    assert rhs_series(1.0, 0).a[0] == -1.0


def test_order_validation():
    with pytest.raises(SizeError):
        rhs_series(0.3, -1)
    with pytest.raises(SizeError):
        closed_form_a(0.3, 4)
    assert rhs_series(0.3, 0).K == 0


# --- reversion ------------------------------------------------------------------------

def test_reversion_identities(random_alphas):
    for alpha in random_alphas:
        a = rhs_series(alpha, 8).a
        rev = revert_series(rhs_series(alpha, 8), 7)
        assert rev[1] == 1.0
        assert rev[2] == 0.0
        checks = [
            (rev[3], a[1]),
            (rev[4], a[2]),
            (rev[5], 2 * a[1] ** 2 + a[3]),
            (rev[6], 5 * a[1] * a[2] + a[4]),
            (rev[7], 5 * a[1] ** 3 + 6 * a[1] * a[3] + 3 * a[2] ** 2 + a[5]),
        ]
        for got, want in checks:
            assert abs(got - want) <= 1e-12


@pytest.mark.parametrize("alpha", [0.05, 0.3, 0.5, 0.7, 0.9, 1.0])
def test_reversion_matches_fixed_point_oracle(alpha):
    ref = oracles.reverted(alpha, 14)
    got = revert_series(rhs_series(alpha, 14), 14).alpha
    for k, (g, r) in enumerate(zip(got, ref), 1):
        assert abs(g - r) <= 1e-12 * max(1.0, abs(r)), k


def test_reversion_size_checks():
    with pytest.raises(SizeError):
        revert_series(rhs_series(0.3, 4), 7)
    with pytest.raises(SizeError):
        revert_series(rhs_series(0.3, 4), 0)
    assert revert_series(rhs_series(0.3, 5), 7).K == 7


def test_bose_reversion_vanishes():
    rev = revert_series(rhs_series(0.0, 12), 12)
    assert rev.alpha == (1.0,) + (0.0,) * 11


def test_small_alpha_reversion_bound():
    rev = revert_series(rhs_series(1e-3, 12), 12)
    assert max(abs(v) for v in rev.alpha[2:]) <= 1e-5


def test_reverted_index_bounds():
    rev = revert_series(rhs_series(0.3, 5), 5)
    with pytest.raises(IndexError):
        rev[0]
    with pytest.raises(IndexError):
        rev[6]


# --- evaluation -----------------------------------------------------------------------

def test_eval_series_bose():
    rev = revert_series(rhs_series(0.0, 10), 10)
    t = math.log(2.0)
    assert eval_series(rev, math.exp(t) - 1) == pytest.approx(1.0, rel=1e-15)


def test_eval_series_asymptotics():
    rev = revert_series(rhs_series(0.4, 10), 10)
    g = 1e6
    assert eval_series(rev, g) == pytest.approx(1 / g, rel=1e-11)
    with pytest.raises(DomainError):
        eval_series(rev, 0.0)


def test_eval_series_against_solver_half():
    rev = revert_series(rhs_series(0.5, 10), 10)
    g = math.exp(3) - A0_HALF
    assert abs(eval_series(rev, g) - solve_occupation(3.0, 0.5).n) <= 1e-6
    assert abs(eval_series(rev, g) - 0.051166250788976404) <= 1e-6


def _round_trip_error(alpha, K, ts):
    coeffs = rhs_series(alpha, K)
    rev = revert_series(coeffs, K)
    worst = 0.0
    for t in ts:
        n = eval_series(rev, math.exp(t) - coeffs[0])
        worst = max(worst, abs(forward_value(coeffs, n) - math.exp(t)) / math.exp(t))
    return worst


# At K = 10 the truncation error alpha_11 / g**11 alone exceeds 1e-8 relative
# for alpha >= 1/2 just above t = 2; the error falls off quickly with K.
_K10_SHORT = pytest.mark.xfail(strict=True, reason="K = 10 truncation error exceeds 1e-8 near t = 2")


@pytest.mark.parametrize("alpha", [
    0.05, 0.2, 0.4, 0.45,
    pytest.param(0.5, marks=_K10_SHORT),
    pytest.param(0.6, marks=_K10_SHORT),
    pytest.param(0.8, marks=_K10_SHORT),
    pytest.param(0.95, marks=_K10_SHORT),
])
def test_round_trip_order_10(alpha):
    assert _round_trip_error(alpha, 10, np.linspace(2.0, 10.0, 81)) <= 1e-8


@pytest.mark.parametrize("alpha", [0.5, 0.6, 0.8, 0.95])
def test_round_trip_order_10_from_t_2_5(alpha):
    assert _round_trip_error(alpha, 10, np.linspace(2.5, 10.0, 76)) <= 1e-8


@pytest.mark.parametrize("alpha", [0.05, 0.2, 0.4, 0.5, 0.6, 0.8, 0.95, 0.99])
def test_round_trip_order_14(alpha):
    assert _round_trip_error(alpha, 14, np.linspace(2.0, 10.0, 81)) <= 1e-8


def test_forward_value_pole():
    with pytest.raises(DomainError):
        forward_value(rhs_series(0.3, 3), 0.0)
