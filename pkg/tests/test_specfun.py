import numpy as np
import pytest
import scipy.special as sc
from hypothesis import given, settings, strategies as st

from pittka import specfun
from pittka.errors import DomainError


def test_log_gamma_and_digamma_against_scipy():
    x = np.linspace(0.1, 30, 50)
    assert np.allclose(specfun.log_gamma(x), sc.gammaln(x), rtol=1e-14)
    assert np.allclose(specfun.digamma(x), sc.digamma(x), rtol=1e-14)


def test_gamma_ratio_large_arguments():
    # Gamma(x+1)/Gamma(x) = x even where Gamma overflows
    assert specfun.gamma_ratio(400.5, 399.5) == pytest.approx(399.5, rel=1e-12)


def test_normalized_bessel_at_zero_and_half_orders():
    assert specfun.normalized_bessel(1.3, 0.0) == 1.0
    t = np.linspace(0.01, 20, 40)
    assert np.allclose(specfun.normalized_bessel(-0.5, t), np.cos(t), atol=1e-14)
    assert np.allclose(specfun.normalized_bessel(0.5, t), np.sin(t) / t, atol=1e-14)


@settings(max_examples=40, deadline=None)
@given(st.floats(-0.5, 6.0), st.floats(0.0, 60.0))
def test_normalized_bessel_bounded_by_one(lam, t):
    assert abs(specfun.normalized_bessel(lam, t)) <= 1 + 1e-12


def test_series_and_asymptotic_branches_agree_with_scipy():
    assert specfun.bessel_j_series(1.5, 2.0) == pytest.approx(sc.jv(1.5, 2.0), rel=1e-13)
    assert specfun.bessel_j_asymptotic(0.7, 80.0) == pytest.approx(sc.jv(0.7, 80.0), rel=1e-10)


def test_bessel_derivative():
    t = np.linspace(0.5, 10, 20)
    assert np.allclose(specfun.bessel_j_derivative(2.5, t), sc.jvp(2.5, t), atol=1e-14)
    with pytest.raises(DomainError):
        specfun.bessel_j_derivative(0.5, 0.0)


@pytest.mark.parametrize("s", [0, 1, 2, 5])
@pytest.mark.parametrize("lam", [-0.5, 0.0, 1.5])
def test_laguerre_recurrence_matches_sum_and_scipy(s, lam):
    t = np.linspace(0, 10, 25)
    rec = specfun.laguerre(s, lam, t)
    assert np.allclose(rec, specfun.laguerre_sum(s, lam, t), rtol=1e-10, atol=1e-10)
    assert np.allclose(rec, sc.eval_genlaguerre(s, lam, t), rtol=1e-10, atol=1e-10)
