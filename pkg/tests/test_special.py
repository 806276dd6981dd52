import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from levycalc.special import (g_char_fn, g_char_fn_quad, g_moment, g_partial_moment,
                              incomplete_gamma, incomplete_gamma_int, sample_g, tau_cdf,
                              tau_density)

alphas = st.floats(0.05, 6.0)


def test_incomplete_gamma_examples():
    for x in (0.0, 0.3, 2.5, 10.0):
        assert incomplete_gamma(1.0, x) == pytest.approx(math.exp(-x), rel=1e-13)
    assert incomplete_gamma(2.0, 1.0) == pytest.approx(0.7357588823428847, rel=1e-13)
    assert incomplete_gamma(0.5, 0.0) == pytest.approx(math.sqrt(math.pi), rel=1e-13)


@pytest.mark.parametrize("m", range(1, 7))
@pytest.mark.parametrize("x", [0.0, 0.1, 1.0, 4.0, 20.0])
def test_integer_incomplete_gamma_matches_mpmath(m, x):
    ref = float(mp.gammainc(m, a=x))
    assert incomplete_gamma_int(m, x) == pytest.approx(ref, rel=1e-12, abs=1e-300)


def test_tau_cdf_examples():
    assert tau_cdf(1.0, 0.37) == pytest.approx(0.37)
    assert tau_cdf(2.0, 0.5) == pytest.approx(0.5 - 0.5 * math.log(0.5), rel=1e-12)
    assert tau_cdf(3.3, 1.0) == pytest.approx(1.0)


@given(alphas, st.floats(0.0, 1.0), st.floats(0.0, 1.0))
def test_tau_cdf_is_a_distribution_function(alpha, s, t):
    lo, hi = min(s, t), max(s, t)
    a, b = tau_cdf(alpha, lo), tau_cdf(alpha, hi)
    assert -1e-12 <= a <= b + 1e-12 <= 1.0 + 2e-12


def test_tau_density_integrates_to_cdf():
    from scipy.integrate import quad
    val, _ = quad(lambda t: tau_density(2.5, t), 0.0, 0.6)
    assert val == pytest.approx(tau_cdf(2.5, 0.6), rel=1e-9)


def test_g_moment_examples():
    assert g_moment(1.0, 1.0) == pytest.approx(0.5)
    assert g_moment(2.0, 1.0) == pytest.approx(0.25)
    assert g_moment(3.7, 0.0) == pytest.approx(1.0)


@given(alphas, st.floats(0.0, 5.0))
def test_g_moment_closed_form(alpha, s):
    assert g_moment(alpha, s) == pytest.approx((s + 1.0) ** -alpha, rel=1e-10)


def test_g_partial_moment_examples():
    assert g_partial_moment(1.0, 1.0, 0.5) == pytest.approx(0.125, rel=1e-12)
    assert g_partial_moment(2.0, 0.0, 0.5) == pytest.approx(0.8465735903, rel=1e-9)
    assert g_partial_moment(1.5, 2.0, 1.0) == pytest.approx(3.0 ** -1.5, rel=1e-12)


def test_g_char_fn_examples():
    assert g_char_fn(2.0, 0.0) == 1.0
    for t in (0.3, 1.0, 7.5):
        assert g_char_fn(1.0, t) == pytest.approx((np.exp(1j * t) - 1) / (1j * t), rel=1e-12)
    # g_2 has density -ln x on (0, 1)
    ref = complex(mp.quad(lambda x: -mp.log(x) * mp.exp(1j * x), [0, 1]))
    assert abs(g_char_fn(2.0, 1.0) - ref) < 1e-13


@settings(max_examples=30, deadline=None)
@given(st.floats(0.2, 5.0), st.floats(-40.0, 40.0))
def test_g_char_fn_series_matches_quadrature(alpha, t):
    assert abs(g_char_fn(alpha, t) - g_char_fn_quad(alpha, t)) < 1e-9


def test_sample_g_moments():
    rng = np.random.default_rng(7)
    for alpha, mean in ((1.0, 0.5), (2.0, 0.25)):
        x = sample_g(alpha, rng, 10 ** 6)
        assert np.all((x > 0) & (x < 1))
        assert abs(x.mean() - mean) < 3 * x.std() / 1e3
