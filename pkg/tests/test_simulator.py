import numpy as np
import pytest
from scipy import stats

from levycalc.errors import UnsupportedSeed
from levycalc.exponents import exponent
from levycalc.measures import Discrete, LevyTriple
from levycalc.simulator import (cf_agreement, empirical_cf, sample_integral_exact,
                                sample_integral_rs)
from levycalc.transforms import j_alpha

ident = lambda s: s


def test_drift_only_is_deterministic():
    b = sample_integral_exact(LevyTriple(1.0, 0.0, Discrete()), 1.0, 1000, 1)
    assert np.all(b.values == 0.5)


def test_gaussian_variance():
    b = sample_integral_exact(LevyTriple(0.0, 1.0, Discrete()), 1.0, 10 ** 6, 2)
    v = b.values.var()
    assert abs(v - 1 / 3) < 3 * v * np.sqrt(2 / 10 ** 6)


def test_poisson_ecf_matches_analytic(poisson):
    b = sample_integral_exact(poisson, 1.0, 10 ** 6, 3)
    ys = np.linspace(-5, 5, 20)
    ecf = empirical_cf(b, ys)
    frac, _ = cf_agreement(ecf, np.exp(exponent(j_alpha(poisson, 1.0))(ys)))
    assert frac >= 19 / 20


def test_exact_sampler_is_thread_invariant(poisson):
    a = sample_integral_exact(poisson, 1.5, 200_000, 9, threads=1).values
    b = sample_integral_exact(poisson, 1.5, 200_000, 9, threads=4).values
    assert np.array_equal(a, b)


def test_exact_sampler_rejects_stable(stable):
    with pytest.raises(UnsupportedSeed):
        sample_integral_exact(stable, 1.0, 10, 0)


def test_rs_drift_only():
    b = sample_integral_rs(LevyTriple(1.0, 0.0, Discrete()), ident, ident, 1000, 10, 0)
    assert np.allclose(b.values, 0.5, atol=2e-3)


def test_rs_gaussian_variance():
    b = sample_integral_rs(LevyTriple(0.0, 1.0, Discrete()), ident, ident, 2048, 40_000, 4)
    assert abs(b.values.var() - 1 / 3) < 0.01 / 3 + 3 * (1 / 3) * np.sqrt(2 / 40_000)


@pytest.mark.slow
def test_rs_matches_exact_in_distribution(poisson):
    rs = sample_integral_rs(poisson, ident, ident, 4096, 10 ** 5, 5).values
    ex = sample_integral_exact(poisson, 1.0, 10 ** 5, 6).values
    assert stats.ks_2samp(rs, ex).statistic < 0.01


def test_empirical_cf_examples():
    ecf = empirical_cf(np.full(50, 0.5), [0.0, np.pi])
    assert ecf.values[0] == 1.0
    assert abs(ecf.values[1] - 1j) < 1e-15
