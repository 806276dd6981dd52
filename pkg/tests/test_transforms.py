import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from levycalc.exponents import exponent
from levycalc.measures import Discrete, JTransformed, LevyTriple, StableMixture
from levycalc.transforms import (general_transform, i_transform, j_alpha, j_power_recursion_step,
                                 partial_integral_triple, shift_polynomial_form, stable_mixture_j,
                                 w_moment)


def test_j_alpha_gaussian_scaling():
    t = j_alpha(LevyTriple(0.0, 9.0, Discrete()), 2.0)
    assert t.gauss_var == pytest.approx(1.0)


def test_j_alpha_shift_examples(atom_e):
    assert j_alpha(atom_e, 1.0).shift == pytest.approx(0.5 / math.e, rel=1e-9)
    assert j_alpha(atom_e, 2.0).shift == pytest.approx(0.75 / math.e, rel=1e-9)


def test_j_alpha_zero_is_identity(poisson):
    assert j_alpha(poisson, 0.0) == poisson


def test_general_transform_examples(gaussian):
    ident = lambda s: s
    t = general_transform(gaussian, ident, ident)
    assert t.gauss_var == pytest.approx(1.0 / 3.0)
    t = general_transform(LevyTriple(0, 0, Discrete(((2.0, 1.0),))), ident, ident)
    assert t.shift == pytest.approx(0.25, abs=1e-9)
    seed = LevyTriple(0.3, 0.7, Discrete(((1.5, 0.4),)))
    t = general_transform(seed, lambda s: np.ones_like(np.asarray(s, dtype=float)), ident)
    for y in (0.5, 2.0):
        assert abs(exponent(t)(y) - exponent(seed)(y)) < 1e-8


def test_general_transform_matches_j_one():
    seed = LevyTriple(0.2, 0.5, Discrete(((2.0, 1.0), (-0.5, 0.3))))
    a = exponent(general_transform(seed, lambda s: s, lambda s: s))
    b = exponent(j_alpha(seed, 1.0))
    for y in (0.3, 1.0, 4.0):
        assert abs(a(y) - b(y)) < 1e-8


def test_partial_integral_examples(poisson):
    t = partial_integral_triple(LevyTriple(0, 3.0, Discrete()), 0.5)
    assert t.gauss_var == pytest.approx(0.875)
    near0 = exponent(partial_integral_triple(poisson, 1e-12))
    full = exponent(j_alpha(poisson, 1.0))
    assert abs(near0(1.3) - full(1.3)) < 1e-8
    assert abs(exponent(partial_integral_triple(poisson, 1 - 1e-12))(1.3)) < 1e-8


def test_partial_integral_factorization(poisson):
    # j_1(mu) = T_c j_1(mu)^{*c} * mu_c on exponents
    c, y = 0.4, 1.7
    j1 = exponent(j_alpha(poisson, 1.0))
    rhs = c * j1(c * y) + exponent(partial_integral_triple(poisson, c))(y)
    assert abs(j1(y) - rhs) < 1e-9


def test_i_transform_examples(stable):
    out = i_transform(stable)
    assert out.measure == StableMixture(((1, 1.0, 1.0),))
    out = i_transform(LevyTriple(0.0, 2.0, Discrete()))
    assert out.gauss_var == pytest.approx(1.0)


def test_stable_mixture_j_examples():
    s = StableMixture(((1, 1.0, 1.0),))
    assert stable_mixture_j(s, 1.0).atoms[0][2] == pytest.approx(0.5)
    assert stable_mixture_j(s, 2.0).atoms[0][2] == pytest.approx(0.25)
    assert stable_mixture_j(s, 0.0) == s


@settings(max_examples=15, deadline=None)
@given(st.floats(0.2, 2.0), st.floats(0.2, 2.0), st.floats(0.3, 1.7))
def test_j_semigroup_on_stable_images(a, b, z):
    seed = LevyTriple(0.1, 0.4, StableMixture(((1, z, 1.0), (-1, 0.8, 0.5))))
    lhs = exponent(j_alpha(j_alpha(seed, a), b))
    rhs = exponent(j_alpha(seed, a + b))
    for y in (0.5, 2.0):
        assert abs(lhs(y) - rhs(y)) <= 1e-8 * max(1.0, abs(rhs(y)))


def test_recursion_and_polynomial_forms():
    seed = LevyTriple(0.3, 1.0, Discrete(((3.0, 1.0), (-0.4, 2.0), (0.9, 0.5))))
    for m in range(1, 5):
        assert shift_polynomial_form(seed, m) == pytest.approx(j_alpha(seed, m).shift, rel=1e-10)
    a = seed.shift
    for m in range(0, 4):
        a = 0.5 * (a + w_moment(seed, m))
        assert a == pytest.approx(j_alpha(seed, m + 1).shift, rel=1e-10)
        assert j_power_recursion_step(seed, m) == pytest.approx(a, rel=1e-10)


def test_j_transformed_is_lazy(poisson):
    assert isinstance(j_alpha(poisson, 1.5).measure, JTransformed)
