import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from levycalc.errors import InvalidMeasure
from levycalc.exponents import exponent
from levycalc.measures import (Discrete, ITransformed, JTransformed, LevyTriple, StableMixture,
                               SumMeasure, cofactor_exponent_check, conv_power, convolve, dilate,
                               spectral_function, validate_measure)

atom = st.tuples(st.floats(-5, 5).filter(lambda x: abs(x) > 0.05), st.floats(0.01, 3))
discrete = st.lists(atom, min_size=0, max_size=4).map(lambda a: Discrete(tuple(a)))
stable = st.lists(st.tuples(st.sampled_from((1, -1)), st.floats(0.2, 1.8), st.floats(0.1, 2)),
                  min_size=1, max_size=3).map(lambda a: StableMixture(tuple(a)))
triples = st.builds(LevyTriple, st.floats(-3, 3), st.floats(0, 3), st.one_of(discrete, stable))
ys = st.floats(-6, 6)


def test_validation_examples():
    assert validate_measure(Discrete(((1.0, 2.0),))).integrability == pytest.approx(2.0)
    rep = validate_measure(StableMixture(((1, 1.0, 1.0),)))
    assert rep.small_second_moment == pytest.approx(1.0)
    assert rep.integrability == pytest.approx(2.0)
    rep = validate_measure(ITransformed(Discrete(((1.0, 1.0),))))
    assert rep.passed and rep.log_moment == 0


@pytest.mark.parametrize("bad", [((0.0, 1.0),), ((1.0, -1.0),), ((math.inf, 1.0),)])
def test_invalid_atoms(bad):
    with pytest.raises(InvalidMeasure):
        Discrete(bad)


def test_invalid_stable_index():
    with pytest.raises(InvalidMeasure):
        StableMixture(((1, 2.0, 1.0),))
    with pytest.raises(InvalidMeasure):
        LevyTriple(0.0, -1.0, Discrete())


def test_spectral_function_examples():
    L = spectral_function(StableMixture(((1, 1.0, 1.0),)))
    assert L(1, 2.0) == pytest.approx(-0.5)
    L = spectral_function(Discrete(((2.0, 1.0),)))
    assert L(1, 1.0) == -1.0 and L(-1, 1.0) == 0.0
    L = spectral_function(JTransformed(Discrete(((2.0, 1.0),)), 1.0))
    assert L(1, 1.0) == pytest.approx(-0.5, abs=1e-10)


def test_i_transformed_tail_is_log():
    L = spectral_function(ITransformed(Discrete(((1.0, 1.0),))))
    assert L(1, math.exp(-1)) == pytest.approx(-1.0, abs=1e-10)
    assert L(1, 0.2) == pytest.approx(math.log(0.2), abs=1e-10)


def test_triple_algebra_examples():
    t = conv_power(LevyTriple(1.0, 2.0, Discrete()), 3.0)
    assert (t.shift, t.gauss_var) == (3.0, 6.0)
    assert dilate(LevyTriple(0.0, 1.0, Discrete()), -2.0).gauss_var == 4.0
    t = dilate(LevyTriple(0.0, 0.0, Discrete(((2.0, 1.0),))), 0.25)
    assert t.measure.atoms == ((0.5, 1.0),)
    # the exponent must satisfy Phi_{T_d mu}(y) = Phi_mu(d y); this fixes the sign at +0.5
    assert t.shift == pytest.approx(0.5)


@settings(max_examples=40, deadline=None)
@given(triples, st.floats(-4, 4).filter(lambda d: abs(d) > 0.1), ys)
def test_dilate_commutes_with_exponent(t, d, y):
    lhs = exponent(dilate(t, d))(y)
    rhs = exponent(t)(d * y)
    assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(rhs))


@settings(max_examples=40, deadline=None)
@given(triples, triples, st.floats(0.1, 5), ys)
def test_convolution_algebra(t1, t2, s, y):
    e1, e2 = exponent(t1)(y), exponent(t2)(y)
    assert abs(exponent(convolve(t1, t2))(y) - (e1 + e2)) <= 1e-9 * max(1, abs(e1) + abs(e2))
    assert abs(exponent(conv_power(t1, s))(y) - s * e1) <= 1e-9 * max(1, s * abs(e1))


def test_convolve_transformed_gives_formal_sum():
    a = LevyTriple(0, 0, JTransformed(Discrete(((2.0, 1.0),)), 1.0))
    b = LevyTriple(0, 0, ITransformed(Discrete(((1.5, 1.0),))))
    c = convolve(a, b)
    assert isinstance(c.measure, SumMeasure)
    assert c.measure.tail(1, 0.5) == pytest.approx(a.measure.tail(1, 0.5) + b.measure.tail(1, 0.5))


@settings(max_examples=40, deadline=None)
@given(st.one_of(discrete, stable), st.floats(0.01, 50), st.floats(0.01, 50))
def test_tail_is_nonincreasing(m, r1, r2):
    lo, hi = min(r1, r2), max(r1, r2)
    for d in (1, -1):
        assert m.tail(d, hi) <= m.tail(d, lo) + 1e-12


def test_stable_tail_closed_form():
    m = StableMixture(((1, 0.7, 2.0), (-1, 1.4, 0.5)))
    r = 3.0
    assert m.tail(1, r) == pytest.approx(2.0 * r ** -0.7 / 0.7)
    assert m.tail(-1, r) == pytest.approx(0.5 * r ** -1.4 / 1.4)


def test_cofactor_examples(gaussian):
    assert cofactor_exponent_check(gaussian, 0.5).passed
    rep = cofactor_exponent_check(LevyTriple(0, 0, Discrete(((1.0, 1.0),))), 0.5)
    assert not rep.passed
    assert cofactor_exponent_check(LevyTriple(0, 0, StableMixture(((1, 1.0, 1.0),))), 0.5).passed


def test_stable_lk_near_cauchy_index_is_continuous():
    y = 1.7
    vals = [StableMixture(((1, z, 1.0),)).lk(y) for z in (1 - 1e-7, 1.0, 1 + 1e-7)]
    assert abs(vals[0] - vals[1]) < 1e-5 and abs(vals[2] - vals[1]) < 1e-5
