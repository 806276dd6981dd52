import numpy as np
import pytest

from levycalc.classifier import classify_completely_s, classify_order, inclusion_chain_check
from levycalc.measures import Discrete, LevyTriple, StableMixture
from levycalc.transforms import i_transform, j_alpha
from levycalc.verification import random_corpus


def test_poisson_has_order_zero(poisson):
    rep = classify_order(poisson, 3)
    assert rep.max_verified_order == 0
    assert not rep.diagnostics[1].passed


def test_stable_passes_every_order():
    t = LevyTriple(0, 0, StableMixture(((1, 0.5, 1.0),)))
    assert classify_order(t, 6).max_verified_order == 6


def test_j_images_gain_one_order(poisson):
    assert classify_order(j_alpha(poisson, 1.0), 3).max_verified_order == 1
    rep = classify_order(j_alpha(poisson, 2.0), 3)
    assert rep.max_verified_order == 2


def test_gaussian_passes_every_order(gaussian):
    assert classify_order(gaussian, 6).max_verified_order == 6


def test_i_image_is_in_first_class(atom_e):
    assert classify_order(i_transform(atom_e), 1).max_verified_order >= 1


def test_diagnostics_record_flagged_radii(poisson):
    rep = classify_order(poisson, 2)
    assert any(abs(r - 1.0) < 0.05 for r in rep.diagnostics[0].flagged_radii)
    assert rep.diagnostics[1].kind in {"jump", "sign", "monotonicity", "decay"}


def test_completely_s_examples(poisson):
    rep = classify_completely_s(StableMixture(((1, 1.5, 2.0),)))
    assert rep.verdict == "yes"
    assert rep.moment[1] == pytest.approx(4.0)
    assert classify_completely_s(poisson.measure).verdict == "no"
    assert classify_completely_s(j_alpha(poisson, 3.0).measure).verdict == "unknown"


def test_completely_s_of_stable_images():
    s = LevyTriple(0, 0, StableMixture(((1, 1.2, 1.0), (-1, 0.4, 2.0))))
    assert classify_completely_s(j_alpha(s, 1.5).measure).verdict == "yes"
    assert classify_completely_s(i_transform(s).measure).verdict == "yes"


def test_inclusion_chain(poisson):
    seeds = [poisson, LevyTriple(0, 0, Discrete(((2.0, 1.0), (-0.5, 0.4))))]
    rep = inclusion_chain_check(seeds, 1)
    assert rep.passed
    assert len(rep.entries) == 4


def test_no_false_negatives_on_j_images():
    # every j^{m+1} image of a discrete seed lies in the (m+1)-th class
    for t in random_corpus(n=25, seed=11):
        for m in (1, 2):
            assert classify_order(j_alpha(t, m), m).max_verified_order == m
