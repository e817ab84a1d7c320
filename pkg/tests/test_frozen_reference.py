"""Package output against values frozen from the independent reference in reference.py."""

import math

import pytest

from gibbs_algebra import (AlgebraElement, FiniteModel, associator, ising_model, potts_model, star_model,
                           translation_example_model)
from gibbs_algebra.lattice import Lattice
from gibbs_algebra.suites import dim2_associator

import reference


def test_frozen_file_is_reproducible(frozen):
    fresh = reference.compute()
    assert fresh.keys() == frozen.keys()
    for k in frozen:
        assert fresh[k] == pytest.approx(frozen[k], abs=1e-15) if not isinstance(frozen[k], dict) \
            else fresh[k] == frozen[k]


def test_ising_flip_origin(frozen, ising):
    plus = ising.config("plus")
    coeffs = dict(ising.coefficients(plus, plus.with_values({0: 0})))
    want_plus, want_flip = frozen["ising_flip_origin_beta1"]
    assert coeffs[plus] == pytest.approx(want_plus, abs=1e-15)
    assert coeffs[plus.with_values({0: 0})] == pytest.approx(want_flip, abs=1e-15)
    assert want_plus == pytest.approx(1 / (1 + math.exp(-4)), abs=1e-15)


def test_ising_two_sites(frozen):
    m = ising_model(beta=0.7)
    plus = m.config("plus")
    coeffs = dict(m.coefficients(plus, plus.with_values({0: 0, 1: 0})))
    ref = frozen["ising_two_sites_beta07"]
    for kid, c in zip(ref["offspring"], ref["coefficients"]):
        sigma = plus.with_values({x: 0 for x, v in kid})
        assert coeffs[sigma] == pytest.approx(c, abs=1e-14)


def test_potts_blocks(frozen, potts_blocks):
    m = potts_blocks
    zeta = m.config("c0", {1: 2})
    eta = m.config("c0", {0: 1, 1: 1, 3: 2})
    coeffs = dict(m.coefficients(zeta, eta))
    ref = frozen["potts_blocks_q3"]
    assert len(coeffs) == len(ref["coefficients"])
    for kid, c in zip(ref["offspring"], ref["coefficients"]):
        sigma = m.config("c0", {x: v for x, v in kid})
        assert coeffs[sigma] == pytest.approx(c, abs=1e-14)


def test_lemma_associator(frozen, ising):
    plus = ising.config("plus")
    e = AlgebraElement.basis
    sigma = plus.with_values({0: 0})
    zeta = plus.with_values({1: 0})
    a = associator(ising, e(sigma), e(plus), e(zeta))
    assert a[sigma] == pytest.approx(frozen["lemma_associator_beta1"], abs=1e-14)


def test_dim2_associator_value(frozen):
    worst, _ = dim2_associator()
    assert worst == pytest.approx(frozen["dim2_associator_max"], abs=1e-14)


def test_star_constants(frozen):
    m = star_model()
    one = m.config("one")
    assert m.potential.hamiltonian({0}, one) == pytest.approx(frozen["star_hub_energy"], abs=1e-14)
    c = dict(m.coefficients(one, one.with_values({0: 0})))[one]
    assert c == pytest.approx(frozen["star_hub_coefficient"], abs=1e-12)


def test_translation_example(frozen):
    m = translation_example_model()
    zero = m.config("zero")
    c = dict(m.coefficients(zero, zero.with_values({0: 1})))[zero]
    assert c == pytest.approx(frozen["translation_example_coefficient"], abs=1e-15)


@pytest.mark.parametrize("key, model", [
    ("potts_grid_2x3_log_z_beta1", lambda: potts_model(Lattice("grid", (2, 3)), q=3, beta=1.0)),
    ("ising_chain8_log_z_beta03", lambda: ising_model(Lattice("chain", (8,)), beta=0.3)),
    ("ising_chain8_log_z_beta1", lambda: ising_model(Lattice("chain", (8,)), beta=1.0)),
])
def test_partition_functions(frozen, key, model):
    table = FiniteModel.from_model(model()).enumerate_measure()
    assert table.log_z == pytest.approx(frozen[key], abs=1e-12)
