import itertools
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from gibbs_algebra import FiniteModel, compare_finite_equivalence, enumeration_cap, gibbs_conditional, ising_model
from gibbs_algebra.errors import TooLarge
from gibbs_algebra.lattice import Lattice
from gibbs_algebra.model import potts_model
from gibbs_algebra.oracle import assignment_to_config, config_to_assignment


def test_enumeration_order_is_base_q():
    fm = FiniteModel.from_model(potts_model(Lattice("chain", (3,)), q=3))
    states = fm.all_assignments()
    assert [tuple(s) for s in states] == list(itertools.product(range(3), repeat=3))
    table = fm.enumerate_measure()
    assert table.code((2, 1, 0)) == 2 * 9 + 1 * 3 + 0


def test_cap_from_environment(monkeypatch):
    monkeypatch.setenv("GGA_ENUM_CAP", "100")
    assert enumeration_cap() == 100
    fm = FiniteModel.from_model(ising_model(Lattice("chain", (8,))))
    with pytest.raises(TooLarge):
        fm.all_assignments()
    monkeypatch.delenv("GGA_ENUM_CAP")
    assert enumeration_cap() == 2 ** 20


def test_probabilities_normalised():
    fm = FiniteModel.from_model(potts_model(Lattice("grid", (2, 2)), q=3, beta=0.4))
    assert math.isclose(fm.enumerate_measure().probabilities.sum(), 1.0, abs_tol=1e-12)


@pytest.mark.parametrize("beta", [0.3, 1.0])
def test_chain_equivalence(beta):
    rep = compare_finite_equivalence(ising_model(Lattice("chain", (8,)), beta=beta), 100, seed=1)
    assert rep.max_genetic <= 1e-10 and rep.max_evolution <= 1e-10
    assert rep.offspring_mismatches == 0


def test_grid_equivalence_with_blocks():
    m = potts_model(Lattice("grid", (2, 3)), q=3, clusters="blocks", k=2)
    rep = compare_finite_equivalence(m, 50, seed=2)
    assert rep.max_genetic <= 1e-10 and rep.offspring_mismatches == 0


@given(st.lists(st.integers(0, 1), min_size=6, max_size=6), st.sets(st.integers(0, 5), min_size=1, max_size=3))
def test_table_conditional_equals_local_gibbs_law(labels, region):
    m = ising_model(Lattice("chain", (6,)), beta=0.7)
    fm = FiniteModel.from_model(m)
    sites = fm.sites
    full = assignment_to_config(m, tuple(labels), sites)
    region = sorted(region)
    table = fm.conditional_from_table(region, {x: full.value(x) for x in sites if x not in region})
    direct = gibbs_conditional(m, region, full)
    assert set(table) == set(direct)
    for k in direct:
        assert abs(table[k] - direct[k]) <= 1e-12


def test_window_with_boundary(ising):
    plus = ising.config("plus")
    fm = FiniteModel.from_region(ising, [-1, 0, 1], plus)
    cond = fm.conditional_from_table([0], {-1: 1, 1: 1})
    assert cond[(1,)] == pytest.approx(1 / (1 + math.exp(-4)), abs=1e-15)


def test_assignment_round_trip():
    m = ising_model(Lattice("chain", (5,)))
    sites = m.lattice.sites()
    a = (1, 0, 0, 1, 1)
    assert config_to_assignment(assignment_to_config(m, a, sites), sites) == a


def test_energies_match_hamiltonian():
    m = potts_model(Lattice("grid", (2, 2)), q=2, beta=1.3)
    fm = FiniteModel.from_model(m)
    e = fm.energies()
    for code, row in enumerate(fm.all_assignments()):
        sigma = assignment_to_config(m, tuple(int(v) for v in row), fm.sites)
        # interactions are counted once each over the whole lattice
        h = sum(t.fn(sigma) for t in m.potential.terms_touching(set(fm.sites)))
        assert np.isclose(e[code], h, atol=1e-12)
