import pytest
from hypothesis import given, strategies as st

from gibbs_algebra.errors import ValidationError
from gibbs_algebra.lattice import (Configuration, Lattice, PeriodicTail, SpinSet, discrepancy,
                                   tails_agree_cofinitely)

from conftest import configs, overrides, tails


def test_spin_set_requires_two_labels():
    with pytest.raises(ValidationError):
        SpinSet(1)


def test_discrepancy_of_overrides():
    t = PeriodicTail.constant(0)
    assert discrepancy(Configuration(t, {0: 1}), Configuration(t, {3: 1})) == {0, 3}
    assert discrepancy(Configuration(t, {0: 1}), Configuration(t, {0: 1})) == frozenset()


def test_different_constant_tails_are_macroscopic():
    a = Configuration(PeriodicTail.constant(0), {5: 1})
    b = Configuration(PeriodicTail.constant(1), {5: 0})
    assert discrepancy(a, b) is None


def test_presentations_of_same_tail_agree():
    assert tails_agree_cofinitely(PeriodicTail((2,), (0, 1)), PeriodicTail((4,), (0, 1, 0, 1))) == frozenset()
    assert PeriodicTail((4,), (0, 1, 0, 1)).id == "per2:0,1"
    assert tails_agree_cofinitely(PeriodicTail.constant(0), PeriodicTail.constant(1)) is None


def test_two_dimensional_tail():
    t = PeriodicTail.from_pattern([[0, 1], [0, 1]])
    assert t.canonical().period == (1, 2)
    assert t.value((5, 3)) == 1


def test_redundant_overrides_dropped():
    t = PeriodicTail((2,), (0, 1))
    c = Configuration(t, {0: 0, 1: 0, 2: 0})
    assert c.overrides == ((1, 0),)


def test_finite_lattice_rebases_to_zero_tail():
    lat = Lattice("chain", (4,))
    c = lat.config(PeriodicTail.constant(1))
    assert c.tail == PeriodicTail.constant(0)
    assert [c.value(x) for x in range(4)] == [1, 1, 1, 1]


def test_lattice_rejects_foreign_sites():
    with pytest.raises(ValidationError):
        Lattice("N0").config(PeriodicTail.constant(0), {-1: 1})


@given(tails(), tails(), st.integers(-20, 20))
def test_cofinite_agreement_matches_pointwise_scan(t1, t2, shift):
    agree = tails_agree_cofinitely(t1, t2) is not None
    scan = all(t1.value(x) == t2.value(x) for x in range(shift, shift + 24))
    assert agree == scan


@given(configs(), st.integers(-10, 10))
def test_canonical_form_is_unique(c, x):
    rebuilt = Configuration(PeriodicTail(c.tail.period * 1, c.tail.table), dict(c.overrides))
    doubled = Configuration(PeriodicTail((2 * c.tail.period[0],), c.tail.table * 2), dict(c.overrides))
    assert rebuilt == c == doubled
    assert hash(doubled) == hash(c)
    assert doubled.value(x) == c.value(x)


@given(st.data())
def test_discrepancy_symmetric_and_triangle(data):
    t = data.draw(tails())
    a, b, c = (Configuration(t, data.draw(overrides(2))) for _ in range(3))
    assert discrepancy(a, b) == discrepancy(b, a)
    assert discrepancy(a, c) <= discrepancy(a, b) | discrepancy(b, c)
    for x in range(-8, 9):
        assert (x in discrepancy(a, b)) == (a.value(x) != b.value(x))
