from hypothesis import given, strategies as st

from gibbs_algebra.clusters import (AtomicPartition, BlockPartition, FiniteListPartition, UniquePartition,
                                    clusters_meeting, offspring)
from gibbs_algebra.lattice import Configuration, Lattice, PeriodicTail, discrepancy

from conftest import overrides

ZERO = PeriodicTail.constant(0)


def test_atomic_offspring_count():
    s = Configuration(ZERO)
    e = Configuration(ZERO, {0: 1, 2: 1, 5: 1})
    kids = offspring(AtomicPartition(), s, e)
    assert len(kids) == 8
    assert kids[0] == s and e in kids


def test_unique_partition_gives_two_parents():
    s = Configuration(ZERO, {1: 1})
    e = Configuration(ZERO, {4: 1})
    assert offspring(UniquePartition(), s, e) == [s, e]


def test_blocks_group_sites():
    part = BlockPartition(2)
    assert clusters_meeting(part, {0, 1, 3, -1}) == [-1, 0, 1]
    s = Configuration(ZERO)
    e = Configuration(ZERO, {0: 1, 1: 1, 3: 1})
    assert len(offspring(part, s, e)) == 4


def test_identical_pair_has_one_offspring():
    s = Configuration(ZERO, {2: 1})
    assert offspring(AtomicPartition(), s, s) == [s]


def test_macroscopic_pair_has_none():
    assert offspring(AtomicPartition(), Configuration(ZERO), Configuration(PeriodicTail.constant(1))) == []


def test_finite_list_partition():
    lat = Lattice("chain", (4,))
    part = FiniteListPartition([[0, 1], [2, 3]], lat)
    s = lat.config(ZERO)
    e = lat.config(ZERO, {0: 1, 3: 1})
    assert len(offspring(part, s, e)) == 4


@given(overrides(3), overrides(3), st.sampled_from([AtomicPartition(), UniquePartition(), BlockPartition(2),
                                                    BlockPartition(3)]))
def test_offspring_lie_between_parents(o1, o2, part):
    s, e = Configuration(ZERO, o1), Configuration(ZERO, o2)
    kids = offspring(part, s, e)
    d = discrepancy(s, e)
    assert len(kids) == 2 ** len(clusters_meeting(part, d))
    assert len(set(kids)) == len(kids)
    for k in kids:
        for x in range(-8, 9):
            assert k.value(x) in (s.value(x), e.value(x))
        # whole clusters are inherited together
        for c in clusters_meeting(part, d):
            sites = [x for x in d if part.cluster_of(x) == c]
            assert len({k.value(x) == e.value(x) for x in sites}) == 1
    assert set(offspring(part, e, s)) == set(kids)
