"""Cluster partitions of a lattice and offspring enumeration."""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

from .errors import ValidationError
from .lattice import Configuration, discrepancy


class ClusterPartition:
    kind = "abstract"

    def cluster_of(self, site):
        raise NotImplementedError

    def __repr__(self):
        return f"{type(self).__name__}()"


class AtomicPartition(ClusterPartition):
    """Every site is its own cluster."""

    kind = "atomic"

    def cluster_of(self, site):
        return site


class UniquePartition(ClusterPartition):
    """The whole lattice is a single cluster."""

    kind = "unique"

    def cluster_of(self, site):
        return 0


class BlockPartition(ClusterPartition):
    """Blocks ``floor(x / k)``; on 2D lattices these are row bands of height ``k``."""

    kind = "blocks"

    def __init__(self, k: int):
        if int(k) < 1:
            raise ValidationError("block size k must be positive")
        self.k = int(k)

    def cluster_of(self, site):
        x = site[0] if isinstance(site, tuple) else site
        return x // self.k

    def __repr__(self):
        return f"BlockPartition(k={self.k})"


class FiniteListPartition(ClusterPartition):
    """Explicit partition of a finite lattice; cluster ids are block indices."""

    kind = "finite_list"

    def __init__(self, blocks: Sequence[Iterable], lattice=None):
        self.blocks = [tuple(b) for b in blocks]
        self._index = {}
        for i, block in enumerate(self.blocks):
            if not block:
                raise ValidationError("empty block in cluster list")
            for x in block:
                if x in self._index:
                    raise ValidationError(f"site {x!r} appears in two clusters")
                self._index[x] = i
        if lattice is not None:
            missing = [x for x in lattice.sites() if x not in self._index]
            extra = [x for x in self._index if not lattice.contains(x)]
            if missing or extra:
                raise ValidationError(f"cluster list does not partition the lattice (missing {missing}, extra {extra})")

    def cluster_of(self, site):
        try:
            return self._index[site]
        except KeyError:
            raise ValidationError(f"site {site!r} not covered by the cluster list") from None


class UnionPartition(ClusterPartition):
    """Disjoint union of partitions of the factors of a union lattice."""

    kind = "union"

    def __init__(self, parts: Sequence[ClusterPartition]):
        self.parts = list(parts)

    def cluster_of(self, site):
        i, s = site
        return (i, self.parts[i].cluster_of(s))


class TauImagePartition(ClusterPartition):
    """Image of a partition under the spatial part of a transform."""

    kind = "tau_image"

    def __init__(self, base: ClusterPartition, tau):
        self.base = base
        self.tau = tau

    def cluster_of(self, site):
        return self.base.cluster_of(self.tau.backward(site))


def _id_key(cid):
    # ids may mix ints and tuples across partition kinds; keep sorting total
    return (0, cid) if isinstance(cid, int) else (1, cid)


def clusters_meeting(part: ClusterPartition, region: Iterable) -> list:
    """Sorted ids of the clusters that intersect ``region``."""
    return sorted({part.cluster_of(x) for x in region}, key=_id_key)


def offspring(part: ClusterPartition, sigma: Configuration, eta: Configuration) -> list[Configuration]:
    """All offspring of the pair: ``sigma`` with ``eta`` copied on a subset of clusters.

    The order follows the sorted tuple of chosen cluster indices, so the
    first entry is always ``sigma`` itself.
    """
    d = discrepancy(sigma, eta)
    if d is None:
        return []
    cids = clusters_meeting(part, d)
    by_cluster = {c: [] for c in cids}
    for x in d:
        by_cluster[part.cluster_of(x)].append(x)
    subsets = []
    for r in range(len(cids) + 1):
        subsets.extend(itertools.combinations(range(len(cids)), r))
    subsets.sort()
    out = []
    for chosen in subsets:
        upd = {x: eta.value(x) for i in chosen for x in by_cluster[cids[i]]}
        out.append(sigma.with_values(upd) if upd else sigma)
    return out


def cluster_sites_in(part: ClusterPartition, region: Iterable) -> dict:
    """Group the sites of ``region`` by cluster id."""
    groups = {}
    for x in region:
        groups.setdefault(part.cluster_of(x), []).append(x)
    return groups
