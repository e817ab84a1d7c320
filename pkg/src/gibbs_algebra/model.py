"""The model object tying lattice, spins, potential and clusters together.

A model carries no Gibbs measure: structural coefficients depend only on the
potential, the cluster partition and the configurations.  The optional
``measure`` label is informational and is never consulted.
"""

from __future__ import annotations

import math
from typing import Mapping, Optional

from . import potential as pot
from .clusters import AtomicPartition, BlockPartition, ClusterPartition, UniquePartition, offspring
from .errors import ValidationError
from .lattice import Configuration, Lattice, PeriodicTail, ProductTail, SpinSet, discrepancy

_CACHE_LIMIT = 200_000


class GibbsModel:
    def __init__(self, lattice, spins: SpinSet, potential: pot.Potential, clusters: ClusterPartition,
                 tails: Optional[Mapping] = None, measure: Optional[str] = None, factors=None):
        self.lattice = lattice
        self.spins = spins
        self.potential = potential
        self.clusters = clusters
        self.tails = dict(tails or {})
        self.measure = measure
        self.factors = factors
        self._coeff_cache = {}
        for name, tail in self.tails.items():
            self._check_tail(tail, name)

    @property
    def finite_range(self) -> bool:
        return self.potential.finite_range

    def _check_tail(self, tail, name="tail"):
        parts = tail.parts if isinstance(tail, ProductTail) else (tail,)
        for t in parts:
            if any(v < 0 or v >= self.spins.q for v in t.table):
                raise ValidationError(f"{name}: tail labels must lie in [0, {self.spins.q})")

    def tail(self, ref):
        """Resolve a tail given as object, declared name or canonical id string."""
        if isinstance(ref, (PeriodicTail, ProductTail)):
            return ref
        if ref in self.tails:
            return self.tails[ref]
        for t in self.tails.values():
            if t.id == ref:
                return t
        if isinstance(ref, str) and isinstance(self.lattice, Lattice):
            tail = parse_tail_id(ref, self.lattice.dim)
            if tail is not None:
                return tail
        raise ValidationError(f"unknown tail {ref!r}")

    def config(self, tail, overrides=()) -> Configuration:
        t = self.tail(tail)
        self._check_tail(t)
        items = overrides.items() if isinstance(overrides, Mapping) else overrides
        items = list(items)
        for _, label in items:
            if not 0 <= int(label) < self.spins.q:
                raise ValidationError(f"label {label} outside [0, {self.spins.q})")
        return self.lattice.config(t, items)

    def offspring(self, sigma: Configuration, eta: Configuration) -> list:
        return offspring(self.clusters, sigma, eta)

    def coefficients(self, zeta: Configuration, eta: Configuration) -> tuple:
        """Cached ``((sigma, c), ...)`` for the pair, computed on its canonical ordering."""
        lo, hi = (zeta, eta) if not eta < zeta else (eta, zeta)
        key = (lo, hi)
        hit = self._coeff_cache.get(key)
        if hit is not None:
            return hit
        d = discrepancy(lo, hi)
        if d is None:
            res = ()
        elif not d:
            res = ((lo, 1.0),)
        else:
            kids = offspring(self.clusters, lo, hi)
            logh = [self.potential.log_boltzmann(d, s) for s in kids]
            m = max(logh)
            w = [math.exp(v - m) for v in logh]
            total = math.fsum(w)
            res = tuple((s, x / total) for s, x in zip(kids, w))
        if len(self._coeff_cache) > _CACHE_LIMIT:
            self._coeff_cache.clear()
        self._coeff_cache[key] = res
        return res

    def with_potential(self, potential: pot.Potential) -> "GibbsModel":
        return GibbsModel(self.lattice, self.spins, potential, self.clusters, self.tails, self.measure)

    def with_measure(self, label: str) -> "GibbsModel":
        return GibbsModel(self.lattice, self.spins, self.potential, self.clusters, self.tails, label)

    def __repr__(self):
        kind = getattr(self.lattice, "kind", "?")
        return f"GibbsModel({kind}, q={self.spins.q}, {self.potential.kind}, {self.clusters.kind})"


def parse_tail_id(text: str, dim: int = 1) -> Optional[PeriodicTail]:
    """Inverse of ``PeriodicTail.id``: ``const1`` or ``per2:0,1`` / ``per2x2:0,1,1,0``."""
    try:
        if text.startswith("const"):
            return PeriodicTail.constant(int(text[5:]), dim)
        if text.startswith("per"):
            shape, table = text[3:].split(":")
            period = [int(p) for p in shape.split("x")]
            return PeriodicTail(period, [int(v) for v in table.split(",")])
    except ValueError:
        return None
    return None


# ---------------------------------------------------------------------------
# ready-made models

ISING_SPINS = SpinSet(2, (-1.0, 1.0))


def make_partition(kind: str, k: int = 2) -> ClusterPartition:
    if kind == "atomic":
        return AtomicPartition()
    if kind == "unique":
        return UniquePartition()
    if kind == "blocks":
        return BlockPartition(k)
    raise ValidationError(f"unknown cluster kind {kind!r}")


def ising_model(lattice: Optional[Lattice] = None, beta: float = 1.0, clusters="atomic", k: int = 2) -> GibbsModel:
    """Ising ferromagnet with spins -1 (label 0) and +1 (label 1); tails ``plus``/``minus``."""
    lattice = lattice or Lattice("Z")
    part = clusters if isinstance(clusters, ClusterPartition) else make_partition(clusters, k)
    phi = pot.ising_potential(lattice, ISING_SPINS, beta)
    tails = {} if lattice.is_finite else {
        "plus": PeriodicTail.constant(1, lattice.dim),
        "minus": PeriodicTail.constant(0, lattice.dim),
    }
    return GibbsModel(lattice, ISING_SPINS, phi, part, tails)


def potts_model(lattice: Optional[Lattice] = None, q: int = 3, beta: float = 1.0, clusters="atomic",
                k: int = 2) -> GibbsModel:
    lattice = lattice or Lattice("Z")
    spins = SpinSet(q)
    part = clusters if isinstance(clusters, ClusterPartition) else make_partition(clusters, k)
    phi = pot.potts_potential(lattice, spins, beta)
    tails = {} if lattice.is_finite else {f"c{a}": PeriodicTail.constant(a, lattice.dim) for a in spins.labels}
    return GibbsModel(lattice, spins, phi, part, tails)


def star_model() -> GibbsModel:
    """Star interaction on N0 with spins {0, 1} and a single cluster; tails ``zero``/``one``."""
    lattice = Lattice("N0")
    spins = SpinSet(2)
    phi = pot.StarInverseSquarePotential(lattice, spins)
    tails = {"zero": PeriodicTail.constant(0), "one": PeriodicTail.constant(1)}
    return GibbsModel(lattice, spins, phi, UniquePartition(), tails)


def translation_example_model() -> GibbsModel:
    """Spins {0, 1} on Z, single cluster, one term ``sigma(0)`` on the bond {0, 1}."""
    lattice = Lattice("Z")
    spins = SpinSet(2)
    phi = pot.LocalTermsPotential(lattice, [((0, 1), [[0.0, 0.0], [1.0, 1.0]])])
    tails = {"zero": PeriodicTail.constant(0), "one": PeriodicTail.constant(1),
             "alt": PeriodicTail((2,), (0, 1))}
    return GibbsModel(lattice, spins, phi, UniquePartition(), tails)
