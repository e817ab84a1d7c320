"""Transformations of configurations, and isomorphism checks built on them.

A transform moves spins spatially and relabels them site by site:
``(tau sigma)(y) = tau_y(sigma(tau_*^{-1} y))``.  Spatial parts are the
identity, translations, reflections and finitely supported permutations;
spin parts are a single permutation of the labels or a periodic family.
All of them send periodic tails to periodic tails.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .clusters import TauImagePartition, UnionPartition
from .errors import IncompatibleTransform, SpinMismatch, ValidationError
from .lattice import Configuration, PeriodicTail, ProductTail, UnionLattice, join, restrict
from .potential import DirectSumPotential, hamiltonian_spread, tau_image_potential


# ---------------------------------------------------------------------------
# spatial parts


class SpatialMap:
    kind = "abstract"
    support = frozenset()

    def forward(self, x):
        raise NotImplementedError

    def inverse(self, x):
        raise NotImplementedError

    # the map away from a finite set of sites; tails only see this part
    def asymptotic_forward(self, x):
        return self.forward(x)

    def asymptotic_inverse(self, x):
        return self.inverse(x)

    def check(self, lattice):
        pass


class Identity(SpatialMap):
    kind = "identity"

    def forward(self, x):
        return x

    def inverse(self, x):
        return x


class Translation(SpatialMap):
    kind = "translation"

    def __init__(self, vector):
        self.vector = vector if isinstance(vector, int) else tuple(vector)

    def _add(self, x, sign):
        if isinstance(x, tuple):
            return tuple(a + sign * b for a, b in zip(x, self.vector))
        return x + sign * self.vector

    def forward(self, x):
        return self._add(x, 1)

    def inverse(self, x):
        return self._add(x, -1)

    def check(self, lattice):
        if getattr(lattice, "kind", None) not in ("Z", "Z2"):
            raise IncompatibleTransform(f"translations are not bijections of {getattr(lattice, 'kind', lattice)}")
        if (lattice.dim == 1) != isinstance(self.vector, int):
            raise IncompatibleTransform("translation vector does not match the lattice dimension")


class Reflection(SpatialMap):
    """``x -> center - x`` along the first axis."""

    kind = "reflection"

    def __init__(self, center: int = 0):
        self.center = int(center)

    def forward(self, x):
        if isinstance(x, tuple):
            return (self.center - x[0],) + x[1:]
        return self.center - x

    inverse = forward

    def check(self, lattice):
        kind = getattr(lattice, "kind", None)
        if kind in ("Z", "Z2"):
            return
        if kind in ("chain", "grid") and self.center == lattice.shape[0] - 1:
            return
        raise IncompatibleTransform(f"reflection about {self.center} is not a bijection of {kind}")


class Permutation(SpatialMap):
    """A bijection moving finitely many sites."""

    kind = "permutation"

    def __init__(self, mapping: Mapping):
        self.mapping = {k: v for k, v in mapping.items() if k != v}
        if set(self.mapping) != set(self.mapping.values()):
            raise ValidationError("site permutation must map its support onto itself")
        self.inv = {v: k for k, v in self.mapping.items()}
        self.support = frozenset(self.mapping)

    def forward(self, x):
        return self.mapping.get(x, x)

    def inverse(self, x):
        return self.inv.get(x, x)

    def asymptotic_forward(self, x):
        return x

    asymptotic_inverse = asymptotic_forward

    def check(self, lattice):
        for x in self.support:
            if not lattice.contains(x):
                raise IncompatibleTransform(f"permuted site {x!r} is not in the lattice")


# ---------------------------------------------------------------------------
# transforms


class TauTransform:
    """Spatial map plus site-dependent spin permutations.

    ``perms`` lists label permutations as tuples (``perm[a]`` is the image of
    label ``a``); ``selector`` is a periodic pattern picking which one acts at
    each site, or ``None`` for a single global permutation.
    """

    def __init__(self, spatial: Optional[SpatialMap] = None, perms: Sequence = ((),), selector=None,
                 inverted: bool = False):
        self.spatial = spatial or Identity()
        self.perms = [tuple(p) for p in perms]
        self.selector = selector
        self.inverted = inverted
        for p in self.perms:
            if p and sorted(p) != list(range(len(p))):
                raise ValidationError(f"{p} is not a permutation of the labels")
        if selector is not None and any(v >= len(self.perms) for v in selector.table):
            raise ValidationError("spin-map selector refers to a missing permutation")

    @classmethod
    def spin_flip(cls, q: int = 2) -> "TauTransform":
        return cls(Identity(), [tuple(reversed(range(q)))])

    @classmethod
    def translation(cls, vector) -> "TauTransform":
        return cls(Translation(vector))

    def inverse(self) -> "TauTransform":
        return TauTransform(self.spatial, self.perms, self.selector, not self.inverted)

    def check_lattice(self, lattice):
        if isinstance(lattice, UnionLattice):
            if self.spatial.kind != "identity" or self.selector is not None:
                raise IncompatibleTransform("on disjoint unions only global spin permutations are supported")
            return
        self.spatial.check(lattice)
        if self.selector is not None and self.selector.dim != lattice.dim:
            raise IncompatibleTransform("spin-map selector does not match the lattice dimension")

    # spatial part of this transform (inverted transforms run the map backwards)
    def forward(self, x):
        return self.spatial.inverse(x) if self.inverted else self.spatial.forward(x)

    def backward(self, x):
        return self.spatial.forward(x) if self.inverted else self.spatial.inverse(x)

    def _index(self, y) -> int:
        return 0 if self.selector is None else self.selector.value(y)

    def _map(self, y, label: int, asymptotic: bool = False) -> int:
        """Label written at output site ``y`` when the source label is ``label``."""
        if not self.inverted:
            p = self.perms[self._index(y)]
            return p[label] if p else label
        fwd = self.spatial.asymptotic_forward if asymptotic else self.spatial.forward
        p = self.perms[self._index(fwd(y))]
        return p.index(label) if p else label

    def unmap(self, y, label: int) -> int:
        """Inverse of the spin permutation acting at output site ``y``."""
        if not self.inverted:
            p = self.perms[self._index(y)]
            return p.index(label) if p else label
        p = self.perms[self._index(self.spatial.forward(y))]
        return p[label] if p else label

    def _source(self, y, asymptotic: bool = False):
        if asymptotic:
            return self.spatial.asymptotic_forward(y) if self.inverted else self.spatial.asymptotic_inverse(y)
        return self.backward(y)

    def _map_tail(self, tail: PeriodicTail) -> PeriodicTail:
        period = list(tail.period)
        if self.selector is not None and len(self.selector.period) == len(period):
            period = [math.lcm(a, b) for a, b in zip(period, self.selector.period)]
        vals = [self._map(y, tail.value(self._source(y, True)), True) for y in tail.domain(period)]
        return PeriodicTail(period, vals)

    def apply(self, sigma: Configuration, lattice=None) -> Configuration:
        if isinstance(sigma.tail, ProductTail):
            if self.spatial.kind != "identity" or self.selector is not None:
                raise IncompatibleTransform("on disjoint unions only global spin permutations are supported")
            parts = []
            for i, t in enumerate(sigma.tail.parts):
                sub = restrict(sigma, i)
                parts.append(Configuration(PeriodicTail(t.period, [self._map(None, v) for v in t.table]),
                                           {s: self._map(None, v) for s, v in sub.overrides}))
            return join(parts)
        if lattice is not None and lattice.is_finite:
            values = {y: self._map(y, sigma.value(self.backward(y))) for y in lattice.sites()}
            return lattice.config(lattice.zero_tail(), values)
        tail = self._map_tail(sigma.tail)
        sites = {self.forward(x) for x in sigma.support} | set(self.spatial.support)
        return Configuration(tail, {y: self._map(y, sigma.value(self.backward(y))) for y in sites})

    def image_region(self, region: Iterable) -> frozenset:
        return frozenset(self.forward(x) for x in region)

    def __repr__(self):
        inv = "^-1" if self.inverted else ""
        return f"TauTransform({self.spatial.kind}, perms={self.perms}){inv}"


def apply_tau(tau: TauTransform, sigma: Configuration, lattice=None) -> Configuration:
    if lattice is not None:
        tau.check_lattice(lattice)
    return tau.apply(sigma, lattice)


def transform_model(model, tau: TauTransform):
    """The model carried over by ``tau``: transported potential and clusters."""
    from .model import GibbsModel

    tau.check_lattice(model.lattice)
    phi = tau_image_potential(model.potential, tau)
    part = TauImagePartition(model.clusters, tau)
    return GibbsModel(model.lattice, model.spins, phi, part, model.tails, model.measure)


# ---------------------------------------------------------------------------
# checks


@dataclass
class ComparisonReport:
    samples: int
    comparisons: int
    max_deviation: float
    evo_max_deviation: float = 0.0
    witnesses: list = field(default_factory=list)

    def equal(self, tol: float = 1e-12) -> bool:
        return self.max_deviation <= tol and self.evo_max_deviation <= tol


def check_potential_equivalence(model_a, model_b, samples: Iterable) -> ComparisonReport:
    """Largest coefficient difference between two models on the same pairs."""
    samples = list(samples)
    worst = 0.0
    count = 0
    witnesses = []
    for zeta, eta in samples:
        ca = dict(model_a.coefficients(zeta, eta))
        cb = dict(model_b.coefficients(zeta, eta))
        if set(ca) != set(cb):
            witnesses.append({"zeta": repr(zeta), "eta": repr(eta), "reason": "offspring sets differ"})
            worst = math.inf
            continue
        for s, c in ca.items():
            dev = abs(c - cb[s])
            if dev > worst:
                worst = dev
                witnesses = [{"zeta": repr(zeta), "eta": repr(eta), "sigma": repr(s), "deviation": dev}]
            count += 1
    return ComparisonReport(len(samples), count, worst, 0.0, witnesses)


def check_tau_isomorphism(model_a, model_b, tau: TauTransform, samples: Iterable,
                          evolution: bool = True) -> ComparisonReport:
    """Compare ``c[zeta, eta, sigma]`` in A with ``c'[tau zeta, tau eta, tau sigma]`` in B."""
    from .evolution import evo_coefficient_matrix

    tau.check_lattice(model_a.lattice)
    lat = model_a.lattice
    samples = list(samples)
    worst = evo_worst = 0.0
    count = 0
    witnesses = []
    for zeta, eta in samples:
        tz, te = tau.apply(zeta, lat), tau.apply(eta, lat)
        ca = model_a.coefficients(zeta, eta)
        cb = dict(model_b.coefficients(tz, te))
        for s, c in ca:
            ts = tau.apply(s, lat)
            c2 = cb.get(ts)
            dev = math.inf if c2 is None else abs(c - c2)
            if dev > worst:
                worst = dev
                witnesses = [{"zeta": repr(zeta), "eta": repr(eta), "sigma": repr(s), "deviation": dev}]
            count += 1
        if evolution:
            ea = evo_coefficient_matrix(model_a, zeta, eta).entries
            eb = evo_coefficient_matrix(model_b, tz, te).entries
            images = {s: tau.apply(s, lat) for s, _ in ca}
            for (w1, w2), c in ea.items():
                c2 = eb.get((images[w1], images[w2]))
                evo_worst = max(evo_worst, math.inf if c2 is None else abs(c - c2))
    return ComparisonReport(len(samples), count, worst, evo_worst, witnesses)


def potential_difference_witness(phi, psi, region, base: Configuration, spins) -> float:
    """Spread of ``H^phi - H^psi`` on ``region`` over local assignments; positive means not equivalent."""
    return hamiltonian_spread(phi, psi, region, base, spins)


@dataclass
class ProbeReport:
    windows: int
    max_spread: float
    consistent: bool
    witness: Optional[dict] = None


def probe_equivalence(phi, psi, spins, windows: Iterable, bases: Iterable[Configuration],
                      tol: float = 1e-10) -> ProbeReport:
    """Test constancy of ``h^phi / h^psi`` on each window over all local assignments.

    Constant ratios on every probed window are reported as consistent with
    equivalence; a non-constant ratio is a witness against it.
    """
    worst = 0.0
    witness = None
    n = 0
    for window in windows:
        for base in bases:
            spread = hamiltonian_spread(phi, psi, window, base, spins)
            n += 1
            if spread > worst:
                worst = spread
                witness = {"window": sorted(window), "base": repr(base), "spread": spread}
    return ProbeReport(n, worst, worst <= tol, witness)


# ---------------------------------------------------------------------------
# products of models


def build_product_model(factors: Sequence):
    """Disjoint union of 1 to 4 models with the direct-sum potential and union partition."""
    from .model import GibbsModel

    if not 1 <= len(factors) <= 4:
        raise ValidationError("product models take 1 to 4 factors")
    spins = factors[0].spins
    for f in factors[1:]:
        if f.spins.q != spins.q:
            raise SpinMismatch(f"spin sets differ: q={spins.q} vs q={f.spins.q}")
    lattice = UnionLattice(tuple(f.lattice for f in factors))
    phi = DirectSumPotential(lattice, [f.potential for f in factors])
    part = UnionPartition([f.clusters for f in factors])
    tails = {}
    for combo in itertools.product(*(sorted(f.tails.items()) for f in factors)):
        name = "|".join(n for n, _ in combo)
        tails[name] = ProductTail([t for _, t in combo])
    return GibbsModel(lattice, spins, phi, part, tails, factors=list(factors))


def check_tensor_factorization(product_model, factors: Sequence, samples: Iterable) -> ComparisonReport:
    """Compare product-model coefficients with products of factor coefficients."""
    from .evolution import evo_coefficient_matrix

    samples = list(samples)
    worst = evo_worst = 0.0
    count = 0
    witnesses = []
    for sigma, eta in samples:
        parts_s = [restrict(sigma, i) for i in range(len(factors))]
        parts_e = [restrict(eta, i) for i in range(len(factors))]
        factor_c = [dict(f.coefficients(a, b)) for f, a, b in zip(factors, parts_s, parts_e)]
        coeffs = product_model.coefficients(sigma, eta)
        expected = 1
        for fc in factor_c:
            expected *= len(fc)
        if len(coeffs) != expected:
            worst = math.inf
            witnesses.append({"sigma": repr(sigma), "eta": repr(eta), "reason": "offspring count"})
            continue
        for z, c in coeffs:
            prod = 1.0
            for i, fc in enumerate(factor_c):
                prod *= fc[restrict(z, i)]
            dev = abs(c - prod)
            if dev > worst:
                worst = dev
                witnesses = [{"sigma": repr(sigma), "eta": repr(eta), "zeta": repr(z), "deviation": dev}]
            count += 1
        evo = evo_coefficient_matrix(product_model, sigma, eta).entries
        factor_evo = [evo_coefficient_matrix(f, a, b).entries for f, a, b in zip(factors, parts_s, parts_e)]
        for (w1, w2), c in evo.items():
            prod = 1.0
            for i, fe in enumerate(factor_evo):
                prod *= fe[(restrict(w1, i), restrict(w2, i))]
            evo_worst = max(evo_worst, abs(c - prod))
    return ComparisonReport(len(samples), count, worst, evo_worst, witnesses)
