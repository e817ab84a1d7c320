"""Interaction potentials and restricted Hamiltonians.

Every potential is bound to a lattice and exposes

* ``terms_touching(region)``: the finitely many non-vanishing terms whose
  support meets ``region``;
* ``hamiltonian(region, sigma)``: the total energy of those terms;
* ``boundary`` / ``closure`` / ``neighborhood`` derived from the terms.

The star potential on N0 has infinitely many terms at the hub site 0; its
Hamiltonian is evaluated in closed form and the term listing raises
:class:`InfiniteRange` there.  The inverse temperature is a constructor
parameter and is absorbed into the terms.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple, Sequence

from .errors import InfiniteRange, UnsupportedTail, ValidationError
from .lattice import Configuration, Lattice, Region, SpinSet, restrict

ZETA2 = math.pi ** 2 / 6


class _Infinite:
    """Marker for an infinite interaction neighbourhood."""

    def __repr__(self):
        return "INFINITE"


INFINITE = _Infinite()


class InteractionTerm(NamedTuple):
    """A single term: its support and a function of any object with ``value(site)``."""

    support: frozenset
    fn: Callable

    def evaluate(self, sigma) -> float:
        return self.fn(sigma)


class Potential:
    kind = "abstract"
    finite_range = True

    def __init__(self, lattice):
        self.lattice = lattice

    def terms_touching(self, region: Iterable) -> list[InteractionTerm]:
        raise NotImplementedError

    def hamiltonian(self, region: Iterable, sigma) -> float:
        return math.fsum(t.fn(sigma) for t in self.terms_touching(region))

    def log_boltzmann(self, region: Iterable, sigma) -> float:
        return -self.hamiltonian(region, sigma)

    def boundary(self, region: Iterable) -> Region:
        region = frozenset(region)
        out = set()
        for term in self.terms_touching(region):
            out |= term.support
        return frozenset(out - region)

    def closure(self, region: Iterable) -> Region:
        region = frozenset(region)
        return region | self.boundary(region)

    def neighborhood(self, site):
        try:
            return self.boundary({site})
        except InfiniteRange:
            return INFINITE

    def __repr__(self):
        return f"{type(self).__name__}(kind={self.kind!r})"


class ZeroPotential(Potential):
    kind = "zero"

    def terms_touching(self, region):
        return []

    def hamiltonian(self, region, sigma):
        return 0.0


class PairPotential(Potential):
    """Translation-invariant pair interaction given per bond offset.

    ``couplings`` is a list of ``(offset, f)`` with ``f(label_x, label_y)``
    the energy of the bond ``{x, x + offset}``.
    """

    def __init__(self, lattice: Lattice, couplings: Sequence, kind: str = "custom_pair"):
        super().__init__(lattice)
        self.kind = kind
        self.couplings = list(couplings)

    def bonds_touching(self, region) -> list:
        lat = self.lattice
        seen = set()
        bonds = []
        for x in sorted(set(region)):
            for k, (off, _) in enumerate(self.couplings):
                for a in (x, lat.sub(x, off)):
                    b = lat.add(a, off)
                    if (a, k) in seen or not (lat.contains(a) and lat.contains(b)):
                        continue
                    seen.add((a, k))
                    bonds.append((a, b, k))
        return bonds

    def terms_touching(self, region):
        terms = []
        for a, b, k in self.bonds_touching(region):
            f = self.couplings[k][1]
            terms.append(InteractionTerm(frozenset((a, b)), lambda s, a=a, b=b, f=f: f(s.value(a), s.value(b))))
        return terms


def ising_potential(lattice: Lattice, spins: SpinSet, beta: float = 1.0) -> PairPotential:
    """Nearest-neighbour ferromagnet: each bond contributes ``-beta * s(x) * s(y)``."""
    if beta < 0:
        raise ValidationError("beta must be >= 0")
    vals = [spins.value(a) for a in spins.labels]
    table = [[-beta * va * vb for vb in vals] for va in vals]
    pot = custom_pair_potential(lattice, [(off, table) for off in lattice.nn_offsets], kind="ising_pair")
    pot.beta = beta
    return pot


def potts_potential(lattice: Lattice, spins: SpinSet, beta: float = 1.0) -> PairPotential:
    """Nearest-neighbour Potts model: each bond contributes ``-beta`` when both spins agree."""
    if beta < 0:
        raise ValidationError("beta must be >= 0")
    table = [[-beta if a == b else 0.0 for b in spins.labels] for a in spins.labels]
    pot = custom_pair_potential(lattice, [(off, table) for off in lattice.nn_offsets], kind="potts_pair")
    pot.beta = beta
    return pot


def custom_pair_potential(lattice: Lattice, pairs: Sequence, kind: str = "custom_pair") -> PairPotential:
    """Pair potential from ``(offset, q x q table)`` entries; all-zero tables are dropped."""
    couplings = []
    for off, table in pairs:
        table = tuple(tuple(float(v) for v in row) for row in table)
        if all(v == 0.0 for row in table for v in row):
            continue
        couplings.append((off, lambda a, b, t=table: t[a][b]))
    pot = PairPotential(lattice, couplings, kind=kind)
    pot.tables = [(off, table) for off, table in pairs]
    return pot


class LocalTermsPotential(Potential):
    """An explicit finite list of terms, each a table indexed by the labels on its support."""

    kind = "local_terms"

    def __init__(self, lattice, terms: Sequence):
        super().__init__(lattice)
        self.terms = []
        for support, table in terms:
            support = tuple(support)
            if len(set(support)) != len(support):
                raise ValidationError(f"repeated site in term support {support}")
            for x in support:
                if not lattice.contains(x):
                    raise ValidationError(f"term site {x!r} not in lattice")
            if callable(table):
                fn = table
            else:
                fn = _table_lookup(support, table)
            self.terms.append(InteractionTerm(frozenset(support), fn))
        self.raw_terms = list(terms)

    def terms_touching(self, region):
        region = set(region)
        return [t for t in self.terms if t.support & region]


def _table_lookup(support, table):
    def fn(s):
        v = table
        for x in support:
            v = v[s.value(x)]
        return float(v)

    return fn


class StarInverseSquarePotential(Potential):
    """Star interaction on N0: the term on ``{0, n}`` is ``s(0) s(n) / n**2``.

    Every site interacts with the hub 0, so the potential has infinite range.
    Hamiltonians of regions containing 0 use the closed form
    ``sum 1/n**2 = pi**2/6`` and are supported only on constant tails.
    """

    kind = "star_inverse_square"
    finite_range = False

    def __init__(self, lattice: Lattice, spins: SpinSet):
        if lattice.kind != "N0":
            raise ValidationError("the star potential lives on N0")
        super().__init__(lattice)
        self.spins = spins

    def _term(self, n):
        v = self.spins.value
        return InteractionTerm(frozenset((0, n)), lambda s, n=n: v(s.value(0)) * v(s.value(n)) / n ** 2)

    def terms_touching(self, region):
        region = set(region)
        if 0 in region:
            raise InfiniteRange("the hub site 0 meets infinitely many star terms")
        return [self._term(n) for n in sorted(region) if n >= 1]

    def hamiltonian(self, region, sigma) -> float:
        region = set(region)
        if 0 not in region:
            return math.fsum(t.fn(sigma) for t in self.terms_touching(region))
        if not isinstance(sigma, Configuration) or not sigma.tail.is_constant:
            raise UnsupportedTail("the star potential is evaluated only on constant tails")
        v = self.spins.value
        tail_v = v(sigma.tail.value(0))
        corrections = [(v(label) - tail_v) / n ** 2 for n, label in sigma.overrides if n >= 1]
        total = math.fsum([tail_v * ZETA2] + corrections)
        return v(sigma.value(0)) * total

    def neighborhood(self, site):
        if site == 0:
            return INFINITE
        return frozenset({0})


class ShiftedPotential(Potential):
    """``base`` with constants ``c_A`` added on finitely many supports."""

    kind = "shifted"

    def __init__(self, base: Potential, shifts: Sequence):
        super().__init__(base.lattice)
        self.base = base
        self.shifts = [(frozenset(a), float(c)) for a, c in shifts]
        self.finite_range = base.finite_range

    def terms_touching(self, region):
        region = frozenset(region)
        terms = list(self.base.terms_touching(region))
        for a, c in self.shifts:
            if a & region and c != 0.0:
                terms.append(InteractionTerm(a, lambda s, c=c: c))
        return terms

    def hamiltonian(self, region, sigma):
        region = frozenset(region)
        extra = [c for a, c in self.shifts if a & region]
        return math.fsum([self.base.hamiltonian(region, sigma)] + extra)


def shift_potential(phi: Potential, shifts: Sequence) -> Potential:
    """Return ``phi`` with constant shifts ``[(support, c), ...]``; equivalent to ``phi``."""
    return ShiftedPotential(phi, shifts)


class ScaledPotential(Potential):
    """Every term of ``base`` multiplied by ``factor``; not equivalent to ``base`` unless factor is 1."""

    kind = "scaled"

    def __init__(self, base: Potential, factor: float):
        super().__init__(base.lattice)
        self.base = base
        self.factor = float(factor)
        self.finite_range = base.finite_range

    def terms_touching(self, region):
        f = self.factor
        return [InteractionTerm(t.support, lambda s, g=t.fn: f * g(s)) for t in self.base.terms_touching(region)]

    def hamiltonian(self, region, sigma):
        return self.factor * self.base.hamiltonian(region, sigma)


class _FactorView:
    __slots__ = ("sigma", "i")

    def __init__(self, sigma, i):
        self.sigma = sigma
        self.i = i

    def value(self, site):
        return self.sigma.value((self.i, site))


class DirectSumPotential(Potential):
    """Non-interacting sum of potentials living on the factors of a disjoint union."""

    kind = "direct_sum"

    def __init__(self, lattice, factors: Sequence[Potential]):
        super().__init__(lattice)
        self.factors = list(factors)
        self.finite_range = all(f.finite_range for f in factors)

    def _split(self, region):
        parts = [set() for _ in self.factors]
        for i, s in region:
            parts[i].add(s)
        return parts

    def terms_touching(self, region):
        terms = []
        for i, (phi, part) in enumerate(zip(self.factors, self._split(region))):
            if not part:
                continue
            for t in phi.terms_touching(part):
                support = frozenset((i, s) for s in t.support)
                terms.append(InteractionTerm(support, lambda s, f=t.fn, i=i: f(_FactorView(s, i))))
        return terms

    def hamiltonian(self, region, sigma):
        total = []
        for i, (phi, part) in enumerate(zip(self.factors, self._split(region))):
            if not part:
                continue
            view = restrict(sigma, i) if isinstance(sigma, Configuration) else _FactorView(sigma, i)
            total.append(phi.hamiltonian(part, view))
        return math.fsum(total)


def direct_sum_potentials(lattice, factors: Sequence[Potential]) -> Potential:
    if not 1 <= len(factors) <= 4:
        raise ValidationError("direct sums take 1 to 4 factors")
    return DirectSumPotential(lattice, factors)


class _PullbackView:
    """Values of ``tau^{-1} nu`` computed lazily from a view of ``nu``."""

    __slots__ = ("nu", "tau")

    def __init__(self, nu, tau):
        self.nu = nu
        self.tau = tau

    def value(self, site):
        y = self.tau.forward(site)
        return self.tau.unmap(y, self.nu.value(y))


class TauImagePotential(Potential):
    """The transported potential: term on ``tau_*A`` is the base term on ``A`` composed with ``tau^{-1}``."""

    kind = "tau_image"

    def __init__(self, base: Potential, tau):
        super().__init__(base.lattice)
        self.base = base
        self.tau = tau
        self.finite_range = base.finite_range

    def terms_touching(self, region):
        tau = self.tau
        pre = {tau.backward(x) for x in region}
        terms = []
        for t in self.base.terms_touching(pre):
            support = frozenset(tau.forward(x) for x in t.support)
            terms.append(InteractionTerm(support, lambda s, f=t.fn: f(_PullbackView(s, self.tau))))
        return terms

    def hamiltonian(self, region, sigma):
        pre = {self.tau.backward(x) for x in region}
        if isinstance(sigma, Configuration) and not self.lattice.is_finite:
            return self.base.hamiltonian(pre, self.tau.inverse().apply(sigma))
        return math.fsum(t.fn(sigma) for t in self.terms_touching(region))


def tau_image_potential(phi: Potential, tau) -> Potential:
    tau.check_lattice(phi.lattice)
    return TauImagePotential(phi, tau)


# ---------------------------------------------------------------------------
# helpers used by equivalence probes


def hamiltonian_spread(phi: Potential, psi: Potential, region, base: Configuration, spins: SpinSet,
                       lattice=None) -> float:
    """Spread of ``H^phi - H^psi`` on ``region`` over all local assignments with ``base`` outside.

    Zero spread on every region is what equivalence of potentials means;
    a positive spread is a witness that the two are not equivalent.
    """
    lattice = lattice or phi.lattice
    region = sorted(region)
    diffs = []
    for labels in itertools.product(spins.labels, repeat=len(region)):
        sigma = lattice.config(base.tail, dict(base.overrides) | dict(zip(region, labels)))
        diffs.append(phi.hamiltonian(region, sigma) - psi.hamiltonian(region, sigma))
    return max(diffs) - min(diffs)


@dataclass
class RangeInfo:
    finite_range: bool
    kind: str


def is_finite_range(phi: Potential) -> bool:
    return phi.finite_range
