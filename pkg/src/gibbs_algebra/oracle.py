"""Exact Gibbs measures on finite lattices by exhaustive enumeration.

This module is the reference against which the infinite-volume coefficients
are tested.  It shares nothing with the coefficient pipeline beyond the
interaction terms themselves: offspring sets are recomputed by filtering all
assignments cluster by cluster, and probabilities come from one global
normalisation over the whole state space.

Assignments are tuples of labels in site order.  The enumeration order is
``itertools.product`` order, so the integer code of an assignment is its
base-``q`` expansion.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import NotOffspring, TooLarge

DEFAULT_ENUM_CAP = 2 ** 20


def enumeration_cap() -> int:
    raw = os.environ.get("GGA_ENUM_CAP")
    return int(raw) if raw else DEFAULT_ENUM_CAP


def _logsumexp(x: np.ndarray) -> float:
    m = float(np.max(x))
    return m + math.log(math.fsum(np.exp(x - m).tolist()))


class _MergedView:
    __slots__ = ("local", "boundary")

    def __init__(self, local, boundary):
        self.local = local
        self.boundary = boundary

    def value(self, site):
        v = self.local.get(site)
        if v is None:
            return self.boundary.value(site)
        return v


@dataclass
class MeasureTable:
    """Log-probabilities of every assignment plus the log partition function."""

    q: int
    n: int
    log_probs: np.ndarray
    log_z: float

    def code(self, assignment) -> int:
        c = 0
        for a in assignment:
            c = c * self.q + a
        return c

    def log_prob(self, assignment) -> float:
        return float(self.log_probs[self.code(assignment)])

    def prob(self, assignment) -> float:
        return math.exp(self.log_prob(assignment))

    @property
    def probabilities(self) -> np.ndarray:
        return np.exp(self.log_probs)

    def genetic_coefficient(self, fm: "FiniteModel", zeta, eta, sigma) -> float:
        """``mu(sigma) / mu(offspring set of zeta, eta)``."""
        codes = fm.offspring_codes(zeta, eta)
        c = self.code(sigma)
        if c not in set(codes.tolist()):
            raise NotOffspring(f"{sigma} is not an offspring of {zeta}, {eta}")
        return math.exp(self.log_probs[c] - _logsumexp(self.log_probs[codes]))

    def evolution_coefficient(self, fm: "FiniteModel", zeta, xi, eta, sigma) -> float:
        """``mu(eta) mu(sigma) / (mu x mu)(offspring set squared)``."""
        codes = fm.offspring_codes(zeta, xi)
        members = set(codes.tolist())
        ce, cs = self.code(eta), self.code(sigma)
        if ce not in members or cs not in members:
            raise NotOffspring(f"({eta}, {sigma}) is not an offspring pair of {zeta}, {xi}")
        lz = _logsumexp(self.log_probs[codes])
        return math.exp(self.log_probs[ce] + self.log_probs[cs] - 2.0 * lz)


class FiniteModel:
    """A fully enumerable spin system: sites, ``q`` labels, local energy tables and clusters."""

    def __init__(self, sites: Sequence, q: int, terms: Sequence, cluster_of: dict):
        self.sites = list(sites)
        self.q = int(q)
        self.index = {x: i for i, x in enumerate(self.sites)}
        # each term: (tuple of column indices, ndarray of energies indexed by their labels)
        self.terms = list(terms)
        self.cluster_of = dict(cluster_of)
        self._all = None
        self._table = None

    @classmethod
    def from_region(cls, model, region, boundary) -> "FiniteModel":
        """Finite system on ``region`` with spins outside frozen to ``boundary``.

        Every interaction term meeting the region is tabulated over the labels
        of its sites inside the region, the rest read from ``boundary``.
        """
        region = sorted(region)
        inside = set(region)
        index = {x: i for i, x in enumerate(region)}
        terms = []
        for term in model.potential.terms_touching(inside):
            local = sorted(term.support & inside, key=index.get)
            table = np.empty((model.spins.q,) * len(local))
            for labels in itertools.product(range(model.spins.q), repeat=len(local)):
                table[labels] = term.fn(_MergedView(dict(zip(local, labels)), boundary))
            terms.append((tuple(index[x] for x in local), table))
        clusters = {x: model.clusters.cluster_of(x) for x in region}
        return cls(region, model.spins.q, terms, clusters)

    @classmethod
    def from_model(cls, model) -> "FiniteModel":
        """The whole of a model that lives on a finite lattice."""
        zero = model.lattice.config(model.lattice.zero_tail())
        return cls.from_region(model, model.lattice.sites(), zero)

    @property
    def size(self) -> int:
        return self.q ** len(self.sites)

    def all_assignments(self) -> np.ndarray:
        if self._all is None:
            n = len(self.sites)
            if self.size > enumeration_cap():
                raise TooLarge(f"{self.q}^{n} assignments exceed the enumeration cap {enumeration_cap()}")
            grid = np.indices((self.q,) * n, dtype=np.int8).reshape(n, -1).T
            self._all = grid
        return self._all

    def energies(self) -> np.ndarray:
        states = self.all_assignments()
        energy = np.zeros(states.shape[0])
        for cols, table in self.terms:
            if cols:
                energy += table[tuple(states[:, c] for c in cols)]
            else:
                energy += float(table)
        return energy

    def enumerate_measure(self) -> MeasureTable:
        if self._table is None:
            logw = -self.energies()
            log_z = _logsumexp(logw)
            self._table = MeasureTable(self.q, len(self.sites), logw - log_z, log_z)
        return self._table

    def offspring_codes(self, zeta, eta) -> np.ndarray:
        """Codes of all assignments that copy ``zeta`` or ``eta`` on each whole cluster."""
        states = self.all_assignments()
        z = np.asarray(zeta)
        e = np.asarray(eta)
        mask = np.ones(states.shape[0], dtype=bool)
        groups = {}
        for i, x in enumerate(self.sites):
            groups.setdefault(self.cluster_of[x], []).append(i)
        for cols in groups.values():
            block = states[:, cols]
            mask &= np.all(block == z[cols], axis=1) | np.all(block == e[cols], axis=1)
        return np.nonzero(mask)[0]

    def offspring_assignments(self, zeta, eta) -> list:
        states = self.all_assignments()
        return [tuple(int(v) for v in states[c]) for c in self.offspring_codes(zeta, eta)]

    def conditional_from_table(self, region, boundary) -> dict:
        """Law of the spins on ``region`` given the other sites, read off the joint table."""
        table = self.enumerate_measure()
        states = self.all_assignments()
        cols = [self.index[x] for x in region]
        rest = [i for i in range(len(self.sites)) if i not in cols]
        b = np.asarray([boundary[self.sites[i]] for i in rest])
        mask = np.all(states[:, rest] == b, axis=1) if rest else np.ones(states.shape[0], dtype=bool)
        codes = np.nonzero(mask)[0]
        lz = _logsumexp(table.log_probs[codes])
        return {tuple(int(v) for v in states[c][cols]): math.exp(table.log_probs[c] - lz) for c in codes}


def gibbs_conditional(model, region, boundary) -> dict:
    """Finite-volume Gibbs distribution on ``region`` with boundary condition ``boundary``.

    Computed directly from the local Hamiltonian: each local assignment gets
    weight ``exp(-H_region)`` and the weights are normalised.
    """
    region = sorted(region)
    logs = {}
    for labels in itertools.product(range(model.spins.q), repeat=len(region)):
        sigma = boundary.with_values(dict(zip(region, labels)))
        logs[labels] = model.potential.log_boltzmann(region, sigma)
    m = max(logs.values())
    w = {k: math.exp(v - m) for k, v in logs.items()}
    total = math.fsum(w.values())
    return {k: v / total for k, v in w.items()}


def config_to_assignment(sigma, sites) -> tuple:
    return tuple(sigma.value(x) for x in sites)


def assignment_to_config(model, assignment, sites):
    return model.lattice.config(model.lattice.zero_tail(), dict(zip(sites, assignment)))


@dataclass
class EquivalenceReport:
    samples: int
    max_genetic: float
    max_evolution: float
    offspring_mismatches: int
    comparisons: int


def compare_finite_equivalence(model, n_samples: int, seed: int = 0,
                               fm: Optional[FiniteModel] = None) -> EquivalenceReport:
    """Compare coefficients on a finite lattice with the enumerated measure.

    Pairs are drawn uniformly from all ordered pairs of assignments (on a
    finite lattice every pair is fertile).  For each pair every offspring
    and every offspring pair is compared.
    """
    from .evolution import evo_coefficient_matrix

    fm = fm or FiniteModel.from_model(model)
    table = fm.enumerate_measure()
    sites = fm.sites
    rng = np.random.default_rng(seed)
    worst_a = worst_b = 0.0
    mismatches = 0
    count = 0
    for _ in range(n_samples):
        za = tuple(int(v) for v in rng.integers(0, fm.q, len(sites)))
        ea = tuple(int(v) for v in rng.integers(0, fm.q, len(sites)))
        zeta = assignment_to_config(model, za, sites)
        eta = assignment_to_config(model, ea, sites)
        coeffs = model.coefficients(zeta, eta)
        codes = fm.offspring_codes(za, ea)
        pos = {int(c): i for i, c in enumerate(codes)}
        code_of = {s: table.code(config_to_assignment(s, sites)) for s, _ in coeffs}
        kids = {code_of[s]: c for s, c in coeffs}
        if set(kids) != set(pos):
            mismatches += 1
            continue
        lp = table.log_probs[codes]
        lz = _logsumexp(lp)
        a = np.exp(lp - lz)
        b = np.exp(lp[:, None] + lp[None, :] - 2.0 * lz)
        for code, c in kids.items():
            worst_a = max(worst_a, abs(c - float(a[pos[code]])))
        evo = evo_coefficient_matrix(model, zeta, eta)
        for (w1, w2), c in evo.entries.items():
            i = pos[code_of[w1]]
            j = pos[code_of[w2]]
            worst_b = max(worst_b, abs(c - float(b[i, j])))
            count += 1
    return EquivalenceReport(n_samples, worst_a, worst_b, mismatches, count)
