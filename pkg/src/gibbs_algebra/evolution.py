"""The evolution algebra on ordered pairs of configurations.

Only diagonal products survive: ``e_{s,n} e_{s,n} = sum c2[(s,n),(z,x)] e_{z,x}``
over pairs of offspring, and every product of two distinct basis pairs is
zero.  The pair coefficients are normalised Boltzmann weights of the product
measure on the squared offspring set; they factor as products of genetic
coefficients, which the test suites check against an independent evaluation.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from .errors import InfiniteRange, NotFertile, SupportTooLarge
from .lattice import Configuration, discrepancy

IDEMPOTENT_SUPPORT_BOUND = 6


class PairElement:
    """Finite linear combination of ordered basis pairs ``e_{sigma, eta}``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping] = None):
        self.terms = {k: float(v) for k, v in (terms or {}).items() if v != 0.0}

    @classmethod
    def basis(cls, sigma, eta, coeff: float = 1.0) -> "PairElement":
        return cls({(sigma, eta): coeff})

    def __add__(self, other):
        acc = defaultdict(list)
        for k, v in itertools.chain(self.terms.items(), other.terms.items()):
            acc[k].append(v)
        return PairElement({k: math.fsum(vs) for k, vs in acc.items()})

    def __sub__(self, other):
        return self + (-1.0) * other

    def __rmul__(self, scalar: float):
        return PairElement({k: scalar * v for k, v in self.terms.items()})

    def __getitem__(self, key) -> float:
        return self.terms.get(key, 0.0)

    def __len__(self):
        return len(self.terms)

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0][0].sort_key(), kv[0][1].sort_key()))

    def max_abs(self) -> float:
        return max((abs(v) for v in self.terms.values()), default=0.0)

    def __eq__(self, other):
        if not isinstance(other, PairElement):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self):
        body = " + ".join(f"{v:.6g}*e({a!r},{b!r})" for (a, b), v in self.items())
        return f"PairElement({body or '0'})"


@dataclass
class EvoCoefficientMatrix:
    pair: tuple
    entries: dict = field(default_factory=dict)

    def total(self) -> float:
        return math.fsum(self.entries.values())


def evo_coefficient_matrix(model, sigma: Configuration, eta: Configuration) -> EvoCoefficientMatrix:
    """Pair coefficients from the product weights on the squared offspring set.

    Each pair ``(z, x)`` gets log-weight ``logh(z) + logh(x)`` on the
    discrepancy set and the whole square is normalised at once.
    """
    d = discrepancy(sigma, eta)
    if d is None:
        return EvoCoefficientMatrix((sigma, eta), {})
    if not d:
        return EvoCoefficientMatrix((sigma, eta), {(sigma, sigma): 1.0})
    kids = model.offspring(sigma, eta)
    logh = [model.potential.log_boltzmann(d, s) for s in kids]
    pairs = [(i, j) for i in range(len(kids)) for j in range(len(kids))]
    logs = [logh[i] + logh[j] for i, j in pairs]
    m = max(logs)
    w = [math.exp(v - m) for v in logs]
    total = math.fsum(w)
    entries = {(kids[i], kids[j]): x / total for (i, j), x in zip(pairs, w)}
    return EvoCoefficientMatrix((sigma, eta), entries)


def _square(model, key) -> dict:
    sigma, eta = key
    coeffs = model.coefficients(sigma, eta)
    return {(a, b): ca * cb for a, ca in coeffs for b, cb in coeffs}


def evo_product(model, u: PairElement, v: PairElement) -> PairElement:
    """Bilinear product; only matching basis pairs contribute."""
    acc = defaultdict(list)
    for key in sorted(set(u.terms) & set(v.terms), key=lambda k: (k[0].sort_key(), k[1].sort_key())):
        w = u.terms[key] * v.terms[key]
        for out, c in _square(model, key).items():
            acc[out].append(w * c)
    return PairElement({k: math.fsum(vs) for k, vs in acc.items()})


def is_idempotent(model, u: PairElement, bound: int = IDEMPOTENT_SUPPORT_BOUND, tol: float = 1e-12) -> bool:
    if len(u) > bound:
        raise SupportTooLarge(f"support {len(u)} exceeds the bound {bound}")
    sq = evo_product(model, u, u)
    keys = set(sq.terms) | set(u.terms)
    return all(abs(sq[k] - u[k]) <= tol for k in keys)


def is_markov_pair(sigma: Configuration, eta: Configuration) -> bool:
    return discrepancy(sigma, eta) is not None


# ---------------------------------------------------------------------------
# the fertile-ideal correspondence


def _g(omega, sigma_ref, eta_ref, x):
    # keep omega where it departs from the target reference, else use the source reference
    return omega.value(x) if omega.value(x) != eta_ref.value(x) else sigma_ref.value(x)


def fertile_ideal_iso_map(model, sigma_ref: Configuration, eta_ref: Configuration,
                          zeta: Configuration, xi: Configuration) -> tuple:
    """Send a pair of the ``sigma_ref`` class to a pair of the ``eta_ref`` class.

    On the closure of the pair's discrepancy both configurations are kept;
    on the remaining sites where ``zeta`` departs from ``sigma_ref`` the
    label is kept if it also departs from ``eta_ref`` and replaced by the
    ``sigma_ref`` label otherwise; everywhere else both become ``eta_ref``.
    Swapping the two references gives the inverse map.
    """
    phi = model.potential
    if not phi.finite_range:
        raise InfiniteRange("the fertile-ideal map needs a finite-range potential")
    d_sz = discrepancy(sigma_ref, zeta)
    d_zx = discrepancy(zeta, xi)
    if d_sz is None or d_zx is None:
        raise NotFertile("both configurations must lie in the fertile class of the source reference")
    cl = phi.closure(d_zx) if d_zx else frozenset()
    lam = d_sz - cl
    z_upd = {x: zeta.value(x) for x in cl}
    x_upd = {x: xi.value(x) for x in cl}
    for x in lam:
        z_upd[x] = _g(zeta, sigma_ref, eta_ref, x)
        x_upd[x] = _g(xi, sigma_ref, eta_ref, x)
    return eta_ref.with_values(z_upd), eta_ref.with_values(x_upd)


def fertile_ideal_iso_inverse(model, sigma_ref, eta_ref, zeta_p, xi_p) -> tuple:
    return fertile_ideal_iso_map(model, eta_ref, sigma_ref, zeta_p, xi_p)


def local_transfer(omega: Configuration, dst: Configuration, region) -> Configuration:
    """``dst`` with the labels of ``omega`` copied on ``region``."""
    return dst.with_values({x: omega.value(x) for x in region})


@dataclass
class IsoReport:
    samples: int
    max_deviation: float
    discrepancy_preserved: bool
    injective: bool
    round_trip: bool
    pointwise_offspring_misses: int
    comparisons: int
    witnesses: list = field(default_factory=list)


def check_iso_coefficients(model, sigma_ref: Configuration, eta_ref: Configuration,
                           samples: Iterable) -> IsoReport:
    """Compare pair coefficients of ``(zeta, xi)`` and its image ``(zeta', xi')``.

    The image offspring pair is matched through the discrepancy: offspring of
    ``(zeta, xi)`` differ from ``zeta`` only inside the discrepancy set, and
    the matching offspring of the image carry the same labels there on top
    of ``zeta'``.  As a diagnostic the report also counts offspring pairs
    whose pointwise image under the map falls outside the image's squared
    offspring set.
    """
    samples = list(samples)
    worst = 0.0
    preserved = True
    round_trip = True
    misses = 0
    count = 0
    images = {}
    witnesses = []
    for zeta, xi in samples:
        zp, xp = fertile_ideal_iso_map(model, sigma_ref, eta_ref, zeta, xi)
        images.setdefault((zp, xp), set()).add((zeta, xi))
        d = discrepancy(zeta, xi)
        if discrepancy(zp, xp) != d:
            preserved = False
        if fertile_ideal_iso_inverse(model, sigma_ref, eta_ref, zp, xp) != (zeta, xi):
            round_trip = False
            witnesses.append({"zeta": repr(zeta), "xi": repr(xi)})
        left = evo_coefficient_matrix(model, zeta, xi).entries
        right = evo_coefficient_matrix(model, zp, xp).entries
        for (w1, w2), c in left.items():
            m1 = local_transfer(w1, zp, d)
            m2 = local_transfer(w2, zp, d)
            c2 = right.get((m1, m2))
            if c2 is None:
                worst = math.inf
                continue
            worst = max(worst, abs(c - c2))
            count += 1
            f1, f2 = fertile_ideal_iso_map(model, sigma_ref, eta_ref, w1, w2)
            if (f1, f2) not in right:
                misses += 1
    injective = all(len(v) == 1 for v in images.values())
    return IsoReport(len(samples), worst, preserved, injective, round_trip, misses, count, witnesses)
