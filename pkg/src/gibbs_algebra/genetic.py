"""The genetic algebra spanned by configurations.

Basis elements ``e_sigma`` multiply as ``e_zeta * e_eta = sum_sigma c[zeta, eta, sigma] e_sigma``
where ``sigma`` runs over the offspring of the pair and the coefficient is the
normalised Boltzmann weight of ``sigma`` on the discrepancy set.  Pairs that
differ on infinitely many sites have no offspring and multiply to zero.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from .errors import ClassMismatch, InfiniteRange, NotFertile
from .lattice import Configuration, discrepancy


class AlgebraElement:
    """Finite formal linear combination of basis configurations."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping] = None):
        self.terms = {k: float(v) for k, v in (terms or {}).items() if v != 0.0}

    @classmethod
    def basis(cls, sigma: Configuration, coeff: float = 1.0) -> "AlgebraElement":
        return cls({sigma: coeff})

    @classmethod
    def from_terms(cls, pairs: Iterable) -> "AlgebraElement":
        acc = defaultdict(list)
        for k, v in pairs:
            acc[k].append(v)
        return cls({k: math.fsum(vs) for k, vs in acc.items()})

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        return AlgebraElement.from_terms(list(self.terms.items()) + list(other.terms.items()))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-1.0) * other

    def __rmul__(self, scalar: float) -> "AlgebraElement":
        return AlgebraElement({k: scalar * v for k, v in self.terms.items()})

    def __neg__(self):
        return (-1.0) * self

    def __getitem__(self, sigma) -> float:
        return self.terms.get(sigma, 0.0)

    def __contains__(self, sigma) -> bool:
        return sigma in self.terms

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms))

    def items(self):
        return sorted(self.terms.items())

    def norm1(self) -> float:
        return math.fsum(abs(v) for v in self.terms.values())

    def max_abs(self) -> float:
        return max((abs(v) for v in self.terms.values()), default=0.0)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self):
        body = " + ".join(f"{v:.6g}*e{k!r}" for k, v in self.items())
        return f"AlgebraElement({body or '0'})"


@dataclass
class CoefficientVector:
    pair: tuple
    entries: dict = field(default_factory=dict)

    @property
    def fertile(self) -> bool:
        return bool(self.entries)

    def total(self) -> float:
        return math.fsum(self.entries.values())

    def as_element(self) -> AlgebraElement:
        return AlgebraElement(self.entries)


def coefficient_vector(model, zeta: Configuration, eta: Configuration) -> CoefficientVector:
    return CoefficientVector((zeta, eta), dict(model.coefficients(zeta, eta)))


def _pair_weights(u: AlgebraElement, v: AlgebraElement) -> list:
    # unordered support pairs with weight u_a v_b + u_b v_a, so that the
    # product is commutative bit for bit
    pairs = set()
    for a in u.terms:
        for b in v.terms:
            pairs.add((a, b) if not b < a else (b, a))
    out = []
    for lo, hi in sorted(pairs):
        if lo == hi:
            w = u[lo] * v[lo]
        else:
            w = u[lo] * v[hi] + u[hi] * v[lo]
        if w != 0.0:
            out.append((lo, hi, w))
    return out


def product(model, u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
    acc = defaultdict(list)
    for lo, hi, w in _pair_weights(u, v):
        for sigma, c in model.coefficients(lo, hi):
            acc[sigma].append(w * c)
    return AlgebraElement({k: math.fsum(vs) for k, vs in acc.items()})


def associator(model, u: AlgebraElement, v: AlgebraElement, w: AlgebraElement) -> AlgebraElement:
    """``(u v) w - u (v w)``."""
    return product(model, product(model, u, v), w) - product(model, u, product(model, v, w))


def fertile_class_id(model, sigma: Configuration) -> str:
    return sigma.tail.id


def pi_functional(model, class_id: str, u: AlgebraElement) -> float:
    """Sum of the coefficients of ``u`` on the basis elements of one fertile class."""
    return math.fsum(v for k, v in u.terms.items() if k.tail.id == class_id)


# ---------------------------------------------------------------------------
# principal ideals


@dataclass
class PrincipalIdealReport:
    eta: Configuration
    zeta: Configuration
    depth: int
    weights: dict
    reconstructed: AlgebraElement
    residual: float


def express_in_principal_ideal(model, eta: Configuration, zeta: Configuration,
                               printed_sign: bool = False, digits: Optional[int] = 40) -> PrincipalIdealReport:
    """Write ``e_zeta`` as ``sum_k W[k] * (e_eta e_k)``, an element of the principal ideal of ``e_eta``.

    The weights come from ``e_eta e_zeta = sum_xi c[xi] e_xi``, solved for
    ``e_zeta`` and applied recursively to the other offspring, which are
    strictly closer to ``eta``.  The reconstruction is then evaluated with the
    algebra product and compared with ``e_zeta``.  ``printed_sign=True``
    flips the sign of the solved identity (used to show that variant fails).

    Weights grow like ``1 / c`` and so reach ``exp(H)`` for costly targets;
    in double precision the reconstruction cannot cancel below roughly
    ``1e-16 / min c``.  With ``digits`` set, coefficients, weights and the
    reconstruction are carried in mpmath at that many significant digits,
    starting from the same double-precision Hamiltonian values.  Pass
    ``digits=None`` for the plain float computation.
    """
    d = discrepancy(eta, zeta)
    if d is None:
        raise NotFertile(f"{zeta!r} is not in the fertile class of {eta!r}")
    if digits is None:
        return _principal_ideal(model, eta, zeta, printed_sign, _FloatArith(model))
    import mpmath

    with mpmath.workdps(digits):
        return _principal_ideal(model, eta, zeta, printed_sign, _MpArith(model, mpmath))


class _FloatArith:
    def __init__(self, model):
        self.model = model
        self.one = 1.0
        self.fsum = math.fsum

    def coefficients(self, a, b) -> dict:
        return dict(self.model.coefficients(a, b))

    def to_float(self, x) -> float:
        return x


class _MpArith:
    def __init__(self, model, mp):
        self.model = model
        self.mp = mp
        self.one = mp.mpf(1)
        self.fsum = mp.fsum
        self._cache = {}

    def coefficients(self, a, b) -> dict:
        key = (a, b) if not b < a else (b, a)
        hit = self._cache.get(key)
        if hit is None:
            dd = discrepancy(*key)
            kids = self.model.offspring(*key) if dd else [key[0]]
            if not dd:
                hit = {key[0]: self.one}
            else:
                logh = [self.mp.mpf(self.model.potential.log_boltzmann(dd, s)) for s in kids]
                m = max(logh)
                w = [self.mp.exp(v - m) for v in logh]
                total = self.mp.fsum(w)
                hit = {s: x / total for s, x in zip(kids, w)}
            self._cache[key] = hit
        return hit

    def to_float(self, x) -> float:
        return float(x)


def _principal_ideal(model, eta, zeta, printed_sign, ar) -> PrincipalIdealReport:
    memo = {}
    depth = [0]

    def weights(target, level):
        depth[0] = max(depth[0], level)
        if target in memo:
            return memo[target]
        if target == eta:
            res = {eta: ar.one}
        else:
            coeffs = ar.coefficients(eta, target)
            c_t = coeffs[target]
            acc = defaultdict(list)
            acc[target].append(ar.one / c_t)
            for xi, c in coeffs.items():
                if xi == target:
                    continue
                for k, w in weights(xi, level + 1).items():
                    acc[k].append(-c * w / c_t)
            res = {k: ar.fsum(v) for k, v in acc.items()}
            if printed_sign:
                res = {k: -w for k, w in res.items()}
        memo[target] = res
        return res

    w = weights(zeta, 0)
    acc = defaultdict(list)
    for k in sorted(w):
        for s, c in ar.coefficients(eta, k).items():
            acc[s].append(w[k] * c)
    acc[zeta].append(-ar.one)
    diff = {s: ar.fsum(v) for s, v in acc.items()}
    residual = ar.to_float(ar.fsum(abs(v) for v in diff.values()))
    recon = AlgebraElement({s: ar.to_float(v) for s, v in diff.items()}) + AlgebraElement.basis(zeta)
    return PrincipalIdealReport(eta, zeta, depth[0], {k: ar.to_float(v) for k, v in w.items()}, recon, residual)


# ---------------------------------------------------------------------------
# embedding into a finite-volume algebra


@dataclass
class EmbeddingReport:
    region: frozenset
    enlarged: frozenset
    images: dict
    max_deviation: float
    offspring_mismatches: int
    comparisons: int


def embed_finite_subalgebra(model, basis_configs, lam_prime: Optional[Iterable] = None,
                            xi: Optional[Configuration] = None) -> EmbeddingReport:
    """Map a finite family of configurations into the finite algebra on a window.

    The window is the interaction closure of all pairwise discrepancies;
    ``sigma`` goes to its restriction there, padded with ``xi`` on
    ``lam_prime`` minus the window.  Coefficients of the finite algebra with
    boundary ``xi`` are computed by exhaustive enumeration and compared with
    the infinite-volume coefficients.
    """
    from .oracle import FiniteModel

    phi = model.potential
    if not phi.finite_range:
        raise InfiniteRange("embedding needs a finite-range potential")
    configs = sorted(set(basis_configs))
    if not configs:
        raise ClassMismatch("empty basis")
    cls = configs[0].tail.id
    union = set()
    for a in configs:
        if a.tail.id != cls:
            raise ClassMismatch(f"{a!r} is not in class {cls}")
    for a in configs:
        for b in configs:
            union |= discrepancy(a, b)
    lam = phi.closure(union) if union else frozenset()
    lam_p = frozenset(lam_prime) if lam_prime is not None else lam
    if not lam <= lam_p:
        raise ClassMismatch("the enlarged window must contain the closure")
    if xi is None:
        xi = configs[0]
    region = sorted(lam_p)

    def image(sigma):
        return tuple(sigma.value(x) if x in lam else xi.value(x) for x in region)

    images = {s: image(s) for s in configs}
    if not region:
        return EmbeddingReport(lam, lam_p, images, 0.0, 0, 0)
    fm = FiniteModel.from_region(model, region, xi)
    table = fm.enumerate_measure()
    worst = 0.0
    mismatches = 0
    count = 0
    for a in configs:
        for b in configs:
            coeffs = model.coefficients(a, b)
            fa, fb = images[a], images[b]
            bar = set(fm.offspring_assignments(fa, fb))
            mapped = {image(s) for s, _ in coeffs}
            if bar != mapped:
                mismatches += 1
            for s, c in coeffs:
                fs = image(s)
                if fs not in bar:
                    continue
                worst = max(worst, abs(c - table.genetic_coefficient(fm, fa, fb, fs)))
                count += 1
    return EmbeddingReport(lam, lam_p, images, worst, mismatches, count)
