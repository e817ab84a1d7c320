"""Lattices, periodic tail patterns and tail-plus-override configurations.

A configuration on an infinite lattice is stored as a periodic *tail*
together with a finite map of *overrides*.  Two configurations with
periodic tails either share their tail (as a function) and then differ on a
finite set of sites, or their tails differ on a whole residue class and the
pair is macroscopic.  ``discrepancy`` returns ``None`` in that second case.

Sites are plain ints on one-dimensional lattices (``Z``, ``N0``, ``chain``),
2-tuples on two-dimensional ones (``Z2``, ``grid``) and ``(factor, site)``
tuples on disjoint unions.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence, Union

from .errors import ValidationError

Site = Union[int, tuple]
Region = frozenset


@dataclass(frozen=True)
class SpinSet:
    """Spin labels ``0..q-1`` with an optional numeric value per label."""

    q: int
    values: Optional[tuple] = None

    def __post_init__(self):
        if self.q < 2:
            raise ValidationError(f"spin count q must satisfy q >= 2, got {self.q}")
        if self.values is not None:
            vals = tuple(float(v) for v in self.values)
            if len(vals) != self.q:
                raise ValidationError("spin values must list exactly q numbers")
            if len(set(vals)) != self.q:
                raise ValidationError("spin values must be distinct")
            object.__setattr__(self, "values", vals)

    def value(self, label: int) -> float:
        if self.values is None:
            return float(label)
        return self.values[label]

    @property
    def labels(self) -> range:
        return range(self.q)


# ---------------------------------------------------------------------------
# tails


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


class PeriodicTail:
    """A periodic spin pattern on Z^d (or N0), given on its fundamental domain.

    ``table`` is flattened row-major over ``period``.  Equality and hashing
    use the minimal-period form, so two presentations of the same function
    compare equal.
    """

    __slots__ = ("period", "table", "_canon")

    def __init__(self, period: Sequence[int], table: Sequence[int]):
        period = tuple(int(p) for p in period)
        table = tuple(int(v) for v in table)
        if not period or any(p < 1 for p in period):
            raise ValidationError(f"tail period must be positive, got {period}")
        if len(table) != math.prod(period):
            raise ValidationError(
                f"tail table has {len(table)} entries, period {period} needs {math.prod(period)}"
            )
        self.period = period
        self.table = table
        self._canon = None

    @classmethod
    def constant(cls, label: int, dim: int = 1) -> "PeriodicTail":
        return cls((1,) * dim, (label,))

    @classmethod
    def from_pattern(cls, pattern) -> "PeriodicTail":
        """Build from a flat list (1D) or a list of rows (2D)."""
        if pattern and isinstance(pattern[0], (list, tuple)):
            rows = [list(r) for r in pattern]
            if len({len(r) for r in rows}) != 1:
                raise ValidationError("2D tail pattern rows must have equal length")
            return cls((len(rows), len(rows[0])), [v for r in rows for v in r])
        return cls((len(pattern),), pattern)

    @property
    def dim(self) -> int:
        return len(self.period)

    @property
    def is_constant(self) -> bool:
        return len(set(self.table)) == 1

    def _index(self, site) -> int:
        if isinstance(site, tuple):
            idx = 0
            for x, p in zip(site, self.period):
                idx = idx * p + x % p
            return idx
        return site % self.period[0]

    def value(self, site) -> int:
        if len(self.table) == 1:
            return self.table[0]
        return self.table[self._index(site)]

    def domain(self, period: Optional[Sequence[int]] = None):
        """Iterate over the sites of the fundamental domain of ``period``."""
        period = tuple(period or self.period)
        if len(period) == 1:
            yield from range(period[0])
        else:
            yield from itertools.product(*(range(p) for p in period))

    def canonical(self) -> "PeriodicTail":
        if self._canon is not None:
            return self._canon
        if self.is_constant:
            canon = PeriodicTail((1,) * self.dim, (self.table[0],))
        else:
            period = list(self.period)
            for axis in range(self.dim):
                for d in _divisors(period[axis]):
                    trial = list(period)
                    trial[axis] = d
                    if all(
                        self.value(x) == self.value(_reduce(x, trial))
                        for x in self.domain(period)
                    ):
                        period = trial
                        break
            canon = PeriodicTail(period, [self.value(x) for x in self.domain(period)])
        canon._canon = canon
        self._canon = canon
        return canon

    @property
    def id(self) -> str:
        c = self.canonical()
        if c.is_constant:
            return f"const{c.table[0]}"
        shape = "x".join(str(p) for p in c.period)
        return f"per{shape}:" + ",".join(str(v) for v in c.table)

    def sort_key(self):
        c = self.canonical()
        return (0, c.period, c.table)

    def __eq__(self, other):
        if not isinstance(other, PeriodicTail):
            return NotImplemented
        a, b = self.canonical(), other.canonical()
        return a.period == b.period and a.table == b.table

    def __hash__(self):
        c = self.canonical()
        return hash((c.period, c.table))

    def __repr__(self):
        return f"PeriodicTail({self.id})"


def _reduce(site, period):
    if isinstance(site, tuple):
        return tuple(x % p for x, p in zip(site, period))
    return site % period[0]


class ProductTail:
    """Tail of a configuration on a disjoint union: one tail per factor."""

    __slots__ = ("parts",)

    def __init__(self, parts: Sequence):
        self.parts = tuple(p.canonical() for p in parts)

    def value(self, site) -> int:
        i, s = site
        return self.parts[i].value(s)

    def canonical(self) -> "ProductTail":
        return self

    @property
    def is_constant(self) -> bool:
        return all(p.is_constant for p in self.parts)

    @property
    def id(self) -> str:
        return "(" + "|".join(p.id for p in self.parts) + ")"

    def sort_key(self):
        return (1, tuple(p.sort_key() for p in self.parts))

    def __eq__(self, other):
        if not isinstance(other, ProductTail):
            return NotImplemented
        return self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return f"ProductTail({self.id})"


def tails_agree_cofinitely(t1, t2) -> Optional[Region]:
    """Return ``frozenset()`` if two periodic tails agree cofinitely, else ``None``.

    The patterns are compared on the fundamental domain of the least common
    multiple of their periods.  A disagreement there repeats on an infinite
    residue class, so agreement on that domain is agreement everywhere.
    """
    if isinstance(t1, ProductTail) or isinstance(t2, ProductTail):
        if not (isinstance(t1, ProductTail) and isinstance(t2, ProductTail)):
            return None
        if len(t1.parts) != len(t2.parts):
            return None
        for a, b in zip(t1.parts, t2.parts):
            if tails_agree_cofinitely(a, b) is None:
                return None
        return frozenset()
    dim = max(t1.dim, t2.dim)
    p1 = t1.period if t1.dim == dim else (1,) * dim
    p2 = t2.period if t2.dim == dim else (1,) * dim
    if (t1.dim != dim and not t1.is_constant) or (t2.dim != dim and not t2.is_constant):
        raise ValidationError("tails of different dimension")
    lcm = tuple(math.lcm(a, b) for a, b in zip(p1, p2))
    for x in t1.domain(lcm) if t1.dim == dim else t2.domain(lcm):
        if t1.value(x) != t2.value(x):
            return None
    return frozenset()


# ---------------------------------------------------------------------------
# configurations


class Configuration:
    """A spin configuration: tail pattern plus a canonical finite override map.

    Overrides equal to the tail value are dropped on construction, so two
    configurations are equal as functions iff they are equal as objects.
    """

    __slots__ = ("tail", "overrides", "_map", "_hash")

    def __init__(self, tail, overrides: Union[Mapping, Iterable] = ()):
        tail = tail.canonical()
        items = overrides.items() if isinstance(overrides, Mapping) else overrides
        kept = {}
        for site, label in items:
            label = int(label)
            if tail.value(site) != label:
                kept[site] = label
            else:
                kept.pop(site, None)
        self.tail = tail
        self.overrides = tuple(sorted(kept.items()))
        self._map = kept
        self._hash = None

    def value(self, site) -> int:
        v = self._map.get(site)
        if v is None:
            return self.tail.value(site)
        return v

    @property
    def support(self) -> Region:
        return frozenset(self._map)

    def with_values(self, updates: Union[Mapping, Iterable]) -> "Configuration":
        merged = dict(self._map)
        items = updates.items() if isinstance(updates, Mapping) else updates
        merged.update(items)
        return Configuration(self.tail, merged)

    def sort_key(self):
        return (self.tail.sort_key(), self.overrides)

    def __eq__(self, other):
        if not isinstance(other, Configuration):
            return NotImplemented
        return self.overrides == other.overrides and self.tail == other.tail

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.tail, self.overrides))
        return self._hash

    def __repr__(self):
        if not self.overrides:
            return f"<{self.tail.id}>"
        ovr = ", ".join(f"{s}:{v}" for s, v in self.overrides)
        return f"<{self.tail.id} | {ovr}>"


def canonicalize(tail, raw_overrides: Union[Mapping, Iterable] = ()) -> Configuration:
    """Build the canonical configuration; redundant overrides are removed."""
    return Configuration(tail, raw_overrides)


def discrepancy(sigma: Configuration, eta: Configuration) -> Optional[Region]:
    """Sites where two configurations differ, or ``None`` if they differ macroscopically."""
    if sigma.tail != eta.tail and tails_agree_cofinitely(sigma.tail, eta.tail) is None:
        return None
    keys = set(sigma._map) | set(eta._map)
    return frozenset(x for x in keys if sigma.value(x) != eta.value(x))


# ---------------------------------------------------------------------------
# lattices

_DIMS = {"Z": 1, "N0": 1, "chain": 1, "Z2": 2, "grid": 2}


@dataclass(frozen=True)
class Lattice:
    """One of Z, Z2, N0, a finite open chain or a finite rectangular grid."""

    kind: str
    shape: tuple = ()

    def __post_init__(self):
        if self.kind not in _DIMS:
            raise ValidationError(f"unknown lattice kind {self.kind!r}")
        shape = tuple(int(s) for s in self.shape)
        need = {"chain": 1, "grid": 2}.get(self.kind, 0)
        if len(shape) != need or any(s < 1 for s in shape):
            raise ValidationError(f"lattice {self.kind!r} needs {need} positive size(s), got {shape}")
        object.__setattr__(self, "shape", shape)

    @property
    def dim(self) -> int:
        return _DIMS[self.kind]

    @property
    def is_finite(self) -> bool:
        return self.kind in ("chain", "grid")

    def normalize(self, site) -> Site:
        if self.dim == 1:
            if isinstance(site, (list, tuple)):
                if len(site) != 1:
                    raise ValidationError(f"site {site!r} is not one-dimensional")
                site = site[0]
            return int(site)
        if not isinstance(site, (list, tuple)) or len(site) != 2:
            raise ValidationError(f"site {site!r} is not two-dimensional")
        return (int(site[0]), int(site[1]))

    def contains(self, site) -> bool:
        if self.kind == "Z":
            return isinstance(site, int)
        if self.kind == "N0":
            return isinstance(site, int) and site >= 0
        if self.kind == "chain":
            return isinstance(site, int) and 0 <= site < self.shape[0]
        if not (isinstance(site, tuple) and len(site) == 2):
            return False
        if self.kind == "Z2":
            return True
        return 0 <= site[0] < self.shape[0] and 0 <= site[1] < self.shape[1]

    def sites(self) -> list:
        if self.kind == "chain":
            return list(range(self.shape[0]))
        if self.kind == "grid":
            return list(itertools.product(range(self.shape[0]), range(self.shape[1])))
        raise ValidationError(f"lattice {self.kind!r} is infinite")

    @property
    def nn_offsets(self) -> list:
        return [1] if self.dim == 1 else [(1, 0), (0, 1)]

    def add(self, site, offset):
        if self.dim == 1:
            return site + offset
        return (site[0] + offset[0], site[1] + offset[1])

    def sub(self, site, offset):
        if self.dim == 1:
            return site - offset
        return (site[0] - offset[0], site[1] - offset[1])

    def window(self, radius: int) -> list:
        """Sites used for random sampling: a box of half-width ``radius`` around 0."""
        if self.is_finite:
            return self.sites()
        if self.kind == "Z":
            return list(range(-radius, radius + 1))
        if self.kind == "N0":
            return list(range(0, 2 * radius + 1))
        r = range(-radius, radius + 1)
        return list(itertools.product(r, r))

    def zero_tail(self) -> PeriodicTail:
        return PeriodicTail.constant(0, self.dim)

    def config(self, tail, overrides: Union[Mapping, Iterable] = ()) -> Configuration:
        """Canonical configuration on this lattice.

        On finite lattices every configuration is re-expressed against the
        all-zero tail, so the whole lattice is one fertile class.
        """
        items = overrides.items() if isinstance(overrides, Mapping) else overrides
        ovr = {}
        for site, label in items:
            site = self.normalize(site)
            if not self.contains(site):
                raise ValidationError(f"site {site!r} is not in lattice {self.kind}")
            ovr[site] = int(label)
        if self.is_finite:
            values = {x: ovr.get(x, tail.value(x)) for x in self.sites()}
            return Configuration(self.zero_tail(), values)
        if isinstance(tail, PeriodicTail) and tail.dim != self.dim and not tail.is_constant:
            raise ValidationError(f"tail {tail.id} does not match lattice dimension {self.dim}")
        return Configuration(tail, ovr)


@dataclass(frozen=True)
class UnionLattice:
    """Disjoint union of lattices; sites are ``(factor_index, site)``."""

    factors: tuple

    kind = "union"

    @property
    def dim(self):
        return None

    @property
    def is_finite(self) -> bool:
        return all(f.is_finite for f in self.factors)

    def normalize(self, site):
        if not isinstance(site, (list, tuple)) or len(site) != 2:
            raise ValidationError(f"union-lattice site must be [factor, site], got {site!r}")
        i = int(site[0])
        if not 0 <= i < len(self.factors):
            raise ValidationError(f"factor index {i} out of range")
        return (i, self.factors[i].normalize(site[1]))

    def contains(self, site) -> bool:
        if not (isinstance(site, tuple) and len(site) == 2 and isinstance(site[0], int)):
            return False
        i, s = site
        return 0 <= i < len(self.factors) and self.factors[i].contains(s)

    def sites(self) -> list:
        return [(i, s) for i, f in enumerate(self.factors) for s in f.sites()]

    def window(self, radius: int) -> list:
        return [(i, s) for i, f in enumerate(self.factors) for s in f.window(radius)]

    def zero_tail(self) -> ProductTail:
        return ProductTail([f.zero_tail() for f in self.factors])

    def config(self, tail, overrides: Union[Mapping, Iterable] = ()) -> Configuration:
        if not isinstance(tail, ProductTail) or len(tail.parts) != len(self.factors):
            raise ValidationError("union-lattice configurations need a ProductTail with one part per factor")
        items = overrides.items() if isinstance(overrides, Mapping) else overrides
        split = [dict() for _ in self.factors]
        for site, label in items:
            i, s = self.normalize(site)
            split[i][s] = label
        parts = [f.config(t, o) for f, t, o in zip(self.factors, tail.parts, split)]
        return join(parts)


def restrict(sigma: Configuration, i: int) -> Configuration:
    """Component ``i`` of a configuration on a disjoint union."""
    return Configuration(sigma.tail.parts[i], {s: v for (j, s), v in sigma.overrides if j == i})


def join(parts: Sequence[Configuration]) -> Configuration:
    """Inverse of :func:`restrict`: glue factor configurations together."""
    ovr = {(i, s): v for i, p in enumerate(parts) for s, v in p.overrides}
    return Configuration(ProductTail([p.tail for p in parts]), ovr)
