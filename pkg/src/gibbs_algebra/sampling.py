"""Seeded random configurations and fertile pairs.

All randomness goes through ``numpy.random.default_rng(seed)`` (the PCG64
bit generator), which produces the same stream on every platform.  Override
sites are drawn uniformly from a window of half-width ``window`` around the
origin (``Lattice.window``).
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from .lattice import Configuration

DEFAULT_WINDOW = 4


def make_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def _pick_tail(model, rng, tail=None):
    if tail is not None:
        return model.tail(tail)
    names = sorted(model.tails)
    if not names:
        return model.lattice.zero_tail()
    return model.tails[names[int(rng.integers(len(names)))]]


def random_config(model, rng, n_overrides: int, window: int = DEFAULT_WINDOW, tail=None) -> Configuration:
    """A configuration whose labels differ from its tail on exactly ``n_overrides`` window sites."""
    t = _pick_tail(model, rng, tail)
    base = model.lattice.config(t)
    sites = model.lattice.window(window)
    n = min(n_overrides, len(sites))
    chosen = rng.choice(len(sites), size=n, replace=False)
    return base.with_values(_changes(base, [sites[i] for i in sorted(chosen)], model.spins.q, rng))


def _changes(base, sites, q, rng) -> dict:
    # a label different from the current one, uniformly among the q - 1 others
    out = {}
    for x in sites:
        cur = base.value(x)
        out[x] = (cur + 1 + int(rng.integers(q - 1))) % q
    return out


def random_fertile_pair(model, rng, max_discrepancy: int = 6, window: int = DEFAULT_WINDOW,
                        min_discrepancy: int = 0, base_overrides: Optional[int] = None, tail=None) -> tuple:
    """A pair in one fertile class with discrepancy size drawn uniformly from the allowed range."""
    k_base = int(rng.integers(0, 4)) if base_overrides is None else base_overrides
    zeta = random_config(model, rng, k_base, window, tail)
    sites = model.lattice.window(window)
    k = int(rng.integers(min_discrepancy, min(max_discrepancy, len(sites)) + 1))
    chosen = rng.choice(len(sites), size=k, replace=False)
    eta = zeta.with_values(_changes(zeta, [sites[i] for i in sorted(chosen)], model.spins.q, rng))
    return zeta, eta


def random_pairs(model, seed: int, n: int, **kwargs) -> list:
    rng = make_rng(seed)
    return [random_fertile_pair(model, rng, **kwargs) for _ in range(n)]
