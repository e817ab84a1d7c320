"""Independent reference values, computed without importing the package.

Everything here is plain Python over explicit spin lists, with mpmath for
high-precision constants.  Running this file rewrites ``data/frozen.json``;
the test-suite compares the package against the frozen numbers and checks
that regenerating them reproduces the file.

    python tests/reference.py
"""

from __future__ import annotations

import itertools
import json
import pathlib

import mpmath

FROZEN = pathlib.Path(__file__).with_name("data") / "frozen.json"
mpmath.mp.dps = 40


def _softmax(energies):
    m = min(energies)
    w = [mpmath.e ** (-(e - m)) for e in energies]
    z = sum(w)
    return [float(x / z) for x in w]


# Ising chain on a window with fixed +1 outside -----------------------------

def ising_window_energy(spins: dict, beta, touching):
    """Sum of -beta s(x)s(x+1) over bonds meeting ``touching``; absent sites read +1."""
    val = lambda x: spins.get(x, 1)  # noqa: E731
    bonds = {(x - 1, x) for x in touching} | {(x, x + 1) for x in touching}
    return sum(-beta * val(a) * val(b) for a, b in bonds)


def ising_atomic_coefficients(beta, zeta: dict, eta: dict):
    """Offspring (as dicts) and their coefficients for atomic clusters, plus boundary."""
    d = sorted(x for x in set(zeta) | set(eta) if zeta.get(x, 1) != eta.get(x, 1))
    out = []
    for pick in itertools.product([0, 1], repeat=len(d)):
        s = dict(zeta)
        for x, p in zip(d, pick):
            if p:
                s[x] = eta.get(x, 1)
        out.append(s)
    energies = [mpmath.mpf(ising_window_energy(s, beta, d)) for s in out]
    return out, _softmax(energies)


def _key(s: dict):
    return tuple(sorted((x, v) for x, v in s.items() if v != 1))


def ising_product(beta, u: dict, v: dict) -> dict:
    out = {}
    for (a, x), (b, y) in itertools.product(u.items(), v.items()):
        kids, cs = ising_atomic_coefficients(beta, dict(a), dict(b))
        for k, c in zip(kids, cs):
            out[_key(k)] = out.get(_key(k), 0.0) + x * y * c
    return out


def lemma_associator(beta=1.0):
    """Coefficient of e_sigma in (e_s e_eta) e_zeta - e_s (e_eta e_zeta)."""
    sigma, eta, zeta = {0: -1}, {}, {1: -1}
    e = lambda s: {_key(s): 1.0}  # noqa: E731
    left = ising_product(beta, ising_product(beta, e(sigma), e(eta)), e(zeta))
    right = ising_product(beta, e(sigma), ising_product(beta, e(eta), e(zeta)))
    return left.get(_key(sigma), 0.0) - right.get(_key(sigma), 0.0)


# Potts with blocks of two on Z ---------------------------------------------

def potts_block_coefficients(beta, zeta: dict, eta: dict, k=2):
    val = lambda s, x: s.get(x, 0)  # noqa: E731
    d = sorted(x for x in set(zeta) | set(eta) if val(zeta, x) != val(eta, x))
    blocks = sorted({x // k for x in d})
    kids = []
    for pick in itertools.product([0, 1], repeat=len(blocks)):
        s = dict(zeta)
        for b, p in zip(blocks, pick):
            if p:
                for x in range(b * k, b * k + k):
                    s[x] = val(eta, x)
        kids.append(s)
    bonds = {(x - 1, x) for x in d} | {(x, x + 1) for x in d}
    energies = [mpmath.mpf(sum(-beta * (val(s, a) == val(s, b)) for a, b in bonds)) for s in kids]
    return [[[x, val(s, x)] for x in d] for s in kids], _softmax(energies)


# Potts on a 2x3 grid, free boundary -----------------------------------------

def potts_grid_log_z(beta, q=3, rows=2, cols=3):
    sites = [(r, c) for r in range(rows) for c in range(cols)]
    bonds = [((r, c), (r + 1, c)) for r in range(rows - 1) for c in range(cols)]
    bonds += [((r, c), (r, c + 1)) for r in range(rows) for c in range(cols - 1)]
    z = mpmath.mpf(0)
    for labels in itertools.product(range(q), repeat=len(sites)):
        s = dict(zip(sites, labels))
        z += mpmath.e ** (beta * sum(s[a] == s[b] for a, b in bonds))
    return float(mpmath.log(z))


def ising_chain_log_z(beta, n=8):
    z = mpmath.mpf(0)
    for spins in itertools.product([-1, 1], repeat=n):
        z += mpmath.e ** (beta * sum(spins[i] * spins[i + 1] for i in range(n - 1)))
    return float(mpmath.log(z))


# one-site model ---------------------------------------------------------------

def dim2_associator_max():
    """Largest associator entry of the algebra spanned by e_0, e_1 with weights 1, e^-1."""
    w = [mpmath.mpf(1), mpmath.e ** -1]

    def mul(u, v):
        out = [mpmath.mpf(0), mpmath.mpf(0)]
        for i in range(2):
            for j in range(2):
                if i == j:
                    out[i] += u[i] * v[j]
                else:
                    z = w[i] + w[j]
                    out[i] += u[i] * v[j] * w[i] / z
                    out[j] += u[i] * v[j] * w[j] / z
        return out

    basis = [[1, 0], [0, 1]]
    worst = mpmath.mpf(0)
    for a, b, c in itertools.product(basis, repeat=3):
        lhs = mul(mul(a, b), c)
        rhs = mul(a, mul(b, c))
        worst = max(worst, max(abs(x - y) for x, y in zip(lhs, rhs)))
    return float(worst)


def compute() -> dict:
    _, c1 = ising_atomic_coefficients(1.0, {}, {0: -1})
    kids2, c2 = ising_atomic_coefficients(0.7, {}, {0: -1, 1: -1})
    pk, pc = potts_block_coefficients(1.0, {1: 2}, {0: 1, 1: 1, 3: 2})
    zeta2 = mpmath.zeta(2)
    return {
        "ising_flip_origin_beta1": c1,
        "ising_two_sites_beta07": {"offspring": [[[x, v] for x, v in sorted(k.items())] for k in kids2],
                                   "coefficients": c2},
        "potts_blocks_q3": {"offspring": pk, "coefficients": pc},
        "lemma_associator_beta1": lemma_associator(1.0),
        "dim2_associator_max": dim2_associator_max(),
        "star_hub_energy": float(zeta2),
        "star_hub_coefficient": float(1 / (1 + mpmath.e ** zeta2)),
        "translation_example_coefficient": float(1 / (1 + mpmath.e ** -1)),
        "potts_grid_2x3_log_z_beta1": potts_grid_log_z(1.0),
        "ising_chain8_log_z_beta03": ising_chain_log_z(0.3),
        "ising_chain8_log_z_beta1": ising_chain_log_z(1.0),
    }


if __name__ == "__main__":
    FROZEN.parent.mkdir(exist_ok=True)
    FROZEN.write_text(json.dumps(compute(), indent=2, sort_keys=True) + "\n")
    print(f"wrote {FROZEN}")
