import json
import pathlib

import pytest
from hypothesis import settings, strategies as st

from gibbs_algebra import ising_model, potts_model
from gibbs_algebra.lattice import Configuration, PeriodicTail

ROOT = pathlib.Path(__file__).resolve().parent.parent
MODELS = ROOT / "models"
FROZEN = json.loads((pathlib.Path(__file__).with_name("data") / "frozen.json").read_text())

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture(scope="session")
def frozen():
    return FROZEN


@pytest.fixture(scope="session")
def ising():
    return ising_model()


@pytest.fixture(scope="session")
def potts_blocks():
    return potts_model(q=3, clusters="blocks", k=2)


def overrides(q, lo=-6, hi=6, max_size=6):
    return st.dictionaries(st.integers(lo, hi), st.integers(0, q - 1), max_size=max_size)


@st.composite
def tails(draw, q=2, max_period=4):
    period = draw(st.integers(1, max_period))
    table = draw(st.lists(st.integers(0, q - 1), min_size=period, max_size=period))
    return PeriodicTail((period,), table)


@st.composite
def configs(draw, q=2, tail=None):
    t = tail if tail is not None else draw(tails(q))
    return Configuration(t, draw(overrides(q)))


@st.composite
def fertile_pairs(draw, model, tail_name=None, max_size=5):
    q = model.spins.q
    name = tail_name or draw(st.sampled_from(sorted(model.tails)))
    base = model.config(name)
    a = base.with_values(draw(overrides(q, -4, 4, max_size)))
    b = base.with_values(draw(overrides(q, -4, 4, max_size)))
    return a, b
