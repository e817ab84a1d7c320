import json
import math

import pytest

from gibbs_algebra import ising_model, potts_model, run_suite, star_model, translation_example_model
from gibbs_algebra.errors import UnknownSuite, ValidationError
from gibbs_algebra.lattice import Lattice
from gibbs_algebra.suites import SUITES, Check, Report, agree, exceeds, info

PASSING = [
    ("markov", ising_model),
    ("decomposition", ising_model),
    ("equiv-potentials", lambda: potts_model(q=3)),
    ("tau-iso", translation_example_model),
    ("functionals", ising_model),
    ("tensor", ising_model),
    ("finite-oracle", lambda: ising_model(Lattice("chain", (6,)))),
    ("finite-oracle", ising_model),
    ("evo-factorization", ising_model),
    ("em-ideal-iso", ising_model),
    ("counterexample", star_model),
    ("embed-finite", ising_model),
]


@pytest.mark.parametrize("suite, make", PASSING)
def test_suite_passes(suite, make):
    rep = run_suite(make(), suite, seed=3, samples=20)
    assert rep.passed, rep.summary()
    json.loads(rep.to_json())


def test_all_suites_listed():
    assert set(SUITES) == {s for s, _ in PASSING} | {"nonassoc"}


def test_nonassoc_reports_the_one_site_algebra():
    rep = run_suite(ising_model(), "nonassoc")
    by_name = {c.name: c for c in rep.checks}
    assert by_name["associator e_sigma coefficient nonzero"].status == "pass"
    assert by_name["associator matches closed form"].status == "pass"
    # the one-site algebra is not associative, so this check fails
    assert by_name["two-dimensional algebra associative"].status == "fail"


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite(ising_model(), "bogus")


def test_counterexample_needs_star():
    with pytest.raises(ValidationError):
        run_suite(ising_model(), "counterexample")


def test_ideal_iso_needs_two_tails():
    m = potts_model(q=2)
    m.tails = {"c0": m.tails["c0"]}
    with pytest.raises(ValidationError):
        run_suite(m, "em-ideal-iso")


def test_report_serialisation():
    rep = Report("x", 0, 1, [agree("a", math.inf, 1e-12), exceeds("b", 2.0, 1.0), info("c", 0.5)])
    data = json.loads(rep.to_json())
    assert data["checks"][0]["max_deviation"] == "inf"
    assert [c["status"] for c in data["checks"]] == ["fail", "pass", "info"]
    assert not rep.passed
    assert Report("y", 0, 1, [info("c", 9.0)]).passed
    assert isinstance(rep.checks[0], Check)
