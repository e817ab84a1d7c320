import json

import pytest
from hypothesis import given

from gibbs_algebra import parse_model_data, parse_model_spec
from gibbs_algebra.errors import ParseError, ValidationError
from gibbs_algebra.spec_io import config_from_json, config_to_json, read_config_arg

from conftest import MODELS, overrides

MINIMAL = {
    "version": 1,
    "lattice": {"kind": "Z"},
    "spins": {"q": 2},
    "potential": {"kind": "zero"},
    "clusters": {"kind": "atomic"},
    "tails": {"zero": {"constant": 0}},
}


def spec(**changes):
    data = json.loads(json.dumps(MINIMAL))
    data.update(changes)
    return data


def test_minimal_spec():
    _, m = parse_model_data(spec())
    assert m.spins.q == 2 and "zero" in m.tails


@pytest.mark.parametrize("bad", [
    spec(spins={"q": 1}),
    spec(version=2),
    spec(colour="red"),
    spec(potential={"kind": "ising_pair"}),
    spec(potential={"kind": "nonsense"}),
    spec(clusters={"kind": "blocks", "k": "two"}),
    spec(lattice={"kind": "Z3"}),
    spec(tails={"a|b": {"constant": 0}}),
    spec(tails={"t": {"period": [2], "table": [0]}}),
    spec(lattice={"kind": "N0"}, potential={"kind": "star_inverse_square"},
         tails={"alt": {"period": [2], "table": [0, 1]}}),
])
def test_invalid_specs(bad):
    with pytest.raises(ValidationError):
        parse_model_data(bad)


def test_error_names_field():
    with pytest.raises(ValidationError, match="potential.shifts"):
        parse_model_data(spec(potential={"kind": "shifted", "base": {"kind": "zero"}}))


def test_bad_file(tmp_path):
    with pytest.raises(ParseError):
        parse_model_spec(str(tmp_path / "missing.json"))
    p = tmp_path / "broken.json"
    p.write_text("{not json")
    with pytest.raises(ParseError):
        parse_model_spec(str(p))
    p.write_bytes(b"\xff\xfe\x00")
    with pytest.raises(ParseError):
        parse_model_spec(str(p))


@pytest.mark.parametrize("path", sorted(p for p in MODELS.glob("*.json") if p.name != "embed_configs.json"))
def test_shipped_models_parse(path):
    s, m = parse_model_spec(str(path))
    assert json.loads(s.to_json()) == json.loads(path.read_text())
    assert m.tails or m.lattice.is_finite


def test_star_spec():
    _, m = parse_model_spec(str(MODELS / "star.json"))
    assert m.potential.kind == "star_inverse_square"


def test_tau_image_and_custom_pair():
    data = spec(potential={
        "kind": "tau_image",
        "base": {"kind": "custom_pair", "pairs": [{"offset": [1], "table": [[0, 1], [1, 0]]}]},
        "tau": {"spatial": {"kind": "translation", "vector": 2}, "perms": [[1, 0]]},
    })
    _, m = parse_model_data(data)
    assert m.potential.neighborhood(0) == {-1, 1}


@given(overrides(2))
def test_config_json_round_trip(ov):
    _, m = parse_model_spec(str(MODELS / "ising_z.json"))
    sigma = m.config("plus", ov)
    assert config_from_json(m, json.loads(json.dumps(config_to_json(m, sigma)))) == sigma


def test_config_arguments(tmp_path):
    _, m = parse_model_spec(str(MODELS / "ising_z.json"))
    assert read_config_arg(m, "minus") == m.config("minus")
    assert read_config_arg(m, '{"tail": "plus", "overrides": [[[0], 0]]}') == m.config("plus", {0: 0})
    assert read_config_arg(m, "const1") == m.config("plus")
    f = tmp_path / "c.json"
    f.write_text('{"tail": "per2:0,1", "overrides": []}')
    assert read_config_arg(m, str(f)).tail.id == "per2:0,1"
    with pytest.raises(ParseError):
        read_config_arg(m, "{oops")


def test_product_spec_sites():
    _, m = parse_model_spec(str(MODELS / "ising_potts_product.json"))
    sigma = config_from_json(m, {"tail": "plus|c0", "overrides": [[[1, 3], 1]]})
    assert sigma.value((1, 3)) == 1 and sigma.value((0, 3)) == 1
