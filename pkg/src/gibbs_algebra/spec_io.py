"""JSON model specifications and configuration files.

See ``docs/schemas.md`` for the formats.  Parsing is strict: unknown fields
are rejected and every error names the offending field.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from typing import Any

from . import potential as pot
from .clusters import AtomicPartition, BlockPartition, FiniteListPartition, UniquePartition
from .errors import ParseError, ValidationError
from .lattice import Configuration, Lattice, PeriodicTail, SpinSet
from .model import GibbsModel
from .transforms import Identity, Permutation, Reflection, TauTransform, Translation, build_product_model

SPEC_VERSION = 1


@dataclass
class ModelSpec:
    """A validated, normalised model specification."""

    data: dict

    def to_json(self) -> str:
        return json.dumps(self.data, indent=2, sort_keys=True)


def _fields(obj, where: str, required=(), optional=()) -> dict:
    if not isinstance(obj, dict):
        raise ValidationError(f"{where}: expected an object")
    unknown = set(obj) - set(required) - set(optional)
    if unknown:
        raise ValidationError(f"{where}: unknown field(s) {sorted(unknown)}")
    for name in required:
        if name not in obj:
            raise ValidationError(f"{where}.{name}: missing")
    return obj


def _int(v, where):
    if isinstance(v, bool) or not isinstance(v, int):
        raise ValidationError(f"{where}: expected an integer")
    return v


def _num(v, where):
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ValidationError(f"{where}: expected a number")
    return float(v)


def load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise ParseError(f"{path}: no such file") from None
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path}: not valid UTF-8 ({exc})") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from None


# ---------------------------------------------------------------------------
# pieces


def _lattice(obj) -> tuple[Lattice, dict]:
    _fields(obj, "lattice", ("kind",), ("size",))
    kind = obj["kind"]
    if kind not in ("Z", "Z2", "N0", "chain", "grid"):
        raise ValidationError(f"lattice.kind: unknown kind {kind!r}")
    size = obj.get("size", [])
    if isinstance(size, int):
        size = [size]
    if not isinstance(size, list):
        raise ValidationError("lattice.size: expected a list of integers")
    size = [_int(s, "lattice.size") for s in size]
    lat = Lattice(kind, tuple(size))
    norm = {"kind": kind}
    if size:
        norm["size"] = size
    return lat, norm


def _spins(obj) -> tuple[SpinSet, dict]:
    _fields(obj, "spins", ("q",), ("values",))
    q = _int(obj["q"], "spins.q")
    values = obj.get("values")
    if values is not None:
        values = [_num(v, "spins.values") for v in values]
    spins = SpinSet(q, tuple(values) if values is not None else None)
    norm = {"q": q}
    if values is not None:
        norm["values"] = values
    return spins, norm


def _site(lat, raw, where):
    try:
        return lat.normalize(raw)
    except (ValidationError, TypeError, ValueError) as exc:
        raise ValidationError(f"{where}: {exc}") from None


def _tail(obj, where, dim) -> PeriodicTail:
    _fields(obj, where, (), ("period", "table", "constant"))
    if "constant" in obj:
        if "period" in obj or "table" in obj:
            raise ValidationError(f"{where}: give either constant or period/table")
        return PeriodicTail.constant(_int(obj["constant"], f"{where}.constant"), dim)
    if "period" not in obj or "table" not in obj:
        raise ValidationError(f"{where}: needs period and table")
    period = [_int(p, f"{where}.period") for p in obj["period"]]
    table = [_int(v, f"{where}.table") for v in obj["table"]]
    if len(period) != dim:
        raise ValidationError(f"{where}.period: expected {dim} entries")
    return PeriodicTail(period, table)


def _tau(obj, lat, where="tau") -> tuple[TauTransform, dict]:
    _fields(obj, where, (), ("spatial", "perms", "selector"))
    sp = obj.get("spatial", {"kind": "identity"})
    _fields(sp, f"{where}.spatial", ("kind",), ("vector", "center", "mapping"))
    kind = sp["kind"]
    if kind == "identity":
        spatial = Identity()
    elif kind == "translation":
        vec = sp.get("vector", 1)
        spatial = Translation(vec if isinstance(vec, int) else tuple(vec))
    elif kind == "reflection":
        spatial = Reflection(_int(sp.get("center", 0), f"{where}.spatial.center"))
    elif kind == "permutation":
        pairs = sp.get("mapping", [])
        spatial = Permutation({_site(lat, a, f"{where}.spatial.mapping"): _site(lat, b, f"{where}.spatial.mapping")
                               for a, b in pairs})
    else:
        raise ValidationError(f"{where}.spatial.kind: unknown kind {kind!r}")
    perms = obj.get("perms", [[]])
    selector = None
    if "selector" in obj:
        selector = _tail(obj["selector"], f"{where}.selector", lat.dim)
    tau = TauTransform(spatial, perms, selector)
    tau.check_lattice(lat)
    return tau, obj


def _potential(obj, lat, spins, where="potential") -> pot.Potential:
    kind = obj.get("kind") if isinstance(obj, dict) else None
    if kind == "zero":
        _fields(obj, where, ("kind",))
        return pot.ZeroPotential(lat)
    if kind in ("ising_pair", "potts_pair"):
        _fields(obj, where, ("kind",), ("beta",))
        beta = _num(obj.get("beta", 1.0), f"{where}.beta")
        if kind == "ising_pair":
            if spins.values is None:
                raise ValidationError(f"{where}: ising_pair needs numeric spin values")
            return pot.ising_potential(lat, spins, beta)
        return pot.potts_potential(lat, spins, beta)
    if kind == "star_inverse_square":
        _fields(obj, where, ("kind",))
        if lat.kind != "N0":
            raise ValidationError(f"{where}: the star potential needs lattice kind N0")
        return pot.StarInverseSquarePotential(lat, spins)
    if kind == "custom_pair":
        _fields(obj, where, ("kind", "pairs"))
        pairs = []
        for i, entry in enumerate(obj["pairs"]):
            _fields(entry, f"{where}.pairs[{i}]", ("offset", "table"))
            off = _site(Lattice("Z2") if lat.dim == 2 else Lattice("Z"), entry["offset"], f"{where}.pairs[{i}].offset")
            table = entry["table"]
            if len(table) != spins.q or any(len(r) != spins.q for r in table):
                raise ValidationError(f"{where}.pairs[{i}].table: expected a {spins.q}x{spins.q} table")
            pairs.append((off, [[_num(v, f"{where}.pairs[{i}].table") for v in r] for r in table]))
        return pot.custom_pair_potential(lat, pairs)
    if kind == "local_terms":
        _fields(obj, where, ("kind", "terms"))
        terms = []
        for i, entry in enumerate(obj["terms"]):
            _fields(entry, f"{where}.terms[{i}]", ("support", "table"))
            support = [_site(lat, s, f"{where}.terms[{i}].support") for s in entry["support"]]
            _check_table(entry["table"], len(support), spins.q, f"{where}.terms[{i}].table")
            terms.append((support, entry["table"]))
        return pot.LocalTermsPotential(lat, terms)
    if kind == "shifted":
        _fields(obj, where, ("kind", "base", "shifts"))
        base = _potential(obj["base"], lat, spins, f"{where}.base")
        shifts = []
        for i, entry in enumerate(obj["shifts"]):
            _fields(entry, f"{where}.shifts[{i}]", ("support", "c"))
            support = [_site(lat, s, f"{where}.shifts[{i}].support") for s in entry["support"]]
            shifts.append((support, _num(entry["c"], f"{where}.shifts[{i}].c")))
        return pot.shift_potential(base, shifts)
    if kind == "tau_image":
        _fields(obj, where, ("kind", "base", "tau"))
        base = _potential(obj["base"], lat, spins, f"{where}.base")
        tau, _ = _tau(obj["tau"], lat, f"{where}.tau")
        return pot.tau_image_potential(base, tau)
    raise ValidationError(f"{where}.kind: unknown potential kind {kind!r}")


def _check_table(table, depth, q, where):
    if depth == 0:
        _num(table, where)
        return
    if not isinstance(table, list) or len(table) != q:
        raise ValidationError(f"{where}: expected nested lists of length {q}")
    for sub in table:
        _check_table(sub, depth - 1, q, where)


def _clusters(obj, lat):
    _fields(obj, "clusters", ("kind",), ("k", "blocks"))
    kind = obj["kind"]
    if kind == "atomic":
        return AtomicPartition()
    if kind == "unique":
        return UniquePartition()
    if kind == "blocks":
        return BlockPartition(_int(obj.get("k", 2), "clusters.k"))
    if kind == "finite_list":
        if not lat.is_finite:
            raise ValidationError("clusters.finite_list: only for finite lattices")
        blocks = [[_site(lat, s, "clusters.blocks") for s in b] for b in obj.get("blocks", [])]
        return FiniteListPartition(blocks, lat)
    raise ValidationError(f"clusters.kind: unknown kind {kind!r}")


# ---------------------------------------------------------------------------
# models


def build_model(data: dict) -> GibbsModel:
    if not isinstance(data, dict):
        raise ValidationError("model spec: expected a JSON object")
    if "product" in data:
        _fields(data, "model", ("version", "product"), ("measure",))
        _version(data)
        factors = data["product"]
        if not isinstance(factors, list) or not 1 <= len(factors) <= 4:
            raise ValidationError("product: expected a list of 1 to 4 model specs")
        models = [build_model({"version": SPEC_VERSION, **f}) for f in factors]
        pm = build_product_model(models)
        pm.measure = data.get("measure")
        return pm
    _fields(data, "model", ("version", "lattice", "spins", "potential", "clusters"), ("tails", "measure"))
    _version(data)
    lat, _ = _lattice(data["lattice"])
    spins, _ = _spins(data["spins"])
    phi = _potential(data["potential"], lat, spins)
    part = _clusters(data["clusters"], lat)
    tails = {}
    raw_tails = data.get("tails", {})
    if not isinstance(raw_tails, dict):
        raise ValidationError("tails: expected an object of named tails")
    for name, t in raw_tails.items():
        if "|" in name:
            raise ValidationError(f"tails.{name}: names may not contain '|'")
        tails[name] = _tail(t, f"tails.{name}", lat.dim)
    if isinstance(phi, pot.StarInverseSquarePotential):
        for name, t in tails.items():
            if not t.is_constant:
                raise ValidationError(f"tails.{name}: the star potential supports only constant tails")
    measure = data.get("measure")
    if measure is not None and not isinstance(measure, str):
        raise ValidationError("measure: expected a string label")
    return GibbsModel(lat, spins, phi, part, tails, measure)


def _version(data):
    if data.get("version") != SPEC_VERSION:
        raise ValidationError(f"version: expected {SPEC_VERSION}")


def parse_model_spec(path: str) -> tuple[ModelSpec, GibbsModel]:
    data = load_json(path)
    model = build_model(data)
    return ModelSpec(data), model


def parse_model_data(data: dict) -> tuple[ModelSpec, GibbsModel]:
    return ModelSpec(data), build_model(data)


# ---------------------------------------------------------------------------
# configurations


def tail_name(model, tail) -> str:
    for name, t in sorted(model.tails.items()):
        if t == tail:
            return name
    return tail.id


def site_to_json(site):
    if isinstance(site, tuple):
        return [site_to_json(s) for s in site]
    return site


def config_to_json(model, sigma: Configuration) -> dict:
    return {
        "tail": tail_name(model, sigma.tail),
        "overrides": [[site_to_json(s) if isinstance(s, tuple) else [s], v] for s, v in sigma.overrides],
    }


def config_from_json(model, obj, where="config") -> Configuration:
    if isinstance(obj, str):
        return model.config(obj)
    _fields(obj, where, ("tail",), ("overrides",))
    overrides = []
    for i, entry in enumerate(obj.get("overrides", [])):
        if not isinstance(entry, list) or len(entry) != 2:
            raise ValidationError(f"{where}.overrides[{i}]: expected [site, label]")
        site, label = entry
        overrides.append((_site(model.lattice, site, f"{where}.overrides[{i}]"),
                          _int(label, f"{where}.overrides[{i}].label")))
    return model.config(obj["tail"], overrides)


def read_config_arg(model, text: str) -> Configuration:
    """A configuration from inline JSON, a JSON file, or a bare tail name."""
    text = text.strip()
    if text.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid configuration JSON: {exc}") from None
        return config_from_json(model, obj)
    if os.path.exists(text):
        return config_from_json(model, load_json(text), text)
    return model.config(text)


def read_configs_file(model, path: str) -> list:
    data = load_json(path)
    if isinstance(data, dict):
        _fields(data, "configs file", ("configs",), ("version", "enlarged", "boundary"))
        items = data["configs"]
    else:
        items = data
    if not isinstance(items, list):
        raise ValidationError("configs: expected a list")
    return [config_from_json(model, c, f"configs[{i}]") for i, c in enumerate(items)]


def read_embed_file(model, path: str) -> dict:
    """Configurations plus optional enlarged window and boundary for the embed command."""
    data = load_json(path)
    configs = read_configs_file(model, path)
    out = {"configs": configs, "enlarged": None, "boundary": None}
    if isinstance(data, dict):
        if "enlarged" in data:
            out["enlarged"] = [_site(model.lattice, s, "enlarged") for s in data["enlarged"]]
        if "boundary" in data:
            out["boundary"] = config_from_json(model, data["boundary"], "boundary")
    return out
