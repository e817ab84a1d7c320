"""Command-line interface ``gga``.

JSON goes to stdout, a short human summary to stderr.  Exit codes: 0 when
every check passes, 1 when any check fails or a computation is refused,
2 for usage and parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .errors import GibbsAlgebraError, ParseError, UnknownSuite, ValidationError
from .evolution import PairElement, evo_coefficient_matrix, evo_product
from .genetic import AlgebraElement, coefficient_vector, embed_finite_subalgebra, product
from .lattice import discrepancy
from .oracle import compare_finite_equivalence, enumeration_cap
from .spec_io import config_from_json, config_to_json, load_json, parse_model_spec, read_config_arg, read_embed_file
from .suites import SUITES, run_suite, suite_finite_oracle, Report

ORACLE_TOL = 1e-10
EMBED_TOL = 1e-12


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"gga: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def _emit(data: dict):
    print(json.dumps(data, indent=2))


def _read_element(model, text: str) -> AlgebraElement:
    """An element: a configuration (basis element) or ``{"terms": [{"config": ..., "coeff": x}]}``."""
    stripped = text.strip()
    obj = None
    if stripped.startswith("{"):
        try:
            obj = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid element JSON: {exc}") from None
    elif stripped.endswith(".json"):
        obj = load_json(stripped)
    if isinstance(obj, dict) and "terms" in obj:
        terms = []
        for i, t in enumerate(obj["terms"]):
            if not isinstance(t, dict) or set(t) - {"config", "coeff"} or "config" not in t:
                raise ValidationError(f"terms[{i}]: expected {{config, coeff}}")
            terms.append((config_from_json(model, t["config"], f"terms[{i}].config"), float(t.get("coeff", 1.0))))
        return AlgebraElement.from_terms(terms)
    return AlgebraElement.basis(read_config_arg(model, text))


def _element_json(model, u: AlgebraElement) -> list:
    return [{"config": config_to_json(model, s), "coeff": v} for s, v in u.items()]


def cmd_verify(args) -> int:
    _, model = parse_model_spec(args.model)
    report = run_suite(model, args.suite, args.seed, args.samples)
    print(report.to_json())
    print(report.summary(), file=sys.stderr)
    return 0 if report.passed else 1


def cmd_coeff(args) -> int:
    _, model = parse_model_spec(args.model)
    left = read_config_arg(model, args.left)
    right = read_config_arg(model, args.right)
    cv = coefficient_vector(model, left, right)
    d = discrepancy(left, right)
    _emit({
        "command": "coeff",
        "left": config_to_json(model, left),
        "right": config_to_json(model, right),
        "fertile": d is not None,
        "entries": [{"config": config_to_json(model, s), "coefficient": c} for s, c in cv.entries.items()],
        "total": cv.total(),
    })
    for s, c in cv.entries.items():
        print(f"{c:.10f}  {s!r}", file=sys.stderr)
    if d is None:
        print("pair is not fertile: product is zero", file=sys.stderr)
    return 0


def cmd_product(args) -> int:
    _, model = parse_model_spec(args.model)
    u = _read_element(model, args.left)
    v = _read_element(model, args.right)
    w = product(model, u, v)
    _emit({"command": "product", "terms": _element_json(model, w)})
    print(f"{len(w)} term(s), coefficient sum {sum(w.terms.values()):.12g}", file=sys.stderr)
    return 0


def cmd_evo_product(args) -> int:
    _, model = parse_model_spec(args.model)
    a, b = (read_config_arg(model, t) for t in args.left)
    c, d = (read_config_arg(model, t) for t in args.right)
    w = evo_product(model, PairElement.basis(a, b), PairElement.basis(c, d))
    _emit({
        "command": "evo-product",
        "terms": [{"pair": [config_to_json(model, x), config_to_json(model, y)], "coeff": v}
                  for (x, y), v in w.items()],
    })
    if (a, b) == (c, d):
        m = evo_coefficient_matrix(model, a, b)
        print(f"{len(w)} term(s), coefficient sum {m.total():.12g}", file=sys.stderr)
    else:
        print(f"{len(w)} term(s)", file=sys.stderr)
    return 0


def cmd_oracle_compare(args) -> int:
    _, model = parse_model_spec(args.model)
    if model.lattice.is_finite:
        rep = compare_finite_equivalence(model, args.samples, args.seed)
        ok = rep.max_genetic <= ORACLE_TOL and rep.max_evolution <= ORACLE_TOL and rep.offspring_mismatches == 0
        _emit({
            "command": "oracle-compare",
            "mode": "finite",
            "samples": rep.samples,
            "comparisons": rep.comparisons,
            "max_genetic_deviation": rep.max_genetic,
            "max_evolution_deviation": rep.max_evolution,
            "offspring_mismatches": rep.offspring_mismatches,
            "tolerance": ORACLE_TOL,
            "enumeration_cap": enumeration_cap(),
            "passed": ok,
        })
        print(f"oracle-compare: {'PASS' if ok else 'FAIL'} genetic {rep.max_genetic:.3e}, "
              f"evolution {rep.max_evolution:.3e}", file=sys.stderr)
        return 0 if ok else 1
    report = Report("finite-oracle", args.seed, args.samples, suite_finite_oracle(model, args.seed, args.samples))
    data = report.body()
    data.update({"command": "oracle-compare", "mode": "window", "enumeration_cap": enumeration_cap()})
    _emit(data)
    print(report.summary(), file=sys.stderr)
    return 0 if report.passed else 1


def cmd_embed(args) -> int:
    _, model = parse_model_spec(args.model)
    spec = read_embed_file(model, args.configs)
    rep = embed_finite_subalgebra(model, spec["configs"], spec["enlarged"], spec["boundary"])
    ok = rep.max_deviation <= EMBED_TOL and rep.offspring_mismatches == 0
    site = lambda s: list(s) if isinstance(s, tuple) else s  # noqa: E731
    _emit({
        "command": "embed",
        "region": [site(x) for x in sorted(rep.region)],
        "enlarged": [site(x) for x in sorted(rep.enlarged)],
        "images": [{"config": config_to_json(model, s), "assignment": list(a)}
                   for s, a in sorted(rep.images.items())],
        "comparisons": rep.comparisons,
        "max_deviation": rep.max_deviation,
        "offspring_mismatches": rep.offspring_mismatches,
        "tolerance": EMBED_TOL,
        "passed": ok,
    })
    print(f"embed: {'PASS' if ok else 'FAIL'} window {len(rep.enlarged)} sites, "
          f"max deviation {rep.max_deviation:.3e}", file=sys.stderr)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gga", description="Genetic and evolution algebras of Gibbs measures.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", help=f"one of: {', '.join(SUITES)}")
    v.add_argument("--model", required=True)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--samples", type=int, default=100)
    v.set_defaults(fn=cmd_verify)

    c = sub.add_parser("coeff", help="coefficients of e_left * e_right")
    c.add_argument("--model", required=True)
    c.add_argument("--left", required=True, help="configuration: tail name, inline JSON or file")
    c.add_argument("--right", required=True)
    c.set_defaults(fn=cmd_coeff)

    pr = sub.add_parser("product", help="genetic product of two elements")
    pr.add_argument("--model", required=True)
    pr.add_argument("--left", required=True, help="configuration or element JSON")
    pr.add_argument("--right", required=True)
    pr.set_defaults(fn=cmd_product)

    e = sub.add_parser("evo-product", help="evolution product of two basis pairs")
    e.add_argument("--model", required=True)
    e.add_argument("--left", nargs=2, required=True, metavar="CFG")
    e.add_argument("--right", nargs=2, required=True, metavar="CFG")
    e.set_defaults(fn=cmd_evo_product)

    o = sub.add_parser("oracle-compare", help="compare against brute-force enumeration")
    o.add_argument("--model", required=True)
    o.add_argument("--seed", type=int, default=0)
    o.add_argument("--samples", type=int, default=200)
    o.set_defaults(fn=cmd_oracle_compare)

    m = sub.add_parser("embed", help="embed configurations into a finite-window algebra")
    m.add_argument("--model", required=True)
    m.add_argument("--configs", required=True)
    m.set_defaults(fn=cmd_embed)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "samples", 1) < 1:
        parser.error("--samples must be positive")
    try:
        return args.fn(args)
    except (ParseError, ValidationError, UnknownSuite) as exc:
        print(f"gga: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except GibbsAlgebraError as exc:
        print(f"gga: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
