"""Command line front end.

Subcommands: ``analyze`` (weights, graph shape, failing sets), ``complete``
(certified completion), ``milnor`` (quotient dimension of a polynomial's
Jacobian ideal), ``resolve`` (chart resolution of flips), and
``orbifold-iso`` (sector algebra isomorphism report).  Every command prints
one JSON document to stdout; reports embed the input so a run can be
reproduced byte for byte.  Exit codes: 0 success, 1 mathematical
impossibility, 2 input errors.
"""

from __future__ import annotations

import argparse
import ast
import json
import sys
from dataclasses import dataclass

from .complete import build_completion, completion_report
from .errors import InputError, LoopsingError, MathError
from .graphs import (
    ChoiceGraph,
    PowerAssignment,
    build_f_kappa,
    solve_weights,
    weights_from_support,
)
from .groebner import (
    INFINITE,
    jacobian_basis,
    milnor_number,
    quotient_basis,
)
from .hochschild import verify_psi
from .nondegen import failing_report, support
from .orbifold import build_bar_f, build_orbifold_input, iterate_resolution
from .poly import Polynomial, parse_polynomial

SCHEMA = 1


@dataclass(frozen=True)
class JobConfig:
    """Parsed input: either a (kappa, powers) pair or a raw polynomial."""

    kappa: tuple[int, ...] | None = None
    powers: tuple[int, ...] | None = None
    polynomial: str | None = None

    def __post_init__(self):
        graph_form = self.kappa is not None or self.powers is not None
        poly_form = self.polynomial is not None
        if graph_form and poly_form:
            raise InputError("config mixes graph and polynomial input")
        if graph_form and (self.kappa is None or self.powers is None):
            raise InputError("graph input needs both kappa and powers")
        if not graph_form and not poly_form:
            raise InputError("config has neither kappa/powers nor polynomial")

    @property
    def is_graph(self) -> bool:
        return self.kappa is not None

    def graph(self) -> ChoiceGraph:
        return ChoiceGraph(self.kappa)

    def power_assignment(self) -> PowerAssignment:
        return PowerAssignment(self.powers)

    def as_json(self) -> dict:
        if self.is_graph:
            return {"kappa": list(self.kappa), "powers": list(self.powers)}
        return {"polynomial": self.polynomial}


def parse_config(text: str) -> JobConfig:
    """Read ``key = value`` lines; lists use Python literal syntax."""
    values: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise InputError(f"line {lineno}: expected key = value")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key in ("kappa", "powers"):
            try:
                parsed = ast.literal_eval(value)
            except (ValueError, SyntaxError) as exc:
                raise InputError(f"line {lineno}: bad list literal") from exc
            if not isinstance(parsed, (list, tuple)):
                raise InputError(f"line {lineno}: {key} must be a list")
            values[key] = tuple(int(x) for x in parsed)
        elif key == "polynomial":
            values[key] = value
        else:
            raise InputError(f"line {lineno}: unknown key {key!r}")
    return JobConfig(
        kappa=values.get("kappa"),
        powers=values.get("powers"),
        polynomial=values.get("polynomial"),
    )


def load_config(path: str) -> JobConfig:
    try:
        with open(path, encoding="utf-8") as handle:
            return parse_config(handle.read())
    except OSError as exc:
        raise InputError(f"cannot read config {path}: {exc}") from exc


def _emit(report: dict, args) -> None:
    text = json.dumps(report, sort_keys=True, indent=2)
    print(text)
    if getattr(args, "json", None):
        with open(args.json, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")


def _write_dot(graph: ChoiceGraph, path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(graph.to_dot())


# -- commands -------------------------------------------------------------------

def cmd_analyze(args) -> int:
    config = load_config(args.config)
    report: dict = {"schema": SCHEMA, "config": config.as_json()}
    if config.is_graph:
        graph = config.graph()
        powers = config.power_assignment()
        weights = solve_weights(graph, powers)
        f = build_f_kappa(graph, powers)
        report["graph"] = {
            "loop": list(graph.main_loop()),
            "leaves": sorted(graph.leaves()),
            "isolated": sorted(graph.isolated_vertices()),
        }
        if args.dot:
            _write_dot(graph, args.dot)
    else:
        f = parse_polynomial(config.polynomial)
        weights = weights_from_support(f)
    report["polynomial"] = str(f)
    report["weights"] = [*weights.v, weights.d]
    report["reduced_weights"] = [str(q) for q in weights.q]
    report.update(failing_report(support(f, weights)))
    _emit(report, args)
    return 0


def cmd_complete(args) -> int:
    config = load_config(args.config)
    if not config.is_graph:
        raise InputError("complete needs kappa/powers input")
    result = build_completion(
        config.graph(), config.power_assignment(), seed=args.seed
    )
    report = {"schema": SCHEMA, "config": config.as_json()}
    report["config"]["seed"] = args.seed
    report["weights"] = [*result.weights.v, result.weights.d]
    report.update(completion_report(result))
    if args.dot:
        _write_dot(result.graph, args.dot)
    _emit(report, args)
    return 0


def cmd_milnor(args) -> int:
    with open(args.file, encoding="utf-8") as handle:
        text = handle.read()
    if "=" in text:
        config = parse_config(text)
        if config.is_graph:
            f = build_f_kappa(config.graph(), config.power_assignment())
        else:
            f = parse_polynomial(config.polynomial)
    else:
        f = parse_polynomial(text.strip())
    report: dict = {"schema": SCHEMA, "polynomial": str(f)}
    mu = milnor_number(f)
    report["milnor"] = "infinite" if mu is INFINITE else mu
    if args.basis:
        if mu is INFINITE:
            raise MathError("no finite monomial basis to dump")
        monomials = quotient_basis(jacobian_basis(f)).standard_monomials()
        report["basis"] = [
            str(Polynomial.monomial(f.arity, m)) for m in monomials
        ]
    _emit(report, args)
    return 0


def _stage_json(stage) -> dict:
    return {
        "flip": stage.flip_leaf,
        "isolated": stage.isolated,
        "polynomial": str(stage.f),
        "resolved": str(stage.f_bar),
        "weights": [*stage.weights.v, stage.weights.d],
        "resolved_weights": [*stage.weights_bar.v, stage.weights_bar.d],
        "resolved_reduced_weights": [str(q) for q in stage.weights_bar.q],
        "resolved_kappa": list(stage.graph_bar.kappa),
        "chart2_smooth": stage.chart2_smooth,
        "bookkeeping": stage.bookkeeping,
    }


def cmd_resolve(args) -> int:
    config = load_config(args.config)
    if not config.is_graph:
        raise InputError("resolve needs kappa/powers input")
    if not args.flip:
        raise InputError("resolve needs at least one --flip")
    stages = iterate_resolution(
        config.graph(), config.power_assignment(), args.flip,
        seed=args.seed, check_dims=True,
    )
    report = {
        "schema": SCHEMA,
        "config": {**config.as_json(), "flips": args.flip, "seed": args.seed},
        "stages": [_stage_json(stage) for stage in stages],
    }
    final = stages[-1]
    report["resolved"] = str(final.f_bar)
    report["resolved_reduced_weights"] = [str(q) for q in final.weights_bar.q]
    if args.dot:
        _write_dot(final.graph_bar, args.dot)
    _emit(report, args)
    return 0


def cmd_orbifold_iso(args) -> int:
    config = load_config(args.config)
    if not config.is_graph:
        raise InputError("orbifold-iso needs kappa/powers input")
    if len(args.flip) != 1:
        raise InputError("orbifold-iso verifies exactly one flip")
    inp = build_orbifold_input(
        config.graph(), config.power_assignment(), args.flip[0], seed=args.seed
    )
    bar = build_bar_f(inp, check_dims=True)
    psi = verify_psi(bar)
    report = {
        "schema": SCHEMA,
        "config": {**config.as_json(), "flips": args.flip, "seed": args.seed},
        "polynomial": str(bar.f),
        "resolved": str(bar.f_bar),
        "bookkeeping": bar.bookkeeping,
        "isomorphism": psi.summary(),
    }
    _emit(report, args)
    return 0 if psi.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="loopsing",
        description="exact completion and Z/2 resolution of loop-with-branches "
        "quasihomogeneous singularities",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, dot=True):
        p.add_argument("--seed", type=int, default=0, help="coefficient draw seed")
        p.add_argument("--json", metavar="PATH", help="also write the report here")
        if dot:
            p.add_argument("--dot", metavar="PATH", help="write a DOT graph here")

    p = sub.add_parser("analyze", help="weights, graph shape, failing sets")
    p.add_argument("config")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("complete", help="build and certify a completion")
    p.add_argument("config")
    common(p)
    p.set_defaults(func=cmd_complete)

    p = sub.add_parser("milnor", help="Milnor number of a polynomial file")
    p.add_argument("file")
    p.add_argument("--basis", action="store_true", help="dump standard monomials")
    common(p, dot=False)
    p.set_defaults(func=cmd_milnor)

    p = sub.add_parser("resolve", help="resolve flips into a single polynomial")
    p.add_argument("config")
    p.add_argument(
        "--flip", type=int, action="append", default=[],
        help="leaf to flip (repeatable, applied in order)",
    )
    common(p)
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser(
        "orbifold-iso", help="verify the sector algebra isomorphism"
    )
    p.add_argument("config")
    p.add_argument("--flip", type=int, action="append", default=[])
    common(p, dot=False)
    p.set_defaults(func=cmd_orbifold_iso)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        _emit_error(exc)
        return 2
    except MathError as exc:
        _emit_error(exc)
        return 1
    except LoopsingError as exc:
        _emit_error(exc)
        return 1


def _emit_error(exc: Exception) -> None:
    print(
        json.dumps(
            {
                "schema": SCHEMA,
                "error": {"type": type(exc).__name__, "message": str(exc)},
            },
            sort_keys=True,
            indent=2,
        )
    )


if __name__ == "__main__":
    sys.exit(main())
