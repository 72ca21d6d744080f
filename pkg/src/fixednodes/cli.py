"""Command-line interface.

Subcommands: ``label``, ``dim``, ``fixed``, ``verify``, ``gen``, ``export-dot``.
Exit codes: 0 success, 1 invalid input, 2 method disagreement in ``verify``,
3 numeric sampling inconclusive.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .dot import export_dot
from .errors import InconclusiveError, InvalidGraphError
from .generate import GeneratorConfig, random_layered_dag, spread_widths
from .graph import StructuredDag, graph_from_json, graph_to_json, label_layers, validate
from .numeric import DEFAULT_TOL, DEFAULT_TRIALS
from .report import ALL_METHODS, analyze, report_to_json_dict
from .search import attach_matched_sets
from .stems import DEFAULT_ENUM_CAP, generic_dimension


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.run(args)
    except InconclusiveError as exc:
        print(f"error: numeric verification inconclusive: {exc}", file=sys.stderr)
        return 3
    except (InvalidGraphError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fixednodes",
        description="Determine fixed (parameter-robust controllable) nodes of "
        "leader-driven directed acyclic graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_command(name: str, help_text: str):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("graph", help="path to a graph JSON file")
        cmd.add_argument(
            "--allow-nonsource-leaders",
            action="store_true",
            help="accept leaders with incoming edges (layered analysis refused)",
        )
        cmd.add_argument("-o", "--output", help="write to this file instead of stdout")
        return cmd

    cmd = graph_command("label", "emit the layer labeling as JSON")
    cmd.set_defaults(run=_cmd_label)

    cmd = graph_command("dim", "emit the generic dimension and a witness family")
    cmd.set_defaults(run=_cmd_dim)

    for name, help_text in (
        ("fixed", "determine fixed nodes and emit the analysis report"),
        ("verify", "cross-check all methods; exit 2 on disagreement"),
    ):
        cmd = graph_command(name, help_text)
        if name == "fixed":
            cmd.add_argument(
                "--method",
                choices=ALL_METHODS + ("all",),
                default="all",
                help="which determination method(s) to run",
            )
        cmd.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
        cmd.add_argument("--seed", type=int, default=0)
        cmd.add_argument("--tol", type=float, default=DEFAULT_TOL)
        cmd.add_argument(
            "--no-prune",
            action="store_true",
            help="disable certified non-fixed pruning in the layered method",
        )
        cmd.add_argument(
            "--enum-cap",
            type=int,
            default=DEFAULT_ENUM_CAP,
            help="node budget for attaching exhaustive matched sets to the report",
        )
        cmd.set_defaults(run=_cmd_fixed if name == "fixed" else _cmd_verify)

    cmd = sub.add_parser("gen", help="emit a random layered DAG as graph JSON")
    cmd.add_argument("--p", type=int, required=True, help="number of layers")
    cmd.add_argument("--width", type=int, required=True, help="average nodes per layer")
    group = cmd.add_mutually_exclusive_group(required=True)
    group.add_argument("--edges", type=int, help="total edge count")
    group.add_argument("--edge-prob", type=float, help="per-pair edge probability")
    cmd.add_argument("--leaders", type=int, required=True)
    cmd.add_argument("--seed", type=int, default=0)
    cmd.add_argument(
        "--skip-prob",
        type=float,
        default=0.0,
        help="probability that an extra edge skips at least one layer",
    )
    cmd.add_argument("-o", "--output", help="write to this file instead of stdout")
    cmd.set_defaults(run=_cmd_gen)

    cmd = graph_command("export-dot", "emit Graphviz DOT with fixed nodes styled")
    cmd.add_argument(
        "--method",
        choices=ALL_METHODS,
        default="layered",
        help="method used to determine the highlighted fixed nodes",
    )
    cmd.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    cmd.add_argument("--seed", type=int, default=0)
    cmd.add_argument("--tol", type=float, default=DEFAULT_TOL)
    cmd.set_defaults(run=_cmd_export_dot)

    return parser


def _load_graph(args) -> StructuredDag:
    dag = graph_from_json(Path(args.graph).read_text())
    report = validate(dag, allow_nonsource_leaders=args.allow_nonsource_leaders)
    if not report.ok:
        raise InvalidGraphError("; ".join(v.message for v in report.violations))
    for warning in report.warnings:
        print(f"warning: {warning.message}", file=sys.stderr)
    return dag


def _emit(args, text: str) -> int:
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _dump(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _cmd_label(args) -> int:
    dag = _load_graph(args)
    labeling = label_layers(dag)
    return _emit(
        args,
        _dump(
            {
                "depth": labeling.depth,
                "layers": [sorted(layer) for layer in labeling.layers],
            }
        ),
    )


def _cmd_dim(args) -> int:
    dag = _load_graph(args)
    dim, witness = generic_dimension(dag)
    return _emit(
        args,
        _dump({"generic_dim": dim, "witness": [list(stem) for stem in witness.stems]}),
    )


def _analysis(args, methods) -> dict:
    dag = _load_graph(args)
    report = analyze(
        dag,
        methods,
        trials=args.trials,
        seed=args.seed,
        tol=args.tol,
        prune=not args.no_prune,
        allow_nonsource_leaders=args.allow_nonsource_leaders,
    )
    if "layered" in report.methods and dag.node_count <= args.enum_cap:
        report.methods["layered"] = attach_matched_sets(
            dag, report.methods["layered"], args.enum_cap
        )
    return report_to_json_dict(report)


def _cmd_fixed(args) -> int:
    methods = ALL_METHODS if args.method == "all" else (args.method,)
    return _emit(args, _dump(_analysis(args, methods)))


def _cmd_verify(args) -> int:
    payload = _analysis(args, ALL_METHODS)
    status = _emit(args, _dump(payload))
    if not payload["consistent"]:
        sets = {name: entry["fixed"] for name, entry in payload["methods"].items()}
        print(f"error: methods disagree on the fixed set: {sets}", file=sys.stderr)
        return 2
    return status


def _cmd_gen(args) -> int:
    widths = spread_widths(args.p, args.width, args.leaders)
    config = GeneratorConfig(
        depth=args.p,
        widths=widths,
        leader_count=args.leaders,
        seed=args.seed,
        edge_count=args.edges,
        edge_prob=args.edge_prob,
        skip_layer_prob=args.skip_prob,
    )
    return _emit(args, graph_to_json(random_layered_dag(config)))


def _cmd_export_dot(args) -> int:
    dag = _load_graph(args)
    report = analyze(
        dag,
        (args.method,),
        trials=args.trials,
        seed=args.seed,
        tol=args.tol,
        allow_nonsource_leaders=args.allow_nonsource_leaders,
    )
    fixed = report.fixed_sets[args.method]
    return _emit(args, export_dot(dag, report.labeling, fixed))


if __name__ == "__main__":
    raise SystemExit(main())
