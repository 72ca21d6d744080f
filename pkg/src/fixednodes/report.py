"""End-to-end analysis and the versioned report format.

:func:`analyze` validates a graph, labels its layers, computes the generic
dimension with a witness, runs the requested fixed-node methods, and flags any
disagreement between them.  Reports serialize to a versioned JSON schema; the
wall-clock timing stays on the in-memory object only, so identical inputs and
seeds always produce byte-identical report text.
"""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass

from .errors import InvalidGraphError
from .graph import LayerLabeling, StructuredDag, graph_to_json, label_layers, validate
from .numeric import DEFAULT_TOL, DEFAULT_TRIALS, numeric_fixed_nodes
from .search import (
    FixedNodeResult,
    fixed_nodes_layered,
    fixed_nodes_oracle,
)
from .stems import StemFamily, generic_dimension

REPORT_SCHEMA = 1

COMBINATORIAL_METHODS = ("layered", "oracle")
ALL_METHODS = ("layered", "oracle", "numeric")


@dataclass(frozen=True)
class NumericSummary:
    fixed: frozenset[int]
    trials: int
    seed: int
    tol: float


@dataclass(frozen=True)
class AnalysisReport:
    digest: str
    dag: StructuredDag
    labeling: LayerLabeling
    generic_dim: int
    witness: StemFamily
    methods: dict[str, FixedNodeResult | NumericSummary]
    consistent: bool
    elapsed: float  # seconds; deliberately absent from the JSON form

    @property
    def fixed_sets(self) -> dict[str, frozenset[int]]:
        return {
            name: result.fixed if isinstance(result, NumericSummary) else result.fixed_nodes
            for name, result in self.methods.items()
        }


def graph_digest(dag: StructuredDag) -> str:
    return "sha256:" + hashlib.sha256(graph_to_json(dag).encode()).hexdigest()


def analyze(
    dag: StructuredDag,
    methods: tuple[str, ...] = ALL_METHODS,
    *,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
    prune: bool = True,
    allow_nonsource_leaders: bool = False,
) -> AnalysisReport:
    """Run the requested methods and cross-compare their fixed sets.

    The numeric method receives the combinatorial dimension as its expected
    rank, so degenerate sampling surfaces as an error instead of a silently
    wrong set.  Leaders with incoming edges are tolerated only with
    ``allow_nonsource_leaders``, and only for the oracle and numeric methods:
    the layer hierarchy presumes source leaders.
    """
    unknown = set(methods) - set(ALL_METHODS)
    if unknown:
        raise ValueError(f"unknown methods: {sorted(unknown)}")
    if not methods:
        raise ValueError("at least one method is required")
    report = validate(dag, allow_nonsource_leaders=allow_nonsource_leaders)
    if not report.ok:
        details = "; ".join(v.message for v in report.violations)
        raise InvalidGraphError(f"graph fails validation: {details}")
    if report.warnings and "layered" in methods:
        raise InvalidGraphError(
            "layered analysis requires source leaders; rerun with oracle/numeric methods"
        )

    started = time.perf_counter()
    labeling = label_layers(dag)
    dim, witness = generic_dimension(dag)
    results: dict[str, FixedNodeResult | NumericSummary] = {}
    for name in methods:
        if name == "layered":
            results[name] = fixed_nodes_layered(dag, prune=prune)
        elif name == "oracle":
            results[name] = fixed_nodes_oracle(dag)
        else:
            fixed = numeric_fixed_nodes(dag, trials, seed, tol, expected_dim=dim)
            results[name] = NumericSummary(fixed, trials, seed, tol)
    sets = [
        result.fixed if isinstance(result, NumericSummary) else result.fixed_nodes
        for result in results.values()
    ]
    consistent = all(s == sets[0] for s in sets)
    elapsed = time.perf_counter() - started
    return AnalysisReport(
        digest=graph_digest(dag),
        dag=dag,
        labeling=labeling,
        generic_dim=dim,
        witness=witness,
        methods=results,
        consistent=consistent,
        elapsed=elapsed,
    )


def report_to_json_dict(report: AnalysisReport) -> dict:
    """The documented report schema (schema 1); timing is intentionally omitted."""
    methods_json: dict[str, dict] = {}
    for name, result in report.methods.items():
        if isinstance(result, NumericSummary):
            methods_json[name] = {
                "fixed": sorted(result.fixed),
                "trials": result.trials,
                "seed": result.seed,
                "tol": result.tol,
            }
        else:
            entry: dict = {"fixed": sorted(result.fixed_nodes)}
            if result.per_layer:
                entry["layers"] = [
                    {
                        "layer": lr.layer_index,
                        "targets": sorted(lr.targets),
                        "mu": lr.mu,
                        "fixed": sorted(lr.fixed),
                        "fast_path": lr.fast_path,
                        **(
                            {"matched_sets": [sorted(s) for s in lr.matched_sets]}
                            if lr.matched_sets is not None
                            else {}
                        ),
                    }
                    for lr in result.per_layer
                ]
            methods_json[name] = entry
    return {
        "schema": REPORT_SCHEMA,
        "digest": report.digest,
        "n": report.dag.node_count,
        "leaders": sorted(report.dag.leaders),
        "labeling": {
            "depth": report.labeling.depth,
            "layers": [sorted(layer) for layer in report.labeling.layers],
        },
        "generic_dim": report.generic_dim,
        "witness": [list(stem) for stem in report.witness.stems],
        "methods": methods_json,
        "consistent": report.consistent,
    }
