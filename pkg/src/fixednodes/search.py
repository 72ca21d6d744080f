"""Fixed-node determination.

A node is *fixed* when it stays controllable under every choice of nonzero
network weights; equivalently, attaching a fresh input to it cannot raise the
generic dimension of the controllable subspace.  Four routes are implemented:

* :func:`fixed_nodes_oracle` probes that definition node by node (the
  reference everything else is measured against),
* :func:`fixed_nodes_single_leader` reads the answer off the layer structure
  when there is exactly one leader,
* :func:`fixed_nodes_layered` walks the layers top-down and keeps the targets
  that belong to every maximum matched set of their layer, and
* :func:`prune_uncovered` certifies non-fixed nodes from one maximum family.

The layered route evaluates each layer inside its prefix graph.  On graphs
with layer-skipping edges this per-layer criterion is known to disagree with
the oracle on some instances (see ``tests/test_limitations.py``); on graphs
whose edges only join adjacent layers the two routes agree.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import InvalidGraphError
from .graph import LayerLabeling, StructuredDag, induce_prefix, label_layers
from .stems import (
    DEFAULT_ENUM_CAP,
    LayerCoverage,
    StemFamily,
    enumerate_max_families,
    generic_dimension,
)

FAST_PATH_SINGLETON = "singleton-layer"
FAST_PATH_UNIQUE_MATCHED = "unique-matched-set"
FAST_PATH_UNIQUE_IN_EDGE = "unique-fixed-in-edge"
FAST_PATH_ESSENTIALITY = "essentiality"
FAST_PATH_NONE = "none"


@dataclass(frozen=True)
class LayerReport:
    """Per-layer outcome of the layered search."""

    layer_index: int
    targets: frozenset[int]
    mu: int
    fixed: frozenset[int]
    fast_path: str
    matched_sets: tuple[frozenset[int], ...] | None = None


@dataclass(frozen=True)
class FixedNodeResult:
    fixed_nodes: frozenset[int]
    per_layer: tuple[LayerReport, ...]
    generic_dim: int
    method: str


def fixed_nodes_oracle(dag: StructuredDag) -> FixedNodeResult:
    """Reference method: a node is fixed iff promoting it to a leader keeps
    the generic dimension unchanged.  Leaders are fixed without probing, since
    attaching a second input to a led node changes nothing."""
    base_dim, _ = generic_dimension(dag)
    fixed = set(dag.leaders)
    for v in sorted(dag.nodes - dag.leaders):
        probed, _ = generic_dimension(dag.with_leaders(dag.leaders | {v}))
        if probed == base_dim:
            fixed.add(v)
    return FixedNodeResult(frozenset(fixed), (), base_dim, "oracle")


def fixed_nodes_single_leader(
    dag: StructuredDag, labeling: LayerLabeling | None = None
) -> FixedNodeResult:
    """Single-leader shortcut: exactly the singleton layers are fixed.

    No flow is computed; the generic dimension of a single-leader layered DAG
    equals its depth (a longest stem collects one node per layer).
    """
    if len(dag.leaders) != 1:
        raise InvalidGraphError("single-leader method requires exactly one leader")
    labeling = labeling if labeling is not None else label_layers(dag)
    fixed: set[int] = set()
    reports = []
    for k, layer in enumerate(labeling.layers, start=1):
        singleton = len(layer) == 1
        if singleton:
            fixed.update(layer)
        reports.append(
            LayerReport(
                layer_index=k,
                targets=layer,
                mu=1,
                fixed=layer if singleton else frozenset(),
                fast_path=FAST_PATH_SINGLETON if singleton else FAST_PATH_NONE,
            )
        )
    return FixedNodeResult(frozenset(fixed), tuple(reports), labeling.depth, "single-leader")


def prune_uncovered(dag: StructuredDag, witness: StemFamily) -> frozenset[int]:
    """Nodes outside a maximum family's coverage are certified non-fixed.

    Promoting such a node to a leader adds its length-1 stem to the witness,
    so the generic dimension rises.  The witness must be maximum; anything
    smaller is rejected by a dimension recheck.
    """
    dim, _ = generic_dimension(dag)
    if len(witness.covered) != dim:
        raise InvalidGraphError(
            f"witness covers {len(witness.covered)} nodes but the maximum is {dim}"
        )
    return frozenset(dag.nodes) - witness.covered


def fixed_nodes_layered(
    dag: StructuredDag,
    *,
    prune: bool = True,
    unique_feed_fast_path: bool = False,
) -> FixedNodeResult:
    """Top-down layered search over maximum matched sets.

    Layer by layer, a target is fixed when it lies in every maximum matched set
    of its layer, decided by an essentiality probe on the prefix graph.  Two
    shortcuts are applied first: a singleton layer is fixed outright, and with
    ``unique_feed_fast_path`` a target whose unique in-edge is also the unique
    out-edge of a fixed node one layer up inherits fixedness without a probe
    (off by default: it tracks the add-a-leader oracle rather than the
    matched-set criterion on graphs where the two disagree).  With ``prune``,
    nodes left uncovered by one maximum whole-graph family are recorded as
    non-fixed without probing.
    """
    labeling = label_layers(dag)
    base_dim, witness = generic_dimension(dag)
    pruned = frozenset(dag.nodes) - witness.covered if prune else frozenset()

    all_fixed: set[int] = set()
    reports: list[LayerReport] = []
    for k, layer in enumerate(labeling.layers, start=1):
        prefix = induce_prefix(dag, labeling, k)
        coverage = LayerCoverage(prefix, layer)
        candidates = sorted(layer - pruned)
        layer_fixed: set[int] = set()
        used_feed_rule = False
        used_essentiality = False

        if len(layer) == 1:
            if candidates and coverage.mu == 1:
                layer_fixed.update(layer)
            path = FAST_PATH_SINGLETON
        else:
            for v in candidates:
                if unique_feed_fast_path and _unique_fixed_feed(dag, labeling, all_fixed, v, k):
                    layer_fixed.add(v)
                    used_feed_rule = True
                elif coverage.essential(v):
                    layer_fixed.add(v)
                    used_essentiality = True
                else:
                    used_essentiality = True
            if used_essentiality:
                path = FAST_PATH_ESSENTIALITY
            elif used_feed_rule:
                path = FAST_PATH_UNIQUE_IN_EDGE
            else:
                path = FAST_PATH_NONE
        all_fixed.update(layer_fixed)
        reports.append(
            LayerReport(
                layer_index=k,
                targets=layer,
                mu=coverage.mu,
                fixed=frozenset(layer_fixed),
                fast_path=path,
            )
        )
    return FixedNodeResult(frozenset(all_fixed), tuple(reports), base_dim, "layered")


def attach_matched_sets(
    dag: StructuredDag, result: FixedNodeResult, cap: int = DEFAULT_ENUM_CAP
) -> FixedNodeResult:
    """Enrich a layered result with exhaustively enumerated matched sets.

    Layers that turn out to have a unique maximum matched set are retagged
    ``unique-matched-set``: all its members are fixed by that rule alone, which
    coincides with what the essentiality probes already decided.
    """
    if result.method != "layered":
        raise InvalidGraphError("matched sets attach to layered results only")
    labeling = label_layers(dag)
    enriched = []
    for report in result.per_layer:
        prefix = induce_prefix(dag, labeling, report.layer_index)
        families = enumerate_max_families(prefix, report.targets, cap)
        matched = tuple(
            sorted({fam.matched(report.targets) for fam in families}, key=sorted)
        )
        path = report.fast_path
        if len(matched) == 1 and path == FAST_PATH_ESSENTIALITY:
            path = FAST_PATH_UNIQUE_MATCHED
        enriched.append(replace(report, matched_sets=matched, fast_path=path))
    return replace(result, per_layer=tuple(enriched))


def unique_matched_set_layers(dag: StructuredDag, cap: int = DEFAULT_ENUM_CAP) -> frozenset[int]:
    """Layers whose maximum matched-node set is unique (diagnostic, exhaustive).

    Every target matched in such a layer is fixed under the layered criterion;
    the check enumerates families, so it is budgeted like the enumerator.
    """
    labeling = label_layers(dag)
    unique: set[int] = set()
    for k, layer in enumerate(labeling.layers, start=1):
        prefix = induce_prefix(dag, labeling, k)
        families = enumerate_max_families(prefix, layer, cap)
        if len({fam.matched(layer) for fam in families}) == 1:
            unique.add(k)
    return frozenset(unique)


def _unique_fixed_feed(
    dag: StructuredDag,
    labeling: LayerLabeling,
    fixed_so_far: set[int],
    v: int,
    k: int,
) -> bool:
    """One in-edge, from a fixed node exactly one layer up whose only out-edge
    is that same edge.  The one-sided form (any fixed feeder with out-degree
    above one) over-approximates and is deliberately not used."""
    if k < 2:
        return False
    feeders = dag.in_neighbors[v]
    if len(feeders) != 1:
        return False
    j = feeders[0]
    return (
        labeling.layer_of[j] == k - 1
        and j in fixed_so_far
        and dag.out_neighbors[j] == (v,)
    )
