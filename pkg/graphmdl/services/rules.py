from __future__ import annotations

import logging
import math
from typing import Collection, Mapping, Sequence

from graphmdl.models.candidate import Instance, SubstructureCandidate
from graphmdl.models.graph import LabeledGraph
from graphmdl.schemas.report import CompressionReport, RuleReport
from graphmdl.schemas.params import RuleWeights
from graphmdl.services.mdl_encoder import dl_with_substructure

logger = logging.getLogger(__name__)


class RuleDomainError(ValueError):
    pass


def instance_weight(i: Instance, s: SubstructureCandidate) -> float:
    """w(i, s) = 1 - matchcost / size(i), clamped to [0, 1]."""
    if i.size <= 0:
        raise ValueError("instance has size 0")
    larger = max(i.size, s.definition.size)
    if i.matchcost > larger:
        return 0.0
    return min(1.0, max(0.0, 1.0 - i.matchcost / i.size))


def compactness(s: SubstructureCandidate, instances: Sequence[Instance] | None = None) -> float:
    instances = _instances(s, instances)
    acc = sum(instance_weight(i, s) * i.num_edges / i.num_vertices for i in instances)
    return 1.0 + acc / len(instances)


def connectivity(
    s: SubstructureCandidate,
    instances: Sequence[Instance] | None,
    g: LabeledGraph,
    cap: float | None = None,
) -> float:
    """
    1 + inverse of the weighted mean number of external connections. A zero mean with
    nonzero weights (fully isolated instances) uses `cap` as the inverse (default v(G)).
    """
    instances = _instances(s, instances)
    weights = [instance_weight(i, s) for i in instances]
    if not any(weights):
        return 1.0

    avg = sum(w * external_connections(i, g) for w, i in zip(weights, instances)) / len(instances)
    if avg == 0:
        return 1.0 + (cap if cap is not None else float(g.num_vertices))
    return 1.0 + 1.0 / avg


def external_connections(i: Instance, g: LabeledGraph) -> int:
    n = 0
    for v in i.vertices:
        for ei in g.incident_edges(v):
            e = g.edges[ei]
            if (e.src in i.vertices) != (e.dst in i.vertices):
                n += 1
    return n


def coverage(s: SubstructureCandidate, instances: Sequence[Instance] | None, g: LabeledGraph) -> float:
    """1 + Σ w(i,s) × unique_structure(i) / size(G), instances taken in their listed order."""
    instances = _instances(s, instances)
    seen_v: set[int] = set()
    seen_e: set[int] = set()
    acc = 0.0
    for i in instances:
        unique = len(i.vertices - seen_v) + len(i.edges - seen_e)
        seen_v |= i.vertices
        seen_e |= i.edges
        acc += instance_weight(i, s) * unique
    return 1.0 + acc / g.size


def label_preference(s: SubstructureCandidate, prefs: Mapping[str, float]) -> float:
    """Geometric mean of the preferences of the definition's vertex labels (unlisted -> 1)."""
    if not prefs:
        return 1.0
    values = [prefs.get(v.label, 1.0) for v in s.definition.vertices]
    return math.prod(values) ** (1.0 / len(values))


def hierarchy_rule(s: SubstructureCandidate, generated_labels: Collection[str] = ()) -> float:
    """2 ** (definition vertices that stand for substructures found by earlier passes)."""
    count = sum(1 for v in s.definition.vertices if v.label in generated_labels)
    return 2.0**count


def combine_rules(
    mdl_score: float,
    weights: RuleWeights,
    *,
    compactness: float = 1.0,
    connectivity: float = 1.0,
    coverage: float = 1.0,
    label_pref: float = 1.0,
    hierarchy: float = 1.0,
) -> RuleReport:
    value = mdl_score
    for name, rule, exp in (
        ("compactness", compactness, weights.compactness_exp),
        ("connectivity", connectivity, weights.connectivity_exp),
        ("coverage", coverage, weights.coverage_exp),
        ("label_pref", label_pref, weights.label_pref_exp),
        ("hierarchy", hierarchy, weights.hierarchy_exp),
    ):
        if exp == 0:
            continue
        if rule == 0 and exp < 0:
            raise RuleDomainError(f"{name} rule is 0 and cannot take negative exponent {exp}")
        value *= rule**exp

    return RuleReport(
        mdl_score=mdl_score,
        compactness=compactness,
        connectivity=connectivity,
        coverage=coverage,
        label_pref=label_pref,
        hierarchy=hierarchy,
        value=value,
    )


def mdl_score(report: CompressionReport) -> float:
    """DL(G) / (I(S) + I(G|S)): the compression factor, larger is better."""
    if report.dl_combined == 0:
        return 1.0
    return report.dl_original / report.dl_combined


def substructure_value(
    s: SubstructureCandidate,
    instances: Sequence[Instance] | None,
    g: LabeledGraph,
    weights: RuleWeights,
    report: CompressionReport | None = None,
    generated_labels: Collection[str] = (),
) -> RuleReport:
    instances = _instances(s, instances)
    report = report or s.compression or dl_with_substructure(g, s)

    return combine_rules(
        mdl_score(report),
        weights,
        compactness=compactness(s, instances),
        connectivity=connectivity(s, instances, g, weights.connectivity_cap),
        coverage=coverage(s, instances, g),
        label_pref=label_preference(s, weights.label_prefs),
        hierarchy=hierarchy_rule(s, generated_labels),
    )


def _instances(s: SubstructureCandidate, instances: Sequence[Instance] | None) -> Sequence[Instance]:
    instances = s.instances if instances is None else instances
    if not instances:
        raise ValueError("rule needs at least one instance")
    return instances
