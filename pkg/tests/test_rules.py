import numpy as np
import pytest

from graphmdl.models.candidate import Instance, SubstructureCandidate
from graphmdl.models.graph import LabeledGraph
from graphmdl.schemas.params import RuleWeights
from graphmdl.services.graph_io import parse_graph
from graphmdl.services.hierarchy import compress_with
from graphmdl.services.mdl_encoder import dl_with_substructure
from graphmdl.services.rules import (
    RuleDomainError,
    combine_rules,
    compactness,
    connectivity,
    coverage,
    hierarchy_rule,
    instance_weight,
    label_preference,
    mdl_score,
    substructure_value,
)


def inst(vertices, edges=(), matchcost=0.0) -> Instance:
    return Instance(
        vertex_map=tuple(enumerate(sorted(vertices))),
        vertices=frozenset(vertices),
        edges=frozenset(edges),
        matchcost=matchcost,
    )


def candidate(definition: LabeledGraph, *instances: Instance) -> SubstructureCandidate:
    return SubstructureCandidate(definition=definition, instances=list(instances))


@pytest.fixture
def vertex_a() -> LabeledGraph:
    return LabeledGraph.from_parts(["a"])


@pytest.fixture
def triangle_candidate(two_triangles, triangle) -> SubstructureCandidate:
    _, c = compress_with(two_triangles, triangle, "SUB_1")
    return c


def test_instance_weight(triangle):
    s = candidate(triangle)
    assert instance_weight(inst({0, 1, 2}, {0, 1, 2}), s) == 1.0
    assert instance_weight(inst({0, 1, 2, 3}, {0, 1, 2, 3}, matchcost=2.0), s) == 0.75
    assert instance_weight(inst({0}, (), matchcost=7.0), s) == 0.0


def test_compactness_single_vertex(vertex_a):
    assert compactness(candidate(vertex_a, inst({0}))) == 1.0


def test_compactness_triangle(triangle_candidate):
    assert compactness(triangle_candidate) == pytest.approx(2.0)


def test_compactness_zero_weights(triangle):
    s = candidate(triangle, inst({0, 1, 2}, {0, 1, 2}, matchcost=10.0))
    assert compactness(s) == 1.0


def test_connectivity_one_instance():
    g = parse_graph("v 1 a\nv 2 b\nv 3 c\nv 4 d\nu 1 2 x\nu 2 3 x\nu 1 4 x")
    definition = g.subgraph([0, 1], [0])
    s = candidate(definition, inst({0, 1}, {0}))
    assert connectivity(s, None, g) == pytest.approx(1.5)


def test_connectivity_averages_instances(vertex_a):
    g = parse_graph("v 1 a\nv 2 a\nv 3 b\nv 4 b\nv 5 b\nu 1 3 x\nu 2 3 x\nu 2 4 x\nu 2 5 x")
    s = candidate(vertex_a, inst({0}), inst({1}))
    assert connectivity(s, None, g) == pytest.approx(1.5)


def test_connectivity_isolated_instances(vertex_a):
    g = LabeledGraph.from_parts(["a", "a"])
    s = candidate(vertex_a, inst({0}), inst({1}))
    assert connectivity(s, None, g) == 3.0
    assert connectivity(s, None, g, cap=5.0) == 6.0


def test_coverage_tiling(two_triangles, triangle_candidate):
    assert coverage(triangle_candidate, None, two_triangles) == pytest.approx(2.0)


def test_coverage_half(two_triangles, triangle_candidate):
    first = triangle_candidate.instances[0]
    assert coverage(triangle_candidate, [first], two_triangles) == pytest.approx(1.5)


def test_coverage_overlap_counts_once(two_triangles, triangle_candidate):
    first = triangle_candidate.instances[0]
    assert coverage(triangle_candidate, [first, first], two_triangles) == pytest.approx(1.5)


def test_label_preference():
    xs = candidate(LabeledGraph.from_parts(["X", "X"]))
    xy = candidate(LabeledGraph.from_parts(["X", "Y"]))
    assert label_preference(xs, {}) == 1.0
    assert label_preference(xs, {"X": 4.0}) == pytest.approx(4.0)
    assert label_preference(xy, {"X": 4.0, "Y": 1.0}) == pytest.approx(2.0)
    assert label_preference(xy, {"X": 4.0}) == pytest.approx(2.0)


def test_hierarchy_rule_counts_generated_labels():
    s = candidate(LabeledGraph.from_parts(["SUB_1", "SUB_1", "a"]))
    assert hierarchy_rule(s, {"SUB_1"}) == 4.0
    assert hierarchy_rule(candidate(LabeledGraph.from_parts(["a"])), {"SUB_1"}) == 1.0


def test_hierarchy_rule_ignores_user_labels_with_the_prefix():
    s = candidate(LabeledGraph.from_parts(["SUB_1", "SUB_7", "a"]))
    assert hierarchy_rule(s) == 1.0
    assert hierarchy_rule(s, {"SUB_1"}) == 2.0


def test_zero_exponents_give_mdl_score():
    assert combine_rules(2.5, RuleWeights(), compactness=3.0, connectivity=1.7).value == 2.5


def test_strong_compactness_weight():
    report = combine_rules(2.0, RuleWeights(compactness_exp=8.0), compactness=1.5)
    assert report.value == pytest.approx(51.258, abs=0.001)


def test_negative_connectivity_exponent():
    report = combine_rules(3.0, RuleWeights(connectivity_exp=-1.0), connectivity=2.0)
    assert report.value == pytest.approx(1.5)


def test_hierarchy_bias():
    s = candidate(LabeledGraph.from_parts(["SUB_1", "SUB_1", "SUB_1"]))
    report = combine_rules(1.0, RuleWeights(hierarchy_exp=1.0), hierarchy=hierarchy_rule(s, {"SUB_1"}))
    assert report.value == 8.0


def test_zero_rule_negative_exponent():
    with pytest.raises(RuleDomainError):
        combine_rules(1.0, RuleWeights(coverage_exp=-1.0), coverage=0.0)


def test_zero_exponent_neutrality_random():
    rng = np.random.default_rng(3)
    for _ in range(100):
        score = float(rng.uniform(0.1, 10.0))
        rules = {k: float(rng.uniform(1.0, 5.0)) for k in ("compactness", "connectivity", "coverage", "label_pref", "hierarchy")}
        assert combine_rules(score, RuleWeights(), **rules).value == score


def test_value_scales_with_mdl_score():
    weights = RuleWeights(compactness_exp=2.0, coverage_exp=-0.5, connectivity_exp=1.0)
    rules = {"compactness": 1.8, "coverage": 1.3, "connectivity": 1.25}
    base = combine_rules(1.0, weights, **rules).value
    assert combine_rules(3.0, weights, **rules).value == pytest.approx(3.0 * base)


def test_substructure_value(two_triangles, triangle_candidate):
    report = substructure_value(triangle_candidate, None, two_triangles, RuleWeights())
    compression = dl_with_substructure(two_triangles, triangle_candidate)
    assert report.value == pytest.approx(mdl_score(compression))
    assert report.value == pytest.approx(1 / compression.compression)
    assert report.compactness == pytest.approx(2.0)
    assert report.coverage == pytest.approx(2.0)
    assert report.connectivity == pytest.approx(7.0)
