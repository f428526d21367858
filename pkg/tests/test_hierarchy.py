from collections import Counter

import pytest

from graphmdl.models.candidate import Instance, SubstructureCandidate
from graphmdl.models.graph import LabeledGraph
from graphmdl.schemas.params import DiscoveryParams
from graphmdl.services.discovery import discover
from graphmdl.services.graph_io import parse_graph, serialize_graph
from graphmdl.services.hierarchy import (
    LabelCollisionError,
    compress_with,
    hierarchical_discover,
    next_sub_label,
    replace_instances,
    select_disjoint,
    sub_label,
)
from graphmdl.services.mdl_encoder import description_length

JOINED_TRIANGLES = """
v 1 a
v 2 b
v 3 c
v 4 a
v 5 b
v 6 c
u 1 2 e
u 2 3 e
u 3 1 e
u 4 5 e
u 5 6 e
u 6 4 e
u 3 4 j
"""

HUB = """
v 1 h
v 2 a
v 3 b
v 4 a
v 5 b
d 1 2 out
d 5 1 back
u 2 3 in
u 4 5 in
"""


def edge_rows(g: LabeledGraph) -> list[tuple[int, int, str, bool]]:
    return sorted((g.vertices[e.src].id, g.vertices[e.dst].id, e.label, e.directed) for e in g.edges)


def test_chain_contracts_to_three(pair_chain, pair):
    compressed, candidate = compress_with(pair_chain, pair, "SUB_1")
    assert len(candidate.instances) == 3
    assert [v.label for v in compressed.vertices] == ["SUB_1"] * 3
    assert [v.id for v in compressed.vertices] == [7, 8, 9]
    assert [e.label for e in compressed.edges] == ["link", "link"]


def test_whole_graph_becomes_one_vertex(triangle):
    compressed, _ = compress_with(triangle, triangle, "SUB_1")
    assert compressed.num_vertices == 1
    assert compressed.num_edges == 0
    assert compressed.vertices[0].id == 4


def test_unclaimed_edge_inside_instance_becomes_loop(triangle):
    path = parse_graph("v 1 a\nv 2 b\nv 3 c\nu 1 2 e\nu 2 3 e")
    compressed, candidate = compress_with(triangle, path, "SUB_1")
    assert len(candidate.instances) == 1
    assert [(v.id, v.label) for v in compressed.vertices] == [(4, "SUB_1")]
    assert edge_rows(compressed) == [(4, 4, "e", False)]
    assert description_length(compressed).total > 0


def test_overlapping_instances_keep_the_first():
    g = parse_graph("v 1 a\nv 2 a\nv 3 a\nu 1 2 x\nu 2 3 x")
    d = parse_graph("v 1 a\nv 2 a\nu 1 2 x")
    compressed, candidate = compress_with(g, d, "SUB_1")
    assert [i.key for i in candidate.instances] == [((0, 1), (0,)), ((1, 2), (1,))]
    assert [(v.id, v.label) for v in compressed.vertices] == [(3, "a"), (4, "SUB_1")]
    assert edge_rows(compressed) == [(3, 4, "x", False)]


def test_external_edges_keep_label_and_direction(pair):
    g = parse_graph(HUB)
    compressed, _ = compress_with(g, pair, "SUB_1")
    assert [(v.id, v.label) for v in compressed.vertices] == [(1, "h"), (6, "SUB_1"), (7, "SUB_1")]
    assert edge_rows(compressed) == [(1, 6, "out", True), (7, 1, "back", True)]


@pytest.mark.parametrize("fixture, definition", [("pair_chain", "pair"), ("two_triangles", "triangle")])
def test_vertex_and_edge_accounting(request, fixture, definition):
    g = request.getfixturevalue(fixture)
    d = request.getfixturevalue(definition)
    compressed, candidate = compress_with(g, d, "SUB_1")
    chosen = select_disjoint(candidate.instances)
    assert compressed.num_vertices == g.num_vertices - sum(i.num_vertices for i in chosen) + len(chosen)
    assert compressed.num_edges == g.num_edges - sum(i.num_edges for i in chosen)


def test_no_instances_leaves_graph_unchanged(pair_chain, pair):
    compressed, _ = compress_with(pair_chain, pair, "SUB_1")
    again, candidate = compress_with(compressed, pair, "SUB_2")
    assert again is compressed
    assert candidate.instances == []


def test_label_collision():
    g = parse_graph("v 1 a\nv 2 SUB_1\nu 1 2 x")
    s = SubstructureCandidate(
        definition=g.subgraph([0], ()),
        instances=[Instance(vertex_map=((0, 0),), vertices=frozenset({0}), edges=frozenset())],
    )
    with pytest.raises(LabelCollisionError):
        replace_instances(g, s, "SUB_1")
    with pytest.raises(LabelCollisionError):
        hierarchical_discover(g)


def test_inexact_instances_are_not_contracted(pair_chain, pair):
    s = SubstructureCandidate(
        definition=pair,
        instances=[Instance(vertex_map=((0, 0), (1, 1)), vertices=frozenset({0, 1}), edges=frozenset({0}), matchcost=1.0)],
    )
    assert replace_instances(pair_chain, s, "SUB_1") is pair_chain


def test_sub_labels():
    assert sub_label(3) == "SUB_3"
    assert sub_label(2, prefix="S") == "S2"
    assert next_sub_label(parse_graph("v 1 SUB_1\nv 2 SUB_3")) == "SUB_2"
    assert next_sub_label(LabeledGraph.from_parts(["a"])) == "SUB_1"


def test_single_pass_is_discover_then_replace(two_triangles):
    params = DiscoveryParams(nbest=10)
    (level,) = hierarchical_discover(two_triangles, params, passes=1)
    best = discover(two_triangles, params)[0]
    expected = replace_instances(two_triangles, best, "SUB_1")

    assert level.pass_index == 1
    assert level.sub_label == "SUB_1"
    assert level.source_graph is two_triangles
    assert serialize_graph(level.compressed_graph) == serialize_graph(expected)
    assert level.compression_so_far == pytest.approx(
        description_length(expected).total / description_length(two_triangles).total
    )
    assert [c.serialized for c in level.candidates] == [c.serialized for c in discover(two_triangles, params)]


def test_joined_triangles_collapse_in_two_passes():
    levels = hierarchical_discover(parse_graph(JOINED_TRIANGLES), DiscoveryParams(nbest=10), passes=3)
    assert len(levels) == 2
    first, second = levels
    assert (first.substructure.definition.num_vertices, first.substructure.definition.num_edges) == (3, 3)
    assert [v.label for v in first.compressed_graph.vertices] == ["SUB_1", "SUB_1"]
    assert second.source_graph is first.compressed_graph
    assert second.compressed_graph.num_vertices == 1
    assert second.compressed_graph.vertices[0].label == "SUB_2"


def test_ladder_builds_on_previous_pass(make_ladder):
    levels = hierarchical_discover(make_ladder(6), DiscoveryParams(nbest=10), passes=2)
    assert len(levels) == 2
    first, second = levels
    chosen = select_disjoint(first.substructure.instances)
    assert len(chosen) >= 2
    assert first.compressed_graph.num_edges == first.source_graph.num_edges - sum(i.num_edges for i in chosen)

    # unclaimed edges between vertices of one instance stay as loops on its new vertex
    loops = Counter(first.compressed_graph.vertices[e.src].id for e in first.compressed_graph.edges if e.src == e.dst)
    next_id = max(v.id for v in first.source_graph.vertices) + 1
    for k, inst in enumerate(chosen):
        unclaimed = [
            ei
            for ei, e in enumerate(first.source_graph.edges)
            if e.src in inst.vertices and e.dst in inst.vertices and ei not in inst.edges
        ]
        assert loops[next_id + k] == len(unclaimed)

    assert sum(v.label == "SUB_1" for v in second.substructure.definition.vertices) >= 2


def test_single_vertex_graph_has_no_levels():
    assert hierarchical_discover(LabeledGraph.from_parts(["a"]), passes=2) == []


def test_passes_must_be_positive(triangle):
    with pytest.raises(ValueError):
        hierarchical_discover(triangle, passes=0)
