from __future__ import annotations

import logging
from typing import Iterable

from graphmdl.core.config import settings
from graphmdl.models.candidate import HierarchyLevel, Instance, SubstructureCandidate
from graphmdl.models.graph import Edge, GraphError, LabeledGraph, Vertex
from graphmdl.schemas.params import DiscoveryParams
from graphmdl.services.inexact_match import find_exact_instances

logger = logging.getLogger(__name__)


class LabelCollisionError(GraphError):
    pass


def sub_label(pass_index: int, prefix: str | None = None) -> str:
    prefix = prefix if prefix is not None else settings.SUB_LABEL_PREFIX
    return f"{prefix}{pass_index}"


def next_sub_label(g: LabeledGraph, prefix: str | None = None) -> str:
    """Smallest `<prefix><n>` (n >= 1) not yet in g's label table."""
    taken = set(g.label_table)
    n = 1
    while sub_label(n, prefix) in taken:
        n += 1
    return sub_label(n, prefix)


def select_disjoint(instances: Iterable[Instance], exact_only: bool = True) -> list[Instance]:
    """Greedy vertex-disjoint subset, first come first kept."""
    used: set[int] = set()
    chosen = []
    for inst in instances:
        if exact_only and not inst.exact:
            continue
        if inst.vertices & used:
            continue
        used |= inst.vertices
        chosen.append(inst)
    return chosen


def replace_instances(g: LabeledGraph, s: SubstructureCandidate, label: str) -> LabeledGraph:
    """
    Contract each selected exact instance of `s` to one vertex labeled `label`.

    Untouched vertices keep their ids and order; new vertices are appended with ids
    above the current maximum. Edges the instance itself covers are dropped. Every
    other edge is re-attached to the new vertices, so an edge between two vertices
    of the same instance that the definition does not contain becomes a self-loop.
    """
    chosen = select_disjoint(s.instances)
    if not chosen:
        return g
    if label in g.label_table:
        raise LabelCollisionError(f"label {label!r} already occurs in the graph")

    owner = {v: k for k, inst in enumerate(chosen) for v in inst.vertices}
    kept = [v for v in g.vertices if v.index not in owner]
    new_index = {v.index: pos for pos, v in enumerate(kept)}
    for v, k in owner.items():
        new_index[v] = len(kept) + k

    next_id = max(v.id for v in g.vertices) + 1
    vertices = [Vertex(id=v.id, index=pos, label=v.label) for pos, v in enumerate(kept)]
    vertices += [Vertex(id=next_id + k, index=len(kept) + k, label=label) for k in range(len(chosen))]

    edges = []
    for ei, e in enumerate(g.edges):
        inside = owner.get(e.src)
        if inside is not None and inside == owner.get(e.dst) and ei in chosen[inside].edges:
            continue
        edges.append(Edge.make(new_index[e.src], new_index[e.dst], e.label, e.directed))

    out = LabeledGraph(vertices=tuple(vertices), edges=tuple(edges))
    logger.debug(
        "replaced label=%s instances=%d vertices=%d->%d edges=%d->%d",
        label,
        len(chosen),
        g.num_vertices,
        out.num_vertices,
        g.num_edges,
        out.num_edges,
    )
    return out


def compress_with(g: LabeledGraph, definition: LabeledGraph, label: str) -> tuple[LabeledGraph, SubstructureCandidate]:
    """Contract every disjoint exact occurrence of a given definition."""
    instances = [
        Instance(
            vertex_map=tuple(enumerate(vertex_map)),
            vertices=frozenset(vertex_map),
            edges=edges,
        )
        for vertex_map, edges in find_exact_instances(g, definition)
    ]
    if not instances:
        logger.warning("no exact instance of the substructure found, graph left unchanged")
        return g, SubstructureCandidate(definition=definition, instances=[])

    candidate = SubstructureCandidate(definition=definition, instances=instances)
    return replace_instances(g, candidate, label), candidate


def hierarchical_discover(
    g: LabeledGraph,
    params: DiscoveryParams | None = None,
    passes: int = 1,
) -> list[HierarchyLevel]:
    """
    Repeat discover-and-contract on the compressed graph. A pass takes the best
    multi-vertex candidate with at least two disjoint exact instances; failing that,
    the best one whose exact instance spans the whole graph. Otherwise it stops.
    """
    from graphmdl.services.discovery import discover
    from graphmdl.services.mdl_encoder import description_length

    if passes < 1:
        raise ValueError(f"passes must be >= 1, got {passes}")
    params = params or DiscoveryParams()

    dl_original = description_length(g).total
    levels: list[HierarchyLevel] = []
    current = g
    for pass_index in range(1, passes + 1):
        if current.num_vertices <= 1:
            logger.info("pass=%d stop reason=single_vertex", pass_index)
            break

        label = sub_label(pass_index)
        if label in current.label_table:
            raise LabelCollisionError(f"label {label!r} already occurs in the graph")

        ranked = discover(current, params, {level.sub_label for level in levels})
        chosen = _pick(ranked, current)
        if chosen is None:
            logger.info("pass=%d stop reason=no_repeated_substructure", pass_index)
            break

        compressed = replace_instances(current, chosen, label)
        dl_compressed = description_length(compressed).total
        levels.append(
            HierarchyLevel(
                pass_index=pass_index,
                substructure=chosen,
                source_graph=current,
                compressed_graph=compressed,
                sub_label=label,
                compression_so_far=dl_compressed / dl_original if dl_original else 1.0,
                candidates=tuple(ranked),
            )
        )
        logger.info(
            "pass=%d label=%s instances=%d vertices=%d",
            pass_index,
            label,
            len(select_disjoint(chosen.instances)),
            compressed.num_vertices,
        )
        current = compressed
    return levels


def _pick(candidates: list[SubstructureCandidate], g: LabeledGraph) -> SubstructureCandidate | None:
    # contracting a one-vertex definition only relabels vertices
    eligible = [c for c in candidates if c.definition.num_vertices > 1]
    for c in eligible:
        if len(select_disjoint(c.instances)) >= 2:
            return c
    for c in eligible:
        if any(i.num_vertices == g.num_vertices and i.num_edges == g.num_edges for i in c.exact_instances):
            return c
    return None
