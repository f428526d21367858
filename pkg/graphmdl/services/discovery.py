from __future__ import annotations

import logging
from collections import Counter, defaultdict
from typing import Collection, Hashable, Iterable

from graphmdl.models.candidate import Instance, SubstructureCandidate
from graphmdl.models.graph import EmptyGraphError, LabeledGraph
from graphmdl.schemas.params import DiscoveryParams
from graphmdl.services.inexact_match import find_isomorphism, match_within
from graphmdl.services.mdl_encoder import dl_with_substructure
from graphmdl.services.rules import substructure_value

logger = logging.getLogger(__name__)

_PRUNE_EPS = 1e-12


def shape_signature(g: LabeledGraph) -> Hashable:
    """Isomorphism invariant used to bucket graphs before an exact check."""
    labels = [v.label for v in g.vertices]
    edge_sig = Counter(
        (e.label, True, labels[e.src], labels[e.dst]) if e.directed
        else (e.label, False, *sorted((labels[e.src], labels[e.dst])))
        for e in g.edges
    )
    degrees = sorted(g.degree(i) for i in range(g.num_vertices))
    return (tuple(sorted(Counter(labels).items())), tuple(sorted(edge_sig.items())), tuple(degrees))


class ShapeIndex:
    """Set of definition graphs up to isomorphism."""

    def __init__(self) -> None:
        self._buckets: dict[Hashable, list[LabeledGraph]] = defaultdict(list)

    def find(self, g: LabeledGraph) -> tuple[LabeledGraph, dict[int, int]] | None:
        for other in self._buckets.get(shape_signature(g), ()):
            iso = find_isomorphism(g, other)
            if iso is not None:
                return other, iso
        return None

    def add(self, g: LabeledGraph) -> None:
        self._buckets[shape_signature(g)].append(g)

    def __contains__(self, g: LabeledGraph) -> bool:
        return self.find(g) is not None


def seed_candidates(g: LabeledGraph) -> list[SubstructureCandidate]:
    """One single-vertex candidate per distinct vertex label, every vertex with it an instance."""
    by_label: dict[str, list[int]] = defaultdict(list)
    for v in g.vertices:
        by_label[v.label].append(v.index)

    seeds = []
    for label in sorted(by_label):
        members = by_label[label]
        instances = [Instance(vertex_map=((0, i),), vertices=frozenset({i}), edges=frozenset()) for i in members]
        seeds.append(SubstructureCandidate(definition=g.subgraph([members[0]], ()), instances=instances))
    return seeds


def expand(c: SubstructureCandidate, g: LabeledGraph) -> list[SubstructureCandidate]:
    """
    Grow every instance by one incident edge not yet in it (plus its far vertex) and
    group the grown instances by the shape they induce. Each group becomes a candidate
    whose definition is the first grown instance of the group.
    """
    grown: dict[tuple[tuple[int, ...], tuple[int, ...]], tuple[frozenset[int], frozenset[int]]] = {}
    for inst in c.instances:
        for v in sorted(inst.vertices):
            for ei in g.incident_edges(v):
                if ei in inst.edges:
                    continue
                e = g.edges[ei]
                vs = inst.vertices | {e.src, e.dst}
                es = inst.edges | {ei}
                grown.setdefault((tuple(sorted(vs)), tuple(sorted(es))), (vs, es))

    out: list[SubstructureCandidate] = []
    index = ShapeIndex()
    owner: dict[int, SubstructureCandidate] = {}  # id(definition) -> candidate
    for key in sorted(grown):
        vs, es = grown[key]
        order = key[0]
        h = g.subgraph(order, es)
        hit = index.find(h)
        if hit is None:
            index.add(h)
            vertex_map = tuple((k, order[k]) for k in range(len(order)))
            owner[id(h)] = SubstructureCandidate(definition=h, instances=[Instance(vertex_map, vs, es)])
            out.append(owner[id(h)])
        else:
            definition, iso = hit
            vertex_map = tuple(sorted((iso[k], order[k]) for k in range(len(order))))
            owner[id(definition)].instances.append(Instance(vertex_map, vs, es))

    logger.debug("expanded grown=%d candidates=%d", len(grown), len(out))
    return out


def dedupe(
    candidates: Iterable[SubstructureCandidate],
    g: LabeledGraph | None = None,
    params: DiscoveryParams | None = None,
) -> list[SubstructureCandidate]:
    """
    Merge candidates with isomorphic definitions; instances covering the same vertices
    and edges are kept once. Given the host graph and a positive threshold, exact
    instances of every other candidate that match a definition within threshold are
    also added to it as inexact instances.
    """
    out: list[SubstructureCandidate] = []
    index = ShapeIndex()
    owner: dict[int, SubstructureCandidate] = {}

    for c in candidates:
        hit = index.find(c.definition)
        if hit is None:
            merged = SubstructureCandidate(definition=c.definition, instances=list(c.instances))
            index.add(c.definition)
            owner[id(c.definition)] = merged
            out.append(merged)
            continue

        definition, iso = hit
        target = owner[id(definition)]
        known = {i.key for i in target.instances}
        for inst in c.instances:
            if inst.key in known:
                continue
            known.add(inst.key)
            target.instances.append(
                Instance(
                    vertex_map=tuple(sorted((iso[s], t) for s, t in inst.vertex_map)),
                    vertices=inst.vertices,
                    edges=inst.edges,
                    matchcost=inst.matchcost,
                )
            )

    if g is not None and params is not None and params.threshold > 0 and len(out) > 1:
        exact = [c.exact_instances for c in out]
        for pos, target in enumerate(out):
            known = {i.key for i in target.instances}
            for other_pos, others in enumerate(exact):
                if other_pos == pos:
                    continue
                for inst in others:
                    if inst.key in known:
                        continue
                    absorbed = _absorb(target.definition, inst, g, params)
                    if absorbed is not None:
                        known.add(inst.key)
                        target.instances.append(absorbed)

    for c in out:
        c.instances.sort(key=lambda i: i.key)
    return out


def _absorb(definition: LabeledGraph, inst: Instance, g: LabeledGraph, params: DiscoveryParams) -> Instance | None:
    order = sorted(inst.vertices)
    h = g.subgraph(order, inst.edges)
    res = match_within(definition, h, params.threshold * h.size, params.costs, params.budget)
    if res is None:
        return None
    vertex_map = tuple((s, order[t]) for s, t in enumerate(res.mapping) if t is not None)
    return Instance(vertex_map=vertex_map, vertices=inst.vertices, edges=inst.edges, matchcost=res.cost)


def evaluate_candidate(
    c: SubstructureCandidate,
    g: LabeledGraph,
    params: DiscoveryParams,
    label: str | None = None,
    generated_labels: Collection[str] = (),
) -> SubstructureCandidate:
    c.compression = dl_with_substructure(g, c, label)
    c.report = substructure_value(c, c.instances, g, params.weights, c.compression, generated_labels)
    return c


def discover(
    g: LabeledGraph,
    params: DiscoveryParams | None = None,
    generated_labels: Collection[str] = (),
) -> list[SubstructureCandidate]:
    """
    Beam search from single-vertex seeds. Every seed is expanded before the beam
    applies; after that the open list is ordered by value and cut to beam_width
    after each expansion. The nbest candidates ever kept are returned.

    `generated_labels` are the labels earlier compression passes introduced; the
    hierarchy rule counts definition vertices carrying them.
    """
    from graphmdl.services.hierarchy import next_sub_label

    if g.num_vertices == 0:
        raise EmptyGraphError("cannot discover substructures in an empty graph")
    params = params or DiscoveryParams()
    label = next_sub_label(g)

    seen = ShapeIndex()
    results: list[SubstructureCandidate] = []
    open_list: list[SubstructureCandidate] = []
    evaluated = 0

    def exhausted() -> bool:
        return params.eval_limit > 0 and evaluated >= params.eval_limit

    def grow(parent: SubstructureCandidate) -> None:
        nonlocal evaluated
        for child in dedupe(expand(parent, g), g, params):
            if exhausted():
                return
            if child.definition in seen:
                continue
            seen.add(child.definition)
            evaluate_candidate(child, g, params, label, generated_labels)
            evaluated += 1
            if params.prune and child.dl_total > parent.dl_total + _PRUNE_EPS:
                continue
            results.append(child)
            open_list.append(child)

    seeds = []
    for seed in seed_candidates(g):
        if exhausted():
            break
        seen.add(seed.definition)
        evaluate_candidate(seed, g, params, label, generated_labels)
        evaluated += 1
        seeds.append(seed)
    results.extend(seeds)

    # every seed is extended once before the beam cuts anything
    for seed in sorted(seeds, key=SubstructureCandidate.rank_key):
        if exhausted():
            break
        grow(seed)

    while open_list:
        open_list.sort(key=SubstructureCandidate.rank_key)
        del open_list[params.beam_width:]
        logger.debug(
            "evaluated=%d open=%d best_value=%.4f",
            evaluated,
            len(open_list),
            open_list[0].value,
        )
        if exhausted():
            break
        grow(open_list.pop(0))

    results.sort(key=SubstructureCandidate.rank_key)
    logger.info(
        "discover done evaluated=%d kept=%d best_compression=%.4f",
        evaluated,
        len(results),
        results[0].compression.compression if results and results[0].compression else float("nan"),
    )
    return results[: params.nbest]
