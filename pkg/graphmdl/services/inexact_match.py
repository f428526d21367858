from __future__ import annotations

import heapq
import logging
import math
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from networkx.algorithms.isomorphism import MultiDiGraphMatcher

from graphmdl.models.graph import EmptyGraphError, Edge, LabeledGraph
from graphmdl.schemas.params import DistortionCosts, MatchBudget

logger = logging.getLogger(__name__)

_EPS = 1e-9


@dataclass(frozen=True)
class MatchResult:
    """mapping[i] is the g2 index that g1 vertex i maps to, or None for λ (deleted)."""

    mapping: tuple[int | None, ...]
    cost: float
    optimal: bool
    nodes_expanded: int


def match_cost(
    g1: LabeledGraph,
    g2: LabeledGraph,
    costs: DistortionCosts | None = None,
    budget: MatchBudget | None = None,
) -> MatchResult:
    """
    Least-cost mapping g1 -> g2 ∪ {λ} by branch-and-bound over partial mappings.
    Every popped state is completed greedily and the cheapest completion is kept as
    an incumbent, which also prunes strictly worse states. When the node budget runs
    out the incumbent is returned, flagged optimal=False, so a larger budget never
    returns a higher cost.
    """
    if g1.num_vertices == 0 or g2.num_vertices == 0:
        raise EmptyGraphError("match_cost needs two nonempty graphs")
    costs = costs or DistortionCosts()
    budget = budget or MatchBudget()

    result = _Matcher(g1, g2, costs).search(budget.node_limit(g1.num_vertices, g2.num_vertices))
    assert result is not None
    return result


def match_within(
    g1: LabeledGraph,
    g2: LabeledGraph,
    bound: float,
    costs: DistortionCosts | None = None,
    budget: MatchBudget | None = None,
) -> MatchResult | None:
    """Same search, discarding states costlier than `bound`; None when no mapping fits."""
    if g1.num_vertices == 0 or g2.num_vertices == 0:
        raise EmptyGraphError("match_within needs two nonempty graphs")
    costs = costs or DistortionCosts()
    budget = budget or MatchBudget()

    result = _Matcher(g1, g2, costs).search(
        budget.node_limit(g1.num_vertices, g2.num_vertices),
        upper_bound=bound,
    )
    if result is None or result.cost > bound + _EPS:
        return None
    return result


def accepts(cost: float, threshold: float, size: int) -> bool:
    return cost <= threshold * size + _EPS


def is_instance_match(
    s: LabeledGraph,
    candidate: LabeledGraph,
    threshold: float,
    costs: DistortionCosts | None = None,
    budget: MatchBudget | None = None,
) -> tuple[bool, float]:
    """True iff matchcost(s, candidate) <= threshold * size(candidate)."""
    if not 0.0 <= threshold <= 1.0:
        raise ValueError(f"threshold must be in [0, 1], got {threshold}")

    if find_isomorphism(s, candidate) is not None:
        return True, 0.0

    result = match_within(s, candidate, threshold * candidate.size, costs, budget)
    if result is None:
        return False, math.inf
    return True, result.cost


def mapping_cost(
    g1: LabeledGraph,
    g2: LabeledGraph,
    mapping: Sequence[int | None],
    costs: DistortionCosts | None = None,
) -> float:
    """cost(f) recomputed from scratch for a total, injective mapping."""
    costs = costs or DistortionCosts()
    if len(mapping) != g1.num_vertices:
        raise ValueError("mapping must be total on g1")
    image = [w for w in mapping if w is not None]
    if len(set(image)) != len(image):
        raise ValueError("mapping must be injective on its non-λ image")

    total = 0.0
    for v, w in zip(g1.vertices, mapping):
        if w is None:
            total += costs.vertex_delete
        elif v.label != g2.vertices[w].label:
            total += costs.vertex_substitute
    total += costs.vertex_insert * (g2.num_vertices - len(image))

    p1 = _pair_edges(g1)
    p2 = _pair_edges(g2)
    covered: set[tuple[int, int]] = set()
    for (u, v), e1 in p1.items():
        fu, fv = mapping[u], mapping[v]
        if fu is None or fv is None:
            total += costs.edge_delete * len(e1)
            continue
        key = _key(fu, fv)
        covered.add(key)
        total += _pair_cost(e1, u, p2.get(key, ()), fu, costs)
    for key, e2 in p2.items():
        if key not in covered:
            total += costs.edge_insert * len(e2)
    return total


def find_isomorphism(g1: LabeledGraph, g2: LabeledGraph) -> dict[int, int] | None:
    """Label- and direction-preserving isomorphism g1 -> g2 (index map), or None."""
    if g1.num_vertices != g2.num_vertices or g1.num_edges != g2.num_edges:
        return None
    if Counter(v.label for v in g1.vertices) != Counter(v.label for v in g2.vertices):
        return None
    if Counter((e.label, e.directed) for e in g1.edges) != Counter((e.label, e.directed) for e in g2.edges):
        return None

    gm = MultiDiGraphMatcher(g1.nx_view, g2.nx_view, node_match=_node_match, edge_match=_multiedge_equal)
    if not gm.is_isomorphic():
        return None
    return dict(gm.mapping)


def find_exact_instances(g: LabeledGraph, definition: LabeledGraph) -> list[tuple[tuple[int, ...], frozenset[int]]]:
    """
    Every exact (non-induced) embedding of `definition` in `g` as
    (graph index per definition vertex, covered graph edge indices),
    one per distinct covered vertex/edge set, in canonical order.
    """
    gm = MultiDiGraphMatcher(g.nx_view, definition.nx_view, node_match=_node_match, edge_match=_multiedge_covers)
    found: dict[tuple[tuple[int, ...], tuple[int, ...]], tuple[tuple[int, ...], frozenset[int]]] = {}
    for big_to_small in gm.subgraph_monomorphisms_iter():
        small_to_big = {s: b for b, s in big_to_small.items()}
        vertex_map = tuple(small_to_big[i] for i in range(definition.num_vertices))
        edges = _claim_edges(g, definition, vertex_map)
        if edges is None:
            continue
        key = (tuple(sorted(vertex_map)), tuple(sorted(edges)))
        found.setdefault(key, (vertex_map, edges))
    return [found[k] for k in sorted(found)]


def _claim_edges(g: LabeledGraph, definition: LabeledGraph, vertex_map: Sequence[int]) -> frozenset[int] | None:
    used: set[int] = set()
    for e in definition.edges:
        src, dst = vertex_map[e.src], vertex_map[e.dst]
        want = _edge_sig(e, e.src)
        pick = None
        for ei in g.incident_edges(src):
            if ei in used:
                continue
            ge = g.edges[ei]
            if ge.other(src) != dst:
                continue
            if _edge_sig(ge, src) == want:
                pick = ei
                break
        if pick is None:
            return None
        used.add(pick)
    return frozenset(used)


def _node_match(a: dict, b: dict) -> bool:
    return a["label"] == b["label"]


def _arc_counter(arcs: dict) -> Counter:
    return Counter((d["label"], d["directed"]) for d in arcs.values())


def _multiedge_equal(arcs1: dict, arcs2: dict) -> bool:
    return _arc_counter(arcs1) == _arc_counter(arcs2)


def _multiedge_covers(big: dict, small: dict) -> bool:
    return not (_arc_counter(small) - _arc_counter(big))


def _key(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a <= b else (b, a)


def _pair_edges(g: LabeledGraph) -> dict[tuple[int, int], list[Edge]]:
    pairs: dict[tuple[int, int], list[Edge]] = {}
    for e in g.edges:
        pairs.setdefault(_key(e.src, e.dst), []).append(e)
    return pairs


def _edge_sig(e: Edge, anchor: int) -> tuple[str, bool, bool | None]:
    if not e.directed or e.src == e.dst:
        return (e.label, e.directed, None)
    return (e.label, True, e.src == anchor)


def _pair_cost(e1: Sequence[Edge], a1: int, e2: Sequence[Edge], a2: int, costs: DistortionCosts) -> float:
    """
    Cost of turning the edges between one g1 vertex pair into the edges between the
    mapped g2 pair. Identical edges pair for free, leftovers pair as substitutions,
    the rest are deleted or inserted.
    """
    if not e1 and not e2:
        return 0.0
    if not e2:
        return costs.edge_delete * len(e1)
    if not e1:
        return costs.edge_insert * len(e2)

    c1 = Counter(_edge_sig(e, a1) for e in e1)
    c2 = Counter(_edge_sig(e, a2) for e in e2)
    exact = sum((c1 & c2).values())
    r1 = len(e1) - exact
    r2 = len(e2) - exact
    paired = min(r1, r2)
    swap = min(costs.edge_substitute, costs.edge_delete + costs.edge_insert)
    return paired * swap + (r1 - paired) * costs.edge_delete + (r2 - paired) * costs.edge_insert


class _Matcher:
    def __init__(self, g1: LabeledGraph, g2: LabeledGraph, costs: DistortionCosts):
        self.g1 = g1
        self.g2 = g2
        self.costs = costs
        self.n1 = g1.num_vertices
        self.n2 = g2.num_vertices

        # most heavily connected g1 vertices are paired first
        self.order = sorted(range(self.n1), key=lambda i: (-g1.degree(i), i))
        self.p1 = _pair_edges(g1)
        self.p2 = _pair_edges(g2)
        self.nbr1 = [g1.neighbors(i) - {i} for i in range(self.n1)]
        self.nbr2 = [g2.neighbors(i) - {i} for i in range(self.n2)]

    def search(self, node_limit: int, upper_bound: float | None = None) -> MatchResult | None:
        bound = math.inf if upper_bound is None else upper_bound + _EPS

        # (cost, incomplete flag, -depth, assignment); assignment[k] is the image of order[k]
        heap: list[tuple[float, int, int, tuple[int, ...]]] = [(0.0, 1, 0, ())]
        expanded = 0
        # cheapest total mapping seen so far, from greedy completion of popped states
        incumbent: tuple[float, tuple[int, ...]] | None = None

        while heap:
            cost, incomplete, neg_depth, assigned = heapq.heappop(heap)
            if not incomplete:
                return self._result(assigned, cost, optimal=True, nodes=expanded)

            completed = self._greedy(assigned, cost)
            if incumbent is None or completed[0] < incumbent[0] - _EPS:
                incumbent = completed

            if expanded >= node_limit:
                logger.debug(
                    "node limit %d reached at depth %d; returning incumbent cost=%.3f",
                    node_limit,
                    -neg_depth,
                    incumbent[0],
                )
                return self._result(incumbent[1], incumbent[0], optimal=False, nodes=expanded)

            expanded += 1
            cutoff = min(bound, incumbent[0] + _EPS)
            for child_cost, child in self._children(assigned, cost):
                if child_cost > cutoff:
                    continue
                if len(child) == self.n1:
                    final = child_cost + self._completion_cost(child)
                    if final <= cutoff:
                        heapq.heappush(heap, (final, 0, -len(child), child))
                else:
                    heapq.heappush(heap, (child_cost, 1, -len(child), child))

        # everything left was strictly worse than the incumbent
        if incumbent is not None and incumbent[0] <= bound:
            return self._result(incumbent[1], incumbent[0], optimal=True, nodes=expanded)
        return None

    def _greedy(self, assigned: tuple[int, ...], cost: float) -> tuple[float, tuple[int, ...]]:
        while len(assigned) < self.n1:
            cost, assigned = min(self._children(assigned, cost), key=lambda c: (c[0], c[1]))
        return cost + self._completion_cost(assigned), assigned

    def _children(self, assigned: tuple[int, ...], cost: float) -> list[tuple[float, tuple[int, ...]]]:
        lam = self.n2
        depth = len(assigned)
        u = self.order[depth]
        f = {self.order[k]: (w if w != lam else None) for k, w in enumerate(assigned)}
        inv = {w: v for v, w in f.items() if w is not None}

        out = []
        for w in range(self.n2):
            if w in inv:
                continue
            out.append((cost + self._step_cost(f, inv, u, w), assigned + (w,)))
        out.append((cost + self._step_cost(f, inv, u, None), assigned + (lam,)))
        return out

    def _step_cost(self, f: dict[int, int | None], inv: dict[int, int], u: int, w: int | None) -> float:
        c = self.costs
        loops1 = self.p1.get((u, u), ())

        if w is None:
            n_edges = len(loops1) + sum(len(self.p1[_key(u, v)]) for v in self.nbr1[u] if v in f)
            return c.vertex_delete + c.edge_delete * n_edges

        total = 0.0 if self.g1.vertices[u].label == self.g2.vertices[w].label else c.vertex_substitute
        partners = {v for v in self.nbr1[u] if v in f}
        partners |= {inv[x] for x in self.nbr2[w] if x in inv}
        for v in partners:
            e1 = self.p1.get(_key(u, v), ())
            x = f[v]
            if x is None:
                total += c.edge_delete * len(e1)
            else:
                total += _pair_cost(e1, u, self.p2.get(_key(w, x), ()), w, c)
        total += _pair_cost(loops1, u, self.p2.get((w, w), ()), w, c)
        return total

    def _completion_cost(self, assigned: tuple[int, ...]) -> float:
        image = {w for w in assigned if w != self.n2}
        missing = self.n2 - len(image)
        stray = sum(1 for e in self.g2.edges if e.src not in image or e.dst not in image)
        return self.costs.vertex_insert * missing + self.costs.edge_insert * stray

    def _result(self, assigned: tuple[int, ...], cost: float, optimal: bool, nodes: int) -> MatchResult:
        mapping: list[int | None] = [None] * self.n1
        for k, w in enumerate(assigned):
            mapping[self.order[k]] = w if w != self.n2 else None
        return MatchResult(mapping=tuple(mapping), cost=cost, optimal=optimal, nodes_expanded=nodes)
