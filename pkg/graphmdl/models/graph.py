from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import networkx as nx


class GraphError(ValueError):
    pass


class EmptyGraphError(GraphError):
    pass


@dataclass(frozen=True)
class Vertex:
    id: int
    index: int
    label: str


@dataclass(frozen=True)
class Edge:
    src: int
    dst: int
    label: str
    directed: bool

    @classmethod
    def make(cls, src: int, dst: int, label: str, directed: bool) -> Edge:
        # undirected edges occupy one adjacency entry: src <= dst
        if not directed and src > dst:
            src, dst = dst, src
        return cls(src=src, dst=dst, label=label, directed=directed)

    def other(self, index: int) -> int:
        return self.dst if index == self.src else self.src


@dataclass(frozen=True)
class LabeledGraph:
    """
    Immutable labeled graph with dense vertex indices.

    - vertices keep their external ids; `index` is the position in `vertices`
    - edges reference vertex indices; undirected edges are stored with src <= dst
    - label_table is the sorted set of all vertex and edge labels (its size is l_u)
    """

    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...] = ()
    label_table: tuple[str, ...] = field(init=False)

    def __post_init__(self) -> None:
        seen_ids: set[int] = set()
        for pos, v in enumerate(self.vertices):
            if v.index != pos:
                raise GraphError(f"Vertex id={v.id} has index {v.index}, expected {pos}")
            if v.id in seen_ids:
                raise GraphError(f"Duplicate vertex id {v.id}")
            if not v.label:
                raise GraphError(f"Vertex id={v.id} has an empty label")
            seen_ids.add(v.id)

        n = len(self.vertices)
        for e in self.edges:
            if not (0 <= e.src < n and 0 <= e.dst < n):
                raise GraphError(f"Edge {e.src}->{e.dst} references a missing vertex")
            if not e.label:
                raise GraphError(f"Edge {e.src}->{e.dst} has an empty label")
            if not e.directed and e.src > e.dst:
                raise GraphError(f"Undirected edge {e.src}-{e.dst} is not canonical")

        labels = {v.label for v in self.vertices} | {e.label for e in self.edges}
        object.__setattr__(self, "label_table", tuple(sorted(labels)))

    @classmethod
    def from_parts(
        cls,
        labels: Sequence[str],
        edges: Iterable[tuple[int, int, str, bool]] = (),
        ids: Sequence[int] | None = None,
    ) -> LabeledGraph:
        """Build from vertex labels (index order) and (src_index, dst_index, label, directed) tuples."""
        ids = list(ids) if ids is not None else list(range(1, len(labels) + 1))
        if len(ids) != len(labels):
            raise GraphError("ids and labels differ in length")
        vertices = tuple(Vertex(id=i, index=pos, label=lab) for pos, (i, lab) in enumerate(zip(ids, labels)))
        return cls(
            vertices=vertices,
            edges=tuple(Edge.make(s, d, lab, directed) for s, d, lab, directed in edges),
        )

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def size(self) -> int:
        return len(self.vertices) + len(self.edges)

    @property
    def label_count(self) -> int:
        return len(self.label_table)

    @cached_property
    def _id_index(self) -> dict[int, int]:
        return {v.id: v.index for v in self.vertices}

    def index_of(self, vertex_id: int) -> int:
        try:
            return self._id_index[vertex_id]
        except KeyError:
            raise GraphError(f"Undefined vertex id {vertex_id}") from None

    @cached_property
    def _incident(self) -> tuple[tuple[int, ...], ...]:
        inc: list[list[int]] = [[] for _ in self.vertices]
        for ei, e in enumerate(self.edges):
            inc[e.src].append(ei)
            if e.dst != e.src:
                inc[e.dst].append(ei)
        return tuple(tuple(x) for x in inc)

    def incident_edges(self, index: int) -> tuple[int, ...]:
        return self._incident[index]

    def degree(self, index: int) -> int:
        return len(self._incident[index])

    def neighbors(self, index: int) -> set[int]:
        return {self.edges[ei].other(index) for ei in self._incident[index]}

    def subgraph(self, vertex_indices: Sequence[int], edge_indices: Iterable[int]) -> LabeledGraph:
        """Vertices are re-indexed in the given order and keep their external ids."""
        remap = {old: new for new, old in enumerate(vertex_indices)}
        vertices = tuple(
            Vertex(id=self.vertices[old].id, index=new, label=self.vertices[old].label)
            for new, old in enumerate(vertex_indices)
        )
        edges = []
        for ei in sorted(edge_indices):
            e = self.edges[ei]
            edges.append(Edge.make(remap[e.src], remap[e.dst], e.label, e.directed))
        return LabeledGraph(vertices=vertices, edges=tuple(edges))

    @cached_property
    def nx_view(self) -> nx.MultiDiGraph:
        """Shared MultiDiGraph view; undirected edges become an arc pair flagged directed=False. Do not mutate."""
        g = nx.MultiDiGraph()
        for v in self.vertices:
            g.add_node(v.index, label=v.label)
        for e in self.edges:
            g.add_edge(e.src, e.dst, label=e.label, directed=e.directed)
            if not e.directed and e.src != e.dst:
                g.add_edge(e.dst, e.src, label=e.label, directed=False)
        return g

    def is_connected(self) -> bool:
        if not self.vertices:
            return False
        return nx.is_weakly_connected(self.nx_view)
