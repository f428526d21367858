from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from graphmdl.models.graph import LabeledGraph
from graphmdl.schemas.report import CompressionReport, RuleReport


@dataclass(frozen=True)
class Instance:
    """
    Occurrence of a substructure in the host graph.

    vertex_map pairs (definition vertex index, graph vertex index); for inexact
    instances it only lists the definition vertices that were not mapped to λ.
    """

    vertex_map: tuple[tuple[int, int], ...]
    vertices: frozenset[int]
    edges: frozenset[int]
    matchcost: float = 0.0

    @property
    def key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return tuple(sorted(self.vertices)), tuple(sorted(self.edges))

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
    def exact(self) -> bool:
        return self.matchcost == 0

    def as_graph(self, g: LabeledGraph) -> LabeledGraph:
        return g.subgraph(sorted(self.vertices), self.edges)


@dataclass(eq=False)
class SubstructureCandidate:
    definition: LabeledGraph
    instances: list[Instance]
    compression: CompressionReport | None = None
    report: RuleReport | None = None

    @property
    def exact_instances(self) -> list[Instance]:
        return [i for i in self.instances if i.exact]

    @property
    def value(self) -> float:
        return self.report.value if self.report is not None else float("-inf")

    @property
    def dl_total(self) -> float:
        """I(S) + I(G|S)."""
        if self.compression is None:
            return float("inf")
        return self.compression.dl_combined

    @cached_property
    def serialized(self) -> str:
        from graphmdl.services.graph_io import serialize_graph

        return serialize_graph(self.definition)

    def rank_key(self) -> tuple[float, float, str]:
        """Total order: value desc, then smaller I(S), then serialized definition."""
        dl_sub = self.compression.dl_substructure if self.compression is not None else float("inf")
        return (-self.value, dl_sub, self.serialized)


@dataclass(frozen=True)
class HierarchyLevel:
    pass_index: int
    substructure: SubstructureCandidate
    source_graph: LabeledGraph
    compressed_graph: LabeledGraph
    sub_label: str
    compression_so_far: float = 1.0
    # ranked candidates of the pass, best first
    candidates: tuple[SubstructureCandidate, ...] = field(default=(), repr=False)
