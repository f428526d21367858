from __future__ import annotations

from typing import TYPE_CHECKING

from pydantic import BaseModel, Field, computed_field

if TYPE_CHECKING:
    from graphmdl.models.candidate import HierarchyLevel, Instance, SubstructureCandidate
    from graphmdl.models.graph import LabeledGraph


class EncodingBreakdown(BaseModel):
    vbits: float = Field(ge=0)
    rbits: float = Field(ge=0)
    ebits: float = Field(ge=0)

    @computed_field
    @property
    def total(self) -> float:
        return self.vbits + self.rbits + self.ebits


class CompressionReport(BaseModel):
    """compression = (I(S) + I(G|S)) / DL(G); lower is better."""

    dl_original: float = Field(ge=0)
    dl_substructure: float = Field(ge=0)
    dl_compressed: float = Field(ge=0)

    original: EncodingBreakdown | None = None
    substructure: EncodingBreakdown | None = None
    compressed_graph: EncodingBreakdown | None = None

    @computed_field
    @property
    def dl_combined(self) -> float:
        return self.dl_substructure + self.dl_compressed

    @computed_field
    @property
    def compression(self) -> float:
        # a graph that costs 0 bits (one vertex, one label) cannot be compressed
        if self.dl_original == 0:
            return 1.0
        return self.dl_combined / self.dl_original


class RuleReport(BaseModel):
    """value = mdl_score × Π rule^exp; see services.rules.combine_rules."""

    mdl_score: float = Field(ge=0)
    compactness: float = 1.0
    connectivity: float = 1.0
    coverage: float = 1.0
    label_pref: float = 1.0
    hierarchy: float = 1.0
    value: float


class MatchOut(BaseModel):
    cost: float
    mapping: list[tuple[int, int | None]]  # (g1 vertex id, g2 vertex id or null)
    optimal: bool
    nodes_expanded: int
    threshold: float | None = None
    accepted: bool | None = None


class GraphStats(BaseModel):
    vertices: int
    edges: int
    labels: int
    dl: float

    @classmethod
    def of(cls, g: LabeledGraph) -> GraphStats:
        from graphmdl.services.mdl_encoder import description_length

        return cls(
            vertices=g.num_vertices,
            edges=g.num_edges,
            labels=g.label_count,
            dl=description_length(g).total if g.num_vertices else 0.0,
        )


class DefinitionOut(BaseModel):
    vertices: list[tuple[int, str]]
    edges: list[tuple[int, int, str, bool]]

    @classmethod
    def of(cls, g: LabeledGraph) -> DefinitionOut:
        return cls(
            vertices=[(v.id, v.label) for v in g.vertices],
            edges=[(g.vertices[e.src].id, g.vertices[e.dst].id, e.label, e.directed) for e in g.edges],
        )


class InstanceOut(BaseModel):
    vertex_map: list[tuple[int, int]]  # (definition vertex id, graph vertex id)
    vertices: list[int]
    edges: list[tuple[int, int, str, bool]]
    matchcost: float

    @classmethod
    def of(cls, inst: Instance, definition: LabeledGraph, g: LabeledGraph) -> InstanceOut:
        return cls(
            vertex_map=[(definition.vertices[s].id, g.vertices[t].id) for s, t in inst.vertex_map],
            vertices=sorted(g.vertices[i].id for i in inst.vertices),
            edges=[
                (g.vertices[g.edges[ei].src].id, g.vertices[g.edges[ei].dst].id, g.edges[ei].label, g.edges[ei].directed)
                for ei in sorted(inst.edges)
            ],
            matchcost=inst.matchcost,
        )


class CandidateOut(BaseModel):
    rank: int
    definition: DefinitionOut
    num_instances: int
    num_exact: int
    instances: list[InstanceOut]
    compression: CompressionReport
    rules: RuleReport

    @classmethod
    def of(cls, c: SubstructureCandidate, g: LabeledGraph, rank: int) -> CandidateOut:
        assert c.compression is not None and c.report is not None
        return cls(
            rank=rank,
            definition=DefinitionOut.of(c.definition),
            num_instances=len(c.instances),
            num_exact=len(c.exact_instances),
            instances=[InstanceOut.of(i, c.definition, g) for i in c.instances],
            compression=c.compression,
            rules=c.report,
        )


class HierarchyOut(BaseModel):
    pass_index: int
    sub_label: str
    substructure: CandidateOut
    compressed: GraphStats
    compression_so_far: float

    @classmethod
    def of(cls, level: HierarchyLevel, source: LabeledGraph) -> HierarchyOut:
        return cls(
            pass_index=level.pass_index,
            sub_label=level.sub_label,
            substructure=CandidateOut.of(level.substructure, source, rank=1),
            compressed=GraphStats.of(level.compressed_graph),
            compression_so_far=level.compression_so_far,
        )


class DiscoverReport(BaseModel):
    graph: GraphStats
    candidates: list[CandidateOut]
    hierarchy: list[HierarchyOut] = Field(default_factory=list)


class SweepRow(BaseModel):
    threshold: float
    dl_original: float
    dl_substructure: float
    dl_compressed: float
    compression: float
    definition: DefinitionOut | None = None


class SweepReport(BaseModel):
    rows: list[SweepRow]
    optimal: SweepRow


class GroundTruthOut(BaseModel):
    name: str
    seed: int
    size_factor: int
    label_factor: int
    external_conns: int
    coverage_frac: float
    distortions: int
    graph_size: int
    instance_locations: list[list[int]]
    distortion_log: list[list[dict[str, str | int]]]


class CompressReport(BaseModel):
    graph: GraphStats
    levels: list[HierarchyOut]
    compressed: GraphStats


class GenerateReport(BaseModel):
    out_dir: str
    graphs: list[GroundTruthOut]
