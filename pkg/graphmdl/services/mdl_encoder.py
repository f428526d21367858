from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass
from typing import TYPE_CHECKING

from graphmdl.models.graph import EmptyGraphError, LabeledGraph
from graphmdl.schemas.report import CompressionReport, EncodingBreakdown

if TYPE_CHECKING:
    from graphmdl.models.candidate import SubstructureCandidate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AdjacencyStats:
    """
    Adjacency-matrix summary: undirected edges occupy one entry (row = smaller index),
    an entry is 1 when at least one edge sits in it.
    """

    row_counts: tuple[int, ...]  # k_i
    b: int  # max k_i
    K: int  # number of 1 entries
    m: int  # max edges in one entry (0 when edgeless)
    e: int


def adjacency_stats(g: LabeledGraph) -> AdjacencyStats:
    entries = Counter((e.src, e.dst) for e in g.edges)
    rows = [0] * g.num_vertices
    for src, _ in entries:
        rows[src] += 1
    return AdjacencyStats(
        row_counts=tuple(rows),
        b=max(rows, default=0),
        K=len(entries),
        m=max(entries.values(), default=0),
        e=g.num_edges,
    )


def vbits(g: LabeledGraph, label_count: int | None = None) -> float:
    v = _require_vertices(g)
    l_u = label_count or g.label_count
    return math.log2(v) + v * math.log2(l_u)


def rbits(g: LabeledGraph) -> float:
    v = _require_vertices(g)
    st = adjacency_stats(g)
    return (v + 1) * math.log2(st.b + 1) + sum(_lg_binomial(v, k) for k in st.row_counts)


def ebits(g: LabeledGraph, label_count: int | None = None) -> float:
    _require_vertices(g)
    st = adjacency_stats(g)
    if st.e == 0:
        return 0.0
    l_u = label_count or g.label_count
    return st.e * (1 + math.log2(l_u)) + (st.K + 1) * math.log2(st.m)


def description_length(g: LabeledGraph, label_count: int | None = None) -> EncodingBreakdown:
    """
    Bits to describe `g`: vbits + rbits + ebits. `label_count` overrides l_u, for
    encoding a graph against another graph's label table.
    """
    return EncodingBreakdown(
        vbits=vbits(g, label_count),
        rbits=rbits(g),
        ebits=ebits(g, label_count),
    )


def dl_with_substructure(
    g: LabeledGraph,
    s: SubstructureCandidate,
    label: str | None = None,
) -> CompressionReport:
    """
    I(S) encodes the definition against g's label table; I(G|S) encodes g with the
    disjoint exact instances of s contracted to single vertices.
    """
    from graphmdl.services.hierarchy import next_sub_label, replace_instances

    if not s.instances:
        raise ValueError("substructure has no instances")

    original = description_length(g)
    sub = description_length(s.definition, label_count=max(g.label_count, s.definition.label_count))
    compressed_graph = replace_instances(g, s, label or next_sub_label(g))
    compressed = description_length(compressed_graph)

    return CompressionReport(
        dl_original=original.total,
        dl_substructure=sub.total,
        dl_compressed=compressed.total,
        original=original,
        substructure=sub,
        compressed_graph=compressed,
    )


def _require_vertices(g: LabeledGraph) -> int:
    if g.num_vertices == 0:
        raise EmptyGraphError("graph has no vertices and cannot be encoded")
    return g.num_vertices


def _lg_binomial(n: int, k: int) -> float:
    return math.log2(math.comb(n, k))
