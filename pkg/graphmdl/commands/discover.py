from __future__ import annotations

import argparse
from typing import Sequence

from graphmdl.commands.deps import RunConfig, add_discovery_flags
from graphmdl.models.candidate import SubstructureCandidate
from graphmdl.schemas.report import CandidateOut, DiscoverReport, GraphStats, HierarchyOut
from graphmdl.services.discovery import discover
from graphmdl.services.graph_io import load_graph, serialize_graph
from graphmdl.services.hierarchy import hierarchical_discover


def register(sub: argparse._SubParsersAction) -> None:
    p = sub.add_parser("discover", help="find substructures that best compress a graph")
    p.add_argument("inputs", nargs=1, metavar="GRAPH")
    p.add_argument("--passes", type=int, default=1, help="discover-and-contract passes")
    add_discovery_flags(p)
    p.set_defaults(handler=run)


def run(args: argparse.Namespace, config: RunConfig) -> tuple[DiscoverReport, str]:
    g = load_graph(config.inputs[0])
    params = config.discovery
    assert params is not None

    levels = hierarchical_discover(g, params, config.passes) if config.passes > 1 else []
    ranked = list(levels[0].candidates) if levels else discover(g, params)

    report = DiscoverReport(
        graph=GraphStats.of(g),
        candidates=[CandidateOut.of(c, g, rank) for rank, c in enumerate(ranked, start=1)],
        hierarchy=[HierarchyOut.of(level, level.source_graph) for level in levels],
    )
    text = render_candidates(ranked)
    if levels:
        text += "\n" + render_levels(report.hierarchy)
    return report, text


def render_candidates(ranked: Sequence[SubstructureCandidate]) -> str:
    lines = [f"{'rank':>4} {'v':>3} {'e':>3} {'inst':>5} {'exact':>5} {'I(S)':>10} {'I(G|S)':>10} {'compr':>7} {'value':>8}"]
    for rank, c in enumerate(ranked, start=1):
        assert c.compression is not None
        lines.append(
            f"{rank:>4} {c.definition.num_vertices:>3} {c.definition.num_edges:>3} "
            f"{len(c.instances):>5} {len(c.exact_instances):>5} "
            f"{c.compression.dl_substructure:>10.2f} {c.compression.dl_compressed:>10.2f} "
            f"{c.compression.compression:>7.4f} {c.value:>8.4f}"
        )
    for rank, c in enumerate(ranked, start=1):
        lines.append(f"\n# rank {rank}")
        lines.append(serialize_graph(c.definition).rstrip("\n"))
    return "\n".join(lines) + "\n"


def render_levels(levels: Sequence[HierarchyOut]) -> str:
    lines = [f"{'pass':>4} {'label':<8} {'inst':>5} {'vertices':>8} {'edges':>6} {'so far':>7}"]
    for level in levels:
        lines.append(
            f"{level.pass_index:>4} {level.sub_label:<8} {level.substructure.num_exact:>5} "
            f"{level.compressed.vertices:>8} {level.compressed.edges:>6} {level.compression_so_far:>7.4f}"
        )
    return "\n".join(lines) + "\n"
