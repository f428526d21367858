from __future__ import annotations

import argparse

from graphmdl.commands.deps import RunConfig, UsageError, add_discovery_flags
from graphmdl.commands.discover import render_levels
from graphmdl.models.candidate import HierarchyLevel
from graphmdl.schemas.report import CompressReport, GraphStats, HierarchyOut
from graphmdl.services.discovery import evaluate_candidate
from graphmdl.services.graph_io import load_graph, write_graph
from graphmdl.services.hierarchy import compress_with, hierarchical_discover, next_sub_label
from graphmdl.services.mdl_encoder import description_length


def register(sub: argparse._SubParsersAction) -> None:
    p = sub.add_parser("compress", help="contract substructure instances into single vertices")
    p.add_argument("inputs", nargs=1, metavar="GRAPH")
    p.add_argument("--passes", type=int, default=1, help="discover-and-contract passes")
    p.add_argument("--sub", default=None, metavar="FILE", help="contract this substructure instead of discovering one")
    p.add_argument("--graph-out", default=None, metavar="FILE", help="write the compressed graph here")
    add_discovery_flags(p)
    p.set_defaults(handler=run)


def run(args: argparse.Namespace, config: RunConfig) -> tuple[CompressReport, str]:
    g = load_graph(config.inputs[0])
    params = config.discovery
    assert params is not None

    if args.sub is not None:
        if config.passes != 1:
            raise UsageError("--sub contracts one given substructure; it cannot be combined with --passes")
        definition = load_graph(args.sub)
        label = next_sub_label(g)
        compressed, candidate = compress_with(g, definition, label)
        if not candidate.instances:
            raise ValueError(f"{args.sub} has no exact instance in {config.inputs[0]}")
        evaluate_candidate(candidate, g, params, label)
        dl_original = description_length(g).total
        levels = [
            HierarchyLevel(
                pass_index=1,
                substructure=candidate,
                source_graph=g,
                compressed_graph=compressed,
                sub_label=label,
                compression_so_far=description_length(compressed).total / dl_original if dl_original else 1.0,
            )
        ]
    else:
        levels = hierarchical_discover(g, params, config.passes)
        compressed = levels[-1].compressed_graph if levels else g

    if args.graph_out:
        write_graph(args.graph_out, compressed)

    report = CompressReport(
        graph=GraphStats.of(g),
        levels=[HierarchyOut.of(level, level.source_graph) for level in levels],
        compressed=GraphStats.of(compressed),
    )
    text = render_levels(report.levels) + (
        f"\noriginal    {report.graph.vertices} vertices {report.graph.edges} edges {report.graph.dl:.2f} bits"
        f"\ncompressed  {report.compressed.vertices} vertices {report.compressed.edges} edges {report.compressed.dl:.2f} bits\n"
    )
    return report, text
