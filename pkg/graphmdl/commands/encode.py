from __future__ import annotations

import argparse

from graphmdl.commands.deps import RunConfig, positive_int
from graphmdl.schemas.report import EncodingBreakdown
from graphmdl.services.graph_io import load_graph
from graphmdl.services.mdl_encoder import description_length


def register(sub: argparse._SubParsersAction) -> None:
    p = sub.add_parser("encode", help="description length of a graph in bits")
    p.add_argument("inputs", nargs=1, metavar="GRAPH")
    p.add_argument("--labels", type=positive_int, default=None, help="encode against this many unique labels (l_u)")
    p.set_defaults(handler=run)


def run(args: argparse.Namespace, config: RunConfig) -> tuple[EncodingBreakdown, str]:
    g = load_graph(config.inputs[0])
    if args.labels is not None and args.labels < g.label_count:
        raise ValueError(f"--labels {args.labels} is below the {g.label_count} labels the graph uses")

    report = description_length(g, label_count=args.labels)
    text = (
        f"vbits  {report.vbits:10.4f}\n"
        f"rbits  {report.rbits:10.4f}\n"
        f"ebits  {report.ebits:10.4f}\n"
        f"total  {report.total:10.4f}\n"
    )
    return report, text
