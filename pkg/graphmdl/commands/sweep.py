from __future__ import annotations

import argparse

from graphmdl.commands.deps import RunConfig, UsageError, add_discovery_flags, parse_thresholds
from graphmdl.schemas.report import SweepReport
from graphmdl.services.graph_io import load_graph
from graphmdl.services.sweep import DEFAULT_THRESHOLDS, sweep_thresholds


def register(sub: argparse._SubParsersAction) -> None:
    p = sub.add_parser("sweep", help="best compression for each match threshold")
    p.add_argument("inputs", nargs=1, metavar="GRAPH")
    p.add_argument(
        "--thresholds",
        type=parse_thresholds,
        default=list(DEFAULT_THRESHOLDS),
        help="comma-separated thresholds (default 0.0,0.1,...,1.0)",
    )
    add_discovery_flags(p)
    p.set_defaults(handler=run)


def run(args: argparse.Namespace, config: RunConfig) -> tuple[SweepReport, str]:
    if not args.thresholds:
        raise UsageError("--thresholds is empty")
    for t in args.thresholds:
        if not 0.0 <= t <= 1.0:
            raise UsageError(f"threshold {t} is outside [0, 1]")

    g = load_graph(config.inputs[0])
    assert config.discovery is not None
    report = sweep_thresholds(g, config.discovery, args.thresholds)

    lines = [f"{'threshold':>9} {'DL original':>12} {'DL compressed':>14} {'compression':>11}"]
    for row in report.rows:
        mark = " *" if row == report.optimal else ""
        lines.append(
            f"{row.threshold:>9.2f} {row.dl_original:>12.2f} "
            f"{row.dl_substructure + row.dl_compressed:>14.2f} {row.compression:>11.2f}{mark}"
        )
    return report, "\n".join(lines) + "\n"
