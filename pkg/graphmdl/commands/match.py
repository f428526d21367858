from __future__ import annotations

import argparse

from graphmdl.commands.deps import RunConfig, add_cost_flags, budget_from_args, costs_from_args
from graphmdl.schemas.report import MatchOut
from graphmdl.services.graph_io import load_graph
from graphmdl.services.inexact_match import accepts, match_cost


def register(sub: argparse._SubParsersAction) -> None:
    p = sub.add_parser("match", help="least-cost inexact match of G1 into G2")
    p.add_argument("inputs", nargs=2, metavar="GRAPH")
    p.add_argument("--threshold", type=float, default=None, help="also report acceptance at this threshold")
    add_cost_flags(p)
    p.set_defaults(handler=run)


def run(args: argparse.Namespace, config: RunConfig) -> tuple[MatchOut, str]:
    g1 = load_graph(config.inputs[0])
    g2 = load_graph(config.inputs[1])
    if args.threshold is not None and not 0.0 <= args.threshold <= 1.0:
        raise ValueError(f"threshold {args.threshold} is outside [0, 1]")

    result = match_cost(g1, g2, costs_from_args(args), budget_from_args(args))
    mapping = [
        (g1.vertices[u].id, g2.vertices[w].id if w is not None else None)
        for u, w in enumerate(result.mapping)
    ]
    report = MatchOut(
        cost=result.cost,
        mapping=mapping,
        optimal=result.optimal,
        nodes_expanded=result.nodes_expanded,
        threshold=args.threshold,
        accepted=accepts(result.cost, args.threshold, g2.size) if args.threshold is not None else None,
    )

    lines = [f"cost     {report.cost:.4f}", f"optimal  {report.optimal}", f"nodes    {report.nodes_expanded}"]
    if report.accepted is not None:
        lines.append(f"accepted {report.accepted} (threshold {report.threshold})")
    lines += [f"  {a} -> {'λ' if b is None else b}" for a, b in mapping]
    return report, "\n".join(lines) + "\n"
