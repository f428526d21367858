from __future__ import annotations

import argparse
from pathlib import Path

from graphmdl.commands.deps import RunConfig, UsageError, positive_int
from graphmdl.core.config import settings
from graphmdl.schemas.params import GenParams
from graphmdl.schemas.report import GenerateReport, GroundTruthOut
from graphmdl.services.generator import (
    DEFAULT_SUBSTRUCTURES,
    SuiteEntry,
    default_substructures,
    entry_name,
    generate,
    generate_suite,
)
from graphmdl.services.graph_io import load_graph, write_graph


def register(sub: argparse._SubParsersAction) -> None:
    p = sub.add_parser("generate", help="random graphs with embedded substructure instances")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--sub", default=None, metavar="FILE", help="substructure to embed")
    src.add_argument("--sub-name", choices=sorted(DEFAULT_SUBSTRUCTURES), default=None, help="built-in substructure")
    p.add_argument("--suite", action="store_true", help="all 24 parameter combinations per substructure")
    p.add_argument("--factor", type=positive_int, default=settings.GEN_SIZE_FACTOR, help="graph size / substructure size")
    p.add_argument("--labels", type=int, choices=(1, 2), default=1, help="label pool factor")
    p.add_argument("--ext", type=int, choices=(1, 2), default=1, help="external edges per instance")
    p.add_argument("--coverage", type=float, default=0.6, help="share of the graph covered by instances")
    p.add_argument("--distort", type=int, choices=(0, 1, 2), default=0, help="distortions per instance")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", dest="out_dir", required=True, metavar="DIR", help="directory for graph and sidecar files")
    p.set_defaults(handler=run)


def run(args: argparse.Namespace, config: RunConfig) -> tuple[GenerateReport, str]:
    if args.sub is not None:
        subs = {Path(args.sub).stem: load_graph(args.sub)}
    elif args.sub_name is not None:
        subs = {args.sub_name: default_substructures()[args.sub_name]}
    elif args.suite:
        subs = default_substructures()
    else:
        raise UsageError("generate needs --sub, --sub-name or --suite")

    if args.suite:
        entries = generate_suite(subs, args.seed, size_factor=args.factor)
    else:
        (name, target), = subs.items()
        params = GenParams(
            target_sub=target,
            size_factor=args.factor,
            label_factor=args.labels,
            external_conns=args.ext,
            coverage_frac=args.coverage,
            distortions=args.distort,
            seed=args.seed,
        )
        graph, truth = generate(params)
        entries = [SuiteEntry(entry_name(name, params), params, graph, truth)]

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    sidecars = []
    for entry in entries:
        sidecar = _sidecar(entry)
        write_graph(out_dir / f"{entry.name}.graph", entry.graph)
        (out_dir / f"{entry.name}.truth.json").write_text(sidecar.model_dump_json(indent=2) + "\n", encoding="utf-8")
        sidecars.append(sidecar)

    report = GenerateReport(out_dir=str(out_dir), graphs=sidecars)
    text = "".join(f"{s.name}  size={s.graph_size} instances={len(s.instance_locations)}\n" for s in sidecars)
    return report, text


def _sidecar(entry: SuiteEntry) -> GroundTruthOut:
    p = entry.params
    return GroundTruthOut(
        name=entry.name,
        seed=p.seed,
        size_factor=p.size_factor,
        label_factor=p.label_factor,
        external_conns=p.external_conns,
        coverage_frac=p.coverage_frac,
        distortions=p.distortions,
        graph_size=entry.graph.size,
        instance_locations=[list(loc) for loc in entry.truth.instance_locations],
        distortion_log=[[dict(step) for step in log] for log in entry.truth.distortion_log],
    )
