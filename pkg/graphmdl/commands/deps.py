from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

from graphmdl.core.config import settings
from graphmdl.schemas.params import DiscoveryParams, DistortionCosts, MatchBudget, RuleWeights

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2


class UsageError(Exception):
    pass


class CliParser(argparse.ArgumentParser):
    """argparse parser that raises instead of exiting, so main() owns the exit code."""

    def error(self, message: str):  # type: ignore[override]
        raise UsageError(f"{self.prog}: {message}")


class RunConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    command: str
    inputs: list[Path] = Field(default_factory=list)
    output_format: Literal["json", "text"] = "json"
    out: Path | None = None
    log_level: str = Field(default_factory=lambda: settings.LOG_LEVEL)
    passes: int = Field(default=1, ge=1)
    discovery: DiscoveryParams | None = None

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> RunConfig:
        has_discovery = hasattr(args, "beam")
        return cls(
            command=args.command,
            inputs=[Path(p) for p in getattr(args, "inputs", [])],
            output_format=args.format,
            out=Path(args.out) if args.out else None,
            log_level=args.log_level or settings.LOG_LEVEL,
            passes=getattr(args, "passes", 1),
            discovery=discovery_params(args) if has_discovery else None,
        )


def positive_int(raw: str) -> int:
    try:
        value = int(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {raw!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {value}")
    return value


def parse_label_pref(raw: str) -> tuple[str, float]:
    name, sep, value = raw.rpartition("=")
    if not sep or not name:
        raise argparse.ArgumentTypeError(f"expected NAME=VALUE, got {raw!r}")
    try:
        return name, float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"preference for {name!r} is not a number: {value!r}") from None


def parse_thresholds(raw: str) -> list[float]:
    try:
        return [float(x) for x in raw.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"thresholds must be comma-separated numbers, got {raw!r}") from None


def add_cost_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("distortion costs")
    g.add_argument("--cost-vdel", type=float, default=1.0, help="vertex deletion cost")
    g.add_argument("--cost-vins", type=float, default=1.0, help="vertex insertion cost")
    g.add_argument("--cost-vsub", type=float, default=1.0, help="vertex relabel cost")
    g.add_argument("--cost-edel", type=float, default=1.0, help="edge deletion cost")
    g.add_argument("--cost-eins", type=float, default=1.0, help="edge insertion cost")
    g.add_argument("--cost-esub", type=float, default=1.0, help="edge relabel/direction cost")
    g.add_argument("--match-factor", type=float, default=settings.MATCH_NODE_FACTOR, help="search nodes per n1*n2")
    g.add_argument("--match-nodes", type=int, default=None, help="absolute search-node limit")


def add_discovery_flags(p: argparse.ArgumentParser) -> None:
    add_cost_flags(p)
    g = p.add_argument_group("search")
    g.add_argument("--beam", type=int, default=settings.BEAM_WIDTH)
    g.add_argument("--threshold", type=float, default=0.0, help="match threshold in [0, 1]")
    g.add_argument("--limit", type=int, default=0, help="max candidates evaluated, 0 = no limit")
    g.add_argument("--prune", action="store_true")
    g.add_argument("--nbest", type=int, default=settings.NBEST)

    r = p.add_argument_group("rules")
    r.add_argument("--w-compact", type=float, default=0.0, help="compactness exponent")
    r.add_argument("--w-connect", type=float, default=0.0, help="connectivity exponent")
    r.add_argument("--w-cover", type=float, default=0.0, help="coverage exponent")
    r.add_argument("--w-label", type=float, default=None, help="label preference exponent (1 when --label-pref is given)")
    r.add_argument("--w-hier", type=float, default=0.0, help="exponent of the reuse bias for earlier SUB_ labels")
    r.add_argument("--label-pref", type=parse_label_pref, action="append", default=[], metavar="NAME=VALUE")
    r.add_argument("--connect-cap", type=float, default=None, help="connectivity inverse for isolated instances")


def costs_from_args(args: argparse.Namespace) -> DistortionCosts:
    return DistortionCosts(
        vertex_delete=args.cost_vdel,
        vertex_insert=args.cost_vins,
        vertex_substitute=args.cost_vsub,
        edge_delete=args.cost_edel,
        edge_insert=args.cost_eins,
        edge_substitute=args.cost_esub,
    )


def budget_from_args(args: argparse.Namespace) -> MatchBudget:
    return MatchBudget(factor=args.match_factor, limit=args.match_nodes)


def discovery_params(args: argparse.Namespace) -> DiscoveryParams:
    prefs = dict(args.label_pref)
    w_label = args.w_label if args.w_label is not None else (1.0 if prefs else 0.0)
    return DiscoveryParams(
        beam_width=args.beam,
        threshold=args.threshold,
        eval_limit=args.limit,
        prune=args.prune,
        nbest=args.nbest,
        costs=costs_from_args(args),
        budget=budget_from_args(args),
        weights=RuleWeights(
            compactness_exp=args.w_compact,
            connectivity_exp=args.w_connect,
            coverage_exp=args.w_cover,
            label_pref_exp=w_label,
            hierarchy_exp=args.w_hier,
            label_prefs=prefs,
            connectivity_cap=args.connect_cap,
        ),
    )


def emit(config: RunConfig, report: BaseModel, text: str) -> None:
    body = report.model_dump_json(indent=2) + "\n" if config.output_format == "json" else text
    if config.out is None:
        sys.stdout.write(body)
        return
    config.out.parent.mkdir(parents=True, exist_ok=True)
    config.out.write_text(body, encoding="utf-8")
