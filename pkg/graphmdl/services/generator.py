from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass

import numpy as np

from graphmdl.models.graph import EmptyGraphError, LabeledGraph
from graphmdl.schemas.params import GenParams
from graphmdl.services.graph_io import parse_graph

logger = logging.getLogger(__name__)

# Names give vertex and edge counts. Labels were drawn once at random and frozen here.
DEFAULT_SUBSTRUCTURES: dict[str, str] = {
    "s3e3": """
v 1 tri
v 2 hex
v 3 hex
u 1 2 bond
u 2 3 ring
u 3 1 bond
""",
    "s4e4": """
v 1 node
v 2 cell
v 3 node
v 4 gate
d 1 2 feeds
d 2 3 feeds
d 3 4 drives
u 4 1 tie
""",
    "s4e5": """
v 1 hub
v 2 arm
v 3 arm
v 4 tip
u 1 2 spoke
u 1 3 spoke
u 2 4 brace
u 3 4 brace
u 1 4 axis
""",
    "s5e6": """
v 1 root
v 2 leaf
v 3 stem
v 4 leaf
v 5 knot
d 1 2 grows
d 1 3 grows
d 3 4 grows
u 2 5 wraps
u 4 5 wraps
u 3 5 binds
""",
}

LABEL_FACTORS = (1, 2)
EXTERNAL_CONNS = (1, 2)
COVERAGES = (0.6, 0.8)
DISTORTION_COUNTS = (0, 1, 2)

_KINDS = ("vertex_relabel", "edge_relabel", "edge_delete", "edge_insert")
# net change in size(instance) per distortion kind
_SIZE_DELTA = {"vertex_relabel": 0, "edge_relabel": 0, "edge_delete": -1, "edge_insert": 1}


class InfeasibleParamsError(ValueError):
    pass


@dataclass(frozen=True)
class GroundTruth:
    instance_locations: tuple[tuple[int, ...], ...]  # vertex ids per embedded instance
    distortion_log: tuple[tuple[dict[str, str | int], ...], ...]


@dataclass(frozen=True)
class SuiteEntry:
    name: str
    params: GenParams
    graph: LabeledGraph
    truth: GroundTruth


def default_substructures() -> dict[str, LabeledGraph]:
    return {name: parse_graph(text) for name, text in DEFAULT_SUBSTRUCTURES.items()}


def label_pool(target: LabeledGraph, label_factor: int) -> list[str]:
    """Labels of `target` plus (factor - 1) x as many fresh ones."""
    base = list(target.label_table)
    pool = list(base)
    taken = set(base)
    n = 0
    while len(pool) < label_factor * len(base):
        fresh = f"lab{n}"
        n += 1
        if fresh not in taken:
            taken.add(fresh)
            pool.append(fresh)
    return pool


def generate(p: GenParams) -> tuple[LabeledGraph, GroundTruth]:
    """
    Embed about coverage * size_factor copies of the target, each with `distortions`
    random edits and exactly `external_conns` edges into the background, then fill
    up to size_factor * size(t) with random background vertices and edges.
    """
    t = p.target_sub
    if t.num_vertices == 0:
        raise EmptyGraphError("target substructure is empty")
    if not t.is_connected():
        raise InfeasibleParamsError("target substructure must be connected")

    rng = np.random.Generator(np.random.PCG64(p.seed))
    pool = label_pool(t, p.label_factor)
    st = t.size
    total = p.size_factor * st
    r, lo, hi = _instance_count(p.coverage_frac * total, st, total, p.external_conns)
    directed_style = _direction_style(t)

    labels: list[str] = []
    edges: list[tuple[int, int, str, bool]] = []
    locations: list[list[int]] = []
    logs: list[tuple[dict[str, str | int], ...]] = []
    drift = 0
    for _ in range(r):
        vlabels = [v.label for v in t.vertices]
        elist = [(e.src, e.dst, e.label, e.directed) for e in t.edges]
        log: list[dict[str, str | int]] = []
        for _ in range(p.distortions):
            drift += _distort(rng, vlabels, elist, pool, log, drift, lo, hi)

        offset = len(labels)
        labels += vlabels
        edges += [(offset + s, offset + d, lab, directed) for s, d, lab, directed in elist]
        locations.append(list(range(offset, offset + len(vlabels))))
        logs.append(tuple(log))

    rest = total - len(labels) - len(edges) - r * p.external_conns
    background = list(range(len(labels), len(labels) + max(1, rest // 2)))
    labels += [str(rng.choice(pool)) for _ in background]
    for _ in range(rest - len(background)):
        a = int(rng.choice(background))
        b = int(rng.choice(background)) if len(background) == 1 else int(rng.choice([x for x in background if x != a]))
        edges.append((a, b, str(rng.choice(pool)), _pick_direction(rng, directed_style)))

    for inside in locations:
        for _ in range(p.external_conns):
            a = int(rng.choice(inside))
            b = int(rng.choice(background))
            if rng.random() < 0.5:
                a, b = b, a
            edges.append((a, b, str(rng.choice(pool)), _pick_direction(rng, directed_style)))

    g = LabeledGraph.from_parts(labels, edges)
    truth = GroundTruth(
        instance_locations=tuple(tuple(g.vertices[i].id for i in loc) for loc in locations),
        distortion_log=tuple(logs),
    )
    logger.debug(
        "generated seed=%d size=%d instances=%d background=%d",
        p.seed,
        g.size,
        r,
        len(background),
    )
    return g, truth


def entry_name(name: str, p: GenParams) -> str:
    return f"{name}_l{p.label_factor}_x{p.external_conns}_c{round(p.coverage_frac * 100)}_d{p.distortions}"


def generate_suite(subs: dict[str, LabeledGraph], seed: int, size_factor: int | None = None) -> list[SuiteEntry]:
    """Every (label factor, external connections, coverage, distortions) combination per substructure."""
    if not subs:
        raise ValueError("suite needs at least one substructure")

    entries = []
    combos = list(itertools.product(LABEL_FACTORS, EXTERNAL_CONNS, COVERAGES, DISTORTION_COUNTS))
    for sub_idx, (name, sub) in enumerate(subs.items()):
        for combo_idx, (lf, ext, cov, dist) in enumerate(combos):
            child_seed = int(np.random.SeedSequence([seed, sub_idx, combo_idx]).generate_state(1, dtype=np.uint64)[0])
            extra = {"size_factor": size_factor} if size_factor is not None else {}
            params = GenParams(
                target_sub=sub,
                label_factor=lf,
                external_conns=ext,
                coverage_frac=cov,
                distortions=dist,
                seed=child_seed,
                **extra,
            )
            graph, truth = generate(params)
            entries.append(SuiteEntry(entry_name(name, params), params, graph, truth))
    logger.info("suite done substructures=%d graphs=%d", len(subs), len(entries))
    return entries


def _direction_style(t: LabeledGraph) -> bool | None:
    """True / False when every target edge is directed / undirected, None when mixed."""
    kinds = {e.directed for e in t.edges}
    if len(kinds) == 1:
        return kinds.pop()
    return False if not kinds else None


def _pick_direction(rng: np.random.Generator, style: bool | None) -> bool:
    if style is None:
        return bool(rng.random() < 0.5)
    return style


def _distort(
    rng: np.random.Generator,
    vlabels: list[str],
    elist: list[tuple[int, int, str, bool]],
    pool: list[str],
    log: list[dict[str, str | int]],
    drift: int,
    lo: int,
    hi: int,
) -> int:
    """Apply one random edit in place, keeping drift within [lo, hi]; returns its size change."""
    feasible = []
    for kind in _KINDS:
        if not lo <= drift + _SIZE_DELTA[kind] <= hi:
            continue
        if kind in ("vertex_relabel", "edge_relabel") and len(pool) < 2:
            continue
        if kind == "edge_relabel" and not elist:
            continue
        if kind == "edge_delete" and not _removable_edges(vlabels, elist):
            continue
        feasible.append(kind)
    if not feasible:
        feasible = ["vertex_relabel"] if len(pool) >= 2 else ["edge_insert"]

    kind = str(rng.choice(feasible))
    if kind == "vertex_relabel":
        v = int(rng.integers(len(vlabels)))
        new = str(rng.choice([x for x in pool if x != vlabels[v]]))
        log.append({"kind": kind, "vertex": v, "from": vlabels[v], "to": new})
        vlabels[v] = new
    elif kind == "edge_relabel":
        k = int(rng.integers(len(elist)))
        s, d, old, directed = elist[k]
        new = str(rng.choice([x for x in pool if x != old]))
        log.append({"kind": kind, "edge": k, "from": old, "to": new})
        elist[k] = (s, d, new, directed)
    elif kind == "edge_delete":
        k = int(rng.choice(_removable_edges(vlabels, elist)))
        s, d, old, _ = elist.pop(k)
        log.append({"kind": kind, "edge": k, "src": s, "dst": d, "label": old})
    else:
        s = int(rng.integers(len(vlabels)))
        d = int(rng.integers(len(vlabels)))
        directed = elist[0][3] if elist else False
        label = str(rng.choice(pool))
        elist.append((s, d, label, directed))
        log.append({"kind": kind, "src": s, "dst": d, "label": label})
    return _SIZE_DELTA[kind]


def _removable_edges(vlabels: list[str], elist: list[tuple[int, int, str, bool]]) -> list[int]:
    """Edges whose removal keeps the instance connected."""
    out = []
    for k in range(len(elist)):
        rest = elist[:k] + elist[k + 1:]
        if LabeledGraph.from_parts(vlabels, rest).is_connected():
            out.append(k)
    return out


def _instance_count(target: float, st: int, total: int, ext: int) -> tuple[int, int, int]:
    """
    Number of embedded instances and the allowed drift window [lo, hi] of their summed
    size against r * st: coverage stays within st of target and at least one vertex is
    left for the background.
    """
    r = round(target / st)
    if r < 1:
        raise InfeasibleParamsError(f"coverage target {target:g} cannot hold one instance of size {st}")
    for r in range(r, 0, -1):
        lo = math.ceil(target - st - 1e-9) - r * st
        hi = min(math.floor(target + st + 1e-9), total - r * ext - 1) - r * st
        if lo <= 0 <= hi:
            return r, lo, hi
    raise InfeasibleParamsError(f"graph size {total} cannot hold instances covering {target:g} plus their external edges")
