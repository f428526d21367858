from __future__ import annotations

import logging
import re
import shlex
from pathlib import Path
from typing import Iterable

from graphmdl.models.graph import Edge, GraphError, LabeledGraph, Vertex

logger = logging.getLogger(__name__)

_PLAIN_LABEL = re.compile(r"""^[^\s"'#\\]+$""")


class GraphFormatError(GraphError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def parse_graph(text: str | Iterable[str]) -> LabeledGraph:
    """
    Line format (`#` starts a comment, blank lines ignored):
      v <id> <label>
      d <src> <dst> <label>   directed edge
      u <src> <dst> <label>   undirected edge
    Labels are single tokens or double-quoted strings.
    """
    lines = text.splitlines() if isinstance(text, str) else text

    vertices: list[Vertex] = []
    edges: list[Edge] = []
    index_of: dict[int, int] = {}

    for line_no, raw in enumerate(lines, start=1):
        try:
            tokens = shlex.split(raw, comments=True, posix=True)
        except ValueError as e:
            raise GraphFormatError(line_no, f"malformed line ({e})") from e
        if not tokens:
            continue

        kind = tokens[0]
        if kind == "v":
            if len(tokens) != 3:
                raise GraphFormatError(line_no, "expected 'v <id> <label>'")
            vid = _parse_int(tokens[1], line_no)
            label = _parse_label(tokens[2], line_no)
            if vid in index_of:
                raise GraphFormatError(line_no, f"duplicate vertex id {vid}")
            index_of[vid] = len(vertices)
            vertices.append(Vertex(id=vid, index=len(vertices), label=label))

        elif kind in ("d", "u"):
            if len(tokens) != 4:
                raise GraphFormatError(line_no, f"expected '{kind} <src> <dst> <label>'")
            src_id = _parse_int(tokens[1], line_no)
            dst_id = _parse_int(tokens[2], line_no)
            label = _parse_label(tokens[3], line_no)
            for vid in (src_id, dst_id):
                if vid not in index_of:
                    raise GraphFormatError(line_no, f"undefined vertex {vid}")
            edges.append(Edge.make(index_of[src_id], index_of[dst_id], label, directed=(kind == "d")))

        else:
            raise GraphFormatError(line_no, f"unknown record type '{kind}'")

    g = LabeledGraph(vertices=tuple(vertices), edges=tuple(edges))
    logger.debug("parsed v=%d e=%d l_u=%d", g.num_vertices, g.num_edges, g.label_count)
    return g


def serialize_graph(g: LabeledGraph) -> str:
    out = [f"v {v.id} {_format_label(v.label)}" for v in g.vertices]
    for e in g.edges:
        kind = "d" if e.directed else "u"
        src = g.vertices[e.src].id
        dst = g.vertices[e.dst].id
        out.append(f"{kind} {src} {dst} {_format_label(e.label)}")
    return "\n".join(out) + "\n"


def load_graph(path: str | Path) -> LabeledGraph:
    p = Path(path)
    if not p.exists():
        raise FileNotFoundError(f"Graph file not found: {p}")
    return parse_graph(p.read_text(encoding="utf-8"))


def write_graph(path: str | Path, g: LabeledGraph) -> None:
    Path(path).write_text(serialize_graph(g), encoding="utf-8")


def _parse_int(token: str, line_no: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphFormatError(line_no, f"expected integer id, got '{token}'") from None


def _parse_label(token: str, line_no: int) -> str:
    if not token:
        raise GraphFormatError(line_no, "empty label")
    return token


def _format_label(label: str) -> str:
    if _PLAIN_LABEL.match(label):
        return label
    escaped = label.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'
