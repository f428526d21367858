import pytest

from graphmdl.models.graph import LabeledGraph
from graphmdl.services.graph_io import parse_graph

# 6 vertices, adjacency rows k = [2, 0, 2, 0, 1, 0]
SHAPES_GRAPH = """
v 1 object
v 2 triangle
v 3 object
v 4 square
v 5 object
v 6 circle
u 1 2 shape
u 1 3 on
u 3 4 shape
u 3 5 on
u 5 6 shape
"""

TWO_TRIANGLES = """
v 1 a
v 2 b
v 3 c
v 4 a
v 5 b
v 6 c
u 1 2 e
u 2 3 e
u 3 1 e
u 4 5 e
u 5 6 e
u 6 4 e
"""

TRIANGLE = """
v 1 a
v 2 b
v 3 c
u 1 2 e
u 2 3 e
u 3 1 e
"""

# a1-b1-a2-b2-a3-b3: "in" inside each (a, b) pair, "link" between pairs
PAIR_CHAIN = """
v 1 a
v 2 b
v 3 a
v 4 b
v 5 a
v 6 b
u 1 2 in
u 2 3 link
u 3 4 in
u 4 5 link
u 5 6 in
"""

PAIR = """
v 1 a
v 2 b
u 1 2 in
"""


def ladder(units: int) -> LabeledGraph:
    """Two backbones of p and q vertices, rung p_k - q_k in every unit."""
    labels = []
    edges = []
    for k in range(units):
        labels += ["p", "q"]
        edges.append((2 * k, 2 * k + 1, "rung", False))
        if k:
            edges.append((2 * k - 2, 2 * k, "bb", False))
            edges.append((2 * k - 1, 2 * k + 1, "bb", False))
    return LabeledGraph.from_parts(labels, edges)


@pytest.fixture
def shapes() -> LabeledGraph:
    return parse_graph(SHAPES_GRAPH)


@pytest.fixture
def two_triangles() -> LabeledGraph:
    return parse_graph(TWO_TRIANGLES)


@pytest.fixture
def triangle() -> LabeledGraph:
    return parse_graph(TRIANGLE)


@pytest.fixture
def pair_chain() -> LabeledGraph:
    return parse_graph(PAIR_CHAIN)


@pytest.fixture
def pair() -> LabeledGraph:
    return parse_graph(PAIR)


@pytest.fixture
def write(tmp_path):
    """Write graph text to a file under tmp_path and return its path."""

    def _write(name: str, text: str):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return _write


@pytest.fixture
def make_ladder():
    return ladder


@pytest.fixture
def shapes_file(write):
    return write("shapes.graph", SHAPES_GRAPH)


@pytest.fixture
def triangles_file(write):
    return write("two_triangles.graph", TWO_TRIANGLES)


@pytest.fixture
def triangle_file(write):
    return write("triangle.graph", TRIANGLE)
