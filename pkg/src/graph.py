"""
The Cost metric graph of a Legendrian simple knot type: construction,
path metric checks and DOT/JSON export.
"""
import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Literal, Tuple

import networkx as nx
from pydantic import BaseModel, ValidationError

from .cost import cost_simple
from .knot_types import DescriptorError, KnotTypeDescriptor, LegendrianClass, classes_down_to

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


class GraphError(ValueError):
    """Raised for graph queries on missing vertices or malformed graph documents."""


def _key(pair: Pair) -> Tuple[int, int]:
    return (-pair[0], pair[1])


def _label(pair: Pair) -> str:
    return f"({pair[0]},{pair[1]})"


@dataclass(frozen=True)
class CostGraph:
    """Vertices are (tb, rot) classes; edges join classes at Cost 1."""

    knot_type: str
    tb_floor: int
    vertices: Tuple[Pair, ...]
    edges: Tuple[Tuple[Pair, Pair], ...]
    descriptor: KnotTypeDescriptor = field(compare=False, repr=False)

    @property
    def classes(self) -> List[LegendrianClass]:
        return [LegendrianClass(knot_type=self.knot_type, tb=tb, rot=rot) for tb, rot in self.vertices]

    @property
    def nx_graph(self) -> nx.Graph:
        graph = nx.Graph(knot_type=self.knot_type, tb_floor=self.tb_floor)
        for pair in self.vertices:
            graph.add_node(pair, label=_label(pair))
        graph.add_edges_from(self.edges)
        return graph


def _is_edge(u: Pair, v: Pair) -> bool:
    return abs(u[0] - v[0]) == 1 and abs(u[1] - v[1]) == 1


def _assemble(d: KnotTypeDescriptor, tb_floor: int, vertices: List[Pair]) -> CostGraph:
    vertices = sorted(set(vertices), key=_key)
    edges = [(u, v) for u, v in combinations(vertices, 2) if _is_edge(u, v)]
    return CostGraph(d.name, tb_floor, tuple(vertices), tuple(edges), d)


def build_cost_graph(d: KnotTypeDescriptor, tb_floor: int) -> CostGraph:
    try:
        classes = classes_down_to(d, tb_floor)
    except DescriptorError as e:
        raise GraphError(str(e)) from e
    graph = _assemble(d, tb_floor, [c.pair for c in classes])
    logger.info(f"Built Cost graph for {d.name} down to tb={tb_floor}: "
                f"{len(graph.vertices)} vertices, {len(graph.edges)} edges")
    return graph


def to_networkx(g: CostGraph) -> nx.Graph:
    return g.nx_graph


def _pair_of(vertex) -> Pair:
    if isinstance(vertex, LegendrianClass):
        return vertex.pair
    return (int(vertex[0]), int(vertex[1]))


def graph_distance(g: CostGraph, u, v) -> int:
    """Shortest-path length between two classes."""
    u, v = _pair_of(u), _pair_of(v)
    for vertex in (u, v):
        if vertex not in g.vertices:
            raise GraphError(f"class {_label(vertex)} is not a vertex of the graph")
    try:
        return nx.shortest_path_length(g.nx_graph, u, v)
    except nx.NetworkXNoPath as e:
        raise GraphError(f"{_label(u)} and {_label(v)} lie in different components") from e


def graph_components(g: CostGraph) -> List[List[LegendrianClass]]:
    components = [sorted(c, key=_key) for c in nx.connected_components(g.nx_graph)]
    components.sort(key=lambda c: _key(c[0]))
    return [[LegendrianClass(knot_type=g.knot_type, tb=tb, rot=rot) for tb, rot in c] for c in components]


class MetricReport(BaseModel):
    knot_type: str
    tb_floor: int
    vertices: int
    edges: int
    components: int
    violations: List[str] = []
    formula_mismatches: List[str] = []

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_metric(g: CostGraph) -> MetricReport:
    """Check the metric axioms of the path metric and compare it with the simple-type formula."""
    dist: Dict[Pair, Dict[Pair, int]] = dict(nx.all_pairs_shortest_path_length(g.nx_graph))
    violations: List[str] = []
    mismatches: List[str] = []
    vertices = list(g.vertices)
    for u in vertices:
        if dist[u].get(u) != 0:
            violations.append(f"d{_label(u)}{_label(u)} != 0")
    for u, v in combinations(vertices, 2):
        duv, dvu = dist[u].get(v), dist[v].get(u)
        if duv != dvu:
            violations.append(f"asymmetric distance between {_label(u)} and {_label(v)}")
        if duv == 0:
            violations.append(f"distinct classes {_label(u)} and {_label(v)} at distance 0")
        if duv is not None and duv != cost_simple(u, v):
            mismatches.append(f"{_label(u)}-{_label(v)}: path {duv}, formula {cost_simple(u, v)}")
    for u in vertices:
        for v, duv in dist[u].items():
            for w, dvw in dist[v].items():
                duw = dist[u].get(w)
                if duw is not None and duw > duv + dvw:
                    violations.append(f"triangle inequality fails on {_label(u)}, {_label(v)}, {_label(w)}")
    components = nx.number_connected_components(g.nx_graph) if vertices else 0
    if components > 1:
        logger.info(f"Cost graph of {g.knot_type} at floor {g.tb_floor} has {components} components")
    return MetricReport(
        knot_type=g.knot_type,
        tb_floor=g.tb_floor,
        vertices=len(vertices),
        edges=len(g.edges),
        components=components,
        violations=violations,
        formula_mismatches=mismatches,
    )


class GraphDocument(BaseModel):
    knot_type: str
    tb_floor: int
    descriptor: KnotTypeDescriptor
    vertices: List[Pair]
    edges: List[Tuple[Pair, Pair]]


def _dot(g: CostGraph) -> str:
    lines = [f'graph "{g.knot_type}" {{']
    lines.extend(f'  "{_label(v)}";' for v in g.vertices)
    lines.extend(f'  "{_label(u)}" -- "{_label(v)}";' for u, v in g.edges)
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_graph(g: CostGraph, fmt: Literal["dot", "json"] = "dot") -> str:
    """Deterministic DOT or JSON text; vertices sorted by tb descending, then rot ascending."""
    if fmt == "dot":
        return _dot(g)
    if fmt == "json":
        document = GraphDocument(
            knot_type=g.knot_type,
            tb_floor=g.tb_floor,
            descriptor=g.descriptor,
            vertices=list(g.vertices),
            edges=list(g.edges),
        )
        return document.model_dump_json()
    raise GraphError(f"unknown export format {fmt!r}; use dot or json")


def load_graph_json(text: str) -> CostGraph:
    """Re-ingest a JSON export; the edge set is checked against the Cost-1 rule."""
    try:
        document = GraphDocument.model_validate_json(text)
    except ValidationError as e:
        raise GraphError(f"malformed graph document: {e.errors()[0]['msg']}") from e
    graph = _assemble(document.descriptor, document.tb_floor, [tuple(v) for v in document.vertices])
    given = {frozenset((tuple(u), tuple(v))) for u, v in document.edges}
    if given != {frozenset(e) for e in graph.edges}:
        raise GraphError("edge list does not match the Cost-1 rule on the given vertices")
    return graph
