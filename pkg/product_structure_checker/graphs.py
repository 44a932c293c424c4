"""Graph substrate shared by every construction.

Graphs are plain `networkx.Graph` objects whose vertex identifiers are strings.
Algorithms that need a deterministic tie-break sort vertices with `vertex_key`,
which compares digit runs numerically so that "10" comes after "9".
"""
import math
import re
from dataclasses import dataclass
from typing import Hashable, Iterable, Optional, Union

import networkx as nx

from .errors import InputError

Vertex = str
Edge = tuple[str, str]

_DIGITS = re.compile(r"(\d+)")


def vertex_key(v: Hashable) -> tuple:
    parts = _DIGITS.split(str(v))
    return tuple(int(p) if i % 2 else p for i, p in enumerate(parts)), str(v)


def sorted_vertices(vertices: Iterable[Vertex]) -> list[Vertex]:
    return sorted(vertices, key=vertex_key)


def edge_key(u: Vertex, v: Vertex) -> Edge:
    """Canonical orientation of an undirected edge."""
    a, b = sorted((u, v), key=vertex_key)
    return a, b


def sorted_edges(g: nx.Graph) -> list[Edge]:
    edges = (edge_key(u, v) for u, v in g.edges)
    return sorted(edges, key=lambda e: (vertex_key(e[0]), vertex_key(e[1])))


def make_graph(
    vertices: Iterable[Hashable], edges: Iterable[tuple[Hashable, Hashable]]
) -> nx.Graph:
    """Build a simple graph, rejecting self-loops and edges to unlisted vertices."""
    g = nx.Graph()
    g.add_nodes_from(str(v) for v in vertices)
    for u, v in edges:
        u, v = str(u), str(v)
        if u == v:
            raise InputError(f"Self-loop at vertex {u!r}")
        for endpoint in (u, v):
            if endpoint not in g:
                raise InputError(f"Edge {u!r}-{v!r} uses unknown vertex {endpoint!r}")
        g.add_edge(u, v)
    return g


def same_graph(g1: nx.Graph, g2: nx.Graph) -> bool:
    """Equality on labelled vertex and edge sets."""
    return set(g1.nodes) == set(g2.nodes) and {frozenset(e) for e in g1.edges} == {
        frozenset(e) for e in g2.edges
    }


def require_vertex(g: nx.Graph, v: Vertex):
    if v not in g:
        raise InputError(f"Unknown vertex id {v!r}")


@dataclass
class DistanceTable:
    source: Vertex
    dist: dict[Vertex, Optional[int]]

    def __getitem__(self, v: Vertex) -> Optional[int]:
        return self.dist[v]

    def reachable(self) -> list[Vertex]:
        return [v for v, d in self.dist.items() if d is not None]


def bfs_distances(g: nx.Graph, source: Vertex) -> DistanceTable:
    require_vertex(g, source)
    lengths = nx.single_source_shortest_path_length(g, source)
    return DistanceTable(source=source, dist={v: lengths.get(v) for v in g.nodes})


def eccentricity(g: nx.Graph, v: Vertex) -> Union[int, float]:
    table = bfs_distances(g, v)
    if len(table.reachable()) < g.number_of_nodes():
        return math.inf
    return max(table.dist.values(), default=0)


def radius(g: nx.Graph) -> Union[int, float]:
    """Minimum eccentricity; infinite for disconnected graphs, 0 for the null graph."""
    if g.number_of_nodes() == 0:
        return 0
    if not nx.is_connected(g):
        return math.inf
    return nx.radius(g)


def graph_power(g: nx.Graph, k: int) -> nx.Graph:
    if k < 1:
        raise InputError(f"Graph power needs k >= 1, got {k}")
    if g.number_of_nodes() == 0:
        return nx.Graph()
    return nx.power(g, k)


def power_or_edgeless(g: nx.Graph, k: int) -> nx.Graph:
    """`graph_power` extended with the k=0 convention: the edgeless graph on V(g)."""
    if k == 0:
        edgeless = nx.Graph()
        edgeless.add_nodes_from(g.nodes)
        return edgeless
    return graph_power(g, k)


def max_degree(g: nx.Graph) -> int:
    return max((d for _, d in g.degree), default=0)


def degeneracy(g: nx.Graph) -> int:
    """Largest minimum degree met while repeatedly removing a minimum-degree vertex."""
    if g.number_of_nodes() == 0:
        return 0
    return max(nx.core_number(g).values())


def ball(g: nx.Graph, v: Vertex, r: int) -> set[Vertex]:
    return set(nx.single_source_shortest_path_length(g, v, cutoff=r))


def induced_radius(g: nx.Graph, vertices: Iterable[Vertex], centre: Vertex) -> Union[int, float]:
    """Eccentricity of `centre` inside the subgraph induced by `vertices`."""
    sub = g.subgraph(vertices)
    if centre not in sub:
        return math.inf
    return eccentricity(sub, centre)
