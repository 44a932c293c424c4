"""Standard host graphs, strong and lexicographic products, and subgraph embeddings."""
from dataclasses import dataclass

import networkx as nx

from .errors import InputError
from .graphs import Vertex, sorted_edges, sorted_vertices
from .schema import Verdict

SEPARATOR = "|"


def _relabel(g: nx.Graph) -> nx.Graph:
    return nx.relabel_nodes(g, str)


def complete_graph(n: int) -> nx.Graph:
    return _relabel(nx.complete_graph(n))


def edgeless(n: int) -> nx.Graph:
    return _relabel(nx.empty_graph(n))


def path(n: int) -> nx.Graph:
    return _relabel(nx.path_graph(n))


def cycle(n: int) -> nx.Graph:
    return _relabel(nx.cycle_graph(n))


def grid(rows: int, cols: int) -> nx.Graph:
    """Cartesian grid with vertex ids "x,y"."""
    return nx.relabel_nodes(nx.grid_2d_graph(cols, rows), lambda xy: f"{xy[0]},{xy[1]}")


def product_vertex(*coordinates: Vertex) -> Vertex:
    return SEPARATOR.join(coordinates)


def split_vertex(v: Vertex, parts: int = 2) -> tuple[Vertex, ...]:
    """Split a product vertex id; only the leftmost coordinate may itself contain separators."""
    pieces = v.rsplit(SEPARATOR, parts - 1)
    if len(pieces) != parts:
        raise InputError(f"Vertex {v!r} is not a {parts}-fold product vertex")
    return tuple(pieces)


def _check_right_factor(g: nx.Graph):
    for v in g.nodes:
        if SEPARATOR in v:
            raise InputError(f"Right factor vertex {v!r} contains the reserved separator")


def _flatten(product: nx.Graph) -> nx.Graph:
    return nx.relabel_nodes(product, lambda pair: product_vertex(*pair))


def strong_product(g1: nx.Graph, g2: nx.Graph) -> nx.Graph:
    _check_right_factor(g2)
    return _flatten(nx.strong_product(g1, g2))


def lex_product(g1: nx.Graph, g2: nx.Graph) -> nx.Graph:
    _check_right_factor(g2)
    return _flatten(nx.lexicographic_product(g1, g2))


def strong_product3(h: nx.Graph, middle: nx.Graph, width: int) -> nx.Graph:
    """H ⊠ L ⊠ K_width with vertex ids "h|l|i"."""
    _check_right_factor(middle)
    return strong_product(strong_product(h, middle), complete_graph(width))


def path_order(g: nx.Graph) -> list[Vertex]:
    """Vertices of `g` in path order if `g` is exactly `path(n)`, else InputError."""
    expected = path(g.number_of_nodes())
    if set(g.nodes) != set(expected.nodes) or set(map(frozenset, g.edges)) != set(
        map(frozenset, expected.edges)
    ):
        raise InputError("Graph is not a path labelled 0..n-1 in order")
    return [str(i) for i in range(g.number_of_nodes())]


@dataclass
class EmbeddingWitness:
    host: nx.Graph
    injection: dict[Vertex, Vertex]


def verify_embedding(guest: nx.Graph, w: EmbeddingWitness) -> Verdict:
    """Accept iff the injection is defined on V(guest), injective, and edge-preserving."""
    seen: dict[Vertex, Vertex] = {}
    for v in sorted_vertices(guest.nodes):
        if v not in w.injection:
            return Verdict.reject("coverage", v)
        image = w.injection[v]
        if image not in w.host:
            return Verdict.reject("host-vertex", [v, image])
        if image in seen:
            return Verdict.reject("injectivity", [seen[image], v, image])
        seen[image] = v
    for u, v in sorted_edges(guest):
        if not w.host.has_edge(w.injection[u], w.injection[v]):
            return Verdict.reject("edge", [u, v])
    return Verdict.accept(measured=guest.number_of_nodes())


def compose(first: dict[Vertex, Vertex], second: dict[Vertex, Vertex]) -> dict[Vertex, Vertex]:
    return {v: second[image] for v, image in first.items()}


def path_power_embedding(m: int, r: int) -> EmbeddingWitness:
    """Witness for path(m)^(2r+1) inside path(ceil(m/(2r+1))) ⊠ K_(2r+1) by blocks."""
    if m < 1 or r < 0:
        raise InputError(f"path_power_embedding needs m >= 1 and r >= 0, got m={m}, r={r}")
    block = 2 * r + 1
    host = strong_product(path(-(-m // block)), complete_graph(block))
    injection = {str(i): product_vertex(str(i // block), str(i % block)) for i in range(m)}
    return EmbeddingWitness(host=host, injection=injection)
