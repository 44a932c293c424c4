"""Exact treewidth by branch and bound over elimination orders.

Upper bound from min-fill elimination, lower bound from minor-min-width, and a search
over eliminated vertex sets (bitmasks) memoised by the best width reaching each set.
"""
import logging

import networkx as nx

from .decompositions import TreeDecomposition, tree_decomposition_from_order
from .errors import ResourceError
from .graphs import Vertex, sorted_vertices, vertex_key

DEFAULT_TREEWIDTH_LIMIT = 14


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _fill_in(graph: nx.Graph, nodes) -> int:
    nodes = list(nodes)
    missing = sum(
        1 for i, a in enumerate(nodes) for b in nodes[i + 1 :] if not graph.has_edge(a, b)
    )
    return missing


def _eliminate(graph: nx.Graph, v: Vertex):
    neighbours = list(graph[v])
    graph.add_edges_from(
        (a, b) for i, a in enumerate(neighbours) for b in neighbours[i + 1 :]
    )
    graph.remove_node(v)


def min_fill_upper_bound(g: nx.Graph) -> tuple[int, list[Vertex]]:
    graph = g.copy()
    width, order = -1, []
    while graph.number_of_nodes():
        _, _, v = min((_fill_in(graph, graph[u]), vertex_key(u), u) for u in graph)
        width = max(width, graph.degree(v))
        _eliminate(graph, v)
        order.append(v)
    return width, order


def minor_min_width(g: nx.Graph) -> int:
    graph = nx.Graph(g)
    bound = -1 if graph.number_of_nodes() == 0 else 0
    while graph.number_of_nodes():
        degree, _, u = min((graph.degree(x), vertex_key(x), x) for x in graph)
        bound = max(bound, degree)
        neighbours = set(graph[u])
        if neighbours:
            _, _, v = min(
                (len(set(graph[x]) & neighbours), vertex_key(x), x) for x in neighbours
            )
            graph = nx.contracted_edge(graph, (u, v), self_loops=False)
        else:
            graph.remove_node(u)
    return bound


def exact_treewidth(
    g: nx.Graph, limit: int = DEFAULT_TREEWIDTH_LIMIT
) -> tuple[int, TreeDecomposition]:
    """Treewidth of g together with a decomposition of exactly that width."""
    n = g.number_of_nodes()
    if n > limit:
        raise ResourceError(f"Treewidth oracle limited to {limit} vertices, got {n}")
    vertices = sorted_vertices(g.nodes)
    index = {v: i for i, v in enumerate(vertices)}
    adjacency = [sum(1 << index[u] for u in g[v]) for v in vertices]

    upper, upper_order = min_fill_upper_bound(g)
    lower = minor_min_width(g)
    best_width, best_order = upper, [index[v] for v in upper_order]

    def boundary_size(eliminated: int, v: int) -> int:
        seen, stack, boundary = 1 << v, [v], 0
        while stack:
            fresh = adjacency[stack.pop()] & ~seen
            seen |= fresh
            boundary |= fresh & ~eliminated
            stack.extend(_bits(fresh & eliminated))
        return _popcount(boundary)

    reached: dict[int, int] = {}

    def search(eliminated: int, width: int, order: list[int]):
        nonlocal best_width, best_order
        if width >= best_width or best_width <= lower:
            return
        if reached.get(eliminated, n + 1) <= width:
            return
        reached[eliminated] = width
        remaining = [v for v in range(n) if not eliminated >> v & 1]
        if len(remaining) - 1 <= width:
            best_width, best_order = width, order + remaining
            return
        candidates = sorted((boundary_size(eliminated, v), v) for v in remaining)
        for q, v in candidates:
            if max(width, q) < best_width:
                search(eliminated | 1 << v, max(width, q), order + [v])

    if lower < upper and n:
        search(0, max(lower, 0), [])
    order = [vertices[i] for i in best_order]
    td = tree_decomposition_from_order(g, order)
    logging.debug(f"Exact treewidth {td.width} for {n} vertices ({len(reached)} states)")
    assert td.width == best_width or n == 0
    return td.width, td
