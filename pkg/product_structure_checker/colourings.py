"""Generalised colouring numbers, and verifiers for nonrepetitive and p-centred colourings."""
import concurrent.futures
import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from typing import Hashable

import networkx as nx

from .enums import ReachMode
from .errors import InputError, PreconditionError, ResourceError
from .graphs import Vertex, graph_power, max_degree, same_graph, sorted_vertices
from .minors import MinorModel, verify_model
from .products import complete_graph, product_vertex, strong_product
from .schema import Claim, Verdict
from .treewidth import DEFAULT_TREEWIDTH_LIMIT, exact_treewidth

DEFAULT_COL_LIMIT = 8
DEFAULT_CENTRED_LIMIT = 12


@dataclass
class VertexOrder:
    order: list[Vertex]

    def position(self) -> dict[Vertex, int]:
        return {v: i for i, v in enumerate(self.order)}

    def covers(self, g: nx.Graph) -> bool:
        return len(set(self.order)) == len(self.order) and set(self.order) == set(g.nodes)


@dataclass
class Colouring:
    colour: dict[Vertex, Hashable]


def _bounded_bfs(g: nx.Graph, source: Vertex, allowed, depth: int) -> dict[Vertex, int]:
    """Distances from source along paths whose vertices after the source are all allowed."""
    distance = {source: 0}
    queue = [source]
    for current in queue:
        if distance[current] == depth:
            continue
        for neighbour in g[current]:
            if neighbour not in distance and allowed(neighbour):
                distance[neighbour] = distance[current] + 1
                queue.append(neighbour)
    return distance


def reach_set(
    g: nx.Graph, order: VertexOrder, v: Vertex, s: int, mode: ReachMode = ReachMode.STRONG
) -> set[Vertex]:
    """Vertices w ≼ v reachable from v by a path of length at most s.

    Strong reachability needs every inner vertex of the path to come after v; weak
    reachability needs every inner vertex to come after w.
    """
    if s < 1:
        raise InputError(f"Reach radius must be positive, got {s}")
    position = order.position()
    here = position[v]
    if ReachMode(mode) is ReachMode.STRONG:
        inner = _bounded_bfs(g, v, lambda x: position[x] > here, s - 1)
        reached = {v}
        for x in inner:
            reached.update(w for w in g[x] if position[w] < here)
        return reached
    return {w for w in order.order[: here + 1] if v in _weak_cluster(g, position, w, s)}


def _weak_cluster(g: nx.Graph, position: dict[Vertex, int], w: Vertex, s: int) -> set[Vertex]:
    """All v with w ∈ Q(v, s): BFS from w through vertices later than w."""
    return set(_bounded_bfs(g, w, lambda x: position[x] > position[w], s))


def reach_sets(
    g: nx.Graph, order: VertexOrder, s: int, mode: ReachMode = ReachMode.STRONG
) -> dict[Vertex, set[Vertex]]:
    if ReachMode(mode) is ReachMode.STRONG:
        return {v: reach_set(g, order, v, s, mode) for v in order.order}
    if s < 1:
        raise InputError(f"Reach radius must be positive, got {s}")
    position = order.position()
    result: dict[Vertex, set[Vertex]] = {v: set() for v in order.order}
    for w in order.order:
        for v in _weak_cluster(g, position, w, s):
            result[v].add(w)
    return result


def col_of_order(
    g: nx.Graph, order: VertexOrder, s: int, mode: ReachMode = ReachMode.STRONG
) -> int:
    if not order.covers(g):
        raise InputError("Vertex order must list every vertex exactly once")
    return max((len(reach) for reach in reach_sets(g, order, s, mode).values()), default=0)


def _best_with_first(
    g: nx.Graph, first: Vertex, s: int, mode: ReachMode
) -> tuple[int, list[Vertex]]:
    rest = [v for v in sorted_vertices(g.nodes) if v != first]
    best = None
    for tail in itertools.permutations(rest):
        order = VertexOrder([first, *tail])
        value = col_of_order(g, order, s, mode)
        if best is None or value < best[0]:
            best = (value, order.order)
            if value <= 1:
                break
    return best


def exact_col(
    g: nx.Graph,
    s: int,
    mode: ReachMode = ReachMode.STRONG,
    limit: int = DEFAULT_COL_LIMIT,
    jobs: int = 1,
) -> tuple[int, VertexOrder]:
    """scol_s or wcol_s of g with an optimal order, over all vertex orders."""
    n = g.number_of_nodes()
    if n > limit:
        raise ResourceError(f"Colouring oracle limited to {limit} vertices, got {n}")
    vertices = sorted_vertices(g.nodes)
    if n == 0:
        return 0, VertexOrder([])
    if jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as executor:
            futures = [executor.submit(_best_with_first, g, v, s, mode) for v in vertices]
            results = [future.result() for future in futures]
    else:
        results = [_best_with_first(g, v, s, mode) for v in vertices]
    value, order = min(results, key=lambda r: r[0])
    logging.debug(
        f"Exact {ReachMode(mode).value} colouring number {value} at s={s} for {n} vertices"
    )
    return value, VertexOrder(order)


def leftmost_order(m: MinorModel, host_order: VertexOrder) -> VertexOrder:
    """Guest vertices ordered by the leftmost host vertex of their branch sets."""
    position = host_order.position()
    leftmost = {u: min(position[x] for x in m.branch[u]) for u in m.guest.nodes}
    if len(set(leftmost.values())) != len(leftmost):
        raise PreconditionError("Branch sets share a leftmost vertex")
    return VertexOrder(sorted(m.guest.nodes, key=leftmost.__getitem__))


@dataclass
class ColTransfer:
    order: VertexOrder
    claim: Claim


def col_shallow_order(
    m: MinorModel, host_order: VertexOrder, s: int, mode: ReachMode = ReachMode.STRONG
) -> ColTransfer:
    """Order of an r-shallow minor whose s-colouring number is at most the host's at 2rs+2r+s."""
    verdict = verify_model(m)
    if not verdict:
        raise PreconditionError(f"Invalid model: {verdict.clause} {verdict.witness}")
    if not host_order.covers(m.host):
        raise InputError("Host order must list every host vertex exactly once")
    r = m.depth
    host_s = 2 * r * s + 2 * r + s
    order = leftmost_order(m, host_order)
    claim = Claim(
        f"{ReachMode(mode).value}-col-shallow",
        col_of_order(m.host, host_order, host_s, mode),
        col_of_order(m.guest, order, s, mode),
        parameters={"r": r, "s": s, "host_s": host_s},
    )
    if not claim.holds:
        logging.warning(
            f"{ReachMode(mode).value} colouring transfer violated: {claim.measured} > {claim.bound}"
        )
    return ColTransfer(order=order, claim=claim)


def lexicographic_product_order(g_order: VertexOrder, h_order: VertexOrder) -> VertexOrder:
    return VertexOrder([product_vertex(a, b) for a in g_order.order for b in h_order.order])


def strong_product_col_claim(
    g: nx.Graph, h: nx.Graph, s: int, limit: int = DEFAULT_COL_LIMIT
) -> Claim:
    """scol_s(g ⊠ h) against scol_s(g)(Δ(h^s)+1); exact when the product fits the oracle."""
    value, g_order = exact_col(g, s, limit=limit)
    product = strong_product(g, h)
    if product.number_of_nodes() <= limit:
        measured, _ = exact_col(product, s, limit=limit)
        exact = 1
    else:
        h_order = VertexOrder(sorted_vertices(h.nodes))
        measured = col_of_order(product, lexicographic_product_order(g_order, h_order), s)
        exact = 0
    spread = max_degree(graph_power(h, s)) + 1
    return Claim(
        "strong-product-col",
        value * spread,
        measured,
        parameters={"s": s, "scol": value, "spread": spread, "exact": exact},
    )


def shallow_product_col_claim(
    m: MinorModel, g: nx.Graph, ell: int, s: int, limit: int = DEFAULT_COL_LIMIT
) -> Claim:
    """scol_s of an r-shallow minor of g ⊠ K_ℓ against ℓ·scol_(2rs+2r+s)(g)."""
    if not same_graph(m.host, strong_product(g, complete_graph(ell))):
        raise PreconditionError("Model host is not g ⊠ K_ell")
    verdict = verify_model(m)
    if not verdict:
        raise PreconditionError(f"Invalid model: {verdict.clause} {verdict.witness}")
    r = m.depth
    host_s = 2 * r * s + 2 * r + s
    base, _ = exact_col(g, host_s, limit=limit)
    measured, _ = exact_col(m.guest, s, limit=limit)
    return Claim(
        "shallow-product-col", ell * base, measured, parameters={"l": ell, "r": r, "s": s}
    )


def treewidth_col_claim(
    g: nx.Graph, s: int, limit: int = DEFAULT_COL_LIMIT, tw_limit: int = DEFAULT_TREEWIDTH_LIMIT
) -> Claim:
    value, _ = exact_col(g, s, limit=limit)
    tw, _ = exact_treewidth(g, limit=tw_limit)
    return Claim("treewidth-col", tw + 1, value, parameters={"s": s, "tw": tw})


def _simple_paths(g: nx.Graph, length: int):
    """Simple paths with `length` vertices, each listed once per direction."""
    stack = [[v] for v in sorted_vertices(g.nodes)]
    while stack:
        walk = stack.pop()
        if len(walk) == length:
            yield walk
            continue
        for w in sorted_vertices(g[walk[-1]]):
            if w not in walk:
                stack.append(walk + [w])


def verify_nonrepetitive(g: nx.Graph, c: Colouring, max_half: int) -> Verdict:
    """No path on 2h vertices, h <= max_half, whose colour sequence is a square."""
    missing = set(g.nodes) - set(c.colour)
    if missing:
        return Verdict.reject("colouring", sorted_vertices(missing))
    for h in range(1, max_half + 1):
        for walk in _simple_paths(g, 2 * h):
            colours = [c.colour[v] for v in walk]
            if colours[:h] == colours[h:]:
                return Verdict.reject("repetition", walk, measured=h)
    return Verdict.accept(measured=len(set(c.colour[v] for v in g.nodes)))


def connected_sets(g: nx.Graph):
    """Vertex sets inducing connected subgraphs, smallest first."""
    vertices = sorted_vertices(g.nodes)
    for size in range(1, len(vertices) + 1):
        for subset in itertools.combinations(vertices, size):
            if nx.is_connected(g.subgraph(subset)):
                yield subset


def verify_p_centred(
    g: nx.Graph, c: Colouring, p: int, limit: int = DEFAULT_CENTRED_LIMIT
) -> Verdict:
    """Every connected subgraph sees more than p colours or has a uniquely coloured vertex."""
    if g.number_of_nodes() > limit:
        raise ResourceError(
            f"Centred-colouring oracle limited to {limit} vertices, got {g.number_of_nodes()}"
        )
    missing = set(g.nodes) - set(c.colour)
    if missing:
        return Verdict.reject("colouring", sorted_vertices(missing))
    for subset in connected_sets(g):
        counts = Counter(c.colour[v] for v in subset)
        if len(counts) <= p and 1 not in counts.values():
            return Verdict.reject("centred", list(subset), measured=len(counts))
    return Verdict.accept(measured=len(set(c.colour[v] for v in g.nodes)))
