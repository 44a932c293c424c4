"""Queue layouts: verification, the exact oracle, and the transfer to shallow minors."""
import concurrent.futures
import itertools
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence

import networkx as nx

from .errors import PreconditionError, ResourceError
from .graphs import Edge, Vertex, edge_key, sorted_edges, sorted_vertices, vertex_key
from .minors import MinorModel, verify_model
from .products import complete_graph, product_vertex, strong_product
from .schema import Claim, Verdict

DEFAULT_QUEUE_LIMIT = 9


@dataclass
class QueueLayout:
    order: list[Vertex]
    queue: dict[Edge, int]
    strict: bool = False

    def position(self) -> dict[Vertex, int]:
        return {v: i for i, v in enumerate(self.order)}

    @property
    def queue_count(self) -> int:
        return len(set(self.queue.values()))


def _span(edge: Edge, position: dict[Vertex, int]) -> tuple[int, int]:
    a, b = position[edge[0]], position[edge[1]]
    return (a, b) if a < b else (b, a)


def nests(e: tuple[int, int], f: tuple[int, int]) -> bool:
    return (e[0] < f[0] and f[1] < e[1]) or (f[0] < e[0] and e[1] < f[1])


def overlaps(e: tuple[int, int], f: tuple[int, int]) -> bool:
    return e != f and (e[0] == f[0] or e[1] == f[1])


def verify_layout(g: nx.Graph, q: QueueLayout) -> Verdict:
    if sorted_vertices(q.order) != sorted_vertices(g.nodes) or len(set(q.order)) != len(q.order):
        return Verdict.reject("order", sorted_vertices(set(q.order) ^ set(g.nodes)))
    queue = {edge_key(*e): i for e, i in q.queue.items()}
    position = q.position()
    classes: dict[int, list[tuple[tuple[int, int], Edge]]] = {}
    for e in sorted_edges(g):
        if e not in queue:
            return Verdict.reject("coverage", list(e))
        classes.setdefault(queue[e], []).append((_span(e, position), e))
    for index in sorted(classes):
        members = sorted(classes[index])
        for (span_e, e), (span_f, f) in itertools.combinations(members, 2):
            if nests(span_e, span_f):
                return Verdict.reject("nesting", [list(e), list(f)])
            if q.strict and overlaps(span_e, span_f):
                return Verdict.reject("overlap", [list(e), list(f)])
    return Verdict.accept(measured=len(classes))


def complete_strict_layout(ell: int) -> QueueLayout:
    """Order 0..ℓ-1 with queue(ij) = |i-j|."""
    clique = complete_graph(ell)
    layout = QueueLayout(
        order=[str(i) for i in range(ell)],
        queue={(u, v): abs(int(u) - int(v)) for u, v in sorted_edges(clique)},
        strict=True,
    )
    assert verify_layout(clique, layout)
    return layout


def layout_for_order(g: nx.Graph, order: Sequence[Vertex]) -> QueueLayout:
    """Fewest queues for a fixed order: each edge goes to its nesting depth."""
    position = {v: i for i, v in enumerate(order)}
    spans = sorted(
        ((_span(e, position), e) for e in sorted_edges(g)),
        key=lambda item: (item[0][0], -item[0][1]),
    )
    depth: dict[Edge, int] = {}
    for i, (span, e) in enumerate(spans):
        depth[e] = 1 + max(
            (depth[f] for outer, f in spans[:i] if outer[0] < span[0] and span[1] < outer[1]),
            default=0,
        )
    return QueueLayout(order=list(order), queue=depth)


def _best_for_prefix(
    g: nx.Graph, first: Vertex, lower: int
) -> Optional[tuple[int, list[Vertex]]]:
    vertices = sorted_vertices(g.nodes)
    rank = {v: i for i, v in enumerate(vertices)}
    rest = [v for v in vertices if v != first]
    best: Optional[tuple[int, list[Vertex]]] = None
    for tail in itertools.permutations(rest):
        if tail and rank[tail[-1]] < rank[first]:
            continue
        order = [first, *tail]
        count = layout_for_order(g, order).queue_count
        if best is None or count < best[0]:
            best = (count, order)
            if count <= lower:
                break
    return best


def exact_queue_number(
    g: nx.Graph, limit: int = DEFAULT_QUEUE_LIMIT, jobs: int = 1
) -> tuple[int, QueueLayout]:
    """Queue-number of g with an optimal layout, by enumerating vertex orders up to reversal."""
    n, m = g.number_of_nodes(), g.number_of_edges()
    if n > limit:
        raise ResourceError(f"Queue oracle limited to {limit} vertices, got {n}")
    vertices = sorted_vertices(g.nodes)
    if m == 0:
        return 0, QueueLayout(order=vertices, queue={})
    lower = max(1, -(-m // (2 * n - 3)))
    if jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as executor:
            futures = [executor.submit(_best_for_prefix, g, v, lower) for v in vertices]
            results = [future.result() for future in futures]
    else:
        results = []
        for v in vertices:
            results.append(_best_for_prefix(g, v, lower))
            if results[-1] is not None and results[-1][0] <= lower:
                break
    count, order = min((r for r in results if r is not None), key=lambda r: r[0])
    layout = layout_for_order(g, order)
    verdict = verify_layout(g, layout)
    assert verdict and verdict.measured == count
    logging.debug(f"Exact queue-number {count} for {n} vertices (lower bound {lower})")
    return count, layout


def _branch_distances(host: nx.Graph, part: frozenset, centre: Vertex) -> dict[Vertex, list]:
    """Shortest paths from the centre inside the branch set, with sorted tie-breaking."""
    paths = {centre: [centre]}
    frontier = deque([centre])
    while frontier:
        x = frontier.popleft()
        for y in sorted_vertices(set(host[x]) & part):
            if y not in paths:
                paths[y] = paths[x] + [y]
                frontier.append(y)
    return paths


def _route(m: MinorModel, u: Vertex, v: Vertex, trees: dict) -> list[Vertex]:
    options = []
    for x, to_x in trees[u].items():
        for y in m.host[x]:
            if y in trees[v]:
                length = len(to_x) + len(trees[v][y]) - 1
                options.append((length, vertex_key(x), vertex_key(y), x, y))
    _, _, _, x, y = min(options)
    return trees[u][x] + list(reversed(trees[v][y]))


def compact(g: nx.Graph, layout: QueueLayout) -> QueueLayout:
    """Merge queues first-fit while the union stays free of nestings."""
    position = layout.position()
    classes: dict[int, list[Edge]] = {}
    for e in sorted(layout.queue, key=lambda e: _span(e, position)):
        classes.setdefault(layout.queue[e], []).append(e)
    merged: list[list[tuple[int, int]]] = []
    queue: dict[Edge, int] = {}
    for index in sorted(classes):
        spans = [_span(e, position) for e in classes[index]]
        for target, existing in enumerate(merged):
            if not any(nests(a, b) for a in spans for b in existing):
                existing.extend(spans)
                break
        else:
            target = len(merged)
            merged.append(list(spans))
        for e in classes[index]:
            queue[e] = target + 1
    result = QueueLayout(order=list(layout.order), queue=queue)
    assert verify_layout(g, result)
    return result


@dataclass
class ShallowLayout:
    layout: QueueLayout
    compacted: QueueLayout
    keys: dict[Edge, tuple]
    claims: list[Claim] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)


def queue_shallow(m: MinorModel, q: QueueLayout, r: Optional[int] = None) -> ShallowLayout:
    """Queue layout of the guest from a layout of the host.

    Guest vertices follow the host order of their centres. Each guest edge is routed from
    centre to centre through the two branch sets and keyed by the route's length, host
    queues and directions; equal keys never nest.

    Only `compacted` is claimed to use at most 2r(2q)^(2r) queues. The keyed `layout` gets
    one queue per distinct key and can exceed that bound.
    """
    r = m.depth if r is None else r
    verdict = verify_model(m, r)
    if not verdict:
        raise PreconditionError(f"Invalid model: {verdict.clause} {verdict.witness}")
    verdict = verify_layout(m.host, q)
    if not verdict:
        raise PreconditionError(f"Invalid host layout: {verdict.clause} {verdict.witness}")
    host_queues = verdict.measured or 0
    position = q.position()
    host_queue = {edge_key(*e): i for e, i in q.queue.items()}
    notes = []
    if any(m.centre[v] != v for v in m.guest.nodes):
        notes.append("guest vertices are represented by their branch-set centres")
    order = sorted(m.guest.nodes, key=lambda v: position[m.centre[v]])
    guest_position = {v: i for i, v in enumerate(order)}
    trees = {v: _branch_distances(m.host, m.branch[v], m.centre[v]) for v in m.guest.nodes}

    keys: dict[Edge, tuple] = {}
    longest = 0
    for u, v in sorted_edges(m.guest):
        if guest_position[v] < guest_position[u]:
            u, v = v, u
        route = _route(m, u, v, trees)
        steps = list(zip(route, route[1:]))
        longest = max(longest, len(steps))
        keys[edge_key(u, v)] = (
            len(steps),
            tuple(host_queue[edge_key(a, b)] for a, b in steps),
            tuple(position[a] < position[b] for a, b in steps),
        )
    dense: dict[tuple, int] = {}
    for e in sorted(keys, key=lambda e: sorted((guest_position[e[0]], guest_position[e[1]]))):
        dense.setdefault(keys[e], len(dense) + 1)
    layout = QueueLayout(order=order, queue={e: dense[key] for e, key in keys.items()})
    verdict = verify_layout(m.guest, layout)
    if not verdict:
        raise PreconditionError(f"Keyed layout nests: {verdict.witness}")
    compacted = compact(m.guest, layout)
    if longest > 2 * r:
        notes.append(f"routes of length {longest} exceed 2r = {2 * r}")
    claims = []
    if r >= 1:
        bound = 2 * r * (2 * host_queues) ** (2 * r)
        claims.append(
            Claim(
                "shallow-queue",
                bound,
                compacted.queue_count,
                parameters={"r": r, "q": host_queues},
            )
        )
        if layout.queue_count > bound:
            logging.warning(
                f"Keyed layout uses {layout.queue_count} > {bound} queues before compaction"
            )
    return ShallowLayout(layout=layout, compacted=compacted, keys=keys, claims=claims, notes=notes)


def blocked_product_layout(g: nx.Graph, layout: QueueLayout, ell: int) -> QueueLayout:
    """Layout of g ⊠ K_ℓ ordering each vertex's copies consecutively."""
    product = strong_product(g, complete_graph(ell))
    order = [product_vertex(v, str(i)) for v in layout.order for i in range(ell)]
    return layout_for_order(product, order)


def strong_product_queue_claim(
    g: nx.Graph, ell: int, limit: int = DEFAULT_QUEUE_LIMIT
) -> Claim:
    """qn(g ⊠ K_ℓ) against (2ℓ-1)qn(g)+ℓ-1, exactly when the product fits the oracle."""
    qn, layout = exact_queue_number(g, limit=limit)
    product = strong_product(g, complete_graph(ell))
    if product.number_of_nodes() <= limit:
        measured, _ = exact_queue_number(product, limit=limit)
        exact = 1
    else:
        measured = blocked_product_layout(g, layout, ell).queue_count
        exact = 0
    return Claim(
        "strong-product-queue",
        (2 * ell - 1) * qn + ell - 1,
        measured,
        parameters={"l": ell, "qn": qn, "exact": exact},
    )
