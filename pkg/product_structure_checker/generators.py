"""Seeded random instances for the property suites.

Every generator takes a `random.Random` and draws only from it, so a seed fixes the instance.
"""
import random
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Optional

import networkx as nx

from .decompositions import (
    NormalisedTreeDecomposition,
    TreeDecomposition,
    normalise,
    partition_from_embedding,
    tree_decomposition_from_order,
)
from .engine import EngineInput
from .gadgets import Bundle, BundleStructure, ClusterStructure
from .graphs import Edge, Vertex, edge_key, sorted_edges, sorted_vertices
from .minors import CliqueLiftSpec, MinorModel, ShortcutSystem, realised_graph
from .planarise import Crossing, EmbeddedGraph
from .products import EmbeddingWitness, path, strong_product3


def random_graph(rng: random.Random, n: int, p: float) -> nx.Graph:
    g = nx.gnp_random_graph(n, p, seed=rng)
    return nx.relabel_nodes(g, str)


def random_connected_graph(rng: random.Random, n: int, p: float) -> nx.Graph:
    """A random spanning tree plus G(n, p) edges."""
    g = random_graph(rng, n, p)
    for i in range(1, n):
        g.add_edge(str(i), str(rng.randrange(i)))
    return g


@dataclass
class PartialKTree:
    graph: nx.Graph
    td: TreeDecomposition

    def normalised(self) -> NormalisedTreeDecomposition:
        return normalise(self.td, self.graph)


def random_partial_ktree(rng: random.Random, n: int, t: int, keep: float = 0.8) -> PartialKTree:
    """Subgraph of a random t-tree on n vertices with a decomposition of width <= t."""
    g = nx.complete_graph(min(n, t + 1))
    cliques = [tuple(range(min(n, t + 1)))]
    for v in range(t + 1, n):
        clique = rng.choice(cliques)
        base = rng.sample(clique, t) if len(clique) > t else list(clique)
        g.add_edges_from((v, u) for u in base)
        cliques.append((*base, v))
    g = nx.relabel_nodes(g, str)
    g.remove_edges_from([e for e in list(g.edges) if rng.random() > keep])
    order = [str(v) for v in reversed(range(n))]
    return PartialKTree(graph=g, td=tree_decomposition_from_order(g, order))


def _grow_branch_sets(
    rng: random.Random, host: nx.Graph, count: int, r: int
) -> tuple[dict[Vertex, frozenset[Vertex]], dict[Vertex, Vertex]]:
    """Disjoint connected branch sets grown by BFS steps of at most r from random centres."""
    centres = rng.sample(sorted_vertices(host.nodes), min(count, host.number_of_nodes()))
    depth = {c: 0 for c in centres}
    owner = {c: c for c in centres}
    frontier = list(centres)
    while frontier:
        x = frontier.pop(rng.randrange(len(frontier)))
        if depth[x] >= r:
            continue
        for y in sorted_vertices(host[x]):
            if y not in owner and rng.random() < 0.7:
                owner[y], depth[y] = owner[x], depth[x] + 1
                frontier.append(y)
    branch: dict[Vertex, set[Vertex]] = defaultdict(set)
    for x, c in owner.items():
        branch[c].add(x)
    names = {c: f"u{i}" for i, c in enumerate(centres)}
    return (
        {names[c]: frozenset(part) for c, part in branch.items()},
        {names[c]: c for c in centres},
    )


def random_shallow_model(
    rng: random.Random, host: nx.Graph, r: int, count: Optional[int] = None, keep: float = 0.8
) -> MinorModel:
    """r-shallow model in `host` whose guest keeps a random share of the realised edges."""
    count = count if count is not None else max(1, host.number_of_nodes() // (r + 1))
    branch, centre = _grow_branch_sets(rng, host, count, r)
    model = MinorModel(guest=nx.Graph(), host=host, branch=branch, centre=centre, depth2x=2 * r)
    realised = realised_graph(model)
    model.guest.add_nodes_from(branch)
    model.guest.add_edges_from(e for e in sorted_edges(realised) if rng.random() < keep)
    return model


def random_engine_input(
    rng: random.Random, max_vertices: int = 20, max_r: int = 2, max_t: int = 2, max_ell: int = 2
) -> EngineInput:
    """A graph inside H ⊠ P ⊠ K_ℓ with its partition, a normalised tree-decomposition of H
    and an r-shallow model of a random guest.
    """
    t, ell, r = rng.randint(1, max_t), rng.randint(1, max_ell), rng.randint(0, max_r)
    h_size = rng.randint(1, 5)
    layers = rng.randint(1, max(1, max_vertices // (h_size * ell)))
    base = random_partial_ktree(rng, h_size, t)
    p = path(layers)
    host = strong_product3(base.graph, p, ell)
    vertices = rng.sample(sorted_vertices(host.nodes), min(max_vertices, host.number_of_nodes()))
    g = host.subgraph(vertices).copy()
    g.remove_edges_from([e for e in list(g.edges) if rng.random() < 0.3])
    witness = EmbeddingWitness(host=host, injection={v: v for v in g.nodes})
    partition = partition_from_embedding(g, witness, base.graph, p, ell)
    model = random_shallow_model(rng, g, r)
    return EngineInput(g=g, partition=partition, h_td=base.normalised(), model=model, r=r)


def random_order(rng: random.Random, g: nx.Graph) -> list[Vertex]:
    order = sorted_vertices(g.nodes)
    rng.shuffle(order)
    return order


def _positions(crossings: list[tuple[Edge, Edge]], rng: random.Random) -> list[Crossing]:
    along: dict[Edge, list[int]] = defaultdict(list)
    for i, (a, b) in enumerate(crossings):
        along[a].append(i)
        along[b].append(i)
    position: dict[tuple[Edge, int], int] = {}
    for e, hits in along.items():
        rng.shuffle(hits)
        for pos, i in enumerate(hits):
            position[(e, i)] = pos
    return [
        Crossing(a, b, position[(a, i)], position[(b, i)], rng.choice((1, -1)))
        for i, (a, b) in enumerate(crossings)
    ]


def random_drawing(
    rng: random.Random,
    n: int,
    p: float,
    crossings: int,
    max_per_edge: Optional[int] = None,
    simple: bool = True,
) -> EmbeddedGraph:
    """Random graph with random crossing pairs; a simple drawing only crosses independent edges
    and each pair at most once.
    """
    g = random_graph(rng, n, p)
    edges = sorted_edges(g)
    counts: Counter = Counter()
    chosen: list[tuple[Edge, Edge]] = []
    seen: set[frozenset] = set()
    for _ in range(crossings * 4):
        if len(chosen) >= crossings or len(edges) < 2:
            break
        a, b = rng.sample(edges, 2)
        pair = frozenset((a, b))
        if simple and (set(a) & set(b) or pair in seen):
            continue
        if max_per_edge is not None and max(counts[a], counts[b]) >= max_per_edge:
            continue
        seen.add(pair)
        counts.update((a, b))
        chosen.append((a, b))
    return EmbeddedGraph(base=g, crossings=_positions(chosen, rng), simple=simple)


def random_shortcut_system(
    rng: random.Random, n: int, k: int, d: int, attempts: int = 10
) -> ShortcutSystem:
    """Random walks of length <= k in a random connected graph, kept while load stays <= d."""
    base = random_connected_graph(rng, n, 0.3)
    load: Counter = Counter()
    paths: list[tuple[Vertex, ...]] = []
    for _ in range(attempts):
        walk = [rng.choice(sorted_vertices(base.nodes))]
        for _ in range(rng.randint(1, k)):
            options = [w for w in sorted_vertices(base[walk[-1]]) if w not in walk]
            if not options:
                break
            walk.append(rng.choice(options))
        if len(walk) < 2 or any(load[w] >= d for w in walk[1:-1]):
            continue
        load.update(walk[1:-1])
        paths.append(tuple(walk))
    return ShortcutSystem(base=base, paths=paths, k=k, d=d)


def random_clique_lift(rng: random.Random, n: int, d: int) -> CliqueLiftSpec:
    base = random_graph(rng, n, 0.4)
    m = {}
    for v in sorted_vertices(base.nodes):
        neighbours = sorted_vertices(base[v])
        if neighbours and rng.random() < 0.6:
            m[v] = frozenset(rng.sample(neighbours, rng.randint(1, min(d, len(neighbours)))))
    return CliqueLiftSpec(base=base, m=m, d=d)


def random_curves(rng: random.Random, n: int, delta: int, events: int) -> dict[Vertex, list[str]]:
    """Curves meeting pairwise at events, each curve on at most delta events."""
    curves: dict[Vertex, list[str]] = {f"c{i}": [] for i in range(n)}
    names = sorted_vertices(curves)
    for i in range(events):
        u, v = rng.sample(names, 2)
        if len(curves[u]) >= delta or len(curves[v]) >= delta:
            continue
        for owner in (u, v):
            curves[owner].insert(rng.randint(0, len(curves[owner])), f"e{i}")
    return curves


def random_clusters(rng: random.Random, n: int, k: int) -> ClusterStructure:
    g = random_graph(rng, n, 0.3)
    vertices = random_order(rng, g)
    clusters = {}
    while vertices:
        size = rng.randint(1, k)
        clusters[f"C{len(clusters)}"] = frozenset(vertices[:size])
        vertices = vertices[size:]
    return ClusterStructure(g=g, clusters=clusters, k=k)


def random_bundles(rng: random.Random, n: int, k: int, crossings: int) -> BundleStructure:
    """Each vertex groups its edge ends into random bundles; bundles with different origins
    cross while both stay under k crossings.
    """
    g = random_graph(rng, n, 0.4)
    bundles: dict[str, Bundle] = {}
    end_bundle: dict[tuple[Vertex, Edge], str] = {}
    for v in sorted_vertices(g.nodes):
        ends = [edge_key(v, w) for w in sorted_vertices(g[v])]
        groups = rng.randint(1, max(1, len(ends)))
        for e in ends:
            name = f"b{v}.{rng.randrange(groups)}"
            bundles.setdefault(name, Bundle(origin=v))
            end_bundle[(v, e)] = name
    edge_bundles = {e: (end_bundle[(e[0], e)], end_bundle[(e[1], e)]) for e in sorted_edges(g)}
    names = sorted(bundles)
    hits: Counter = Counter()
    chosen: list[tuple[str, str, int, int]] = []
    for _ in range(crossings * 4):
        if len(chosen) >= crossings or len(names) < 2:
            break
        x, y = rng.sample(names, 2)
        if bundles[x].origin == bundles[y].origin or max(hits[x], hits[y]) >= k:
            continue
        chosen.append((x, y, hits[x], hits[y]))
        hits.update((x, y))
    return BundleStructure(
        vertices=sorted_vertices(g.nodes),
        bundles=bundles,
        edge_bundles=edge_bundles,
        crossings=chosen,
    )


def random_ic_planar(rng: random.Random, n: int, crossings: int) -> EmbeddedGraph:
    """Random graph whose crossing pairs use four fresh vertices each."""
    g = random_graph(rng, n, 0.4)
    edges = sorted_edges(g)
    used: set[Vertex] = set()
    chosen: list[tuple[Edge, Edge]] = []
    for _ in range(crossings * 4):
        if len(chosen) >= crossings or len(edges) < 2:
            break
        a, b = rng.sample(edges, 2)
        members = {*a, *b}
        if len(members) < 4 or members & used:
            continue
        used |= members
        chosen.append((a, b))
    return EmbeddedGraph(base=g, crossings=[Crossing(a, b, 0, 0) for a, b in chosen], simple=True)


def random_fan_drawing(rng: random.Random, n: int, fans: int) -> EmbeddedGraph:
    """Simple fan-planar drawing: each crossed edge is crossed by a fan of edges at one vertex,
    and every crossing edge is crossed once.
    """
    g = random_graph(rng, n, 0.5)
    used: set[Edge] = set()
    crossings: list[Crossing] = []
    for _ in range(fans * 4):
        if fans <= 0:
            break
        free = [e for e in sorted_edges(g) if e not in used]
        if not free:
            break
        target = rng.choice(free)
        w = rng.choice(sorted_vertices(g.nodes))
        fan = [
            edge_key(w, x)
            for x in sorted_vertices(g[w])
            if w not in target and x not in target and edge_key(w, x) not in used
        ]
        if not fan:
            continue
        chosen = rng.sample(fan, rng.randint(1, min(3, len(fan))))
        used.add(target)
        used.update(chosen)
        crossings.extend(Crossing(target, e, i, 0) for i, e in enumerate(chosen))
        fans -= 1
    return EmbeddedGraph(base=g, crossings=crossings, simple=True)
