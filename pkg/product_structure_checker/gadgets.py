"""Shallow models and embeddings for beyond-planar drawings.

Every model lives in `plane ∘ edgeless(2)` where `plane` planarises the drawing; two objects
meeting at a dummy vertex take its rows "0" and "1" in sorted order.
"""
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Optional

import networkx as nx

from .errors import ConstructionError, InputError, PreconditionError
from .graphs import Edge, Vertex, edge_key, sorted_edges, sorted_vertices, vertex_key
from .minors import (
    BASE_ROW,
    MinorModel,
    ShortcutSystem,
    apply_shortcuts,
    subdivision_model,
    verify_model,
)
from .planarise import (
    Crossing,
    EmbeddedGraph,
    GapCharging,
    dummy,
    planarize,
    verify_gap_charging,
)
from .products import (
    EmbeddingWitness,
    complete_graph,
    edgeless,
    lex_product,
    product_vertex,
    strong_product,
    verify_embedding,
)

LIFT_ROWS = ("0", "1")
EVENT_PREFIX = "@"
CURVE_PREFIX = "^"
TERMINAL_PREFIX = "~"


def _checked(model: MinorModel, r: int) -> MinorModel:
    verdict = verify_model(model, r)
    if not verdict:
        raise ConstructionError(f"{verdict.witness}", claim=verdict.clause)
    return model


def kplanar_model(e: EmbeddedGraph, k: int) -> MinorModel:
    """k/2-shallow topological model of the drawn graph in plane ∘ edgeless(2)."""
    counts = e.crossing_count()
    for edge in sorted_edges(e.base):
        if counts[edge] > k:
            raise PreconditionError(f"Edge {edge} has {counts[edge]} > {k} crossings")
    planarisation = planarize(e)
    host = lex_product(planarisation.plane, edgeless(2))
    rows: dict[tuple[Vertex, Edge], str] = {}
    for i, c in enumerate(e.crossings):
        for edge, label in zip(sorted(c.edges()), LIFT_ROWS):
            rows[(planarisation.dummies[i], edge)] = label
    paths = {}
    for edge, route in planarisation.paths.items():
        inner = tuple(product_vertex(w, rows[(w, edge)]) for w in route[1:-1])
        ends = [product_vertex(x, BASE_ROW) for x in (route[0], route[-1])]
        paths[edge] = (ends[0], *inner, ends[1])
    model = subdivision_model(
        e.base,
        host,
        paths,
        injection={v: product_vertex(v, BASE_ROW) for v in e.base.nodes},
        depth2x=k,
    )
    return _checked(model, model.depth)


def intersection_graph(curves: dict[Vertex, list[str]]) -> nx.Graph:
    owners = _event_owners(curves)
    g = nx.Graph()
    g.add_nodes_from(curves)
    g.add_edges_from(tuple(pair) for pair in owners.values())
    return g


def _event_owners(curves: dict[Vertex, list[str]]) -> dict[str, list[Vertex]]:
    owners: dict[str, list[Vertex]] = defaultdict(list)
    for v in sorted_vertices(curves):
        if len(set(curves[v])) != len(curves[v]):
            raise InputError(f"Curve {v} meets the same event twice")
        for event in curves[v]:
            owners[event].append(v)
    for event, members in owners.items():
        if len(members) > 2:
            raise PreconditionError(f"Event {event} is a triple point of curves {members}")
        if len(members) < 2:
            raise InputError(f"Event {event} lies on a single curve")
    return owners


def string_model(curves: dict[Vertex, list[str]], delta: int) -> MinorModel:
    """floor(δ/2)-shallow model of the intersection graph of curves.

    Each curve lists its intersection events in order along it. Curves with at most one
    event get an extra vertex c_v next to their event.
    """
    for v in sorted_vertices(curves):
        if len(curves[v]) > delta:
            raise PreconditionError(f"Curve {v} has {len(curves[v])} > {delta} events")
    owners = _event_owners(curves)
    plane = nx.Graph()
    plane.add_nodes_from(EVENT_PREFIX + event for event in owners)
    for v in sorted_vertices(curves):
        events = [EVENT_PREFIX + event for event in curves[v]]
        nx.add_path(plane, events)
        if len(events) <= 1:
            plane.add_node(CURVE_PREFIX + v)
            plane.add_edges_from((CURVE_PREFIX + v, event) for event in events)
    host = lex_product(plane, edgeless(2))

    def lifted(event: str, v: Vertex) -> Vertex:
        return product_vertex(EVENT_PREFIX + event, LIFT_ROWS[owners[event].index(v)])

    branch, centre = {}, {}
    for v in sorted_vertices(curves):
        events = curves[v]
        if len(events) >= 2:
            chain = [lifted(event, v) for event in events]
            branch[v] = frozenset(chain)
            centre[v] = chain[(len(chain) - 1) // 2]
        elif events and owners[events[0]].index(v) == 1:
            branch[v] = frozenset({lifted(events[0], v)})
            centre[v] = lifted(events[0], v)
        else:
            centre[v] = product_vertex(CURVE_PREFIX + v, BASE_ROW)
            branch[v] = frozenset({centre[v]})
    model = MinorModel(
        guest=intersection_graph(curves),
        host=host,
        branch=branch,
        centre=centre,
        depth2x=2 * (delta // 2),
    )
    return _checked(model, delta // 2)


@dataclass
class ClusterStructure:
    g: nx.Graph
    clusters: dict[Vertex, frozenset[Vertex]]
    k: int
    adjacency: Optional[nx.Graph] = None

    def cluster_of(self) -> dict[Vertex, Vertex]:
        return {v: c for c, members in self.clusters.items() for v in members}

    def cluster_graph(self) -> nx.Graph:
        if self.adjacency is not None:
            return self.adjacency
        owner = self.cluster_of()
        quotient = nx.Graph()
        quotient.add_nodes_from(self.clusters)
        quotient.add_edges_from(
            (owner[u], owner[v]) for u, v in self.g.edges if owner[u] != owner[v]
        )
        return quotient

    def validate(self):
        owner: dict[Vertex, Vertex] = {}
        for c in sorted_vertices(self.clusters):
            if len(self.clusters[c]) > self.k:
                size = len(self.clusters[c])
                raise PreconditionError(f"Cluster {c} has {size} > {self.k} vertices")
            for v in self.clusters[c]:
                if v not in self.g or v in owner:
                    raise InputError(f"Clusters do not partition V(G) at vertex {v!r}")
                owner[v] = c
        if len(owner) != self.g.number_of_nodes():
            raise InputError("Clusters do not cover V(G)")
        quotient = self.cluster_graph()
        for u, v in sorted_edges(self.g):
            if owner[u] != owner[v] and not quotient.has_edge(owner[u], owner[v]):
                raise PreconditionError(f"Edge {u}-{v} joins non-adjacent clusters")


def cluster_graph_is_planar(c: ClusterStructure) -> bool:
    planar, _ = nx.check_planarity(c.cluster_graph())
    return planar


def cluster_embed(c: ClusterStructure) -> EmbeddingWitness:
    """Embed G into (cluster graph) ⊠ K_k by indexing each cluster."""
    c.validate()
    if not cluster_graph_is_planar(c):
        logging.warning("Cluster adjacency graph is not planar")
    host = strong_product(c.cluster_graph(), complete_graph(max(c.k, 1)))
    injection = {
        v: product_vertex(cluster, str(i))
        for cluster, members in c.clusters.items()
        for i, v in enumerate(sorted_vertices(members))
    }
    witness = EmbeddingWitness(host=host, injection=injection)
    verdict = verify_embedding(c.g, witness)
    if not verdict:
        raise ConstructionError(f"{verdict.witness}", claim=verdict.clause)
    return witness


def ic_planar_clusters(e: EmbeddedGraph) -> ClusterStructure:
    """(4,1)-cluster structure of an IC-planar drawing: one cluster per crossing."""
    e.validate()
    counts = e.crossing_count()
    seen: set[Vertex] = set()
    clusters: dict[Vertex, frozenset[Vertex]] = {}
    for i, crossing in enumerate(e.crossings):
        members = set(crossing.a) | set(crossing.b)
        crossed_once = all(counts[edge] == 1 for edge in crossing.edges())
        if not crossed_once or members & seen or len(members) < 4:
            raise PreconditionError(f"Crossing {i} breaks independence of crossing edges")
        seen |= members
        clusters[dummy(i)] = frozenset(members)
    for v in sorted_vertices(e.base.nodes):
        if v not in seen:
            clusters[v] = frozenset({v})
    return ClusterStructure(g=e.base, clusters=clusters, k=4)


@dataclass
class Bundle:
    origin: Vertex


@dataclass
class BundleStructure:
    """Fan-bundle drawing: each edge runs origin bundle, free middle, target bundle.

    Crossings are between bundles, positions counted from the bundle's origin.
    """

    vertices: list[Vertex]
    bundles: dict[str, Bundle]
    edge_bundles: dict[Edge, tuple[str, str]]
    crossings: list[tuple[str, str, int, int]] = field(default_factory=list)

    def along(self, b: str) -> list[int]:
        hits = []
        for i, (x, y, pos_x, pos_y) in enumerate(self.crossings):
            if b == x:
                hits.append((pos_x, i))
            elif b == y:
                hits.append((pos_y, i))
        return [i for _, i in sorted(hits)]

    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edge_bundles)
        return g

    def validate(self, k: int):
        vertices = set(self.vertices)
        for b, bundle in self.bundles.items():
            if bundle.origin not in vertices:
                raise InputError(f"Bundle {b} anchored at unknown vertex {bundle.origin!r}")
        for (u, v), (bu, bv) in self.edge_bundles.items():
            if {u, v} - vertices or u == v:
                raise InputError(f"Bundled edge {u}-{v} is not an edge on known vertices")
            if bu not in self.bundles or bv not in self.bundles:
                raise InputError(f"Edge {u}-{v} uses an unknown bundle")
            if {self.bundles[bu].origin, self.bundles[bv].origin} != {u, v}:
                raise InputError(f"Bundles of edge {u}-{v} are not anchored at its ends")
        for x, y, _, _ in self.crossings:
            if x not in self.bundles or y not in self.bundles:
                raise InputError(f"Crossing between unknown bundles {x}, {y}")
            if self.bundles[x].origin == self.bundles[y].origin:
                raise PreconditionError(f"Bundles {x} and {y} share their origin and cross")
        for b in sorted(self.bundles, key=vertex_key):
            if len(self.along(b)) > k:
                raise PreconditionError(f"Bundle {b} is crossed {len(self.along(b))} > {k} times")


def fanbundle_model(b: BundleStructure, k: int) -> MinorModel:
    """(k+1)-shallow model of the bundled graph; each bundle becomes a path to a terminal."""
    b.validate(k)
    plane = nx.Graph()
    plane.add_nodes_from(b.vertices)
    terminal = {name: TERMINAL_PREFIX + name for name in b.bundles}
    for name in sorted(b.bundles, key=vertex_key):
        route = [b.bundles[name].origin, *(dummy(i) for i in b.along(name)), terminal[name]]
        nx.add_path(plane, route)
    plane.add_edges_from((terminal[x], terminal[y]) for x, y in b.edge_bundles.values())
    host = lex_product(plane, edgeless(2))
    branch: dict[Vertex, set[Vertex]] = {
        v: {product_vertex(v, BASE_ROW)} for v in b.vertices
    }
    for name, bundle in b.bundles.items():
        branch[bundle.origin].add(product_vertex(terminal[name], BASE_ROW))
    for i, (x, y, _, _) in enumerate(b.crossings):
        origins = sorted_vertices({b.bundles[x].origin, b.bundles[y].origin})
        for origin, label in zip(origins, LIFT_ROWS):
            branch[origin].add(product_vertex(dummy(i), label))
    model = MinorModel(
        guest=b.graph(),
        host=host,
        branch={v: frozenset(part) for v, part in branch.items()},
        centre={v: product_vertex(v, BASE_ROW) for v in b.vertices},
        depth2x=2 * (k + 1),
    )
    return _checked(model, k + 1)


def shortcut_drawing(s: ShortcutSystem) -> EmbeddedGraph:
    """Conservative crossing structure of G^P drawn along its shortcuts.

    A shortcut edge crosses every base edge at its internal vertices except its own path
    edges, and any two shortcuts cross once per shared vertex internal to either of them.
    """
    guest = apply_shortcuts(s)
    drawn: dict[Edge, tuple[Vertex, ...]] = {}
    for p in s.sorted_paths():
        e = edge_key(p[0], p[-1])
        if not s.base.has_edge(*e) and e not in drawn:
            drawn[e] = p
    next_pos: dict[Edge, int] = defaultdict(int)
    crossings: list[Crossing] = []

    def cross(a: Edge, b: Edge):
        crossings.append(Crossing(a, b, next_pos[a], next_pos[b]))
        next_pos[a] += 1
        next_pos[b] += 1

    for e, p in drawn.items():
        own = {edge_key(x, y) for x, y in zip(p, p[1:])}
        for w in p[1:-1]:
            for z in sorted_vertices(s.base[w]):
                if edge_key(w, z) not in own:
                    cross(e, edge_key(w, z))
    shortcuts = list(drawn.items())
    for i, (e1, p1) in enumerate(shortcuts):
        for e2, p2 in shortcuts[i + 1 :]:
            for w in sorted_vertices(set(p1) & set(p2)):
                if w in p1[1:-1] or w in p2[1:-1]:
                    cross(e1, e2)
    return EmbeddedGraph(base=guest, crossings=crossings)


def shortcut_gap_charging(s: ShortcutSystem) -> tuple[EmbeddedGraph, GapCharging]:
    """((d-1)(k-1)+2d)-gap charging of the conservative shortcut drawing.

    Base-edge crossings are charged to the base edge. A crossing of two shortcuts at w is
    charged to the second unless w is internal only to the second, then to the first.
    """
    s.validate()
    drawing = shortcut_drawing(s)
    drawn = {}
    for p in s.sorted_paths():
        drawn.setdefault(edge_key(p[0], p[-1]), p)
    assignment: dict[int, Edge] = {}
    shared_seen: dict[tuple[Edge, Edge], int] = defaultdict(int)
    for i, c in enumerate(drawing.crossings):
        if s.base.has_edge(*c.b):
            assignment[i] = c.b
            continue
        p1 = drawn[c.a]
        common = [
            w for w in sorted_vertices(set(p1) & set(drawn[c.b]))
            if w in p1[1:-1] or w in drawn[c.b][1:-1]
        ]
        w = common[shared_seen[(c.a, c.b)]]
        shared_seen[(c.a, c.b)] += 1
        assignment[i] = c.b if w in p1[1:-1] else c.a
    charging = GapCharging(assignment=assignment, k=(s.d - 1) * (s.k - 1) + 2 * s.d)
    verdict = verify_gap_charging(drawing, charging)
    if not verdict:
        raise ConstructionError(f"{verdict.witness}", claim=verdict.clause)
    return drawing, charging
