"""Minor models and the explicit shallow-minor constructions.

Lifted host graphs are lexicographic products `base ∘ edgeless(d+1)`; row "0" holds the
vertices themselves and rows "1".."d" the lifted copies used by injections φ_w.
"""
import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Optional

import networkx as nx

from .errors import ConstructionError, InputError, PreconditionError
from .graphs import (
    Edge,
    Vertex,
    ball,
    edge_key,
    eccentricity,
    graph_power,
    induced_radius,
    max_degree,
    power_or_edgeless,
    sorted_edges,
    sorted_vertices,
    vertex_key,
)
from .products import edgeless, lex_product, product_vertex
from .schema import Verdict

BASE_ROW = "0"


def row(i: int) -> str:
    return str(i)


@dataclass
class MinorModel:
    guest: nx.Graph
    host: nx.Graph
    branch: dict[Vertex, frozenset[Vertex]]
    centre: dict[Vertex, Vertex]
    depth2x: int = 0
    topological: bool = False
    paths: dict[Edge, tuple[Vertex, ...]] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def depth(self) -> int:
        """Declared depth rounded up to an integer radius."""
        return -(-self.depth2x // 2)

    def owner(self) -> dict[Vertex, Vertex]:
        return {x: v for v, part in self.branch.items() for x in part}


def _check_paths(m: MinorModel) -> Optional[Verdict]:
    used: dict[Vertex, Edge] = {}
    for (a, b), p in sorted(m.paths.items()):
        if not m.guest.has_edge(a, b):
            return Verdict.reject("path-edge", [a, b])
        if (p[0], p[-1]) not in ((m.centre[a], m.centre[b]), (m.centre[b], m.centre[a])):
            return Verdict.reject("path-endpoints", [a, b])
        if len(p) - 1 > m.depth2x + 1:
            return Verdict.reject("path-length", [a, b], measured=len(p) - 1)
        for x, y in zip(p, p[1:]):
            if not m.host.has_edge(x, y):
                return Verdict.reject("path-host-edge", [x, y])
        for w in p[1:-1]:
            if w not in m.branch[a] | m.branch[b]:
                return Verdict.reject("path-branch", [a, b, w])
            if w in used:
                return Verdict.reject("path-disjointness", [list(used[w]), [a, b], w])
            used[w] = (a, b)
    return None


def verify_model(m: MinorModel, r: Optional[int] = None) -> Verdict:
    """Check the model axioms and, when r is given, the radius of every branch set."""
    owner: dict[Vertex, Vertex] = {}
    for v in sorted_vertices(m.branch):
        if v not in m.guest:
            return Verdict.reject("branch-coverage", v)
    for v in sorted_vertices(m.guest.nodes):
        part = m.branch.get(v)
        if not part:
            return Verdict.reject("branch-coverage", v)
        for x in sorted_vertices(part):
            if x not in m.host:
                return Verdict.reject("branch-vertex", [v, x])
            if x in owner:
                return Verdict.reject("disjointness", [owner[x], v, x])
            owner[x] = v
        if m.centre.get(v) not in part:
            return Verdict.reject("centre", v)
        if not nx.is_connected(m.host.subgraph(part)):
            return Verdict.reject("connectivity", v)
    for u, v in sorted_edges(m.guest):
        if not any(owner.get(y) == v for x in m.branch[u] for y in m.host[x]):
            return Verdict.reject("adjacency", [u, v])
    radius = 0
    for v in sorted_vertices(m.guest.nodes):
        radius_v = induced_radius(m.host, m.branch[v], m.centre[v])
        if r is not None and radius_v > r:
            return Verdict.reject("radius", v, measured=int(radius_v))
        radius = max(radius, int(radius_v))
    if m.paths:
        rejection = _check_paths(m)
        if rejection is not None:
            return rejection
    return Verdict.accept(measured=radius)


def realised_graph(m: MinorModel) -> nx.Graph:
    """Graph on the guest vertices joining every pair of touching branch sets."""
    owner = m.owner()
    g = nx.Graph()
    g.add_nodes_from(m.guest.nodes)
    for x, y in m.host.edges:
        a, b = owner.get(x), owner.get(y)
        if a is not None and b is not None and a != b:
            g.add_edge(a, b)
    return g


def flatten_paths(m: MinorModel) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(m.guest.nodes)
    g.add_edges_from(m.paths)
    return g


def _best_centre(host: nx.Graph, part: Iterable[Vertex]) -> Vertex:
    sub = host.subgraph(part)
    return min(sub.nodes, key=lambda x: (eccentricity(sub, x), vertex_key(x)))


def contraction_model(host: nx.Graph, groups: dict[Vertex, Iterable[Vertex]]) -> MinorModel:
    """Model obtained by contracting each group; the guest is the realised graph."""
    branch = {v: frozenset(part) for v, part in groups.items()}
    centre = {v: _best_centre(host, part) for v, part in branch.items()}
    guest = nx.Graph()
    guest.add_nodes_from(branch)
    model = MinorModel(guest=guest, host=host, branch=branch, centre=centre)
    model.guest = realised_graph(model)
    radius = max((induced_radius(host, branch[v], centre[v]) for v in branch), default=0)
    if radius == float("inf"):
        raise PreconditionError("Contracted groups must induce connected subgraphs")
    model.depth2x = 2 * int(radius)
    return model


def subdivision_model(
    guest: nx.Graph,
    host: nx.Graph,
    paths: dict[Edge, tuple[Vertex, ...]],
    injection: Optional[dict[Vertex, Vertex]] = None,
    depth2x: Optional[int] = None,
) -> MinorModel:
    """Topological model: each guest vertex keeps the half of every incident path nearer to it.

    An odd number of internal vertices leaves the middle one with the endpoint that sorts
    first.
    """
    injection = injection if injection is not None else {v: v for v in guest.nodes}
    images = set(injection.values())
    oriented: dict[Edge, tuple[Vertex, ...]] = {}
    for key, p in paths.items():
        a, b = edge_key(*key)
        if p[0] == injection.get(b) and p[-1] == injection.get(a):
            p = tuple(reversed(p))
        if p[0] != injection.get(a) or p[-1] != injection.get(b):
            raise PreconditionError(f"Path for guest edge {a}-{b} does not join their images")
        oriented[(a, b)] = tuple(p)
    branch: dict[Vertex, set[Vertex]] = {v: {injection[v]} for v in guest.nodes}
    internal_owner: dict[Vertex, Edge] = {}
    for u, v in sorted_edges(guest):
        if (u, v) not in oriented:
            raise PreconditionError(f"No subdivision path for guest edge {u}-{v}")
        p = oriented[(u, v)]
        for x, y in zip(p, p[1:]):
            if not host.has_edge(x, y):
                raise PreconditionError(f"Path for {u}-{v} uses non-edge {x}-{y}")
        internal = p[1:-1]
        for w in internal:
            if w in images or w in internal_owner:
                raise PreconditionError(f"Subdivision paths share internal vertex {w!r}")
            internal_owner[w] = (u, v)
        half = -(-len(internal) // 2)
        branch[u].update(internal[:half])
        branch[v].update(internal[half:])
    longest = max((len(p) - 1 for p in oriented.values()), default=1)
    model = MinorModel(
        guest=guest,
        host=host,
        branch={v: frozenset(part) for v, part in branch.items()},
        centre=dict(injection),
        depth2x=depth2x if depth2x is not None else max(longest - 1, 0),
        topological=True,
        paths=oriented,
    )
    return model


def _ensure(model: MinorModel, r: Optional[int] = None) -> MinorModel:
    verdict = verify_model(model, model.depth if r is None else r)
    if not verdict:
        raise ConstructionError(f"{verdict.witness}", claim=verdict.clause)
    return model


@dataclass
class ShortcutSystem:
    base: nx.Graph
    paths: list[tuple[Vertex, ...]]
    k: int
    d: int
    star: bool = False

    def internal_load(self) -> Counter:
        return Counter(w for p in self.paths for w in p[1:-1])

    def star_load(self) -> dict[Vertex, set[Vertex]]:
        """For each vertex, the endpoints of shortcuts through it."""
        partners: dict[Vertex, set[Vertex]] = defaultdict(set)
        for p in self.paths:
            for w in p[1:-1]:
                partners[w].update((p[0], p[-1]))
        return partners

    def validate(self):
        for p in self.paths:
            if len(p) < 2 or len(set(p)) != len(p):
                raise PreconditionError(f"Shortcut {p} is not a path with distinct endpoints")
            for x, y in zip(p, p[1:]):
                if not self.base.has_edge(x, y):
                    raise PreconditionError(f"Shortcut {p} uses non-edge {x}-{y}")
            if len(p) - 1 > self.k:
                raise PreconditionError(f"Shortcut {p} is longer than k={self.k}")
        if self.star:
            load = {w: len(partners) for w, partners in self.star_load().items()}
        else:
            load = dict(self.internal_load())
        for w in sorted_vertices(load):
            if load[w] > self.d:
                raise PreconditionError(f"Vertex {w} carries load {load[w]} > d={self.d}")

    def sorted_paths(self) -> list[tuple[Vertex, ...]]:
        return sorted(
            self.paths,
            key=lambda p: (
                tuple(map(vertex_key, edge_key(p[0], p[-1]))),
                tuple(map(vertex_key, p)),
            ),
        )


def apply_shortcuts(s: ShortcutSystem) -> nx.Graph:
    s.validate()
    g = s.base.copy()
    g.add_edges_from((p[0], p[-1]) for p in s.paths)
    return g


def shortcut_to_model(s: ShortcutSystem) -> MinorModel:
    """Topological model of G^P in base ∘ edgeless(d+1) at depth (k-1)/2."""
    s.validate()
    if s.k < 1:
        raise InputError("Shortcut systems need k >= 1")
    load = s.internal_load()
    if any(count > s.d for count in load.values()):
        raise PreconditionError("Some vertex is internal to more than d shortcuts")
    host = lex_product(s.base, edgeless(s.d + 1))
    next_row: Counter = Counter()
    lifted: dict[tuple[Vertex, ...], tuple[Vertex, ...]] = {}
    for p in s.sorted_paths():
        internal = []
        for w in p[1:-1]:
            next_row[w] += 1
            internal.append(product_vertex(w, row(next_row[w])))
        ends = (product_vertex(p[0], BASE_ROW), product_vertex(p[-1], BASE_ROW))
        lifted[p] = (ends[0], *internal, ends[1])
    guest = apply_shortcuts(s)
    candidates: dict[Edge, list[tuple[Vertex, ...]]] = defaultdict(list)
    for u, v in s.base.edges:
        candidates[edge_key(u, v)].append(
            (product_vertex(u, BASE_ROW), product_vertex(v, BASE_ROW))
        )
    for p in s.sorted_paths():
        candidates[edge_key(p[0], p[-1])].append(lifted[p])
    chosen = {e: min(options, key=len) for e, options in candidates.items()}
    model = subdivision_model(
        guest,
        host,
        chosen,
        injection={v: product_vertex(v, BASE_ROW) for v in guest.nodes},
        depth2x=s.k - 1,
    )
    if s.base.number_of_edges():
        model.notes.append("unit paths added for base edges")
    logging.debug(f"Shortcut model built from {len(s.paths)} shortcuts, k={s.k}, d={s.d}")
    return _ensure(model)


@dataclass
class CliqueLiftSpec:
    base: nx.Graph
    m: dict[Vertex, frozenset[Vertex]]
    d: int

    def validate(self):
        for v in sorted_vertices(self.m):
            if v not in self.base:
                raise InputError(f"Unknown vertex id {v!r}")
            if not self.m[v] <= set(self.base[v]):
                raise PreconditionError(f"M_{v} is not contained in N({v})")
            if len(self.m[v]) > self.d:
                raise PreconditionError(f"|M_{v}| = {len(self.m[v])} exceeds d={self.d}")


def apply_clique_lift(c: CliqueLiftSpec) -> nx.Graph:
    c.validate()
    g = c.base.copy()
    for v, members in c.m.items():
        g.add_edges_from((u, w) for u in members for w in c.base[v] if u != w)
    return g


def clique_lift_model(c: CliqueLiftSpec) -> MinorModel:
    """1-shallow model of the lift in base ∘ edgeless(d+1)."""
    c.validate()
    host = lex_product(c.base, edgeless(c.d + 1))
    branch: dict[Vertex, set[Vertex]] = {u: {product_vertex(u, BASE_ROW)} for u in c.base.nodes}
    for v in sorted_vertices(c.m):
        for i, u in enumerate(sorted_vertices(c.m[v]), start=1):
            branch[u].add(product_vertex(v, row(i)))
    model = MinorModel(
        guest=apply_clique_lift(c),
        host=host,
        branch={u: frozenset(part) for u, part in branch.items()},
        centre={u: product_vertex(u, BASE_ROW) for u in c.base.nodes},
        depth2x=2,
    )
    return _ensure(model)


def power_model(g: nx.Graph, k: int) -> MinorModel:
    """Model of g^k in g ∘ edgeless(d+1) with radius floor(k/2) branch sets."""
    if k < 1:
        raise InputError(f"power_model needs k >= 1, got {k}")
    half = k // 2
    d = max_degree(power_or_edgeless(g, half))
    host = lex_product(g, edgeless(d + 1))
    balls = {w: sorted_vertices(ball(g, w, half)) for w in g.nodes}
    position = {w: {v: i for i, v in enumerate(members)} for w, members in balls.items()}
    branch = {
        v: frozenset(product_vertex(w, row(position[w][v])) for w in balls[v]) for v in g.nodes
    }
    centre = {v: product_vertex(v, row(position[v][v])) for v in g.nodes}
    model = MinorModel(
        guest=graph_power(g, k), host=host, branch=branch, centre=centre, depth2x=2 * half
    )
    return _ensure(model)
