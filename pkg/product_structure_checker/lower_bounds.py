"""The 1-gap-planar grid hierarchy: large treewidth at small radius.

Level-ℓ vertices are the points of [0, n^(k+1)]² whose coordinates are multiples of n^ℓ; level-ℓ
edges join consecutive level-ℓ points on a row or column. A level-ℓ vertical edge at x0 runs
through the unit strip right of its line and crosses every lower-level horizontal edge that
starts on that line strictly inside its span (and symmetrically). Each crossing is charged to
the lower-level edge, so no edge carries more than k charges; splitting the edges between
consecutive charged crossings leaves one charge per edge.
"""
import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Optional

import networkx as nx

from .errors import PreconditionError, ResourceError
from .graphs import Edge, Vertex, edge_key, radius, same_graph, sorted_edges
from .planarise import (
    Crossing,
    EmbeddedGraph,
    GapCharging,
    gap_charging,
    verify_gap_charging,
)
from .schema import Claim
from .treewidth import DEFAULT_TREEWIDTH_LIMIT, exact_treewidth

DEFAULT_HIERARCHY_BUDGET = 20_000


def point(x: int, y: int) -> Vertex:
    return f"{x},{y}"


def segment_vertex(e: Edge, i: int) -> Vertex:
    return f"{e[0]}/{e[1]}/{i}"


@dataclass
class GridHierarchy:
    n: int
    k: int
    embedded: EmbeddedGraph
    levels: dict[Edge, int]
    charging: GapCharging
    subdivided: EmbeddedGraph
    segments: dict[Edge, tuple[Vertex, ...]]

    @property
    def side(self) -> int:
        return self.n ** (self.k + 1)

    @property
    def radius_bound(self) -> int:
        return (2 * self.k + 1) * self.n + -(-self.k // 2) + 1

    @property
    def treewidth_lower(self) -> int:
        return self.side + 1


def _level_edges(n: int, k: int) -> dict[Edge, int]:
    side = n ** (k + 1)
    levels = {}
    for level in range(k + 1):
        step = n**level
        for x in range(0, side + 1, step):
            for y in range(0, side + 1, step):
                if x + step <= side:
                    levels[edge_key(point(x, y), point(x + step, y))] = level
                if y + step <= side:
                    levels[edge_key(point(x, y), point(x, y + step))] = level
    return levels


def _crossings(n: int, k: int) -> list[tuple[Edge, Edge, tuple, tuple]]:
    """(higher edge, lower edge, key along higher, key along lower) for every crossing."""
    side = n ** (k + 1)
    found = []
    for level in range(1, k + 1):
        step = n**level
        for a in range(0, side + 1, step):
            for b in range(0, side, step):
                for lower in range(level):
                    unit = n**lower
                    if a + unit > side:
                        continue
                    for c in range(b + unit, b + step, unit):
                        found.append(
                            (
                                edge_key(point(a, b), point(a, b + step)),
                                edge_key(point(a, c), point(a + unit, c)),
                                (c, lower),
                                (a, level),
                            )
                        )
                        found.append(
                            (
                                edge_key(point(b, a), point(b + step, a)),
                                edge_key(point(c, a), point(c, a + unit)),
                                (c, lower),
                                (a, level),
                            )
                        )
    return found


def _ranked(keys: dict[Edge, list[tuple[tuple, int]]]) -> dict[tuple[Edge, int], int]:
    rank = {}
    for e, entries in keys.items():
        for position, (_, i) in enumerate(sorted(entries)):
            rank[(e, i)] = position
    return rank


def _subdivide(
    e: EmbeddedGraph, charging: GapCharging
) -> tuple[EmbeddedGraph, dict[Edge, tuple[Vertex, ...]]]:
    charged_at: dict[Edge, list[int]] = defaultdict(list)
    for i, edge in charging.assignment.items():
        charged_at[edge].append(e.crossings[i].pos_on(edge))
    segments: dict[Edge, tuple[Vertex, ...]] = {}
    plane = nx.Graph()
    plane.add_nodes_from(e.base.nodes)
    for edge in sorted_edges(e.base):
        c = len(charged_at[edge])
        inner = tuple(segment_vertex(edge, i) for i in range(1, c))
        segments[edge] = (edge[0], *inner, edge[1])
        nx.add_path(plane, segments[edge])

    def piece(edge: Edge, pos: int) -> tuple[Edge, int]:
        index = max(sum(1 for p in charged_at[edge] if p <= pos) - 1, 0)
        route = segments[edge]
        return edge_key(route[index], route[index + 1]), index

    keys: dict[Edge, list[tuple[tuple, int]]] = defaultdict(list)
    pieces = {}
    for i, crossing in enumerate(e.crossings):
        pair = []
        for edge in crossing.edges():
            seg, index = piece(edge, crossing.pos_on(edge))
            forward = seg[0] == segments[edge][index]
            pos = crossing.pos_on(edge)
            keys[seg].append(((pos if forward else -pos,), i))
            pair.append(seg)
        pieces[i] = tuple(pair)
    rank = _ranked(keys)
    crossings = [
        Crossing(a, b, rank[(a, i)], rank[(b, i)]) for i, (a, b) in sorted(pieces.items())
    ]
    return EmbeddedGraph(base=plane, crossings=crossings), segments


def build_grid_hierarchy(
    n: int, k: int, vertex_budget: int = DEFAULT_HIERARCHY_BUDGET
) -> GridHierarchy:
    if n < 1 or k < 1:
        raise PreconditionError(f"Grid hierarchy needs n, k >= 1, got n={n}, k={k}")
    if n == 1:
        raise PreconditionError("Grid hierarchy with n=1 collapses every level onto level 0")
    side = n ** (k + 1)
    if (side + 1) ** 2 > vertex_budget:
        raise ResourceError(
            f"Grid hierarchy needs {(side + 1) ** 2} vertices, budget {vertex_budget}"
        )

    levels = _level_edges(n, k)
    base = nx.Graph()
    base.add_nodes_from(point(x, y) for x in range(side + 1) for y in range(side + 1))
    base.add_edges_from(levels)

    found = _crossings(n, k)
    keys: dict[Edge, list[tuple[tuple, int]]] = defaultdict(list)
    for i, (higher, lower, along_higher, along_lower) in enumerate(found):
        keys[higher].append((along_higher, i))
        keys[lower].append((along_lower, i))
    rank = _ranked(keys)
    crossings = [
        Crossing(higher, lower, rank[(higher, i)], rank[(lower, i)])
        for i, (higher, lower, _, _) in enumerate(found)
    ]
    embedded = EmbeddedGraph(base=base, crossings=crossings)
    embedded.validate()
    charging = GapCharging(assignment={i: c.b for i, c in enumerate(crossings)}, k=k)
    subdivided, segments = _subdivide(embedded, charging)
    subdivided.validate()
    logging.debug(
        f"Grid hierarchy n={n} k={k}: {base.number_of_nodes()} vertices, "
        f"{len(crossings)} crossings, {subdivided.base.number_of_nodes()} after subdivision"
    )
    return GridHierarchy(
        n=n,
        k=k,
        embedded=embedded,
        levels=levels,
        charging=charging,
        subdivided=subdivided,
        segments=segments,
    )


def contract_paths(g: nx.Graph, original: set[Vertex]) -> nx.Graph:
    """Contract every path through vertices outside `original` back to a single edge."""
    contracted = nx.Graph()
    contracted.add_nodes_from(v for v in g.nodes if v in original)
    for v in list(contracted.nodes):
        for w in g[v]:
            previous, current = v, w
            while current not in original:
                previous, current = current, next(x for x in g[current] if x != previous)
            contracted.add_edge(v, current)
    return contracted


def contract_subdivision(h: GridHierarchy) -> nx.Graph:
    return contract_paths(h.subdivided.base, set(h.embedded.base.nodes))


@dataclass
class HierarchyReport:
    n: int
    k: int
    grid_contained: bool
    radius: int
    radius_bound: int
    charges_within_k: bool
    subdivision_faithful: bool
    gap_feasible: bool
    tw_lower: int
    unit_charging: Optional[GapCharging] = None
    subgrid_size: int = 0
    subgrid_treewidth: Optional[int] = None
    claims: list[Claim] = field(default_factory=list)

    @property
    def accepted(self) -> bool:
        return (
            self.grid_contained
            and self.radius <= self.radius_bound
            and self.charges_within_k
            and self.subdivision_faithful
            and self.gap_feasible
            and all(claim.holds for claim in self.claims)
        )


def grid_contained(g: nx.Graph, side: int) -> bool:
    """The (side+1) x (side+1) grid on points "x,y" is a subgraph of g."""
    return all(
        g.has_edge(point(x, y), point(x + 1, y)) and g.has_edge(point(y, x), point(y, x + 1))
        for x in range(side)
        for y in range(side + 1)
    )


def check_hierarchy(h: GridHierarchy, tw_limit: int = DEFAULT_TREEWIDTH_LIMIT) -> HierarchyReport:
    measured = radius(h.subdivided.base)
    charges = verify_gap_charging(h.embedded, h.charging)
    unit_charging = gap_charging(h.subdivided, 1)
    size = min(h.side + 1, math.isqrt(tw_limit))
    claims = [Claim("radius", h.radius_bound, measured, parameters={"n": h.n, "k": h.k})]
    subgrid_treewidth = None
    if size >= 1:
        subgrid = h.embedded.base.subgraph(
            point(x, y) for x in range(size) for y in range(size)
        ).copy()
        subgrid.remove_edges_from(
            [e for e in subgrid.edges if h.levels[edge_key(*e)] > 0]
        )
        subgrid_treewidth, _ = exact_treewidth(subgrid, limit=tw_limit)
        claims.append(
            Claim("subgrid-treewidth", size if size > 1 else 0, subgrid_treewidth, "==")
        )
    report = HierarchyReport(
        n=h.n,
        k=h.k,
        grid_contained=grid_contained(h.embedded.base, h.side),
        radius=measured,
        radius_bound=h.radius_bound,
        charges_within_k=bool(charges),
        subdivision_faithful=same_graph(contract_subdivision(h), h.embedded.base),
        gap_feasible=unit_charging is not None,
        tw_lower=h.treewidth_lower,
        unit_charging=unit_charging,
        subgrid_size=size,
        subgrid_treewidth=subgrid_treewidth,
        claims=claims,
    )
    logging.debug(f"Hierarchy report n={h.n} k={h.k}: accepted={report.accepted}")
    return report
