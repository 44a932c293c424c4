"""Combinatorial drawings: crossing sequences, planarisation, k-gap chargings and fan-planar
friend assignments.

Positions along an edge count from the endpoint that sorts first (`edge_key(u, v)[0]`).
A crossing's side is the orientation of edge b relative to edge a; seen from b it flips.
"""
import itertools
import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Optional

import networkx as nx
from networkx.algorithms.flow import maximum_flow

from .errors import InputError, PreconditionError, ResourceError
from .graphs import Edge, Vertex, edge_key, sorted_edges
from .schema import Verdict

DUMMY_PREFIX = "#"
DEFAULT_GAP_ORACLE_LIMIT = 16


def dummy(i: int) -> Vertex:
    return f"{DUMMY_PREFIX}{i}"


@dataclass
class Crossing:
    a: Edge
    b: Edge
    pos_a: int
    pos_b: int
    side: Optional[int] = None

    def edges(self) -> tuple[Edge, Edge]:
        return self.a, self.b

    def other(self, e: Edge) -> Edge:
        return self.b if e == self.a else self.a

    def pos_on(self, e: Edge) -> int:
        return self.pos_a if e == self.a else self.pos_b

    def side_from(self, e: Edge) -> Optional[int]:
        if self.side is None:
            return None
        return self.side if e == self.a else -self.side


@dataclass
class EmbeddedGraph:
    base: nx.Graph
    crossings: list[Crossing] = field(default_factory=list)
    simple: bool = False

    def __post_init__(self):
        self.crossings = [
            Crossing(edge_key(*c.a), edge_key(*c.b), c.pos_a, c.pos_b, c.side)
            for c in self.crossings
        ]

    def validate(self):
        for v in self.base.nodes:
            if v.startswith(DUMMY_PREFIX):
                raise InputError(f"Vertex id {v!r} uses the reserved dummy prefix")
        positions: dict[Edge, set[int]] = defaultdict(set)
        pairs: Counter = Counter()
        for i, c in enumerate(self.crossings):
            if c.a == c.b:
                raise InputError(f"Crossing {i} references edge {c.a} twice")
            if c.side not in (None, 1, -1):
                raise InputError(f"Crossing {i} has side {c.side}, expected ±1")
            for e in c.edges():
                if not self.base.has_edge(*e):
                    raise InputError(f"Crossing {i} references unknown edge {e}")
                pos = c.pos_on(e)
                if pos in positions[e]:
                    raise InputError(f"Edge {e} has two crossings at position {pos}")
                positions[e].add(pos)
            pairs[frozenset(c.edges())] += 1
            if self.simple and set(c.a) & set(c.b):
                raise InputError(f"Simple drawing has adjacent edges {c.a} and {c.b} crossing")
        if self.simple:
            for pair, count in pairs.items():
                if count > 1:
                    raise InputError(f"Simple drawing has edges {sorted(pair)} crossing twice")

    def along(self, e: Edge) -> list[tuple[int, Edge]]:
        """Crossing indices on e with the crossing edge, in position order."""
        e = edge_key(*e)
        hits = [
            (c.pos_on(e), i, c.other(e)) for i, c in enumerate(self.crossings) if e in c.edges()
        ]
        return [(i, other) for _, i, other in sorted(hits)]

    def crossing_count(self) -> Counter:
        return Counter(e for c in self.crossings for e in c.edges())

    def crossed_edges(self) -> list[Edge]:
        counts = self.crossing_count()
        return [e for e in sorted_edges(self.base) if counts[e]]


@dataclass
class Planarisation:
    plane: nx.Graph
    dummies: dict[int, Vertex]
    paths: dict[Edge, tuple[Vertex, ...]]


def planarize(e: EmbeddedGraph) -> Planarisation:
    """Replace every crossing by a degree-four dummy vertex."""
    e.validate()
    dummies = {i: dummy(i) for i in range(len(e.crossings))}
    plane = nx.Graph()
    plane.add_nodes_from(e.base.nodes)
    plane.add_nodes_from(dummies.values())
    paths: dict[Edge, tuple[Vertex, ...]] = {}
    for u, v in sorted_edges(e.base):
        route = (u, *(dummies[i] for i, _ in e.along((u, v))), v)
        nx.add_path(plane, route)
        paths[(u, v)] = route
    logging.debug(
        f"Planarised {e.base.number_of_edges()} edges with {len(e.crossings)} crossings"
    )
    return Planarisation(plane=plane, dummies=dummies, paths=paths)


@dataclass
class GapCharging:
    assignment: dict[int, Edge]
    k: int

    def load(self) -> Counter:
        return Counter(self.assignment.values())


def verify_gap_charging(e: EmbeddedGraph, c: GapCharging) -> Verdict:
    for i, crossing in enumerate(e.crossings):
        if i not in c.assignment:
            return Verdict.reject("coverage", i)
        if edge_key(*c.assignment[i]) not in crossing.edges():
            return Verdict.reject("incidence", [i, list(c.assignment[i])])
    if set(c.assignment) - set(range(len(e.crossings))):
        return Verdict.reject("coverage", sorted(set(c.assignment) - set(range(len(e.crossings)))))
    load = Counter(edge_key(*edge) for edge in c.assignment.values())
    for edge, count in sorted(load.items()):
        if count > c.k:
            return Verdict.reject("capacity", list(edge), measured=count)
    return Verdict.accept(measured=max(load.values(), default=0))


def gap_charging(e: EmbeddedGraph, k: int) -> Optional[GapCharging]:
    """A charging with every edge charged at most k times, or None when none exists.

    Decided by an integral maximum flow: source → crossing (1) → its two edges → sink (k).
    """
    e.validate()
    network = nx.DiGraph()
    network.add_nodes_from(("source", "sink"))
    for i, c in enumerate(e.crossings):
        network.add_edge("source", ("crossing", i), capacity=1)
        for edge in c.edges():
            network.add_edge(("crossing", i), ("edge", edge), capacity=1)
    for edge in sorted_edges(e.base):
        network.add_edge(("edge", edge), "sink", capacity=k)
    value, flow = maximum_flow(network, "source", "sink")
    if value < len(e.crossings):
        logging.debug(f"No {k}-gap charging: flow {value} < {len(e.crossings)} crossings")
        return None
    assignment = {}
    for i, c in enumerate(e.crossings):
        assignment[i] = next(edge for edge in c.edges() if flow[("crossing", i)][("edge", edge)])
    charging = GapCharging(assignment=assignment, k=k)
    verdict = verify_gap_charging(e, charging)
    assert verdict, verdict
    return charging


def exhaustive_gap_charging(
    e: EmbeddedGraph, k: int, limit: int = DEFAULT_GAP_ORACLE_LIMIT
) -> Optional[GapCharging]:
    """Brute force over all 2^c assignments."""
    e.validate()
    if len(e.crossings) > limit:
        raise ResourceError(
            f"Gap-charging oracle limited to {limit} crossings, got {len(e.crossings)}"
        )
    for choice in itertools.product((0, 1), repeat=len(e.crossings)):
        assignment = {i: e.crossings[i].edges()[bit] for i, bit in enumerate(choice)}
        charging = GapCharging(assignment=assignment, k=k)
        if verify_gap_charging(e, charging):
            return charging
    return None


@dataclass
class FriendAssignment:
    friend: dict[Edge, Vertex]
    split: dict[Edge, int]


def _common_endpoints(e: EmbeddedGraph) -> dict[Edge, set[Vertex]]:
    common = {}
    for edge in e.crossed_edges():
        crossers = [other for _, other in e.along(edge)]
        shared = set(crossers[0]).intersection(*map(set, crossers[1:]))
        if not shared:
            raise PreconditionError(f"Edge {edge} is crossed by edges without a common end-vertex")
        common[edge] = shared
    return common


def _check_same_side(e: EmbeddedGraph, edge: Edge, w: Vertex):
    sides = set()
    for i, other in e.along(edge):
        side = e.crossings[i].side_from(edge)
        if side is None:
            continue
        sides.add(side if other[0] == w else -side)
    if len(sides) > 1:
        raise PreconditionError(f"Edge {edge} is crossed from both sides by the fan at {w}")


def verify_friend_assignment(e: EmbeddedGraph, f: FriendAssignment) -> Verdict:
    common = _common_endpoints(e)
    for edge in sorted(common):
        if f.friend.get(edge) not in common[edge]:
            return Verdict.reject("friend", list(edge))
    for edge in sorted(common):
        u, v = edge
        split = f.split.get(edge)
        friends = [f.friend[other] for _, other in e.along(edge)]
        if split is None or friends != [u] * split + [v] * (len(friends) - split):
            return Verdict.reject("well-behaved", list(edge))
    return Verdict.accept(measured=len(common))


def friend_assignment(e: EmbeddedGraph) -> FriendAssignment:
    """Well-behaved friend assignment of a simple fan-planar drawing.

    Along each crossed edge uv, the crossers before the first one that cannot take u as its
    friend take u; the rest take v.
    """
    if not e.simple:
        raise PreconditionError("Friend assignments need a simple drawing")
    e.validate()
    common = _common_endpoints(e)
    counts = e.crossing_count()
    friend: dict[Edge, Vertex] = {}
    for edge, shared in common.items():
        if counts[edge] > 1:
            (friend[edge],) = shared
            _check_same_side(e, edge, friend[edge])
    split: dict[Edge, int] = {}
    for edge in sorted(common):
        u, v = edge
        crossers = [other for _, other in e.along(edge)]
        split[edge] = next(
            (i for i, other in enumerate(crossers) if u not in common[other]), len(crossers)
        )
        for i, other in enumerate(crossers):
            if counts[other] == 1:
                friend[other] = u if i < split[edge] else v
    assignment = FriendAssignment(friend=friend, split=split)
    verdict = verify_friend_assignment(e, assignment)
    if not verdict:
        raise PreconditionError(f"Drawing is not fan-planar at edge {verdict.witness}")
    return assignment

