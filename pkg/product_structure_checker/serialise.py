"""JSON codecs for the domain types.

Edges travel as `[u, v]` lists rather than joined strings, since product vertex ids already
contain the separator. Every encoder sorts vertices and edges so that equal objects give
equal documents.
"""
from typing import Any

import networkx as nx

from .colourings import Colouring, VertexOrder
from .decompositions import HLPartition, TreeDecomposition
from .gadgets import Bundle, BundleStructure, ClusterStructure
from .graphs import Edge, edge_key, make_graph, sorted_edges, sorted_vertices, vertex_key
from .layouts import QueueLayout
from .minors import CliqueLiftSpec, MinorModel, ShortcutSystem
from .planarise import Crossing, EmbeddedGraph, GapCharging
from .products import EmbeddingWitness
from .util import decoding


def _edge(pair: Any) -> Edge:
    u, v = pair
    return edge_key(str(u), str(v))


def _edge_order(e: Edge) -> tuple:
    return vertex_key(e[0]), vertex_key(e[1])


def _parts_to_json(parts: dict) -> dict[str, list[str]]:
    return {key: sorted_vertices(part) for key, part in parts.items()}


def _parts_from_json(data: dict) -> dict:
    return {str(key): frozenset(map(str, part)) for key, part in data.items()}


def graph_to_json(g: nx.Graph) -> dict[str, Any]:
    return {"vertices": sorted_vertices(g.nodes), "edges": [list(e) for e in sorted_edges(g)]}


def graph_from_json(data: dict[str, Any]) -> nx.Graph:
    with decoding("graph"):
        return make_graph(data["vertices"], (tuple(e) for e in data["edges"]))


def witness_to_json(w: EmbeddingWitness) -> dict[str, Any]:
    return {"host": graph_to_json(w.host), "injection": dict(w.injection)}


def witness_from_json(data: dict[str, Any]) -> EmbeddingWitness:
    with decoding("embedding"):
        injection = {str(v): str(x) for v, x in data["injection"].items()}
        return EmbeddingWitness(host=graph_from_json(data["host"]), injection=injection)


def td_to_json(td: TreeDecomposition) -> dict[str, Any]:
    return {"tree": graph_to_json(td.tree), "root": td.root, "bags": _parts_to_json(td.bags)}


def td_from_json(data: dict[str, Any]) -> TreeDecomposition:
    with decoding("tree-decomposition"):
        return TreeDecomposition(
            tree=graph_from_json(data["tree"]),
            root=str(data["root"]),
            bags=_parts_from_json(data["bags"]),
        )


def partition_to_json(p: HLPartition) -> dict[str, Any]:
    return {
        "h": graph_to_json(p.quotient_h),
        "l": graph_to_json(p.quotient_l),
        "part_y": _parts_to_json(p.part_y),
        "part_z": _parts_to_json(p.part_z),
    }


def partition_from_json(data: dict[str, Any]) -> HLPartition:
    with decoding("hl-partition"):
        return HLPartition(
            quotient_h=graph_from_json(data["h"]),
            quotient_l=graph_from_json(data["l"]),
            part_y=_parts_from_json(data["part_y"]),
            part_z=_parts_from_json(data["part_z"]),
        )


def model_to_json(m: MinorModel) -> dict[str, Any]:
    return {
        "guest": graph_to_json(m.guest),
        "host": graph_to_json(m.host),
        "branch": _parts_to_json(m.branch),
        "centre": dict(m.centre),
        "depth2x": m.depth2x,
        "topological": m.topological,
        "paths": [[*e, list(m.paths[e])] for e in sorted(m.paths, key=_edge_order)],
        "notes": list(m.notes),
    }


def model_from_json(data: dict[str, Any]) -> MinorModel:
    with decoding("model"):
        return MinorModel(
            guest=graph_from_json(data["guest"]),
            host=graph_from_json(data["host"]),
            branch=_parts_from_json(data["branch"]),
            centre={str(v): str(c) for v, c in data["centre"].items()},
            depth2x=int(data.get("depth2x", 0)),
            topological=bool(data.get("topological", False)),
            paths={
                _edge((u, v)): tuple(map(str, route)) for u, v, route in data.get("paths", [])
            },
            notes=list(data.get("notes", [])),
        )


def drawing_to_json(e: EmbeddedGraph) -> dict[str, Any]:
    return {
        "graph": graph_to_json(e.base),
        "simple": e.simple,
        "crossings": [
            {"a": list(c.a), "b": list(c.b), "pos_a": c.pos_a, "pos_b": c.pos_b, "side": c.side}
            for c in e.crossings
        ],
    }


def drawing_from_json(data: dict[str, Any]) -> EmbeddedGraph:
    with decoding("drawing"):
        crossings = [
            Crossing(
                a=_edge(c["a"]),
                b=_edge(c["b"]),
                pos_a=int(c["pos_a"]),
                pos_b=int(c["pos_b"]),
                side=c.get("side"),
            )
            for c in data.get("crossings", [])
        ]
        drawing = EmbeddedGraph(
            base=graph_from_json(data["graph"]),
            crossings=crossings,
            simple=bool(data.get("simple", False)),
        )
    drawing.validate()
    return drawing


def layout_to_json(q: QueueLayout) -> dict[str, Any]:
    queue = {edge_key(*e): i for e, i in q.queue.items()}
    return {
        "order": list(q.order),
        "queue": [[*e, queue[e]] for e in sorted(queue, key=_edge_order)],
        "strict": q.strict,
    }


def layout_from_json(data: dict[str, Any]) -> QueueLayout:
    with decoding("queue-layout"):
        return QueueLayout(
            order=[str(v) for v in data["order"]],
            queue={_edge((u, v)): int(i) for u, v, i in data["queue"]},
            strict=bool(data.get("strict", False)),
        )


def order_to_json(o: VertexOrder) -> dict[str, Any]:
    return {"order": list(o.order)}


def order_from_json(data: dict[str, Any]) -> VertexOrder:
    with decoding("vertex-order"):
        return VertexOrder([str(v) for v in data["order"]])


def colouring_to_json(c: Colouring) -> dict[str, Any]:
    return {"colour": {v: c.colour[v] for v in sorted_vertices(c.colour)}}


def colouring_from_json(data: dict[str, Any]) -> Colouring:
    with decoding("colouring"):
        return Colouring({str(v): label for v, label in data["colour"].items()})


def charging_to_json(c: GapCharging) -> dict[str, Any]:
    return {"k": c.k, "assignment": [[i, list(c.assignment[i])] for i in sorted(c.assignment)]}


def charging_from_json(data: dict[str, Any]) -> GapCharging:
    with decoding("gap-charging"):
        return GapCharging(
            assignment={int(i): _edge(e) for i, e in data["assignment"]}, k=int(data["k"])
        )


def shortcuts_from_json(data: dict[str, Any]) -> ShortcutSystem:
    with decoding("shortcut system"):
        return ShortcutSystem(
            base=graph_from_json(data["graph"]),
            paths=[tuple(map(str, p)) for p in data["paths"]],
            k=int(data["k"]),
            d=int(data["d"]),
            star=bool(data.get("star", False)),
        )


def clique_lift_from_json(data: dict[str, Any]) -> CliqueLiftSpec:
    with decoding("clique lift"):
        return CliqueLiftSpec(
            base=graph_from_json(data["graph"]), m=_parts_from_json(data["m"]), d=int(data["d"])
        )


def curves_from_json(data: dict[str, Any]) -> dict[str, list[str]]:
    with decoding("curve system"):
        return {str(v): [str(event) for event in events] for v, events in data["curves"].items()}


def clusters_from_json(data: dict[str, Any]) -> ClusterStructure:
    with decoding("cluster structure"):
        adjacency = data.get("adjacency")
        return ClusterStructure(
            g=graph_from_json(data["graph"]),
            clusters=_parts_from_json(data["clusters"]),
            k=int(data["k"]),
            adjacency=None if adjacency is None else graph_from_json(adjacency),
        )


def bundles_from_json(data: dict[str, Any]) -> BundleStructure:
    with decoding("bundle structure"):
        return BundleStructure(
            vertices=[str(v) for v in data["vertices"]],
            bundles={
                str(name): Bundle(origin=str(b["origin"]))
                for name, b in data["bundles"].items()
            },
            edge_bundles={
                _edge((u, v)): (str(bu), str(bv)) for u, v, bu, bv in data["edges"]
            },
            crossings=[(str(x), str(y), int(px), int(py)) for x, y, px, py in data["crossings"]],
        )
