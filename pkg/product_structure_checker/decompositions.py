"""Tree-decompositions, their normalised form, (H,L)-partitions and layerings."""
import logging
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import networkx as nx

from .errors import InputError, PreconditionError
from .graphs import Vertex, sorted_edges, sorted_vertices, vertex_key
from .products import (
    EmbeddingWitness,
    product_vertex,
    split_vertex,
    strong_product3,
    verify_embedding,
)
from .schema import Verdict


@dataclass
class RootedTree:
    root: Vertex
    parent: dict[Vertex, Optional[Vertex]]
    depth: dict[Vertex, int]

    @classmethod
    def from_tree(cls, tree: nx.Graph, root: Vertex) -> "RootedTree":
        parent: dict[Vertex, Optional[Vertex]] = {root: None}
        parent.update(dict(nx.bfs_predecessors(tree, root)))
        depth = dict(nx.single_source_shortest_path_length(tree, root))
        return cls(root=root, parent=parent, depth=depth)

    def children(self) -> dict[Vertex, list[Vertex]]:
        result: dict[Vertex, list[Vertex]] = defaultdict(list)
        for node, parent in self.parent.items():
            if parent is not None:
                result[parent].append(node)
        return {node: sorted_vertices(kids) for node, kids in result.items()}

    def preorder(self) -> list[Vertex]:
        children = self.children()
        order, stack = [], [self.root]
        while stack:
            node = stack.pop()
            order.append(node)
            stack.extend(reversed(children.get(node, [])))
        return order

    def ancestors(self, x: Vertex) -> list[Vertex]:
        """x and its ancestors, bottom-up."""
        chain = []
        node: Optional[Vertex] = x
        while node is not None:
            chain.append(node)
            node = self.parent[node]
        return chain

    def is_ancestor(self, a: Vertex, x: Vertex) -> bool:
        """True if `a` is `x` or lies on the path from `x` to the root."""
        node: Optional[Vertex] = x
        while node is not None and self.depth[node] >= self.depth[a]:
            if node == a:
                return True
            node = self.parent[node]
        return False


@dataclass
class TreeDecomposition:
    tree: nx.Graph
    root: Vertex
    bags: dict[Vertex, frozenset[Vertex]]

    @property
    def width(self) -> int:
        return max((len(bag) for bag in self.bags.values()), default=0) - 1

    def rooted(self) -> RootedTree:
        return RootedTree.from_tree(self.tree, self.root)

    def occurrences(self) -> dict[Vertex, list[Vertex]]:
        result: dict[Vertex, list[Vertex]] = defaultdict(list)
        for node in sorted_vertices(self.bags):
            for v in self.bags[node]:
                result[v].append(node)
        return result


@dataclass
class NormalisedTreeDecomposition(TreeDecomposition):
    """Tree-decomposition whose node set is the vertex set of the decomposed graph."""


def verify_tree_decomposition(g: nx.Graph, td: TreeDecomposition) -> Verdict:
    if td.tree.number_of_nodes() == 0 or not nx.is_tree(td.tree):
        return Verdict.reject("tree")
    if td.root not in td.tree:
        return Verdict.reject("root", td.root)
    for node in sorted_vertices(td.tree.nodes):
        if node not in td.bags:
            return Verdict.reject("bags", node)
    for node in sorted_vertices(td.bags):
        if node not in td.tree:
            return Verdict.reject("bags", node)
        for v in sorted_vertices(td.bags[node]):
            if v not in g:
                return Verdict.reject("vertex-set", [node, v])
    occurrences = td.occurrences()
    for v in sorted_vertices(g.nodes):
        if not occurrences.get(v):
            return Verdict.reject("vertex-coverage", v)
    for u, v in sorted_edges(g):
        if not any(v in td.bags[node] for node in occurrences[u]):
            return Verdict.reject("edge-coverage", [u, v])
    for v in sorted_vertices(g.nodes):
        if not nx.is_connected(td.tree.subgraph(occurrences[v])):
            return Verdict.reject("connectivity", v)
    return Verdict.accept(measured=td.width)


def tree_decomposition_from_order(g: nx.Graph, order: Sequence[Vertex]) -> TreeDecomposition:
    """Elimination game: the bag of v is v with its not-yet-eliminated fill neighbours."""
    if not order:
        tree = nx.Graph()
        tree.add_node("0")
        return TreeDecomposition(tree=tree, root="0", bags={"0": frozenset()})
    position = {v: i for i, v in enumerate(order)}
    fill = {v: set(g[v]) for v in g.nodes}
    bags: dict[Vertex, frozenset[Vertex]] = {}
    tree = nx.Graph()
    tree.add_nodes_from(order)
    root = order[-1]
    for v in order:
        later = fill.pop(v)
        bags[v] = frozenset(later | {v})
        for a in later:
            fill[a] |= later - {a}
            fill[a].discard(v)
        if later:
            tree.add_edge(v, min(later, key=position.__getitem__))
        elif v != root:
            tree.add_edge(v, root)
    return TreeDecomposition(tree=tree, root=root, bags=bags)


def check_t1(ntd: TreeDecomposition) -> Verdict:
    """Each vertex x labels the root of the subtree of bags containing x."""
    rooted = ntd.rooted()
    for x, nodes in sorted(ntd.occurrences().items(), key=lambda item: vertex_key(item[0])):
        if x not in ntd.bags or x not in ntd.bags[x]:
            return Verdict.reject("T1", x)
        for node in nodes:
            if not rooted.is_ancestor(x, node):
                return Verdict.reject("T1", [x, node])
    return Verdict.accept(measured=ntd.width)


def check_t2(ntd: TreeDecomposition, h: nx.Graph) -> Verdict:
    """Every edge of h joins a tree-ancestor to a tree-descendant."""
    rooted = ntd.rooted()
    for x, y in sorted_edges(h):
        if not (rooted.is_ancestor(x, y) or rooted.is_ancestor(y, x)):
            return Verdict.reject("T2", [x, y])
    return Verdict.accept(measured=ntd.width)


def normalise(td: TreeDecomposition, h: nx.Graph) -> NormalisedTreeDecomposition:
    """Re-index a tree-decomposition by the vertices of h.

    Each node z of the input contributes a chain of the vertices first seen at z, in sorted
    order. The bag of x in that chain is x, the chain members before it, and the part of
    B_z shared with the parent bag; so it stays inside B_z.
    """
    verdict = verify_tree_decomposition(h, td)
    if not verdict:
        raise PreconditionError(f"Invalid tree-decomposition: {verdict.clause} {verdict.witness}")
    if h.number_of_nodes() == 0:
        raise InputError("Cannot normalise a decomposition of the null graph")
    rooted = td.rooted()
    tree = nx.Graph()
    bags: dict[Vertex, frozenset[Vertex]] = {}
    last_in_chain: dict[Vertex, Optional[Vertex]] = {}
    new_root: Optional[Vertex] = None
    for node in rooted.preorder():
        parent = rooted.parent[node]
        parent_bag = td.bags[parent] if parent is not None else frozenset()
        shared = td.bags[node] & parent_bag
        anchor = last_in_chain[parent] if parent is not None else None
        chain: set[Vertex] = set()
        for x in sorted_vertices(td.bags[node] - parent_bag):
            chain.add(x)
            bags[x] = frozenset(shared | chain)
            tree.add_node(x)
            if anchor is not None:
                tree.add_edge(anchor, x)
            elif new_root is None:
                new_root = x
            else:
                tree.add_edge(new_root, x)
            anchor = x
        last_in_chain[node] = anchor
    assert new_root is not None
    logging.debug(f"Normalised decomposition rooted at {new_root} with width {verdict.measured}")
    return NormalisedTreeDecomposition(tree=tree, root=new_root, bags=bags)


def product_tree_decomposition(td: TreeDecomposition, n: int) -> TreeDecomposition:
    """Decomposition of g ⊠ K_n obtained by blowing every bag up n times."""
    bags = {
        node: frozenset(product_vertex(v, str(i)) for v in bag for i in range(n))
        for node, bag in td.bags.items()
    }
    return TreeDecomposition(tree=td.tree.copy(), root=td.root, bags=bags)


@dataclass
class HLPartition:
    quotient_h: nx.Graph
    quotient_l: nx.Graph
    part_y: dict[Vertex, frozenset[Vertex]]
    part_z: dict[Vertex, frozenset[Vertex]]

    @staticmethod
    def _index(parts: dict[Vertex, frozenset[Vertex]]) -> dict[Vertex, Vertex]:
        return {v: key for key, part in parts.items() for v in part}

    def y_of(self) -> dict[Vertex, Vertex]:
        return self._index(self.part_y)

    def z_of(self) -> dict[Vertex, Vertex]:
        return self._index(self.part_z)

    @property
    def width(self) -> int:
        y_of, z_of = self.y_of(), self.z_of()
        cells = Counter((y_of[v], z_of[v]) for v in y_of if v in z_of)
        return max(cells.values(), default=0)


def _check_parts(
    g: nx.Graph, quotient: nx.Graph, parts: dict[Vertex, frozenset[Vertex]], label: str
) -> Optional[Verdict]:
    owner: dict[Vertex, Vertex] = {}
    for key in sorted_vertices(parts):
        if key not in quotient:
            return Verdict.reject(f"{label}-index", key)
        for v in sorted_vertices(parts[key]):
            if v not in g:
                return Verdict.reject(f"{label}-vertex", [key, v])
            if v in owner:
                return Verdict.reject(f"{label}-partition", [owner[v], key, v])
            owner[v] = key
    for v in sorted_vertices(g.nodes):
        if v not in owner:
            return Verdict.reject(f"{label}-partition", v)
    for u, v in sorted_edges(g):
        a, b = owner[u], owner[v]
        if a != b and not quotient.has_edge(a, b):
            return Verdict.reject(f"{label}-edge", [u, v])
    return None


def verify_hl_partition(g: nx.Graph, p: HLPartition) -> Verdict:
    for quotient, parts, label in (
        (p.quotient_h, p.part_y, "H"),
        (p.quotient_l, p.part_z, "L"),
    ):
        rejection = _check_parts(g, quotient, parts, label)
        if rejection is not None:
            return rejection
    return Verdict.accept(measured=p.width)


def partition_from_embedding(
    guest: nx.Graph, w: EmbeddingWitness, h: nx.Graph, layers: nx.Graph, ell: int
) -> HLPartition:
    """Read the (H,L)-partition off an embedding into H ⊠ L ⊠ K_ell."""
    verdict = verify_embedding(guest, w)
    if not verdict:
        raise PreconditionError(f"Invalid embedding: {verdict.clause} {verdict.witness}")
    part_y: dict[Vertex, set[Vertex]] = {y: set() for y in h.nodes}
    part_z: dict[Vertex, set[Vertex]] = {z: set() for z in layers.nodes}
    for v, image in w.injection.items():
        if v not in guest:
            continue
        y, z, i = split_vertex(image, 3)
        if y not in part_y or z not in part_z or not 0 <= int(i) < ell:
            raise PreconditionError(f"Image {image!r} of {v!r} is not a vertex of H ⊠ L ⊠ K_{ell}")
        part_y[y].add(v)
        part_z[z].add(v)
    partition = HLPartition(
        quotient_h=h,
        quotient_l=layers,
        part_y={y: frozenset(part) for y, part in part_y.items()},
        part_z={z: frozenset(part) for z, part in part_z.items()},
    )
    verdict = verify_hl_partition(guest, partition)
    if not verdict:
        raise PreconditionError(f"Host is not H ⊠ L ⊠ K_{ell}: {verdict.clause} {verdict.witness}")
    return partition


def embedding_from_partition(g: nx.Graph, p: HLPartition) -> EmbeddingWitness:
    verdict = verify_hl_partition(g, p)
    if not verdict:
        raise PreconditionError(f"Invalid partition: {verdict.clause} {verdict.witness}")
    y_of, z_of = p.y_of(), p.z_of()
    cells: dict[tuple[Vertex, Vertex], list[Vertex]] = defaultdict(list)
    for v in sorted_vertices(g.nodes):
        cells[(y_of[v], z_of[v])].append(v)
    injection = {
        v: product_vertex(y, z, str(i))
        for (y, z), members in cells.items()
        for i, v in enumerate(members)
    }
    host = strong_product3(p.quotient_h, p.quotient_l, max(p.width, 1))
    return EmbeddingWitness(host=host, injection=injection)


@dataclass
class LayeredTreeDecomposition:
    layering: list[frozenset[Vertex]]
    td: TreeDecomposition

    @property
    def layered_width(self) -> int:
        return max(
            (len(layer & bag) for layer in self.layering for bag in self.td.bags.values()),
            default=0,
        )


def verify_layered_td(g: nx.Graph, ltd: LayeredTreeDecomposition) -> Verdict:
    layer_of: dict[Vertex, int] = {}
    for i, layer in enumerate(ltd.layering):
        for v in sorted_vertices(layer):
            if v not in g or v in layer_of:
                return Verdict.reject("layering-partition", v)
            layer_of[v] = i
    for v in sorted_vertices(g.nodes):
        if v not in layer_of:
            return Verdict.reject("layering-partition", v)
    for u, v in sorted_edges(g):
        if abs(layer_of[u] - layer_of[v]) > 1:
            return Verdict.reject("layering-edge", [u, v])
    verdict = verify_tree_decomposition(g, ltd.td)
    if not verdict:
        return verdict
    return Verdict.accept(measured=ltd.layered_width)


def bfs_layering(g: nx.Graph, sources: Iterable[Vertex] = ()) -> list[frozenset[Vertex]]:
    """BFS layering, one BFS per component, started at the given or smallest vertex."""
    distance: dict[Vertex, int] = {}
    starts = list(sources) + sorted_vertices(g.nodes)
    for start in starts:
        if start in distance:
            continue
        distance.update(nx.single_source_shortest_path_length(g, start))
    layers: dict[int, set[Vertex]] = defaultdict(set)
    for v, d in distance.items():
        layers[d].add(v)
    return [frozenset(layers[d]) for d in range(len(layers))]
