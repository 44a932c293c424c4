"""Quotient engine: from an (H,L)-partition of G and a shallow model of G′ in G to a
(J, L^(2r+1))-partition of G′ with a tree-decomposition of J, and the product embeddings
derived from it.
"""
import logging
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import comb

import networkx as nx

from .decompositions import (
    HLPartition,
    TreeDecomposition,
    check_t1,
    check_t2,
    embedding_from_partition,
    partition_from_embedding,
    product_tree_decomposition,
    verify_hl_partition,
    verify_tree_decomposition,
)
from .errors import ConstructionError, InternalConsistencyError, PreconditionError
from .graphs import (
    Vertex,
    max_degree,
    power_or_edgeless,
    same_graph,
    sorted_edges,
    sorted_vertices,
    vertex_key,
)
from .minors import MinorModel, verify_model
from .products import (
    EmbeddingWitness,
    compose,
    path_order,
    product_vertex,
    split_vertex,
    strong_product3,
    verify_embedding,
)
from .schema import Claim

DISCREPANCY_NOTE = (
    "closing argument states width (2r+1)(k+1) and treewidth C(2r+t,t)-1; "
    "asserted bounds are l(k+1) and C(2r+1+t,t)-1"
)


@lru_cache(maxsize=None)
def _report_discrepancy():
    logging.warning(f"Engine bounds: {DISCREPANCY_NOTE}")


@dataclass
class EngineInput:
    g: nx.Graph
    partition: HLPartition
    h_td: TreeDecomposition
    model: MinorModel
    r: int

    @cached_property
    def k(self) -> int:
        """Maximum degree of L^r, zero when r is zero."""
        return max_degree(power_or_edgeless(self.partition.quotient_l, self.r))

    @cached_property
    def t(self) -> int:
        return self.h_td.width

    @cached_property
    def ell(self) -> int:
        return self.partition.width

    def validate(self):
        if self.r < 0:
            raise PreconditionError(f"Depth must be non-negative, got {self.r}")
        for verdict, what in (
            (verify_hl_partition(self.g, self.partition), "partition"),
            (verify_tree_decomposition(self.partition.quotient_h, self.h_td), "tree-decomposition"),
            (check_t1(self.h_td), "normalised tree-decomposition"),
            (check_t2(self.h_td, self.partition.quotient_h), "normalised tree-decomposition"),
            (verify_model(self.model, self.r), "model"),
        ):
            if not verdict:
                raise PreconditionError(f"Invalid {what}: {verdict.clause} {verdict.witness}")
        if set(self.h_td.tree.nodes) != set(self.partition.quotient_h.nodes):
            raise PreconditionError("Normalised decomposition must be indexed by V(H)")
        if not same_graph(self.model.host, self.g):
            raise PreconditionError("Model host differs from the partitioned graph")


@dataclass
class EngineOutput:
    j: nx.Graph
    s_partition: dict[Vertex, frozenset[Vertex]]
    j_td: TreeDecomposition
    l_prime_partition: HLPartition
    claims: list[Claim] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)


def anchor(inp: EngineInput, u: Vertex) -> Vertex:
    """The shallowest tree node whose part meets branch(u); an ancestor of all such nodes."""
    y_of = inp.partition.y_of()
    rooted = inp.h_td.rooted()
    touched = {y_of[x] for x in inp.model.branch[u]}
    a = min(touched, key=lambda x: (rooted.depth[x], vertex_key(x)))
    for x in sorted_vertices(touched):
        if not rooted.is_ancestor(a, x):
            raise InternalConsistencyError(
                f"Parts touched by branch({u}) have no common ancestor among them ({a}, {x})"
            )
    return a


def _bags(inp: EngineInput, j: nx.Graph) -> dict[Vertex, set[Vertex]]:
    rooted = inp.h_td.rooted()
    bags: dict[Vertex, set[Vertex]] = {x: ({x} & set(j.nodes)) for x in rooted.parent}
    for a, d in sorted_edges(j):
        if rooted.is_ancestor(d, a):
            a, d = d, a
        x = d
        while x != a:
            bags[x].add(a)
            x = rooted.parent[x]
    return bags


def quotient_engine(inp: EngineInput) -> EngineOutput:
    inp.validate()
    r, k, t, ell = inp.r, inp.k, inp.t, inp.ell
    guest = inp.model.guest
    rooted = inp.h_td.rooted()
    anchors = {u: anchor(inp, u) for u in sorted_vertices(guest.nodes)}

    members: dict[Vertex, set[Vertex]] = {}
    for u, x in anchors.items():
        members.setdefault(x, set()).add(u)
    s_partition = {x: frozenset(part) for x, part in members.items()}

    j = nx.Graph()
    j.add_nodes_from(s_partition)
    for u, v in sorted_edges(guest):
        a, b = anchors[u], anchors[v]
        if a == b:
            continue
        if not (rooted.is_ancestor(a, b) or rooted.is_ancestor(b, a)):
            raise ConstructionError(f"J-edge {a}-{b} joins unrelated tree nodes", claim="3")
        j.add_edge(a, b)

    bags = _bags(inp, j)
    j_td = TreeDecomposition(
        tree=inp.h_td.tree.copy(),
        root=inp.h_td.root,
        bags={x: frozenset(bag) for x, bag in bags.items()},
    )
    verdict = verify_tree_decomposition(j, j_td)
    if not verdict:
        raise ConstructionError(f"{verdict.clause} {verdict.witness}", claim="tree-decomposition")
    bag_bound = comb(2 * r + 1 + t, t)
    largest_bag = max((len(bag) for bag in j_td.bags.values()), default=0)
    if largest_bag > bag_bound:
        raise ConstructionError(f"bag of size {largest_bag} exceeds {bag_bound}", claim="4")

    z_of = inp.partition.z_of()
    layers = power_or_edgeless(inp.partition.quotient_l, 2 * r + 1)
    part_z: dict[Vertex, set[Vertex]] = {z: set() for z in layers.nodes}
    for u in guest.nodes:
        part_z[z_of[inp.model.centre[u]]].add(u)
    l_prime = HLPartition(
        quotient_h=j,
        quotient_l=layers,
        part_y=s_partition,
        part_z={z: frozenset(part) for z, part in part_z.items()},
    )
    verdict = verify_hl_partition(guest, l_prime)
    if not verdict:
        raise ConstructionError(f"{verdict.clause} {verdict.witness}", claim="partition")
    width_bound = ell * (k + 1)
    if l_prime.width > width_bound:
        raise ConstructionError(f"width {l_prime.width} exceeds {width_bound}", claim="2")

    _report_discrepancy()
    parameters = {"r": r, "t": t, "l": ell, "k": k}
    return EngineOutput(
        j=j,
        s_partition=s_partition,
        j_td=j_td,
        l_prime_partition=l_prime,
        claims=[
            Claim("partition-width", width_bound, l_prime.width, parameters=parameters),
            Claim("bag-size", bag_bound, largest_bag, parameters=parameters),
        ],
        notes=[DISCREPANCY_NOTE],
    )


@dataclass
class ShallowProductResult:
    witness: EmbeddingWitness
    j_td: TreeDecomposition
    host_td: TreeDecomposition
    claims: list[Claim]
    engine: EngineOutput


def gpst_shallow(
    model: MinorModel,
    h: nx.Graph,
    p: nx.Graph,
    ell: int,
    h_td: TreeDecomposition,
    r: int,
) -> ShallowProductResult:
    """Embed G′ into J ⊠ P ⊠ K_(ℓ(2r+1)²) given an r-shallow model of G′ in H ⊠ P ⊠ K_ℓ.

    The layer graph P must be `path(n)`; layers of P^(2r+1) are packed into blocks of 2r+1
    consecutive layers, the clique coordinate recording the offset inside the block.
    """
    order = path_order(p)
    host = strong_product3(h, p, ell)
    if not same_graph(model.host, host):
        raise PreconditionError("Model host is not H ⊠ P ⊠ K_ell")
    identity = EmbeddingWitness(host=host, injection={v: v for v in host.nodes})
    partition = partition_from_embedding(host, identity, h, p, ell)
    output = quotient_engine(EngineInput(g=host, partition=partition, h_td=h_td, model=model, r=r))

    block = 2 * r + 1
    cell_width = max(output.l_prime_partition.width, 1)
    stage = embedding_from_partition(model.guest, output.l_prime_partition)
    clique = cell_width * block
    layered = strong_product3(output.j, p.subgraph(order[: -(-len(order) // block)]).copy(), clique)
    blocks = {}
    for image in stage.host.nodes:
        x, z, i = split_vertex(image, 3)
        position = int(z)
        blocks[image] = product_vertex(
            x, str(position // block), str((position % block) * cell_width + int(i))
        )
    witness = EmbeddingWitness(host=layered, injection=compose(stage.injection, blocks))
    verdict = verify_embedding(model.guest, witness)
    if not verdict:
        raise ConstructionError(f"{verdict.clause} {verdict.witness}", claim="embedding")

    t = h_td.width
    full_clique = ell * block * block
    rtw_bound = full_clique * comb(block + t, t) - 1
    host_td = product_tree_decomposition(output.j_td, clique)
    claims = output.claims + [
        Claim("j-treewidth", comb(block + t, t) - 1, output.j_td.width, parameters={"t": t}),
        Claim("clique-size", full_clique, clique, parameters={"l": ell, "r": r}),
        Claim(
            "row-treewidth",
            rtw_bound,
            host_td.width,
            parameters={"l": ell, "r": r, "t": t},
        ),
    ]
    return ShallowProductResult(
        witness=witness, j_td=output.j_td, host_td=host_td, claims=claims, engine=output
    )
