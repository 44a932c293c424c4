import networkx as nx
import pytest

from product_structure_checker.decompositions import (
    HLPartition,
    LayeredTreeDecomposition,
    TreeDecomposition,
    bfs_layering,
    check_t1,
    check_t2,
    embedding_from_partition,
    normalise,
    partition_from_embedding,
    product_tree_decomposition,
    tree_decomposition_from_order,
    verify_hl_partition,
    verify_layered_td,
    verify_tree_decomposition,
)
from product_structure_checker.errors import PreconditionError
from product_structure_checker.graphs import make_graph
from product_structure_checker.products import (
    EmbeddingWitness,
    complete_graph,
    cycle,
    grid,
    path,
    strong_product,
    strong_product3,
    verify_embedding,
)


def star_decomposition(bags: dict[str, set[str]], root: str) -> TreeDecomposition:
    tree = nx.Graph()
    tree.add_nodes_from(bags)
    tree.add_edges_from((root, node) for node in bags if node != root)
    return TreeDecomposition(tree=tree, root=root, bags={k: frozenset(v) for k, v in bags.items()})


@pytest.mark.parametrize(
    "g,width",
    [(path(6), 1), (cycle(6), 2), (complete_graph(5), 4), (grid(3, 3), 3)],
)
def test_decomposition_from_order(g, width):
    td = tree_decomposition_from_order(g, sorted(g.nodes))
    verdict = verify_tree_decomposition(g, td)
    assert verdict
    assert td.width >= width


def test_empty_order_gives_single_empty_bag():
    td = tree_decomposition_from_order(nx.Graph(), [])
    assert verify_tree_decomposition(nx.Graph(), td)
    assert td.width == -1


@pytest.mark.parametrize(
    "tree_edges,bags,clause",
    [
        ([("a", "b")], {"a": {"0", "1"}, "b": {"1"}}, "vertex-coverage"),
        ([("a", "b")], {"a": {"0", "1"}, "b": {"2"}}, "edge-coverage"),
        (
            [("a", "b"), ("b", "c")],
            {"a": {"0", "1"}, "b": {"2"}, "c": {"1", "2"}},
            "connectivity",
        ),
        ([("a", "b")], {"a": {"0", "1", "9"}, "b": {"1", "2"}}, "vertex-set"),
        (
            [("a", "b"), ("b", "c"), ("c", "a")],
            {"a": {"0", "1"}, "b": {"1", "2"}, "c": set()},
            "tree",
        ),
    ],
)
def test_tree_decomposition_rejections(tree_edges, bags, clause):
    td = TreeDecomposition(
        tree=nx.Graph(tree_edges), root="a", bags={k: frozenset(v) for k, v in bags.items()}
    )
    verdict = verify_tree_decomposition(path(3), td)
    assert not verdict
    assert verdict.clause == clause


def test_normalise_satisfies_both_conditions():
    g = grid(3, 4)
    td = tree_decomposition_from_order(g, sorted(g.nodes))
    ntd = normalise(td, g)
    assert set(ntd.tree.nodes) == set(g.nodes)
    assert verify_tree_decomposition(g, ntd)
    assert ntd.width <= td.width
    assert check_t1(ntd)
    assert check_t2(ntd, g)


def test_normalise_rejects_invalid_decomposition():
    g = path(3)
    with pytest.raises(PreconditionError):
        normalise(star_decomposition({"a": {"0", "1"}}, "a"), g)


def test_product_decomposition():
    g = cycle(5)
    td = tree_decomposition_from_order(g, sorted(g.nodes))
    blown = product_tree_decomposition(td, 3)
    assert verify_tree_decomposition(strong_product(g, complete_graph(3)), blown)
    assert blown.width == 3 * (td.width + 1) - 1


def test_partition_round_trip_through_embedding():
    h, layers = path(2), path(3)
    host = strong_product3(h, layers, 2)
    g = host.subgraph(["0|0|0", "0|0|1", "1|1|0", "1|2|1"]).copy()
    witness = EmbeddingWitness(host=host, injection={v: v for v in g.nodes})
    partition = partition_from_embedding(g, witness, h, layers, 2)
    assert verify_hl_partition(g, partition).measured == 2
    assert partition.part_y["0"] == {"0|0|0", "0|0|1"}
    back = embedding_from_partition(g, partition)
    assert verify_embedding(g, back)


def test_partition_rejects_edges_outside_quotients():
    g = path(3)
    partition = HLPartition(
        quotient_h=make_graph(["a", "b"], []),
        quotient_l=make_graph(["z"], []),
        part_y={"a": frozenset({"0", "2"}), "b": frozenset({"1"})},
        part_z={"z": frozenset({"0", "1", "2"})},
    )
    verdict = verify_hl_partition(g, partition)
    assert verdict.clause == "H-edge"


def test_bfs_layering_and_layered_width():
    g = grid(3, 3)
    layering = bfs_layering(g, ["0,0"])
    assert [len(layer) for layer in layering] == [1, 2, 3, 2, 1]
    td = tree_decomposition_from_order(g, sorted(g.nodes))
    verdict = verify_layered_td(g, LayeredTreeDecomposition(layering, td))
    assert verdict
    assert verdict.measured <= td.width + 1


def test_layering_must_keep_edges_between_adjacent_layers():
    g = path(3)
    layering = [frozenset({"0"}), frozenset({"1"}), frozenset(), frozenset({"2"})]
    td = tree_decomposition_from_order(g, sorted(g.nodes))
    verdict = verify_layered_td(g, LayeredTreeDecomposition(layering, td))
    assert verdict.clause == "layering-edge"
