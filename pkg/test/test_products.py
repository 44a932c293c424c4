import pytest

from product_structure_checker.errors import InputError
from product_structure_checker.graphs import graph_power, make_graph
from product_structure_checker.products import (
    EmbeddingWitness,
    complete_graph,
    edgeless,
    grid,
    lex_product,
    path,
    path_order,
    path_power_embedding,
    product_vertex,
    split_vertex,
    strong_product,
    strong_product3,
    verify_embedding,
)


def test_strong_product_of_edges_is_k4():
    product = strong_product(path(2), path(2))
    assert set(product.nodes) == {"0|0", "0|1", "1|0", "1|1"}
    assert product.number_of_edges() == 6


def test_lex_product_with_edgeless_rows():
    product = lex_product(path(2), edgeless(3))
    assert product.number_of_nodes() == 6
    assert product.number_of_edges() == 9
    assert not product.has_edge("0|0", "0|1")


def test_strong_product3_ids():
    product = strong_product3(path(2), path(3), 2)
    assert product.number_of_nodes() == 12
    assert split_vertex("0|2|1", 3) == ("0", "2", "1")
    assert product.has_edge("0|0|0", "1|1|1")
    assert not product.has_edge("0|0|0", "1|2|1")


def test_split_keeps_separators_on_the_left():
    assert split_vertex(product_vertex("a|b", "c")) == ("a|b", "c")
    with pytest.raises(InputError):
        split_vertex("plain")


def test_right_factor_must_not_use_separator():
    with pytest.raises(InputError):
        strong_product(path(2), make_graph(["x|y"], []))


def test_grid_ids():
    g = grid(2, 3)
    assert g.number_of_nodes() == 6
    assert g.has_edge("2,1", "2,0")


def test_path_order():
    assert path_order(path(4)) == ["0", "1", "2", "3"]
    with pytest.raises(InputError):
        path_order(complete_graph(3))


@pytest.mark.parametrize("m,r", [(1, 0), (7, 1), (10, 2), (5, 3)])
def test_path_power_embedding(m, r):
    witness = path_power_embedding(m, r)
    assert verify_embedding(graph_power(path(m), 2 * r + 1), witness)


def test_verify_embedding_rejections():
    host = complete_graph(2)
    guest = path(3)
    verdict = verify_embedding(guest, EmbeddingWitness(host, {"0": "0", "1": "1"}))
    assert verdict.clause == "coverage"
    verdict = verify_embedding(guest, EmbeddingWitness(host, {"0": "0", "1": "1", "2": "0"}))
    assert verdict.clause == "injectivity"
    verdict = verify_embedding(path(2), EmbeddingWitness(edgeless(2), {"0": "0", "1": "1"}))
    assert verdict.clause == "edge"
    verdict = verify_embedding(path(1), EmbeddingWitness(host, {"0": "9"}))
    assert verdict.clause == "host-vertex"
