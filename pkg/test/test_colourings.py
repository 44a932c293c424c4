import random

import pytest

from product_structure_checker.colourings import (
    Colouring,
    VertexOrder,
    col_of_order,
    col_shallow_order,
    exact_col,
    leftmost_order,
    reach_set,
    shallow_product_col_claim,
    strong_product_col_claim,
    treewidth_col_claim,
    verify_nonrepetitive,
    verify_p_centred,
)
from product_structure_checker.enums import ReachMode
from product_structure_checker.errors import InputError, PreconditionError, ResourceError
from product_structure_checker.generators import (
    random_connected_graph,
    random_graph,
    random_order,
    random_shallow_model,
)
from product_structure_checker.graphs import degeneracy, make_graph
from product_structure_checker.minors import contraction_model
from product_structure_checker.products import complete_graph, cycle, path

NATURAL = VertexOrder(["0", "1", "2", "3"])


def colouring(*colours) -> Colouring:
    return Colouring({str(i): c for i, c in enumerate(colours)})


def test_strong_reach_set_on_path():
    assert reach_set(path(3), VertexOrder(["0", "1", "2"]), "2", 1) == {"1", "2"}


def test_weak_reach_passes_through_later_vertices():
    star = make_graph(range(4), [(0, 1), (0, 2), (0, 3)])
    centre_last = VertexOrder(["1", "2", "3", "0"])
    assert reach_set(star, centre_last, "0", 1) == {"0", "1", "2", "3"}
    centre_first = VertexOrder(["0", "1", "2", "3"])
    assert reach_set(star, centre_first, "3", 2, ReachMode.WEAK) == {"0", "3"}


def test_weak_colouring_number_of_path_grows_with_radius():
    assert col_of_order(path(4), NATURAL, 1, ReachMode.WEAK) == 2
    assert col_of_order(path(4), NATURAL, 3, ReachMode.WEAK) == 4


def test_invalid_reach_arguments():
    with pytest.raises(InputError):
        reach_set(path(3), VertexOrder(["0", "1", "2"]), "2", 0)
    with pytest.raises(InputError):
        col_of_order(path(3), VertexOrder(["0", "1"]), 1)


@pytest.mark.parametrize(
    "g,s,expected",
    [(path(5), 1, 2), (cycle(5), 1, 3), (complete_graph(4), 3, 4), (path(1), 2, 1)],
)
def test_exact_col(g, s, expected):
    value, order = exact_col(g, s)
    assert value == expected
    assert col_of_order(g, order, s) == expected


@pytest.mark.parametrize("seed", range(10))
def test_first_colouring_number_is_degeneracy_plus_one(seed):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(1, 7), 0.5)
    assert exact_col(g, 1)[0] == degeneracy(g) + 1


def test_exact_col_limit():
    with pytest.raises(ResourceError):
        exact_col(complete_graph(9), 1, limit=8)


def test_leftmost_order_and_transfer_on_contracted_path():
    model = contraction_model(path(4), {"a": {"0", "1"}, "b": {"2", "3"}})
    assert leftmost_order(model, NATURAL).order == ["a", "b"]
    strong = col_shallow_order(model, NATURAL, 1)
    assert strong.claim.name == "strong-col-shallow"
    assert (strong.claim.bound, strong.claim.measured) == (2, 2)
    assert strong.claim.parameters == {"r": 1, "s": 1, "host_s": 5}
    weak = col_shallow_order(model, NATURAL, 1, ReachMode.WEAK)
    assert (weak.claim.bound, weak.claim.measured) == (4, 2)


def test_transfer_needs_full_host_order():
    model = contraction_model(path(4), {"a": {"0", "1"}, "b": {"2", "3"}})
    with pytest.raises(InputError):
        col_shallow_order(model, VertexOrder(["0", "1"]), 1)


@pytest.mark.parametrize("seed", range(10))
def test_transfer_on_random_models(seed):
    rng = random.Random(seed)
    host = random_connected_graph(rng, rng.randint(2, 9), 0.3)
    model = random_shallow_model(rng, host, rng.randint(0, 1))
    host_order = VertexOrder(random_order(rng, host))
    for mode in ReachMode:
        assert col_shallow_order(model, host_order, rng.randint(1, 2), mode).claim.holds


def test_strong_product_col_claim():
    claim = strong_product_col_claim(path(2), path(2), 1)
    assert (claim.bound, claim.measured) == (4, 4)
    assert claim.parameters == {"s": 1, "scol": 2, "spread": 2, "exact": 1}


def test_strong_product_col_claim_uses_product_order_beyond_limit():
    claim = strong_product_col_claim(path(3), path(3), 1, limit=8)
    assert claim.parameters["exact"] == 0
    assert claim.holds


def test_treewidth_col_claim():
    claim = treewidth_col_claim(cycle(5), 1)
    assert (claim.bound, claim.measured) == (3, 3)


def test_shallow_product_col_claim_needs_product_host():
    model = contraction_model(path(4), {"a": {"0", "1"}, "b": {"2", "3"}})
    with pytest.raises(PreconditionError):
        shallow_product_col_claim(model, path(2), 2, 1)


def test_ruler_colouring_is_nonrepetitive_and_centred():
    g, c = path(7), colouring(1, 2, 1, 3, 1, 2, 1)
    assert verify_nonrepetitive(g, c, 3).measured == 3
    for p in range(1, 4):
        assert verify_p_centred(g, c, p)


@pytest.mark.parametrize(
    "g,c,h",
    [(path(4), colouring(0, 1, 0, 1), 2), (path(2), colouring(5, 5), 1)],
)
def test_repetitions(g, c, h):
    verdict = verify_nonrepetitive(g, c, 2)
    assert verdict.clause == "repetition"
    assert verdict.measured == h


def test_colourings_must_cover_graph():
    assert verify_nonrepetitive(path(3), colouring(0, 1), 1).clause == "colouring"
    assert verify_p_centred(path(3), colouring(0, 1), 1).clause == "colouring"


def test_p_centred_rejections():
    verdict = verify_p_centred(path(4), colouring(0, 1, 1, 0), 2)
    assert verdict.clause == "centred"
    assert verdict.witness == ["1", "2"]
    assert verify_p_centred(path(3), colouring(0, 1, 0), 2)


def test_p_centred_limit():
    with pytest.raises(ResourceError):
        verify_p_centred(path(13), colouring(*range(13)), 1)
