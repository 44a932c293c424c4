import random

import networkx as nx
import pytest

from product_structure_checker.decompositions import verify_hl_partition, verify_tree_decomposition
from product_structure_checker.generators import (
    random_bundles,
    random_clique_lift,
    random_clusters,
    random_connected_graph,
    random_curves,
    random_drawing,
    random_engine_input,
    random_partial_ktree,
    random_shallow_model,
    random_shortcut_system,
)
from product_structure_checker.graphs import same_graph
from product_structure_checker.minors import verify_model

SEEDS = range(10)


@pytest.mark.parametrize("seed", SEEDS)
def test_same_seed_same_instance(seed):
    first = random_drawing(random.Random(seed), 8, 0.5, 6)
    second = random_drawing(random.Random(seed), 8, 0.5, 6)
    assert same_graph(first.base, second.base)
    assert first.crossings == second.crossings


@pytest.mark.parametrize("seed", SEEDS)
def test_random_connected_graph(seed):
    rng = random.Random(seed)
    g = random_connected_graph(rng, rng.randint(1, 12), 0.1)
    assert nx.is_connected(g)


@pytest.mark.parametrize("seed", SEEDS)
def test_random_partial_ktree(seed):
    rng = random.Random(seed)
    t = rng.randint(1, 3)
    base = random_partial_ktree(rng, rng.randint(1, 10), t)
    assert verify_tree_decomposition(base.graph, base.td)
    assert base.td.width <= t


@pytest.mark.parametrize("seed", SEEDS)
def test_random_shallow_model(seed):
    rng = random.Random(seed)
    r = rng.randint(0, 2)
    model = random_shallow_model(rng, random_connected_graph(rng, rng.randint(1, 12), 0.2), r)
    assert verify_model(model, r)


@pytest.mark.parametrize("seed", SEEDS)
def test_random_drawing(seed):
    rng = random.Random(seed)
    e = random_drawing(rng, rng.randint(2, 10), 0.5, rng.randint(0, 10), max_per_edge=2)
    e.validate()
    assert max(e.crossing_count().values(), default=0) <= 2
    assert all(not set(c.a) & set(c.b) for c in e.crossings)


@pytest.mark.parametrize("seed", SEEDS)
def test_random_structures_are_valid(seed):
    rng = random.Random(seed)
    random_shortcut_system(rng, rng.randint(2, 10), 3, 2).validate()
    random_clique_lift(rng, rng.randint(1, 8), 2).validate()
    random_clusters(rng, rng.randint(1, 8), 3).validate()
    random_bundles(rng, rng.randint(2, 8), 2, 5).validate(2)
    curves = random_curves(rng, rng.randint(2, 8), 3, 10)
    assert max(map(len, curves.values())) <= 3


@pytest.mark.parametrize("seed", SEEDS)
def test_random_engine_input(seed):
    inp = random_engine_input(random.Random(seed), max_vertices=12)
    assert inp.g.number_of_nodes() <= 12
    assert verify_hl_partition(inp.g, inp.partition)
    assert verify_model(inp.model, inp.r)
    assert same_graph(inp.model.host, inp.g)
