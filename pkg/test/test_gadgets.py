import random

import pytest

from product_structure_checker.errors import InputError, PreconditionError
from product_structure_checker.gadgets import (
    Bundle,
    BundleStructure,
    ClusterStructure,
    cluster_embed,
    fanbundle_model,
    ic_planar_clusters,
    intersection_graph,
    kplanar_model,
    shortcut_gap_charging,
    string_model,
)
from product_structure_checker.generators import (
    random_bundles,
    random_curves,
    random_drawing,
    random_ic_planar,
    random_shortcut_system,
)
from product_structure_checker.graphs import make_graph, same_graph
from product_structure_checker.minors import ShortcutSystem, apply_shortcuts, verify_model
from product_structure_checker.planarise import Crossing, EmbeddedGraph, verify_gap_charging
from product_structure_checker.products import complete_graph, path, verify_embedding


def test_kplanar_model_of_crossed_k4():
    e = EmbeddedGraph(
        base=complete_graph(4), crossings=[Crossing(("0", "2"), ("1", "3"), 0, 0)], simple=True
    )
    model = kplanar_model(e, 1)
    assert same_graph(model.guest, e.base)
    assert model.topological
    assert verify_model(model, 1)
    assert model.paths[("0", "2")] == ("0|0", "#0|0", "2|0")
    assert model.paths[("1", "3")] == ("1|0", "#0|1", "3|0")


def test_kplanar_rejects_overcrossed_edges():
    e = EmbeddedGraph(
        base=complete_graph(4), crossings=[Crossing(("0", "2"), ("1", "3"), 0, 0)], simple=True
    )
    with pytest.raises(PreconditionError):
        kplanar_model(e, 0)


@pytest.mark.parametrize("seed", range(12))
def test_random_kplanar_models(seed):
    rng = random.Random(seed)
    k = rng.randint(1, 4)
    e = random_drawing(rng, rng.randint(3, 9), 0.5, rng.randint(0, 10), max_per_edge=k)
    model = kplanar_model(e, k)
    assert same_graph(model.guest, e.base)
    assert verify_model(model, -(-k // 2))


def test_string_model_of_crossing_curves():
    curves = {"a": ["x", "y"], "b": ["x"], "c": ["y", "z"], "d": ["z"], "e": []}
    model = string_model(curves, 2)
    expected = make_graph("abcde", [("a", "b"), ("a", "c"), ("c", "d")])
    assert same_graph(model.guest, expected)
    assert verify_model(model, 1)


@pytest.mark.parametrize(
    "curves,error",
    [
        ({"a": ["x", "x"], "b": ["x"]}, InputError),
        ({"a": ["x"], "b": ["x"], "c": ["x"]}, PreconditionError),
        ({"a": ["x"]}, InputError),
        ({"a": ["x", "y", "z"], "b": ["x", "y", "z"]}, PreconditionError),
    ],
)
def test_invalid_curves(curves, error):
    with pytest.raises(error):
        string_model(curves, 2)


@pytest.mark.parametrize("seed", range(12))
def test_random_string_models(seed):
    rng = random.Random(seed)
    delta = rng.randint(1, 5)
    curves = random_curves(rng, rng.randint(2, 8), delta, rng.randint(0, 14))
    model = string_model(curves, delta)
    assert same_graph(model.guest, intersection_graph(curves))
    assert verify_model(model, delta // 2)


def test_cluster_embedding():
    g = make_graph(range(5), [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
    clusters = {"A": frozenset({"0", "1"}), "B": frozenset({"2", "3", "4"})}
    c = ClusterStructure(g=g, clusters=clusters, k=3)
    witness = cluster_embed(c)
    assert verify_embedding(g, witness)
    assert witness.injection["0"] == "A|0"


@pytest.mark.parametrize(
    "clusters,k,error",
    [
        ({"A": {"0", "1", "2"}}, 2, PreconditionError),
        ({"A": {"0", "1"}}, 2, InputError),
        ({"A": {"0", "1"}, "B": {"1", "2"}}, 2, InputError),
    ],
)
def test_invalid_clusters(clusters, k, error):
    c = ClusterStructure(
        g=path(3), clusters={name: frozenset(part) for name, part in clusters.items()}, k=k
    )
    with pytest.raises(error):
        c.validate()


def test_given_cluster_adjacency_must_cover_edges():
    c = ClusterStructure(
        g=path(2),
        clusters={"A": frozenset({"0"}), "B": frozenset({"1"})},
        k=1,
        adjacency=make_graph(["A", "B"], []),
    )
    with pytest.raises(PreconditionError):
        c.validate()


@pytest.mark.parametrize("seed", range(12))
def test_ic_planar_clusters(seed):
    rng = random.Random(seed)
    e = random_ic_planar(rng, rng.randint(4, 9), rng.randint(0, 2))
    c = ic_planar_clusters(e)
    assert max(len(part) for part in c.clusters.values()) <= 4
    assert verify_embedding(e.base, cluster_embed(c))


def test_ic_planar_needs_independent_crossings():
    base = make_graph(range(5), [(0, 1), (2, 3), (0, 4)])
    e = EmbeddedGraph(
        base=base,
        crossings=[Crossing(("0", "1"), ("2", "3"), 0, 0), Crossing(("2", "3"), ("0", "4"), 1, 0)],
    )
    with pytest.raises(PreconditionError):
        ic_planar_clusters(e)


def test_fanbundle_model_with_one_crossing():
    bundles = {"b0": Bundle("0"), "b1": Bundle("1"), "b2": Bundle("2"), "b3": Bundle("3")}
    structure = BundleStructure(
        vertices=["0", "1", "2", "3"],
        bundles=bundles,
        edge_bundles={("0", "1"): ("b0", "b1"), ("2", "3"): ("b2", "b3")},
        crossings=[("b0", "b2", 0, 0)],
    )
    model = fanbundle_model(structure, 1)
    assert same_graph(model.guest, structure.graph())
    assert verify_model(model, 2)


def test_fanbundle_rejects_crossings_at_one_origin():
    structure = BundleStructure(
        vertices=["0", "1"],
        bundles={"a": Bundle("0"), "b": Bundle("0"), "c": Bundle("1")},
        edge_bundles={("0", "1"): ("a", "c")},
        crossings=[("a", "b", 0, 0)],
    )
    with pytest.raises(PreconditionError):
        fanbundle_model(structure, 1)


@pytest.mark.parametrize("seed", range(12))
def test_random_fanbundle_models(seed):
    rng = random.Random(seed)
    k = rng.randint(0, 3)
    b = random_bundles(rng, rng.randint(2, 8), k, rng.randint(0, 8))
    model = fanbundle_model(b, k)
    assert same_graph(model.guest, b.graph())
    assert verify_model(model, k + 1)


def test_shortcut_gap_charging_of_path():
    system = ShortcutSystem(base=path(5), paths=[("0", "1", "2", "3")], k=3, d=1)
    drawing, charging = shortcut_gap_charging(system)
    assert same_graph(drawing.base, apply_shortcuts(system))
    assert charging.k == 2
    assert verify_gap_charging(drawing, charging)


@pytest.mark.parametrize("seed", range(12))
def test_random_shortcut_charging(seed):
    rng = random.Random(seed)
    k, d = rng.randint(1, 4), rng.randint(1, 3)
    system = random_shortcut_system(rng, rng.randint(2, 9), k, d)
    drawing, charging = shortcut_gap_charging(system)
    assert charging.k == (d - 1) * (k - 1) + 2 * d
    assert verify_gap_charging(drawing, charging).measured <= charging.k
