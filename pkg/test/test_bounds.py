import pytest

from product_structure_checker.bounds import bound_catalog
from product_structure_checker.enums import GraphClass
from product_structure_checker.errors import InputError


def test_fan_planar_constants():
    table = bound_catalog("fan-planar")
    assert table.entries["rtw"] == 1619
    assert table.entries["ltw"] == 45
    assert table.entries["clique"] == 81
    assert table.entries["j_treewidth"] == 19
    assert table.notes


@pytest.mark.parametrize(
    "parameters,entries",
    [
        ({"l": 1, "t": 3, "r": 1}, {"j_treewidth": 19, "clique": 9, "partition_width": 3}),
        ({"l": 2, "t": 1, "r": 0}, {"j_treewidth": 1, "clique": 2, "rtw": 3}),
        ({"l": 1, "t": 1, "r": 1, "ltw": 2}, {"ltw": 10, "boxicity": 63}),
    ],
)
def test_generic_class(parameters, entries):
    table = bound_catalog(GraphClass.GENERIC, **parameters)
    assert {name: table.entries[name] for name in entries} == entries


@pytest.mark.parametrize("ell", range(1, 7))
def test_strict_clique_layout(ell):
    assert bound_catalog("queue", l=ell, q=1).entries["strict_clique"] == ell - 1


def test_queue_bounds():
    entries = bound_catalog("queue", l=3, q=2, r=1).entries
    assert entries["strong_product"] == 5 * 2 + 2
    assert entries["shallow"] == 2 * 4**2


@pytest.mark.parametrize("n,k,radius,treewidth", [(2, 1, 8, 5), (3, 1, 11, 10), (2, 2, 12, 9)])
def test_gap_lower_bounds(n, k, radius, treewidth):
    entries = bound_catalog("gap-lower", n=n, k=k).entries
    assert entries["radius_upper"] == radius
    assert entries["treewidth_lower"] == treewidth


def test_shortcut_gap():
    entries = bound_catalog("shortcut", k=3, d=2).entries
    assert entries["gap"] == 1 * 2 + 4
    assert entries["lift_rows"] == 3


def test_cluster_and_product():
    assert bound_catalog("cluster", k=4).entries["rtw"] == 4 * 3 * 4 - 1
    product = bound_catalog("product", l=1, t=1).entries
    assert product["queue_number"] == 3 * 2 + 1
    assert product["nonrepetitive"] == 16


def test_k_planar_notes_discrepancy():
    table = bound_catalog("k-planar", k=2)
    assert "scol" in table.entries
    assert any("10k+2" in note for note in table.notes)


@pytest.mark.parametrize(
    "graph_class,parameters",
    [
        ("unknown", {}),
        ("generic", {"l": 1, "t": 1}),
        ("generic", {"l": -1, "t": 1, "r": 1}),
        ("power", {"k": 0, "d": 1}),
        ("shortcut", {"k": 0, "d": 1}),
    ],
)
def test_invalid_parameters(graph_class, parameters):
    with pytest.raises(InputError):
        bound_catalog(graph_class, **parameters)
