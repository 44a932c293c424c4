import pytest

from product_structure_checker.errors import PreconditionError, ResourceError
from product_structure_checker.graphs import make_graph, same_graph
from product_structure_checker.lower_bounds import (
    build_grid_hierarchy,
    check_hierarchy,
    contract_paths,
    grid_contained,
    point,
)
from product_structure_checker.planarise import verify_gap_charging
from product_structure_checker.products import grid, path


@pytest.mark.parametrize("n,k,side,radius_bound", [(2, 1, 4, 8), (3, 1, 9, 11)])
def test_grid_hierarchy_report(n, k, side, radius_bound):
    h = build_grid_hierarchy(n, k)
    assert h.side == side
    assert h.embedded.base.number_of_nodes() == (side + 1) ** 2
    report = check_hierarchy(h)
    assert report.accepted
    assert report.radius <= radius_bound == report.radius_bound
    assert report.tw_lower == side + 1
    assert report.subgrid_treewidth == 3
    assert verify_gap_charging(h.subdivided, report.unit_charging)


def test_hierarchy_levels():
    h = build_grid_hierarchy(2, 1)
    assert h.levels[(point(0, 0), point(0, 1))] == 0
    assert h.levels[(point(0, 0), point(0, 2))] == 1
    assert max(h.charging.load().values()) <= 1
    assert h.embedded.crossings


@pytest.mark.parametrize("n,k", [(1, 1), (0, 2), (2, 0)])
def test_degenerate_hierarchies(n, k):
    with pytest.raises(PreconditionError):
        build_grid_hierarchy(n, k)


def test_hierarchy_budget():
    with pytest.raises(ResourceError):
        build_grid_hierarchy(3, 1, vertex_budget=50)


def test_grid_contained():
    g = grid(3, 3)
    assert grid_contained(g, 2)
    g.remove_edge(point(1, 1), point(1, 2))
    assert not grid_contained(g, 2)


def test_contract_paths():
    g = make_graph(["0", "a", "b", "1", "2"], [("0", "a"), ("a", "b"), ("b", "1"), ("1", "2")])
    assert same_graph(contract_paths(g, {"0", "1", "2"}), path(3))
