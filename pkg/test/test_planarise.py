import random

import networkx as nx
import pytest

from product_structure_checker.errors import InputError, PreconditionError, ResourceError
from product_structure_checker.generators import random_drawing, random_fan_drawing
from product_structure_checker.graphs import make_graph
from product_structure_checker.planarise import (
    Crossing,
    EmbeddedGraph,
    GapCharging,
    exhaustive_gap_charging,
    friend_assignment,
    gap_charging,
    planarize,
    verify_friend_assignment,
    verify_gap_charging,
)
from product_structure_checker.products import complete_graph, edgeless, path


def crossed_k4() -> EmbeddedGraph:
    return EmbeddedGraph(
        base=complete_graph(4), crossings=[Crossing(("0", "2"), ("1", "3"), 0, 0)], simple=True
    )


def doubly_crossing_triangle() -> EmbeddedGraph:
    """Three independent edges, every pair crossing twice."""
    a, b, c = ("0", "1"), ("2", "3"), ("4", "5")
    base = make_graph(range(6), [a, b, c])
    return EmbeddedGraph(
        base=base,
        crossings=[
            Crossing(a, b, 0, 0),
            Crossing(a, b, 1, 1),
            Crossing(a, c, 2, 0),
            Crossing(a, c, 3, 1),
            Crossing(b, c, 2, 2),
            Crossing(b, c, 3, 3),
        ],
    )


def test_planarisation_of_k4():
    planarisation = planarize(crossed_k4())
    assert planarisation.plane.number_of_nodes() == 5
    assert planarisation.plane.number_of_edges() == 8
    assert planarisation.paths[("0", "2")] == ("0", "#0", "2")
    planar, _ = nx.check_planarity(planarisation.plane)
    assert planar


def test_planarisation_follows_positions():
    e = doubly_crossing_triangle()
    route = planarize(e).paths[("2", "3")]
    assert route == ("2", "#0", "#1", "#4", "#5", "3")


@pytest.mark.parametrize(
    "crossings,simple",
    [
        ([Crossing(("0", "1"), ("0", "9"), 0, 0)], False),
        ([Crossing(("0", "2"), ("1", "3"), 0, 0), Crossing(("0", "2"), ("1", "2"), 0, 0)], False),
        ([Crossing(("0", "2"), ("0", "3"), 0, 0)], True),
        ([Crossing(("0", "2"), ("1", "3"), 0, 0, side=2)], False),
    ],
)
def test_invalid_drawings(crossings, simple):
    with pytest.raises(InputError):
        EmbeddedGraph(base=complete_graph(4), crossings=crossings, simple=simple).validate()


def test_gap_charging_by_flow():
    e = doubly_crossing_triangle()
    assert gap_charging(e, 1) is None
    charging = gap_charging(e, 2)
    assert verify_gap_charging(e, charging).measured == 2
    assert gap_charging(crossed_k4(), 0) is None
    assert gap_charging(crossed_k4(), 1) is not None


@pytest.mark.parametrize("base", [edgeless(3), edgeless(0), path(3)])
def test_gap_charging_without_crossings(base):
    e = EmbeddedGraph(base=base)
    for k in (0, 1):
        charging = gap_charging(e, k)
        assert charging is not None
        assert charging.assignment == {}
        assert exhaustive_gap_charging(e, k) is not None


@pytest.mark.parametrize("seed", range(15))
def test_flow_and_exhaustive_agree(seed):
    rng = random.Random(seed)
    e = random_drawing(rng, rng.randint(2, 7), 0.6, rng.randint(0, 10), simple=False)
    for k in range(3):
        assert (gap_charging(e, k) is None) == (exhaustive_gap_charging(e, k) is None)


def test_exhaustive_oracle_limit():
    with pytest.raises(ResourceError):
        exhaustive_gap_charging(doubly_crossing_triangle(), 2, limit=5)


def test_gap_charging_rejections():
    e = crossed_k4()
    assert verify_gap_charging(e, GapCharging({}, 1)).clause == "coverage"
    assert verify_gap_charging(e, GapCharging({0: ("0", "1")}, 1)).clause == "incidence"
    assert verify_gap_charging(e, GapCharging({0: ("0", "2")}, 0)).clause == "capacity"
    assert verify_gap_charging(e, GapCharging({0: ("2", "0")}, 1))


def fan() -> EmbeddedGraph:
    base = make_graph(range(5), [(0, 1), (2, 3), (2, 4)])
    crossings = [Crossing(("0", "1"), ("2", "3"), 0, 0), Crossing(("0", "1"), ("2", "4"), 1, 0)]
    return EmbeddedGraph(base=base, crossings=crossings, simple=True)


def test_friend_assignment_of_a_fan():
    e = fan()
    assignment = friend_assignment(e)
    assert assignment.friend[("0", "1")] == "2"
    assert assignment.friend[("2", "3")] == "0"
    assert assignment.split[("0", "1")] == 2
    assert verify_friend_assignment(e, assignment)


def test_friend_assignment_needs_fans():
    base = make_graph(range(6), [(0, 1), (2, 3), (4, 5)])
    crossings = [Crossing(("0", "1"), ("2", "3"), 0, 0), Crossing(("0", "1"), ("4", "5"), 1, 0)]
    with pytest.raises(PreconditionError):
        friend_assignment(EmbeddedGraph(base=base, crossings=crossings, simple=True))


def test_friend_assignment_needs_simple_drawing():
    e = fan()
    e.simple = False
    with pytest.raises(PreconditionError):
        friend_assignment(e)


@pytest.mark.parametrize("seed", range(15))
def test_random_fan_drawings_get_friends(seed):
    rng = random.Random(seed)
    e = random_fan_drawing(rng, rng.randint(4, 9), rng.randint(0, 3))
    assert verify_friend_assignment(e, friend_assignment(e))
