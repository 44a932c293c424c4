import random

import pytest

from product_structure_checker.certificates import (
    certificate_from_json,
    certificate_to_json,
    charging_certificate,
    embedding_certificate,
    engine_certificate,
    hierarchy_certificate,
    layout_certificate,
    model_certificate,
    order_certificate,
    td_certificate,
    verify_certificate,
)
from product_structure_checker.colourings import VertexOrder
from product_structure_checker.engine import quotient_engine
from product_structure_checker.enums import CertificateKind, ReachMode
from product_structure_checker.errors import InputError
from product_structure_checker.gadgets import ClusterStructure, cluster_embed
from product_structure_checker.generators import random_engine_input, random_partial_ktree
from product_structure_checker.layouts import complete_strict_layout
from product_structure_checker.lower_bounds import build_grid_hierarchy, check_hierarchy
from product_structure_checker.minors import contraction_model
from product_structure_checker.planarise import Crossing, EmbeddedGraph, gap_charging
from product_structure_checker.products import complete_graph, path
from product_structure_checker.schema import Claim
from product_structure_checker.util import dumps, loads


def reloaded(cert):
    return certificate_from_json(loads(dumps(certificate_to_json(cert))))


def contracted_path():
    return contraction_model(path(4), {"a": {"0", "1"}, "b": {"2", "3"}})


def test_model_certificate():
    cert = reloaded(model_certificate(contracted_path()))
    assert cert.kind == CertificateKind.MODEL
    assert cert.payload["r"] == 1
    assert verify_certificate(cert)


def test_embedding_certificate():
    g = path(4)
    clusters = ClusterStructure(
        g=g, clusters={"A": frozenset({"0", "1"}), "B": frozenset({"2", "3"})}, k=2
    )
    assert verify_certificate(reloaded(embedding_certificate(g, cluster_embed(clusters))))


def test_layout_certificate():
    cert = layout_certificate(complete_graph(4), complete_strict_layout(4))
    verdict = verify_certificate(reloaded(cert))
    assert verdict.measured == 3


def test_order_certificate():
    cert = order_certificate(path(4), VertexOrder(["0", "1", "2", "3"]), 3, ReachMode.WEAK)
    assert verify_certificate(reloaded(cert)).measured == 4
    short = order_certificate(path(4), VertexOrder(["0", "1"]), 1, ReachMode.STRONG)
    assert verify_certificate(reloaded(short)).clause == "order"


def test_charging_certificate():
    e = EmbeddedGraph(
        base=complete_graph(4), crossings=[Crossing(("0", "2"), ("1", "3"), 0, 0)], simple=True
    )
    verdict = verify_certificate(reloaded(charging_certificate(e, gap_charging(e, 1))))
    assert verdict.measured == 1


@pytest.mark.parametrize("seed", range(5))
def test_engine_certificate(seed):
    inp = random_engine_input(random.Random(seed), max_vertices=12)
    cert = reloaded(engine_certificate(inp, quotient_engine(inp)))
    assert cert.kind == CertificateKind.ENGINE_BUNDLE
    assert verify_certificate(cert)


def test_hierarchy_certificate():
    h = build_grid_hierarchy(2, 1)
    verdict = verify_certificate(reloaded(hierarchy_certificate(h, check_hierarchy(h))))
    assert verdict
    assert verdict.measured <= 8


def test_recorded_claims_are_rechecked():
    cert = model_certificate(contracted_path(), claims=[Claim("width", 1, 2)])
    verdict = verify_certificate(reloaded(cert))
    assert verdict.clause == "claim:width"
    assert verdict.witness == [2, "<=", 1]


def test_tampered_tree_decomposition():
    base = random_partial_ktree(random.Random(3), 6, 2)
    document = certificate_to_json(td_certificate(base.graph, base.td))
    assert verify_certificate(certificate_from_json(document))
    bags = document["payload"]["td"]["bags"]
    for node in bags:
        bags[node] = [v for v in bags[node] if v != "0"]
    assert verify_certificate(certificate_from_json(document)).clause == "vertex-coverage"


def test_tampered_model_radius():
    document = certificate_to_json(model_certificate(contracted_path()))
    document["payload"]["r"] = 0
    assert verify_certificate(certificate_from_json(document)).clause == "radius"


@pytest.mark.parametrize(
    "change",
    [
        lambda d: d.pop("kind"),
        lambda d: d.update(schema="v0"),
        lambda d: d.update(kind="sketch"),
        lambda d: d.update(claims=[{"name": "x", "bound": "1", "measured": 0}]),
        lambda d: d.update(claims=[{"name": "x", "bound": 1, "measured": 0, "relation": "<"}]),
        lambda d: d.update(payload=[]),
    ],
)
def test_invalid_envelopes(change):
    document = certificate_to_json(model_certificate(contracted_path()))
    change(document)
    with pytest.raises(InputError):
        certificate_from_json(document)


def test_missing_payload_field():
    document = certificate_to_json(model_certificate(contracted_path()))
    del document["payload"]["r"]
    with pytest.raises(InputError):
        verify_certificate(certificate_from_json(document))


def test_serialisation_is_canonical():
    first = dumps(certificate_to_json(model_certificate(contracted_path())))
    second = dumps(certificate_to_json(model_certificate(contracted_path())))
    assert first == second
    assert first.endswith("}\n")
