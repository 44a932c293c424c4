"""Certificate envelopes: building, schema validation, and re-verification by kind.

Verification works from the payload alone; nothing is reconstructed.
"""
import logging
from dataclasses import asdict
from math import comb
from typing import Any, Callable, Optional

import dacite
from jsonschema import Draft202012Validator

from .colourings import col_of_order
from .decompositions import verify_hl_partition, verify_tree_decomposition
from .engine import EngineInput, EngineOutput
from .enums import CertificateKind, ReachMode
from .errors import InputError
from .graphs import max_degree, power_or_edgeless, radius, same_graph
from .layouts import QueueLayout, verify_layout
from .lower_bounds import GridHierarchy, HierarchyReport, contract_paths, grid_contained
from .minors import verify_model
from .planarise import EmbeddedGraph, GapCharging, verify_gap_charging
from .products import EmbeddingWitness, verify_embedding
from .schema import SCHEMA_VERSION, Certificate, Claim, Verdict
from .serialise import (
    charging_from_json,
    charging_to_json,
    drawing_from_json,
    drawing_to_json,
    graph_from_json,
    graph_to_json,
    layout_from_json,
    layout_to_json,
    model_from_json,
    model_to_json,
    order_from_json,
    partition_from_json,
    partition_to_json,
    td_from_json,
    td_to_json,
    witness_from_json,
    witness_to_json,
)

ENVELOPE_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema", "kind", "payload", "claims"],
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "kind": {"enum": [kind.value for kind in CertificateKind]},
        "payload": {"type": "object"},
        "claims": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "bound", "measured"],
                "properties": {
                    "name": {"type": "string"},
                    "bound": {"type": "integer"},
                    "measured": {"type": "integer"},
                    "relation": {"enum": ["<=", ">=", "=="]},
                    "parameters": {
                        "type": "object",
                        "additionalProperties": {"type": "integer"},
                    },
                },
            },
        },
        "notes": {"type": "array", "items": {"type": "string"}},
    },
}

_VALIDATOR = Draft202012Validator(ENVELOPE_SCHEMA)


def certificate_to_json(cert: Certificate) -> dict[str, Any]:
    document = asdict(cert)
    document["kind"] = CertificateKind(cert.kind).value
    return document


def certificate_from_json(data: Any) -> Certificate:
    errors = sorted(_VALIDATOR.iter_errors(data), key=lambda error: list(error.path))
    if errors:
        location = "/".join(map(str, errors[0].path)) or "<root>"
        raise InputError(f"Certificate envelope invalid at {location}: {errors[0].message}")
    return dacite.from_dict(Certificate, data, config=dacite.Config(cast=[CertificateKind]))


def model_certificate(model, r: Optional[int] = None, claims=(), notes=()) -> Certificate:
    payload = {"model": model_to_json(model), "r": model.depth if r is None else r}
    return Certificate(
        CertificateKind.MODEL, payload, list(claims), list(model.notes) + list(notes)
    )


def embedding_certificate(guest, witness: EmbeddingWitness, claims=(), notes=()) -> Certificate:
    payload = {"guest": graph_to_json(guest), "witness": witness_to_json(witness)}
    return Certificate(CertificateKind.EMBEDDING, payload, list(claims), list(notes))


def td_certificate(g, td, claims=(), notes=()) -> Certificate:
    payload = {"graph": graph_to_json(g), "td": td_to_json(td)}
    return Certificate(CertificateKind.TREE_DECOMPOSITION, payload, list(claims), list(notes))


def partition_certificate(g, partition, claims=(), notes=()) -> Certificate:
    payload = {"graph": graph_to_json(g), "partition": partition_to_json(partition)}
    return Certificate(CertificateKind.HL_PARTITION, payload, list(claims), list(notes))


def layout_certificate(g, layout: QueueLayout, claims=(), notes=()) -> Certificate:
    payload = {"graph": graph_to_json(g), "layout": layout_to_json(layout)}
    return Certificate(CertificateKind.QUEUE_LAYOUT, payload, list(claims), list(notes))


def order_certificate(g, order, s: int, mode: ReachMode, claims=(), notes=()) -> Certificate:
    payload = {
        "graph": graph_to_json(g),
        "order": list(order.order),
        "s": s,
        "mode": ReachMode(mode).value,
    }
    return Certificate(CertificateKind.VERTEX_ORDER, payload, list(claims), list(notes))


def charging_certificate(
    e: EmbeddedGraph, charging: GapCharging, claims=(), notes=()
) -> Certificate:
    payload = {"drawing": drawing_to_json(e), "charging": charging_to_json(charging)}
    return Certificate(CertificateKind.GAP_CHARGING, payload, list(claims), list(notes))


def engine_certificate(inp: EngineInput, out: EngineOutput) -> Certificate:
    payload = {
        "g": graph_to_json(inp.g),
        "partition": partition_to_json(inp.partition),
        "h_td": td_to_json(inp.h_td),
        "model": model_to_json(inp.model),
        "r": inp.r,
        "j_td": td_to_json(out.j_td),
        "l_prime_partition": partition_to_json(out.l_prime_partition),
    }
    return Certificate(CertificateKind.ENGINE_BUNDLE, payload, list(out.claims), list(out.notes))


def hierarchy_certificate(h: GridHierarchy, report: HierarchyReport) -> Certificate:
    charging = report.unit_charging
    payload = {
        "n": h.n,
        "k": h.k,
        "graph": graph_to_json(h.embedded.base),
        "subdivided": drawing_to_json(h.subdivided),
        "charging": None if charging is None else charging_to_json(charging),
        "radius": report.radius,
        "tw_lower": report.tw_lower,
    }
    return Certificate(CertificateKind.HIERARCHY_REPORT, payload, list(report.claims))


def _verify_model(payload: dict) -> Verdict:
    return verify_model(model_from_json(payload["model"]), int(payload["r"]))


def _verify_embedding(payload: dict) -> Verdict:
    return verify_embedding(
        graph_from_json(payload["guest"]), witness_from_json(payload["witness"])
    )


def _verify_td(payload: dict) -> Verdict:
    return verify_tree_decomposition(
        graph_from_json(payload["graph"]), td_from_json(payload["td"])
    )


def _verify_partition(payload: dict) -> Verdict:
    return verify_hl_partition(
        graph_from_json(payload["graph"]), partition_from_json(payload["partition"])
    )


def _verify_layout(payload: dict) -> Verdict:
    return verify_layout(
        graph_from_json(payload["graph"]), layout_from_json(payload["layout"])
    )


def _verify_order(payload: dict) -> Verdict:
    g = graph_from_json(payload["graph"])
    order = order_from_json(payload)
    if not order.covers(g):
        return Verdict.reject("order")
    return Verdict.accept(col_of_order(g, order, int(payload["s"]), ReachMode(payload["mode"])))


def _verify_charging(payload: dict) -> Verdict:
    return verify_gap_charging(
        drawing_from_json(payload["drawing"]), charging_from_json(payload["charging"])
    )


def _verify_engine(payload: dict) -> Verdict:
    g = graph_from_json(payload["g"])
    partition = partition_from_json(payload["partition"])
    h_td = td_from_json(payload["h_td"])
    model = model_from_json(payload["model"])
    r = int(payload["r"])
    j_td = td_from_json(payload["j_td"])
    l_prime = partition_from_json(payload["l_prime_partition"])
    for verdict, prefix in (
        (verify_hl_partition(g, partition), "input-partition"),
        (verify_model(model, r), "model"),
        (verify_tree_decomposition(l_prime.quotient_h, j_td), "j-td"),
        (verify_hl_partition(model.guest, l_prime), "partition"),
    ):
        if not verdict:
            return Verdict.reject(f"{prefix}:{verdict.clause}", verdict.witness)
    if not same_graph(model.host, g):
        return Verdict.reject("model-host")
    k = max_degree(power_or_edgeless(partition.quotient_l, r))
    if l_prime.width > partition.width * (k + 1):
        return Verdict.reject("partition-width", measured=l_prime.width)
    largest = max((len(bag) for bag in j_td.bags.values()), default=0)
    if largest > comb(2 * r + 1 + h_td.width, h_td.width):
        return Verdict.reject("bag-size", measured=largest)
    return Verdict.accept(measured=l_prime.width)


def _verify_hierarchy(payload: dict) -> Verdict:
    n, k = int(payload["n"]), int(payload["k"])
    g = graph_from_json(payload["graph"])
    subdivided = drawing_from_json(payload["subdivided"])
    if not grid_contained(g, n ** (k + 1)):
        return Verdict.reject("grid")
    if not same_graph(contract_paths(subdivided.base, set(g.nodes)), g):
        return Verdict.reject("subdivision")
    measured = radius(subdivided.base)
    if measured != payload["radius"] or measured > (2 * k + 1) * n + -(-k // 2) + 1:
        return Verdict.reject("radius", measured=measured)
    if payload["charging"] is None:
        return Verdict.reject("gap-charging")
    charging = charging_from_json(payload["charging"])
    verdict = verify_gap_charging(subdivided, charging)
    if charging.k != 1 or not verdict:
        return Verdict.reject(f"gap-charging:{verdict.clause}", verdict.witness)
    return Verdict.accept(measured=measured)


_VERIFIERS: dict[CertificateKind, Callable[[dict], Verdict]] = {
    CertificateKind.MODEL: _verify_model,
    CertificateKind.EMBEDDING: _verify_embedding,
    CertificateKind.TREE_DECOMPOSITION: _verify_td,
    CertificateKind.HL_PARTITION: _verify_partition,
    CertificateKind.QUEUE_LAYOUT: _verify_layout,
    CertificateKind.VERTEX_ORDER: _verify_order,
    CertificateKind.GAP_CHARGING: _verify_charging,
    CertificateKind.ENGINE_BUNDLE: _verify_engine,
    CertificateKind.HIERARCHY_REPORT: _verify_hierarchy,
}


def verify_certificate(cert: Certificate) -> Verdict:
    """Re-check the payload with its kind's verifier, then every recorded claim."""
    try:
        verdict = _VERIFIERS[CertificateKind(cert.kind)](cert.payload)
    except KeyError as ex:
        raise InputError(f"Certificate payload is missing {ex}") from ex
    if not verdict:
        logging.debug(f"Certificate of kind {cert.kind} rejected: {verdict.clause}")
        return verdict
    for claim in cert.claims:
        if not claim.holds:
            return Verdict.reject(
                f"claim:{claim.name}", [claim.measured, claim.relation, claim.bound]
            )
    return verdict


def claims_hold(claims: list[Claim]) -> bool:
    return all(claim.holds for claim in claims)
