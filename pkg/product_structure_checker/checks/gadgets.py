import random
from typing import Iterable

import networkx as nx

from .. import schema
from ..core import Section
from ..gadgets import (
    cluster_embed,
    fanbundle_model,
    ic_planar_clusters,
    intersection_graph,
    kplanar_model,
    shortcut_gap_charging,
    string_model,
)
from ..generators import (
    random_bundles,
    random_clique_lift,
    random_clusters,
    random_connected_graph,
    random_curves,
    random_drawing,
    random_ic_planar,
    random_shortcut_system,
)
from ..graphs import graph_power, same_graph
from ..minors import (
    MinorModel,
    apply_clique_lift,
    apply_shortcuts,
    clique_lift_model,
    contraction_model,
    power_model,
    shortcut_to_model,
    verify_model,
)
from ..planarise import verify_gap_charging
from ..products import verify_embedding
from . import SeededCheck, flag


class Gadgets(Section):
    name = "Gadget fidelity"
    description = (
        "Every construction models exactly the intended graph and stays within its declared depth"
    )


def fidelity(gadget: str, model: MinorModel, intended, r: int) -> Iterable[schema.Claim]:
    yield flag(f"{gadget}-guest", same_graph(model.guest, intended))
    verdict = verify_model(model)
    yield flag(f"{gadget}-model", bool(verdict))
    if verdict:
        yield schema.Claim(f"{gadget}-depth", r, verdict.measured)


@Gadgets.register
class KPlanarGadget(SeededCheck):
    name = "k-planar drawings"
    description = "Drawings with at most k crossings per edge are k/2-shallow topological minors"

    def instance(self, rng: random.Random) -> Iterable[schema.Claim]:
        k = rng.randint(0, 3)
        e = random_drawing(rng, rng.randint(2, 9), 0.4, rng.randint(0, 8), max_per_edge=k)
        yield from fidelity("kplanar", kplanar_model(e, k), e.base, -(-k // 2))


@Gadgets.register
class StringGadget(SeededCheck):
    name = "String graphs"
    description = "Curves with at most δ events give floor(δ/2)-shallow intersection graph models"

    def instance(self, rng: random.Random) -> Iterable[schema.Claim]:
        delta = rng.randint(1, 4)
        curves = random_curves(rng, rng.randint(2, 8), delta, rng.randint(0, 12))
        model = string_model(curves, delta)
        yield from fidelity("string", model, intersection_graph(curves), delta // 2)


@Gadgets.register
class ClusterGadget(SeededCheck):
    name = "Cluster structures"
    description = "Clustered graphs and IC-planar drawings embed into the cluster graph times K_k"

    def instance(self, rng: random.Random) -> Iterable[schema.Claim]:
        c = random_clusters(rng, rng.randint(1, 8), rng.randint(1, 3))
        yield flag("cluster-embedding", bool(verify_embedding(c.g, cluster_embed(c))))
        e = random_ic_planar(rng, rng.randint(4, 8), rng.randint(0, 2))
        ic = ic_planar_clusters(e)
        yield flag("ic-planar-embedding", bool(verify_embedding(e.base, cluster_embed(ic))))
        yield schema.Claim("ic-planar-cluster-size", 4, max(map(len, ic.clusters.values())))


@Gadgets.register
class FanBundleGadget(SeededCheck):
    name = "k-fan-bundle drawings"
    description = "Bundles crossed at most k times give (k+1)-shallow models"

    def instance(self, rng: random.Random) -> Iterable[schema.Claim]:
        k = rng.randint(0, 2)
        b = random_bundles(rng, rng.randint(2, 7), k, rng.randint(0, 6))
        yield from fidelity("fanbundle", fanbundle_model(b, k), b.graph(), k + 1)


@Gadgets.register
class LiftGadgets(SeededCheck):
    name = "Clique-lifts, powers and contractions"
    description = (
        "Clique-lifts are 1-shallow, G^k is floor(k/2)-shallow in a lift of G, and contracted "
        "groups model the realised graph"
    )

    def instance(self, rng: random.Random) -> Iterable[schema.Claim]:
        c = random_clique_lift(rng, rng.randint(1, 8), rng.randint(1, 3))
        yield from fidelity("cliquelift", clique_lift_model(c), apply_clique_lift(c), 1)
        g = random_connected_graph(rng, rng.randint(1, 8), 0.2)
        k = rng.randint(1, 3)
        yield from fidelity("power", power_model(g, k), graph_power(g, k), k // 2)
        colour = {v: rng.randrange(3) for v in g.nodes}
        groups: dict[str, set] = {}
        for label in range(3):
            parts = nx.connected_components(g.subgraph(v for v in g if colour[v] == label))
            for i, part in enumerate(sorted(parts, key=sorted)):
                groups[f"g{label}.{i}"] = part
        model = contraction_model(g, groups)
        yield flag("contraction-model", bool(verify_model(model, model.depth)))


@Gadgets.register
class ShortcutGadget(SeededCheck):
    name = "Shortcut systems"
    description = (
        "G^P is a (k-1)/2-shallow topological minor of G ∘ K̄_(d+1) and its conservative "
        "drawing has a ((d-1)(k-1)+2d)-gap charging"
    )

    def instance(self, rng: random.Random) -> Iterable[schema.Claim]:
        k, d = rng.randint(1, 4), rng.randint(1, 3)
        s = random_shortcut_system(rng, rng.randint(2, 9), k, d)
        yield from fidelity("shortcut", shortcut_to_model(s), apply_shortcuts(s), -(-(k - 1) // 2))
        drawing, charging = shortcut_gap_charging(s)
        verdict = verify_gap_charging(drawing, charging)
        yield flag("shortcut-charging", bool(verdict))
        bound = (d - 1) * (k - 1) + 2 * d
        measured = verdict.measured or 0
        yield schema.Claim("shortcut-gap", bound, measured, parameters={"k": k, "d": d})
