import random
from typing import Iterable

from .. import schema
from ..core import Section
from ..generators import random_connected_graph, random_graph, random_order, random_shallow_model
from ..layouts import (
    complete_strict_layout,
    exact_queue_number,
    layout_for_order,
    queue_shallow,
    strong_product_queue_claim,
    verify_layout,
)
from ..products import complete_graph
from . import SeededCheck, flag


class Layouts(Section):
    name = "Queue layouts"
    description = "Queue layouts of shallow minors and of strong products with cliques"


@Layouts.register
class ShallowQueueTransfer(SeededCheck):
    name = "Queue layout of a shallow minor"
    description = (
        "Layouts built from a host layout (host at most 9 vertices, r <= 2) verify and use at "
        "most 2r(2q)^(2r) queues"
    )
    scale = 2.0

    def instance(self, rng: random.Random) -> Iterable[schema.Claim]:
        host = random_connected_graph(rng, rng.randint(2, 9), 0.3)
        host_layout = layout_for_order(host, random_order(rng, host))
        r = rng.randint(1, 2)
        model = random_shallow_model(rng, host, r)
        result = queue_shallow(model, host_layout, r)
        yield flag("keyed-layout", bool(verify_layout(model.guest, result.layout)))
        yield flag("compacted-layout", bool(verify_layout(model.guest, result.compacted)))
        yield from result.claims


@Layouts.register
class StrongProductQueue(SeededCheck):
    name = "qn(G ⊠ K_l) <= (2l-1)qn(G) + l - 1"
    description = "Exact queue-numbers on random graphs with at most 7 vertices and l <= 3"
    scale = 0.1

    def instance(self, rng: random.Random) -> Iterable[schema.Claim]:
        g = random_graph(rng, rng.randint(2, 7), 0.5)
        yield strong_product_queue_claim(g, rng.randint(1, 3), limit=self.limits.queue)


@Layouts.register
class CliqueQueueNumbers(SeededCheck):
    name = "Queue-numbers of cliques"
    description = "qn(K_4) = 2, qn(K_6) = 3 and the strict layout of K_l uses l - 1 queues"
    scale = 0.0

    def instance(self, rng: random.Random) -> Iterable[schema.Claim]:
        for n, expected in ((4, 2), (6, 3)):
            clique = complete_graph(n)
            value, _ = exact_queue_number(clique, limit=self.limits.queue, jobs=self.jobs)
            yield schema.Claim("queue-number", expected, value, "==", parameters={"n": n})
        for ell in range(1, 7):
            strict = complete_strict_layout(ell)
            verdict = verify_layout(complete_graph(ell), strict)
            yield flag("strict-layout", bool(verdict), l=ell)
            yield schema.Claim("strict-queues", max(ell - 1, 0), verdict.measured or 0, "==")
