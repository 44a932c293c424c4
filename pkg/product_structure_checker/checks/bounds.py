import random
from typing import Iterable

from .. import schema
from ..bounds import bound_catalog
from ..core import Section
from ..enums import GraphClass
from . import SeededCheck


class Bounds(Section):
    name = "Bound catalogue"
    description = "Closed-form bounds against known constants"


def entry(name: str, expected: int, graph_class: GraphClass, **parameters: int) -> schema.Claim:
    table = bound_catalog(graph_class, **parameters)
    return schema.Claim(name, expected, table.entries[name], "==", parameters=parameters)


@Bounds.register
class KnownConstants(SeededCheck):
    name = "Known constants"
    description = (
        "Fan-planar rtw 1619 and ltw 45, 1-planar rtw 239, tw(J) = 19 at t=3 and r=1, "
        "strict clique layouts and hierarchy radii 8 and 11"
    )
    scale = 0.0

    def instance(self, rng: random.Random) -> Iterable[schema.Claim]:
        yield entry("rtw", 1619, GraphClass.FAN_PLANAR)
        yield entry("ltw", 45, GraphClass.FAN_PLANAR)
        yield entry("rtw", 239, GraphClass.K_PLANAR, k=1, g=0)
        yield entry("j_treewidth", 19, GraphClass.GENERIC, l=1, t=3, r=1)
        for ell in range(1, 6):
            yield entry("strict_clique", ell - 1, GraphClass.QUEUE, l=ell, q=1)
        yield entry("radius_upper", 8, GraphClass.GAP_LOWER, n=2, k=1)
        yield entry("radius_upper", 11, GraphClass.GAP_LOWER, n=3, k=1)
        yield entry("treewidth_lower", 10, GraphClass.GAP_LOWER, n=3, k=1)


@Bounds.register
class QueueBoundMonotone(SeededCheck):
    name = "Monotone queue bounds"
    description = "Queue bounds never decrease as l, q and r grow"
    scale = 0.5

    def instance(self, rng: random.Random) -> Iterable[schema.Claim]:
        ell, q, r = rng.randint(1, 6), rng.randint(1, 6), rng.randint(1, 3)
        low = bound_catalog(GraphClass.QUEUE, l=ell, q=q, r=r).entries
        high = bound_catalog(GraphClass.QUEUE, l=ell + 1, q=q + 1, r=r + 1).entries
        for name in ("strict_clique", "strong_product", "shallow"):
            yield schema.Claim(f"{name}-monotone", low[name], high[name], ">=")
