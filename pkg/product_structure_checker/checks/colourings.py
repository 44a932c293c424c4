import random
from typing import Iterable

from .. import schema
from ..colourings import (
    Colouring,
    VertexOrder,
    col_shallow_order,
    exact_col,
    shallow_product_col_claim,
    strong_product_col_claim,
    treewidth_col_claim,
    verify_nonrepetitive,
    verify_p_centred,
)
from ..core import Section
from ..enums import ReachMode
from ..generators import random_connected_graph, random_graph, random_order, random_shallow_model
from ..graphs import degeneracy
from ..products import complete_graph, path, strong_product
from . import SeededCheck, flag


class Colourings(Section):
    name = "Colouring numbers"
    description = "Generalised colouring numbers of shallow minors, products and small graphs"


@Colourings.register
class ShallowColTransfer(SeededCheck):
    name = "Colouring numbers of shallow minors"
    description = (
        "The leftmost-branch order of an r-shallow minor has s-colouring number at most the "
        "host order's at 2rs + 2r + s, for strong and weak reachability"
    )
    scale = 2.0

    def instance(self, rng: random.Random) -> Iterable[schema.Claim]:
        host = random_connected_graph(rng, rng.randint(2, 10), 0.3)
        model = random_shallow_model(rng, host, rng.randint(0, 1))
        host_order = VertexOrder(random_order(rng, host))
        s = rng.randint(1, 2)
        for mode in ReachMode:
            yield col_shallow_order(model, host_order, s, mode).claim


@Colourings.register
class DegeneracyIdentity(SeededCheck):
    name = "scol_1 = degeneracy + 1"
    description = "Exact strong 1-colouring number on random graphs with at most 7 vertices"
    scale = 0.1

    def instance(self, rng: random.Random) -> Iterable[schema.Claim]:
        g = random_graph(rng, rng.randint(1, 7), 0.5)
        value, _ = exact_col(g, 1, limit=self.limits.colouring, jobs=self.jobs)
        yield schema.Claim("scol-degeneracy", degeneracy(g) + 1, value, "==")


@Colourings.register
class ProductColouring(SeededCheck):
    name = "Colouring numbers of products"
    description = (
        "scol_s(G ⊠ H) <= scol_s(G)(Δ(H^s)+1), scol_s(H) <= l·scol_(2rs+2r+s)(G) for shallow "
        "minors H of G ⊠ K_l, and scol_s(G) <= tw(G) + 1"
    )
    scale = 0.1

    def instance(self, rng: random.Random) -> Iterable[schema.Claim]:
        limit = self.limits.colouring
        g = random_connected_graph(rng, rng.randint(1, 3), 0.4)
        h = random_connected_graph(rng, rng.randint(1, 2), 0.5)
        s = rng.randint(1, 2)
        yield strong_product_col_claim(g, h, s, limit=limit)
        ell = rng.randint(1, 2)
        model = random_shallow_model(rng, strong_product(g, complete_graph(ell)), rng.randint(0, 1))
        yield shallow_product_col_claim(model, g, ell, 1, limit=limit)
        small = random_graph(rng, rng.randint(1, 7), 0.5)
        yield treewidth_col_claim(small, s, limit=limit, tw_limit=self.limits.treewidth)


def ruler(n: int) -> Colouring:
    """Colour i by the 2-adic valuation of i+1."""
    return Colouring({str(i): ((i + 1) & -(i + 1)).bit_length() for i in range(n)})


@Colourings.register
class RulerColouring(SeededCheck):
    name = "Ruler colouring of paths"
    description = (
        "The ruler colouring of a path is nonrepetitive and p-centred; an alternating colouring "
        "of a path on four vertices is repetitive"
    )
    scale = 0.0

    def instance(self, rng: random.Random) -> Iterable[schema.Claim]:
        for n in range(1, self.limits.centred + 1):
            g, c = path(n), ruler(n)
            yield flag("nonrepetitive", bool(verify_nonrepetitive(g, c, n // 2)), n=n)
            for p in range(1, 4):
                verdict = verify_p_centred(g, c, p, limit=self.limits.centred)
                yield flag("centred", bool(verdict), n=n, p=p)
        alternating = Colouring({str(i): i % 2 for i in range(4)})
        yield flag("repetition-found", not verify_nonrepetitive(path(4), alternating, 2))
