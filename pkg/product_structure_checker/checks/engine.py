import random
from math import comb
from typing import Iterable

from .. import schema
from ..core import Section
from ..engine import gpst_shallow, quotient_engine
from ..generators import random_engine_input, random_partial_ktree, random_shallow_model
from ..products import path, strong_product3
from ..treewidth import exact_treewidth
from . import SeededCheck


class Engine(Section):
    name = "Quotient engine"
    description = "Soundness and tightness of the quotient engine on random valid inputs"


@Engine.register
class EngineSoundness(SeededCheck):
    name = "Partition width and bag size"
    description = (
        "On random inputs (at most 20 vertices, r <= 2, t <= 2, l <= 2) the emitted partition "
        "has width at most l(k+1) and every bag at most C(2r+1+t, t) vertices"
    )
    scale = 5.0

    def instance(self, rng: random.Random) -> Iterable[schema.Claim]:
        return quotient_engine(random_engine_input(rng)).claims


@Engine.register
class EngineTightness(SeededCheck):
    name = "Treewidth of J"
    description = "Exact treewidth of the quotient graph J is at most C(2r+1+t, t) - 1"

    def instance(self, rng: random.Random) -> Iterable[schema.Claim]:
        inp = random_engine_input(rng)
        output = quotient_engine(inp)
        if output.j.number_of_nodes() > self.limits.treewidth:
            return
        tw, _ = exact_treewidth(output.j, limit=self.limits.treewidth)
        bound = comb(2 * inp.r + 1 + inp.t, inp.t) - 1
        yield schema.Claim("j-treewidth", bound, tw, parameters={"r": inp.r, "t": inp.t})


@Engine.register
class ShallowProductEmbedding(SeededCheck):
    name = "Shallow minors of H ⊠ P ⊠ K_l"
    description = "Random shallow minors embed into J ⊠ P ⊠ K_(l(2r+1)^2) with bounded widths"
    scale = 0.2

    def instance(self, rng: random.Random) -> Iterable[schema.Claim]:
        t, ell, r = rng.randint(1, 2), rng.randint(1, 2), rng.randint(0, 1)
        base = random_partial_ktree(rng, rng.randint(1, 4), t)
        p = path(rng.randint(1, 3))
        host = strong_product3(base.graph, p, ell)
        model = random_shallow_model(rng, host, r)
        yield from gpst_shallow(model, base.graph, p, ell, base.normalised(), r).claims
