import random
from typing import Iterable

from dependency_injector.wiring import Provide

from .. import schema
from ..certificates import (
    certificate_from_json,
    certificate_to_json,
    engine_certificate,
    td_certificate,
    verify_certificate,
)
from ..core import Section
from ..dependencies import Dependencies
from ..engine import quotient_engine
from ..generators import random_engine_input, random_partial_ktree
from ..util import dumps, loads
from . import SeededCheck, flag


class Certificates(Section):
    name = "Certificates"
    description = "Certificates survive serialisation, reproduce under a seed and catch tampering"


def engine_document(rng: random.Random) -> str:
    inp = random_engine_input(rng, max_vertices=12)
    return dumps(certificate_to_json(engine_certificate(inp, quotient_engine(inp))))


@Certificates.register
class CertificateRoundTrip(SeededCheck):
    name = "Engine certificates verify after serialisation"
    description = "Engine bundles written to JSON and read back are accepted by the verifier"

    def instance(self, rng: random.Random) -> Iterable[schema.Claim]:
        cert = certificate_from_json(loads(engine_document(rng)))
        yield flag("round-trip", bool(verify_certificate(cert)))


@Certificates.register
class Determinism(SeededCheck):
    name = "Seeded runs are reproducible"
    description = "Two generators from the same seed give byte-identical certificates"
    scale = 0.2

    seed: int = Provide[Dependencies.seed]

    def instance(self, rng: random.Random) -> Iterable[schema.Claim]:
        seed = rng.randrange(2**32) ^ self.seed
        first = engine_document(random.Random(seed))
        second = engine_document(random.Random(seed))
        yield flag("deterministic", first == second)


@Certificates.register
class TamperedCertificates(SeededCheck):
    name = "Tampered certificates are rejected"
    description = "Dropping a vertex from every bag of a tree-decomposition fails verification"

    def instance(self, rng: random.Random) -> Iterable[schema.Claim]:
        base = random_partial_ktree(rng, rng.randint(1, 8), rng.randint(1, 3))
        document = certificate_to_json(td_certificate(base.graph, base.td))
        yield flag("honest", bool(verify_certificate(certificate_from_json(document))))
        victim = rng.choice(sorted(base.graph.nodes))
        for node, bag in document["payload"]["td"]["bags"].items():
            document["payload"]["td"]["bags"][node] = [v for v in bag if v != victim]
        verdict = verify_certificate(certificate_from_json(document))
        yield flag("tamper-detected", not verdict and verdict.clause == "vertex-coverage")
