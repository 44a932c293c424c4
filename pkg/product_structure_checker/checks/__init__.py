import random
from abc import abstractmethod
from typing import Callable, Iterable

from dependency_injector.wiring import Provide

from .. import schema
from ..core import ClaimCheck
from ..dependencies import Dependencies, OracleLimits


class SeededCheck(ClaimCheck):
    """Claim check over seeded random instances; every run starts from a fresh generator."""

    rng_factory: Callable[[], random.Random] = Provide[Dependencies.rng.provider]
    base_instances: int = Provide[Dependencies.instances]
    limits: OracleLimits = Provide[Dependencies.limits]
    jobs: int = Provide[Dependencies.jobs]

    # Share of the run-wide instance count; exact-oracle checks use a fraction.
    scale: float = 1.0

    def instance_count(self) -> int:
        return max(1, int(self.base_instances * self.scale))

    def claims(self) -> Iterable[schema.Claim]:
        rng = self.rng_factory()
        for _ in range(self.instance_count()):
            yield from self.instance(rng)

    @abstractmethod
    def instance(self, rng: random.Random) -> Iterable[schema.Claim]:
        pass  # pragma: nocover


def flag(name: str, holds: bool, **parameters: int) -> schema.Claim:
    """A yes/no property as a claim that measured 1 equals 1."""
    return schema.Claim(name, 1, int(holds), "==", parameters=parameters)
