"""Run-wide settings handed to the property suites.
"""
import random
from dataclasses import dataclass
from typing import Optional

from dependency_injector import containers, providers

from .colourings import DEFAULT_CENTRED_LIMIT, DEFAULT_COL_LIMIT
from .layouts import DEFAULT_QUEUE_LIMIT
from .lower_bounds import DEFAULT_HIERARCHY_BUDGET
from .planarise import DEFAULT_GAP_ORACLE_LIMIT
from .treewidth import DEFAULT_TREEWIDTH_LIMIT

EXACT_ORACLES = ("treewidth", "queue", "colouring")


@dataclass(frozen=True)
class OracleLimits:
    treewidth: int = DEFAULT_TREEWIDTH_LIMIT
    queue: int = DEFAULT_QUEUE_LIMIT
    colouring: int = DEFAULT_COL_LIMIT
    centred: int = DEFAULT_CENTRED_LIMIT
    gap: int = DEFAULT_GAP_ORACLE_LIMIT
    hierarchy: int = DEFAULT_HIERARCHY_BUDGET

    @classmethod
    def resolve(cls, budget: Optional[int] = None, **limits: Optional[int]) -> "OracleLimits":
        """Explicit limits first, then the shared budget of the exact oracles, then defaults."""
        values = {} if budget is None else {name: budget for name in EXACT_ORACLES}
        values.update({name: value for name, value in limits.items() if value is not None})
        return cls(**values)


def seeded_random(seed: int) -> random.Random:
    return random.Random(seed)


class Dependencies(containers.DeclarativeContainer):
    seed = providers.Dependency(int)
    jobs = providers.Dependency(int)
    instances = providers.Dependency(int)
    limits = providers.Dependency(OracleLimits)

    # A fresh generator per check, so results do not depend on execution order.
    rng = providers.Factory(seeded_random, seed=seed)
