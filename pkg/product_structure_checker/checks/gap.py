import random
from typing import Iterable

from .. import schema
from ..core import Section
from ..generators import random_drawing, random_fan_drawing
from ..planarise import (
    exhaustive_gap_charging,
    friend_assignment,
    gap_charging,
    verify_friend_assignment,
    verify_gap_charging,
)
from . import SeededCheck, flag


class Gap(Section):
    name = "Gap-planarity"
    description = "Gap charging by maximum flow and friend assignments on random drawings"


@Gap.register
class FlowMatchesExhaustive(SeededCheck):
    name = "Flow charging agrees with exhaustive search"
    description = (
        "A k-gap charging exists by flow iff one exists by brute force, for k <= 2 and at most "
        "12 crossings"
    )

    def instance(self, rng: random.Random) -> Iterable[schema.Claim]:
        limit = min(12, self.limits.gap)
        e = random_drawing(rng, rng.randint(2, 8), 0.5, rng.randint(0, limit), simple=False)
        for k in range(3):
            flow = gap_charging(e, k)
            exhaustive = exhaustive_gap_charging(e, k, limit=self.limits.gap)
            yield flag("oracles-agree", (flow is None) == (exhaustive is None), k=k)
            if flow is not None:
                yield flag("flow-charging", bool(verify_gap_charging(e, flow)), k=k)


@Gap.register
class FriendAssignments(SeededCheck):
    name = "Friend assignments"
    description = "Every crossed edge of a simple fan-planar drawing gets a friend and a split"

    def instance(self, rng: random.Random) -> Iterable[schema.Claim]:
        e = random_fan_drawing(rng, rng.randint(4, 9), rng.randint(0, 3))
        yield flag("friend-assignment", bool(verify_friend_assignment(e, friend_assignment(e))))
