import random
from typing import Iterable

from .. import schema
from ..core import Section
from ..lower_bounds import build_grid_hierarchy, check_hierarchy
from . import SeededCheck, flag


class LowerBounds(Section):
    name = "Gap-planar lower bound"
    description = "1-gap-planar grid hierarchies with large treewidth and small radius"


@LowerBounds.register
class GridHierarchies(SeededCheck):
    name = "Grid hierarchy reports"
    description = (
        "For (n, k) in {(2, 1), (3, 1)} the hierarchy contains the grid, is 1-gap-planar after "
        "subdivision and has radius at most (2k+1)n + ceil(k/2) + 1"
    )
    scale = 0.0

    def instance(self, rng: random.Random) -> Iterable[schema.Claim]:
        for n, k in ((2, 1), (3, 1)):
            h = build_grid_hierarchy(n, k, vertex_budget=self.limits.hierarchy)
            report = check_hierarchy(h, tw_limit=self.limits.treewidth)
            yield flag("grid-contained", report.grid_contained, n=n, k=k)
            yield flag("charges-within-k", report.charges_within_k, n=n, k=k)
            yield flag("subdivision-faithful", report.subdivision_faithful, n=n, k=k)
            yield flag("gap-feasible", report.gap_feasible, n=n, k=k)
            yield schema.Claim("treewidth-lower", n ** (k + 1) + 1, report.tw_lower, "==")
            yield from report.claims
