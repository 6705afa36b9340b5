from .codec import hull_from_dict, hull_to_csv, hull_to_dict, pentagon_to_dict, write_hull_csv
from .region import (
    DEFAULT_N_DIRS,
    BoundPentagon,
    RatePair,
    RegionHull,
    contains,
    convex_hull,
    direction_grid,
    intersect_pentagons,
    pentagon_vertices,
    support,
    support_hull,
    support_profile,
    union_hull,
)

__all__ = [
    "RatePair",
    "BoundPentagon",
    "RegionHull",
    "DEFAULT_N_DIRS",
    "intersect_pentagons",
    "pentagon_vertices",
    "support",
    "support_hull",
    "support_profile",
    "direction_grid",
    "union_hull",
    "convex_hull",
    "contains",
    "hull_to_csv",
    "write_hull_csv",
    "hull_to_dict",
    "hull_from_dict",
    "pentagon_to_dict",
]
