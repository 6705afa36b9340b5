from .accmac import accmac_inner_point, accmac_outer_point
from .acmac import OUTER_CAP, joint_law_inner, joint_law_outer, inner_point, outer_point
from .params import BoundResult, InnerParams, OuterParams
from .search import (
    InnerModel,
    OuterModel,
    SearchConfig,
    SearchTrace,
    accmac_inner_region,
    accmac_outer_region,
    evaluate_params,
    inner_region,
    outer_region,
    search_inner,
    search_outer,
)

__all__ = [
    "InnerParams",
    "OuterParams",
    "BoundResult",
    "SearchConfig",
    "SearchTrace",
    "InnerModel",
    "OuterModel",
    "OUTER_CAP",
    "joint_law_inner",
    "joint_law_outer",
    "inner_point",
    "outer_point",
    "accmac_inner_point",
    "accmac_outer_point",
    "inner_region",
    "outer_region",
    "accmac_inner_region",
    "accmac_outer_region",
    "search_inner",
    "search_outer",
    "evaluate_params",
]
