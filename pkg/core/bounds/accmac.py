"""ACC-MAC bounds: the ACMAC pentagons with the uninformed-rate cap R1 <= c.

inner: c = H(X1) under p_x1; outer: c = min_d H_d(X1b) / D, with the law of X1b
the pushforward of p_vtilde through the delay-d window map.
"""

from __future__ import annotations

from typing import Dict, Tuple

from core.bounds.acmac import inner_caps, outer_caps
from core.bounds.params import BoundResult, InnerParams, OuterParams
from core.info.functionals import entropy
from core.info.pmf import DelaySet, DiscreteChannel, Pmf


def accmac_inner_point(ch: DiscreteChannel, ds: DelaySet, params: InnerParams) -> BoundResult:
    c = entropy(params.p_x1)
    per_delay: Dict[int, Tuple[float, float, float]] = {}
    for d in ds.delays:
        s, r2 = inner_caps(ch, ds, d, params)
        per_delay[d] = (s, r2, c)
    return BoundResult.from_caps(per_delay, params)


def accmac_outer_point(ch: DiscreteChannel, ds: DelaySet, params: OuterParams) -> BoundResult:
    per_delay: Dict[int, Tuple[float, float, float]] = {}
    for d in ds.delays:
        s, r2, p_x1b = outer_caps(ch, ds, d, params)
        per_delay[d] = (s, r2, entropy(Pmf(p_x1b)) / ds.D)
    return BoundResult.from_caps(per_delay, params)
